/**
 * Antenna profiles and seeded generation of generic channel realizations.
 *
 * A K-user interference channel with square direct links: pair u has M_u
 * antennas at both ends, M_1 >= M_2 >= ... >= M_K >= 1. A realization is the
 * K x K grid of cross matrices H[i][j] (receiver i, transmitter j) with
 * i.i.d. CN(0,1) entries keyed by (seed, i, j, row, col).
 */
#pragma once

#include "mimodof/matrix.hpp"
#include "mimodof/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace mimodof {

struct AntennaProfile {
    std::vector<int> M;  // non-increasing, all >= 1

    AntennaProfile() = default;

    explicit AntennaProfile(std::vector<int> counts) : M(std::move(counts)) { validate(); }

    /// Builds a profile from arbitrary order; antenna counts are sorted
    /// non-increasing (user 1 is always the largest).
    static AntennaProfile sorted(std::vector<int> counts) {
        std::sort(counts.begin(), counts.end(), std::greater<int>());
        return AntennaProfile(std::move(counts));
    }

    void validate() const {
        if (M.empty()) throw std::invalid_argument("AntennaProfile: need at least one user");
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (M[i] < 1) throw std::invalid_argument("AntennaProfile: antenna counts must be >= 1");
            if (i > 0 && M[i] > M[i - 1])
                throw std::invalid_argument("AntennaProfile: counts must be non-increasing");
        }
    }

    int user_count() const { return static_cast<int>(M.size()); }

    long long total_antennas() const {
        return std::accumulate(M.begin(), M.end(), 0LL);
    }

    bool operator==(const AntennaProfile& other) const { return M == other.M; }
};

struct ChannelRealization {
    AntennaProfile profile;
    std::vector<std::vector<ComplexMatrix>> blocks;  // [rx][tx], shape M_rx x M_tx
    std::uint64_t seed = 0;

    const ComplexMatrix& block(int rx, int tx) const { return blocks[rx][tx]; }
    ComplexMatrix& block(int rx, int tx) { return blocks[rx][tx]; }
};

/// Generic realization: i.i.d. CN(0,1) entries, deterministic in (profile, seed).
inline ChannelRealization generate_channel(const AntennaProfile& profile, std::uint64_t seed) {
    profile.validate();
    const int k = profile.user_count();
    ChannelRealization ch;
    ch.profile = profile;
    ch.seed = seed;
    ch.blocks.resize(k);
    for (int i = 0; i < k; ++i) {
        ch.blocks[i].resize(k);
        for (int j = 0; j < k; ++j) {
            ComplexMatrix h(profile.M[i], profile.M[j]);
            for (Eigen::Index c = 0; c < h.cols(); ++c)
                for (Eigen::Index r = 0; r < h.rows(); ++r)
                    h(r, c) = rng::complex_gaussian(rng::hash_key(
                        {seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                         static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c)}));
            ch.blocks[i][j] = std::move(h);
        }
    }
    return ch;
}

/// Row-major [re, im] pair list; shape is implied by the profile.
inline nlohmann::json matrix_json(const ComplexMatrix& a) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            entries.push_back({a(r, c).real(), a(r, c).imag()});
    return entries;
}

inline nlohmann::json channel_json(const ChannelRealization& ch) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& row : ch.blocks) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& b : row) jrow.push_back(matrix_json(b));
        blocks.push_back(std::move(jrow));
    }
    return nlohmann::json{
        {"profile", ch.profile.M}, {"seed", ch.seed}, {"blocks", std::move(blocks)}};
}

}  // namespace mimodof
