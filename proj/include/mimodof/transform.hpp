/**
 * DoF-preserving channel transformations for the 3-user channel.
 *
 * Both constructions pick columns of the per-user beamforming matrices V[i]
 * and rows of the shaping matrices U[i] from null spaces of (products of)
 * channel blocks so that the transformed channel H[i][j] = U[i] Hbar[i][j] V[j]
 * carries an exact zero pattern on its cross links, while every U[i], V[i]
 * stays invertible. Two distinct valid constructions are implemented:
 *
 *   - the antenna-granular (2,2,1) procedure (eight scalar zeros), and
 *   - the general block procedure for K = 3 without a strictly dominant
 *     user (M1 <= M2 + M3), built on the three block sizes
 *         p = M1 - M2,  q = M1 - M3,  r = M2 + M3 - M1.
 *
 * Zero-size blocks are legal; constraints on them are vacuous, which makes
 * the boundary cases M1 = M2 and M1 = M2 + M3 uniform with the interior.
 */
#pragma once

#include "mimodof/channel.hpp"
#include "mimodof/numerics.hpp"
#include "mimodof/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mimodof {

enum class TransformVariant { Example221, General3User };

inline const char* variant_name(TransformVariant v) {
    return v == TransformVariant::Example221 ? "example221" : "general3";
}

inline TransformVariant parse_variant(const std::string& name) {
    if (name == "example221") return TransformVariant::Example221;
    if (name == "general3") return TransformVariant::General3User;
    throw std::invalid_argument("unknown transform variant: " + name);
}

/// Condition-number ceiling above which a transform matrix is treated as
/// numerically non-invertible.
inline constexpr double kMaxTransformCondition = 1e8;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class TransformErrorKind { NullspaceDimensionMismatch, Invertibility };

/// Construction failure carrying the violated step, so a non-generic channel
/// is reported as "step X failed" rather than silently producing a wrong
/// transform.
class TransformStepError : public std::runtime_error {
  public:
    TransformStepError(TransformErrorKind kind, std::string step, const std::string& message)
        : std::runtime_error("transform step " + step + ": " + message),
          kind_(kind),
          step_(std::move(step)) {}

    TransformErrorKind kind() const { return kind_; }
    const std::string& step() const { return step_; }

  private:
    TransformErrorKind kind_;
    std::string step_;
};

// ---------------------------------------------------------------------------
// Block partition (general 3-user construction)
// ---------------------------------------------------------------------------

/// Per-user input (x) and output (y) block sizes of the general construction.
/// User 1 splits into three blocks, users 2 and 3 into two each; the output
/// partition of user 1 is the reverse of its input partition.
struct BlockPartition3 {
    std::array<std::vector<int>, 3> x_sizes;
    std::array<std::vector<int>, 3> y_sizes;
};

inline BlockPartition3 block_partition_3user(const AntennaProfile& profile) {
    profile.validate();
    if (profile.user_count() != 3)
        throw std::invalid_argument("block_partition_3user: profile must have exactly 3 users");
    const int m1 = profile.M[0], m2 = profile.M[1], m3 = profile.M[2];
    if (m1 > m2 + m3)
        throw std::invalid_argument(
            "block_partition_3user: dominant-user profile (M1 > M2 + M3) has no valid partition");
    const int p = m1 - m2, q = m1 - m3, r = m2 + m3 - m1;
    BlockPartition3 part;
    part.x_sizes = {{{p, r, q}, {r, q}, {r, p}}};
    part.y_sizes = {{{q, r, p}, {r, q}, {r, p}}};
    return part;
}

// ---------------------------------------------------------------------------
// Zero pattern
// ---------------------------------------------------------------------------

/// Required-zero blocks of the transformed cross links, at block granularity.
/// mask[i][j][a][b] == true means output block a of user i must receive
/// nothing from input block b of user j. Direct links carry empty masks.
struct ZeroPattern {
    std::array<std::vector<int>, 3> x_sizes;
    std::array<std::vector<int>, 3> y_sizes;
    std::array<std::array<std::vector<std::vector<bool>>, 3>, 3> mask;

    bool required(int i, int j, int a, int b) const {
        return mask[i][j][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    /// Number of scalar channel entries pinned to zero.
    int required_scalar_zeros() const {
        int count = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                for (std::size_t a = 0; a < mask[i][j].size(); ++a)
                    for (std::size_t b = 0; b < mask[i][j][a].size(); ++b)
                        if (mask[i][j][a][b]) count += y_sizes[i][a] * x_sizes[j][b];
            }
        return count;
    }
};

namespace detail {

inline std::vector<int> block_offsets(const std::vector<int>& sizes) {
    std::vector<int> off(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
    return off;
}

inline std::vector<std::vector<bool>> blank_mask(std::size_t rows, std::size_t cols) {
    return std::vector<std::vector<bool>>(rows, std::vector<bool>(cols, false));
}

}  // namespace detail

inline ZeroPattern expected_zero_pattern(const AntennaProfile& profile, TransformVariant variant) {
    ZeroPattern pat;
    if (variant == TransformVariant::Example221) {
        if (profile.M != std::vector<int>{2, 2, 1})
            throw std::invalid_argument("expected_zero_pattern: example221 requires profile (2,2,1)");
        pat.x_sizes = {{{1, 1}, {1, 1}, {1}}};
        pat.y_sizes = pat.x_sizes;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                pat.mask[i][j] = detail::blank_mask(pat.y_sizes[i].size(), pat.x_sizes[j].size());
        // cross links between the two-antenna users are diagonal
        pat.mask[0][1][0][1] = pat.mask[0][1][1][0] = true;
        pat.mask[1][0][0][1] = pat.mask[1][0][1][0] = true;
        // user 3 is isolated from the second antennas
        pat.mask[0][2][1][0] = true;
        pat.mask[1][2][1][0] = true;
        pat.mask[2][0][0][1] = true;
        pat.mask[2][1][0][1] = true;
        return pat;
    }

    const BlockPartition3 part = block_partition_3user(profile);
    pat.x_sizes = part.x_sizes;
    pat.y_sizes = part.y_sizes;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            pat.mask[i][j] = detail::blank_mask(pat.y_sizes[i].size(), pat.x_sizes[j].size());
    // receiver 1 from transmitter 2
    pat.mask[0][1][0][0] = pat.mask[0][1][1][1] = pat.mask[0][1][2][0] = pat.mask[0][1][2][1] = true;
    // receiver 1 from transmitter 3
    pat.mask[0][2][0][0] = pat.mask[0][2][0][1] = pat.mask[0][2][1][1] = pat.mask[0][2][2][0] = true;
    // receiver 2 from transmitter 1
    pat.mask[1][0][0][0] = pat.mask[1][0][0][2] = pat.mask[1][0][1][0] = true;
    // receiver 2 from transmitter 3
    pat.mask[1][2][1][0] = true;
    // receiver 3 from transmitter 1
    pat.mask[2][0][0][0] = pat.mask[2][0][0][2] = pat.mask[2][0][1][2] = true;
    // receiver 3 from transmitter 2
    pat.mask[2][1][1][0] = true;
    return pat;
}

// ---------------------------------------------------------------------------
// Transform pair, verification
// ---------------------------------------------------------------------------

/// Invertible square beamforming (V, applied at transmitters) and shaping
/// (U, applied at receivers) matrices, one per user.
struct TransformPair {
    std::array<ComplexMatrix, 3> V;
    std::array<ComplexMatrix, 3> U;
};

struct BlockResidual {
    int rx_user, tx_user;    // 0-based
    int rx_block, tx_block;  // 0-based within the pattern layout
    double max_abs;          // largest |entry| inside the required-zero block
    double relative;         // max_abs / ||Hbar[rx][tx]||_F
};

struct TransformedChannel {
    std::array<std::array<ComplexMatrix, 3>, 3> H;  // U[i] * Hbar[i][j] * V[j]
    ZeroPattern pattern;                            // carries the block partition
    std::vector<BlockResidual> zero_residuals;      // nonempty required-zero blocks only
};

struct VerificationReport {
    std::vector<BlockResidual> block_residuals;
    std::array<double, 3> u_condition{1.0, 1.0, 1.0};
    std::array<double, 3> v_condition{1.0, 1.0, 1.0};
    double worst_residual = 0.0;   // max relative residual
    double worst_condition = 1.0;  // max over all U[i], V[i]
    double zero_rel_tol = 0.0;
    double max_condition = kMaxTransformCondition;
    bool residuals_ok = true;
    bool invertibility_ok = true;

    bool pass() const { return residuals_ok && invertibility_ok; }
};

namespace detail {

inline ComplexMatrix hcat(std::initializer_list<const ComplexMatrix*> parts) {
    Eigen::Index rows = 0, cols = 0;
    for (const auto* part : parts) {
        rows = std::max(rows, part->rows());
        cols += part->cols();
    }
    ComplexMatrix out(rows, cols);
    Eigen::Index at = 0;
    for (const auto* part : parts) {
        if (part->cols() > 0 && part->rows() != rows)
            throw std::logic_error("hcat: inconsistent row counts");
        out.middleCols(at, part->cols()) = *part;
        at += part->cols();
    }
    return out;
}

inline ComplexMatrix vcat(std::initializer_list<const ComplexMatrix*> parts) {
    Eigen::Index rows = 0, cols = 0;
    for (const auto* part : parts) {
        cols = std::max(cols, part->cols());
        rows += part->rows();
    }
    ComplexMatrix out(rows, cols);
    Eigen::Index at = 0;
    for (const auto* part : parts) {
        if (part->rows() > 0 && part->cols() != cols)
            throw std::logic_error("vcat: inconsistent column counts");
        out.middleRows(at, part->rows()) = *part;
        at += part->rows();
    }
    return out;
}

/// Right null basis whose width must match the block size the construction
/// is about to consume; anything else means the channel is not generic.
inline ComplexMatrix expect_null_columns(const ComplexMatrix& constraint, Eigen::Index expected,
                                         const char* step, const std::string& what,
                                         const Tolerance& tol) {
    ComplexMatrix basis = right_null_basis(constraint, tol);
    if (basis.cols() != expected) {
        std::ostringstream msg;
        msg << what << " has dimension " << basis.cols() << ", expected " << expected
            << " (channel is not generic)";
        throw TransformStepError(TransformErrorKind::NullspaceDimensionMismatch, step, msg.str());
    }
    return basis;
}

inline ComplexMatrix expect_null_rows(const ComplexMatrix& constraint, Eigen::Index expected,
                                      const char* step, const std::string& what,
                                      const Tolerance& tol) {
    ComplexMatrix basis = left_null_basis(constraint, tol);
    if (basis.rows() != expected) {
        std::ostringstream msg;
        msg << what << " has dimension " << basis.rows() << ", expected " << expected
            << " (channel is not generic)";
        throw TransformStepError(TransformErrorKind::NullspaceDimensionMismatch, step, msg.str());
    }
    return basis;
}

inline double pair_condition(const ComplexMatrix& m, const Tolerance& tol) {
    return condition_number(m, tol);
}

}  // namespace detail

/// Applies the pair and measures every nonempty required-zero block.
/// pass = (all relative residuals <= zero_rel_tol) and (all condition
/// numbers <= 1e8).
inline VerificationReport verify_transform(const ChannelRealization& ch, const TransformPair& pair,
                                           const ZeroPattern& pattern, const Tolerance& tol = {}) {
    tol.validate();
    if (ch.profile.user_count() != 3)
        throw std::invalid_argument("verify_transform: expects a 3-user channel");
    for (int u = 0; u < 3; ++u) {
        const int m = ch.profile.M[u];
        if (pair.V[u].rows() != m || pair.V[u].cols() != m || pair.U[u].rows() != m ||
            pair.U[u].cols() != m)
            throw std::invalid_argument("verify_transform: transform matrices must be square M_i");
        int xsum = 0, ysum = 0;
        for (int s : pattern.x_sizes[u]) xsum += s;
        for (int s : pattern.y_sizes[u]) ysum += s;
        if (xsum != m || ysum != m)
            throw std::invalid_argument("verify_transform: pattern block sizes do not sum to M_i");
    }

    VerificationReport report;
    report.zero_rel_tol = tol.zero_rel_tol;
    for (int u = 0; u < 3; ++u) {
        report.u_condition[u] = detail::pair_condition(pair.U[u], tol);
        report.v_condition[u] = detail::pair_condition(pair.V[u], tol);
        report.worst_condition =
            std::max({report.worst_condition, report.u_condition[u], report.v_condition[u]});
    }
    report.invertibility_ok = report.worst_condition <= report.max_condition;

    for (int i = 0; i < 3; ++i) {
        const auto yoff = detail::block_offsets(pattern.y_sizes[i]);
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const auto xoff = detail::block_offsets(pattern.x_sizes[j]);
            const ComplexMatrix transformed = pair.U[i] * ch.block(i, j) * pair.V[j];
            const double scale = frobenius_norm(ch.block(i, j));
            for (std::size_t a = 0; a < pattern.y_sizes[i].size(); ++a) {
                for (std::size_t b = 0; b < pattern.x_sizes[j].size(); ++b) {
                    if (!pattern.mask[i][j][a][b]) continue;
                    const int rows = pattern.y_sizes[i][a];
                    const int cols = pattern.x_sizes[j][b];
                    if (rows == 0 || cols == 0) continue;
                    const double amax =
                        max_abs(transformed.block(yoff[a], xoff[b], rows, cols));
                    const double rel = scale > 0.0 ? amax / scale : amax;
                    report.block_residuals.push_back(
                        {i, j, static_cast<int>(a), static_cast<int>(b), amax, rel});
                    report.worst_residual = std::max(report.worst_residual, rel);
                }
            }
        }
    }
    report.residuals_ok = report.worst_residual <= tol.zero_rel_tol;
    return report;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

struct TransformOptions {
    Tolerance tol{};
    /// Seed for the randomly drawn free columns of the general construction;
    /// derived from the channel seed when not set.
    std::optional<std::uint64_t> seed{};
    /// Redraw free columns (general construction only) if the assembled
    /// matrices fail the condition-number check.
    bool retry_free_columns = false;
    int max_retries = 8;
};

struct TransformResult {
    TransformPair pair;
    TransformedChannel transformed;
};

namespace detail {

inline constexpr std::uint64_t kFreeColumnTag = 0x66726565636f6cULL;  // "freecol"

inline void require_invertible(const TransformPair& pair, const Tolerance& tol) {
    static const char* names[3] = {"1", "2", "3"};
    for (int u = 0; u < 3; ++u) {
        const double cv = pair_condition(pair.V[u], tol);
        if (!(cv <= kMaxTransformCondition)) {
            std::ostringstream msg;
            msg << "condition number " << cv << " of V[" << names[u] << "] exceeds "
                << kMaxTransformCondition;
            throw TransformStepError(TransformErrorKind::Invertibility,
                                     std::string("V") + names[u], msg.str());
        }
        const double cu = pair_condition(pair.U[u], tol);
        if (!(cu <= kMaxTransformCondition)) {
            std::ostringstream msg;
            msg << "condition number " << cu << " of U[" << names[u] << "] exceeds "
                << kMaxTransformCondition;
            throw TransformStepError(TransformErrorKind::Invertibility,
                                     std::string("U") + names[u], msg.str());
        }
    }
}

inline TransformResult finish(const ChannelRealization& ch, TransformPair pair,
                              ZeroPattern pattern, const Tolerance& tol) {
    TransformResult result;
    result.transformed.pattern = std::move(pattern);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            result.transformed.H[i][j] = pair.U[i] * ch.block(i, j) * pair.V[j];
    const VerificationReport report =
        verify_transform(ch, pair, result.transformed.pattern, tol);
    result.transformed.zero_residuals = report.block_residuals;
    result.pair = std::move(pair);
    return result;
}

}  // namespace detail

/// The four-step (2,2,1) construction. All eight vectors are pinned by
/// one-dimensional null spaces; the single-antenna user keeps U3 = V3 = 1.
inline TransformResult transform_example_221(const ChannelRealization& ch,
                                             const TransformOptions& opts = {}) {
    opts.tol.validate();
    if (ch.profile.M != std::vector<int>{2, 2, 1})
        throw std::invalid_argument("transform_example_221: profile must be (2,2,1)");
    const Tolerance& tol = opts.tol;

    // silence the two-antenna users at the single-antenna receiver
    const ComplexMatrix v12 =
        detail::expect_null_columns(ch.block(2, 0), 1, "v12", "right null space of H[3][1]", tol);
    const ComplexMatrix v22 =
        detail::expect_null_columns(ch.block(2, 1), 1, "v22", "right null space of H[3][2]", tol);
    // cancel the cross leakage of those columns at the first antennas
    const ComplexMatrix u11 = detail::expect_null_rows(
        ch.block(0, 1) * v22, 1, "u11", "left null space of H[1][2] v22", tol);
    const ComplexMatrix u21 = detail::expect_null_rows(
        ch.block(1, 0) * v12, 1, "u21", "left null space of H[2][1] v12", tol);
    // shield the second antennas from the single-antenna transmitter
    const ComplexMatrix u12 =
        detail::expect_null_rows(ch.block(0, 2), 1, "u12", "left null space of H[1][3]", tol);
    const ComplexMatrix u22 =
        detail::expect_null_rows(ch.block(1, 2), 1, "u22", "left null space of H[2][3]", tol);
    // finally decouple the first columns from the second rows
    const ComplexMatrix v21 = detail::expect_null_columns(
        u12 * ch.block(0, 1), 1, "v21", "right null space of u12 H[1][2]", tol);
    const ComplexMatrix v11 = detail::expect_null_columns(
        u22 * ch.block(1, 0), 1, "v11", "right null space of u22 H[2][1]", tol);

    TransformPair pair;
    pair.V[0] = detail::hcat({&v11, &v12});
    pair.V[1] = detail::hcat({&v21, &v22});
    pair.V[2] = ComplexMatrix::Identity(1, 1);
    pair.U[0] = detail::vcat({&u11, &u12});
    pair.U[1] = detail::vcat({&u21, &u22});
    pair.U[2] = ComplexMatrix::Identity(1, 1);
    detail::require_invertible(pair, tol);

    return detail::finish(ch, std::move(pair),
                          expected_zero_pattern(ch.profile, TransformVariant::Example221), tol);
}

/// The general 3-user block construction for M1 <= M2 + M3.
///
/// Pinned directions (p = M1-M2, q = M1-M3, r = M2+M3-M1):
///   u11 (q rows)  left null of H[1][3]        u13 (p rows)  left null of H[1][2]
///   v11 (p cols)  right null of H[2][1]       v13 (q cols)  right null of H[3][1]
///   v21 (r cols)  right null of u11 H[1][2]   v31 (r cols)  right null of u13 H[1][3]
///   u21 (r rows)  left null of H[2][1] v13    u22 (q rows)  left null of H[2][3] v31
///   u31 (r rows)  left null of H[3][1] v11    u32 (p rows)  left null of H[3][2] v21
///   u12 (r rows)  left null of [H[1][2] v22 | H[1][3] v32]
/// v12, v22, v32 are free and drawn i.i.d. Gaussian from the construction seed.
inline TransformResult transform_general_3user(const ChannelRealization& ch,
                                               const TransformOptions& opts = {}) {
    opts.tol.validate();
    const BlockPartition3 part = block_partition_3user(ch.profile);
    const Tolerance& tol = opts.tol;
    const int m1 = ch.profile.M[0], m2 = ch.profile.M[1], m3 = ch.profile.M[2];
    const int p = part.x_sizes[0][0], r = part.x_sizes[0][1], q = part.x_sizes[0][2];
    const std::uint64_t seed =
        opts.seed.value_or(rng::hash_key({ch.seed, detail::kFreeColumnTag}));

    const ComplexMatrix u11 =
        detail::expect_null_rows(ch.block(0, 2), q, "u11", "left null space of H[1][3]", tol);
    const ComplexMatrix u13 =
        detail::expect_null_rows(ch.block(0, 1), p, "u13", "left null space of H[1][2]", tol);
    const ComplexMatrix v11 =
        detail::expect_null_columns(ch.block(1, 0), p, "v11", "right null space of H[2][1]", tol);
    const ComplexMatrix v13 =
        detail::expect_null_columns(ch.block(2, 0), q, "v13", "right null space of H[3][1]", tol);
    const ComplexMatrix v21 = detail::expect_null_columns(
        u11 * ch.block(0, 1), r, "v21", "right null space of u11 H[1][2]", tol);
    const ComplexMatrix v31 = detail::expect_null_columns(
        u13 * ch.block(0, 2), r, "v31", "right null space of u13 H[1][3]", tol);
    const ComplexMatrix u21 = detail::expect_null_rows(
        ch.block(1, 0) * v13, r, "u21", "left null space of H[2][1] v13", tol);
    const ComplexMatrix u22 = detail::expect_null_rows(
        ch.block(1, 2) * v31, q, "u22", "left null space of H[2][3] v31", tol);
    const ComplexMatrix u31 = detail::expect_null_rows(
        ch.block(2, 0) * v11, r, "u31", "left null space of H[3][1] v11", tol);
    const ComplexMatrix u32 = detail::expect_null_rows(
        ch.block(2, 1) * v21, p, "u32", "left null space of H[3][2] v21", tol);

    const int attempts = opts.retry_free_columns ? std::max(1, opts.max_retries) : 1;
    TransformPair pair;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        const std::uint64_t akey = rng::hash_key({seed, static_cast<std::uint64_t>(attempt)});
        const ComplexMatrix v12 = rng::gaussian_matrix(m1, r, rng::hash_key({akey, 12}));
        const ComplexMatrix v22 = rng::gaussian_matrix(m2, q, rng::hash_key({akey, 22}));
        const ComplexMatrix v32 = rng::gaussian_matrix(m3, p, rng::hash_key({akey, 32}));

        const ComplexMatrix beamformed_12 = ch.block(0, 1) * v22;
        const ComplexMatrix beamformed_13 = ch.block(0, 2) * v32;
        const ComplexMatrix stacked = detail::hcat({&beamformed_12, &beamformed_13});
        const ComplexMatrix u12 = detail::expect_null_rows(
            stacked, r, "u12", "left null space of [H[1][2] v22 | H[1][3] v32]", tol);

        pair.V[0] = detail::hcat({&v11, &v12, &v13});
        pair.V[1] = detail::hcat({&v21, &v22});
        pair.V[2] = detail::hcat({&v31, &v32});
        pair.U[0] = detail::vcat({&u11, &u12, &u13});
        pair.U[1] = detail::vcat({&u21, &u22});
        pair.U[2] = detail::vcat({&u31, &u32});
        try {
            detail::require_invertible(pair, tol);
            break;
        } catch (const TransformStepError&) {
            if (attempt + 1 == attempts) throw;
        }
    }

    ZeroPattern pattern = expected_zero_pattern(ch.profile, TransformVariant::General3User);
    return detail::finish(ch, std::move(pair), std::move(pattern), tol);
}

inline TransformResult run_transform(const ChannelRealization& ch, TransformVariant variant,
                                     const TransformOptions& opts = {}) {
    return variant == TransformVariant::Example221 ? transform_example_221(ch, opts)
                                                   : transform_general_3user(ch, opts);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// Scalar-granular pattern rows for one cross pair: '0' = required zero,
/// '*' = unconstrained.
inline std::vector<std::string> pattern_rows(const ZeroPattern& pat, int i, int j) {
    const auto yoff = detail::block_offsets(pat.y_sizes[i]);
    const auto xoff = detail::block_offsets(pat.x_sizes[j]);
    std::vector<std::string> rows(yoff.back(), std::string(xoff.back(), '*'));
    if (i == j) return rows;
    for (std::size_t a = 0; a < pat.y_sizes[i].size(); ++a)
        for (std::size_t b = 0; b < pat.x_sizes[j].size(); ++b) {
            if (!pat.mask[i][j][a][b]) continue;
            for (int rr = 0; rr < pat.y_sizes[i][a]; ++rr)
                for (int cc = 0; cc < pat.x_sizes[j][b]; ++cc)
                    rows[yoff[a] + rr][xoff[b] + cc] = '0';
        }
    return rows;
}

inline std::string pattern_grid_string(const ZeroPattern& pat) {
    std::ostringstream out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            out << "H[" << (i + 1) << "][" << (j + 1) << "]:\n";
            for (const auto& row : pattern_rows(pat, i, j)) out << "  " << row << "\n";
        }
    return out.str();
}

inline nlohmann::json transformed_channel_json(const TransformedChannel& tc) {
    nlohmann::json blocks = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 3; ++j) row.push_back(matrix_json(tc.H[i][j]));
        blocks.push_back(std::move(row));
    }
    nlohmann::json pattern = nlohmann::json::object();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            std::string key = "H[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
            pattern[key] = pattern_rows(tc.pattern, i, j);
        }
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& res : tc.zero_residuals)
        residuals.push_back({{"rx", res.rx_user + 1},
                             {"tx", res.tx_user + 1},
                             {"rx_block", res.rx_block + 1},
                             {"tx_block", res.tx_block + 1},
                             {"max_abs", res.max_abs},
                             {"relative", res.relative}});
    nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array();
    for (int u = 0; u < 3; ++u) {
        xs.push_back(tc.pattern.x_sizes[u]);
        ys.push_back(tc.pattern.y_sizes[u]);
    }
    return nlohmann::json{{"blocks", std::move(blocks)},
                          {"pattern", std::move(pattern)},
                          {"x_block_sizes", std::move(xs)},
                          {"y_block_sizes", std::move(ys)},
                          {"zero_residuals", std::move(residuals)}};
}

inline nlohmann::json verification_json(const VerificationReport& report) {
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& res : report.block_residuals)
        residuals.push_back({{"rx", res.rx_user + 1},
                             {"tx", res.tx_user + 1},
                             {"rx_block", res.rx_block + 1},
                             {"tx_block", res.tx_block + 1},
                             {"max_abs", res.max_abs},
                             {"relative", res.relative}});
    return nlohmann::json{{"block_residuals", std::move(residuals)},
                          {"u_condition", report.u_condition},
                          {"v_condition", report.v_condition},
                          {"worst_residual", report.worst_residual},
                          {"worst_condition", report.worst_condition},
                          {"zero_rel_tol", report.zero_rel_tol},
                          {"max_condition", report.max_condition},
                          {"pass", report.pass()}};
}

}  // namespace mimodof
