/**
 * Closed-form DoF bounds for the K-user asymmetric interference channel with
 * square direct links, all in exact rational arithmetic.
 *
 *   decomposition bound   (sum M_i) / 2
 *   single-user bound     M_1 (largest user transmits alone)
 *   inner bound           max of the two
 *   cooperation outer     min over user splits S of max(sum_S, sum_Sc)
 *   sum DoF               max(M_1, (sum M_i)/2) with a regime label
 *
 * Also: the three-group user partition underlying the K-user argument, and a
 * small exact 2-D half-plane region with vertex enumeration for the (2,2,1)
 * dimension-counting bound.
 */
#pragma once

#include "mimodof/channel.hpp"
#include "mimodof/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mimodof {

enum class Regime { DominantUser, Decomposition };

inline const char* regime_name(Regime r) {
    return r == Regime::DominantUser ? "dominant_user" : "decomposition";
}

/// (sum M_i) / 2 — every antenna pair operated as a separate single-antenna user.
inline DoFValue decomposition_bound(const AntennaProfile& profile) {
    profile.validate();
    return half(profile.total_antennas());
}

/// max(M_1, (sum M_i) / 2) — best of decomposition and largest-user-alone.
inline DoFValue inner_bound(const AntennaProfile& profile) {
    profile.validate();
    return std::max(DoFValue(profile.M[0]), decomposition_bound(profile));
}

/// True iff M_1 >= sum of all other users' antennas (ties included).
inline bool dominant_user_present(const AntennaProfile& profile) {
    profile.validate();
    return profile.M[0] >= profile.total_antennas() - profile.M[0];
}

struct CoopBound {
    DoFValue value;
    std::vector<int> witness;  // 1-based user indices of the argmin subset S
};

/// min over nonempty proper subsets S of max(sum_S M_i, sum_Sc M_i).
/// S and its complement give the same value, so user 1 is fixed inside S
/// (2^(K-1) - 1 candidates). Ties resolve to the lexicographically smallest
/// subset, which the "user 1 in S" restriction already favors.
inline CoopBound cooperation_outer_bound(const AntennaProfile& profile) {
    profile.validate();
    const int k = profile.user_count();
    if (k < 2)
        throw std::invalid_argument("cooperation_outer_bound: needs at least two users");
    const long long total = profile.total_antennas();

    CoopBound best;
    bool have = false;
    std::vector<int> subset;
    // mask selects among users 2..K; the all-ones mask would make S the full set
    for (std::uint32_t mask = 0; mask + 1 < (1u << (k - 1)); ++mask) {
        long long sum_s = profile.M[0];
        subset.assign(1, 1);
        for (int u = 1; u < k; ++u) {
            if (mask & (1u << (u - 1))) {
                sum_s += profile.M[u];
                subset.push_back(u + 1);
            }
        }
        const DoFValue value(std::max(sum_s, total - sum_s));
        const bool better =
            !have || value < best.value ||
            (value == best.value &&
             std::lexicographical_compare(subset.begin(), subset.end(), best.witness.begin(),
                                          best.witness.end()));
        if (better) {
            best.value = value;
            best.witness = subset;
            have = true;
        }
    }
    return best;
}

/// Exact sum DoF: max((sum M_i)/2, M_1); the dominant-user regime is where
/// the largest user alone attains it.
inline std::pair<DoFValue, Regime> sum_dof(const AntennaProfile& profile) {
    const DoFValue value = inner_bound(profile);
    const Regime regime =
        dominant_user_present(profile) ? Regime::DominantUser : Regime::Decomposition;
    return {value, regime};
}

// ---------------------------------------------------------------------------
// Three-group partition
// ---------------------------------------------------------------------------

struct PartitionPlan {
    std::array<std::vector<int>, 3> groups;  // 1-based user indices, disjoint, covering
    std::array<long long, 3> sums;           // per-group antenna sums
};

/// Every group's sum must not exceed the other two combined.
inline bool partition_valid(const AntennaProfile& profile, const PartitionPlan& plan) {
    const long long total = profile.total_antennas();
    for (int g = 0; g < 3; ++g) {
        if (plan.groups[g].empty()) return false;
        if (plan.sums[g] > total - plan.sums[g]) return false;
    }
    return true;
}

namespace detail {

inline PartitionPlan plan_from_assignment(const AntennaProfile& profile,
                                          const std::vector<int>& group_of) {
    PartitionPlan plan{};
    plan.sums = {0, 0, 0};
    for (int u = 0; u < profile.user_count(); ++u) {
        plan.groups[group_of[u]].push_back(u + 1);
        plan.sums[group_of[u]] += profile.M[u];
    }
    return plan;
}

}  // namespace detail

/// Splits users into three nonempty groups, none with more antennas than the
/// other two combined. Users are taken largest-first and greedily assigned to
/// the currently smallest group; if that fails the search falls back to
/// exhaustive enumeration of canonical 3-colorings (first valid wins).
inline PartitionPlan three_group_partition(const AntennaProfile& profile) {
    profile.validate();
    const int k = profile.user_count();
    if (k < 3)
        throw std::invalid_argument("three_group_partition: needs at least three users");
    if (dominant_user_present(profile))
        throw std::invalid_argument(
            "three_group_partition: profile has a dominant user; no balanced partition exists");

    // Greedy: users are already sorted by descending antenna count.
    {
        std::vector<int> group_of(k, 0);
        std::array<long long, 3> sums = {0, 0, 0};
        for (int u = 0; u < k; ++u) {
            int g = 0;
            for (int c = 1; c < 3; ++c)
                if (sums[c] < sums[g]) g = c;
            group_of[u] = g;
            sums[g] += profile.M[u];
        }
        PartitionPlan plan = detail::plan_from_assignment(profile, group_of);
        if (partition_valid(profile, plan)) return plan;
    }

    // Exhaustive over canonical colorings: user 1 in group 1, each new group
    // label introduced in order (kills group-relabeling symmetry).
    if (k > 15)
        throw std::invalid_argument("three_group_partition: exhaustive search capped at K = 15");
    std::vector<int> group_of(k, 0);
    const auto search = [&](auto&& self, int u, int used) -> std::optional<PartitionPlan> {
        if (u == k) {
            if (used < 3) return std::nullopt;
            PartitionPlan plan = detail::plan_from_assignment(profile, group_of);
            if (partition_valid(profile, plan)) return plan;
            return std::nullopt;
        }
        const int limit = std::min(used + 1, 3);
        for (int g = 0; g < limit; ++g) {
            group_of[u] = g;
            if (auto found = self(self, u + 1, std::max(used, g + 1))) return found;
        }
        return std::nullopt;
    };
    group_of[0] = 0;
    if (auto found = search(search, 1, 1)) return *found;
    throw std::runtime_error("three_group_partition: no valid partition found");
}

// ---------------------------------------------------------------------------
// 2-D rational half-plane regions
// ---------------------------------------------------------------------------

/// One constraint a*d + b*dp <= c.
struct HalfPlane {
    Rational a, b, c;
};

/// Intersection of half planes in the nonnegative quadrant (d >= 0 and
/// dp >= 0 are implied, not stored).
struct Region2D {
    std::vector<HalfPlane> constraints;
};

struct Vertex2 {
    Rational d, dp;
    bool operator==(const Vertex2& o) const { return d == o.d && dp == o.dp; }
};

/// The (2,2,1) per-pair DoF region: d <= 1, dp <= 1, d + dp <= 3/2
/// (the 2d <= 2 cooperation constraint is stored reduced to d <= 1).
inline Region2D region_example_221() {
    return Region2D{{HalfPlane{1, 0, 1}, HalfPlane{0, 1, 1}, HalfPlane{1, 1, Rational(3, 2)}}};
}

namespace detail {

inline std::vector<HalfPlane> with_axes(const Region2D& region) {
    std::vector<HalfPlane> cs = region.constraints;
    cs.push_back({-1, 0, 0});
    cs.push_back({0, -1, 0});
    return cs;
}

inline bool feasible(const std::vector<HalfPlane>& cs, const Vertex2& v) {
    for (const auto& h : cs)
        if (h.a * v.d + h.b * v.dp > h.c) return false;
    return true;
}

/// A region in the quadrant is unbounded iff some nonzero direction in the
/// quadrant satisfies a*x + b*y <= 0 for every constraint. Any such recession
/// cone, if nonzero, contains an axis direction or a constraint boundary
/// direction, so checking those finitely many candidates is exhaustive.
inline bool is_bounded(const Region2D& region) {
    std::vector<std::pair<Rational, Rational>> dirs = {{1, 0}, {0, 1}};
    for (const auto& h : region.constraints) {
        dirs.emplace_back(h.b, -h.a);
        dirs.emplace_back(-h.b, h.a);
    }
    for (const auto& [x, y] : dirs) {
        if (x < 0 || y < 0 || (x == 0 && y == 0)) continue;
        bool recedes = true;
        for (const auto& h : region.constraints)
            if (h.a * x + h.b * y > 0) {
                recedes = false;
                break;
            }
        if (recedes) return false;
    }
    return true;
}

}  // namespace detail

/// All extreme points: pairwise constraint intersections (axes included)
/// filtered by feasibility, deduplicated, sorted by (d, dp).
inline std::vector<Vertex2> enumerate_vertices(const Region2D& region) {
    const auto cs = detail::with_axes(region);
    std::vector<Vertex2> verts;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            const Rational det = cs[i].a * cs[j].b - cs[j].a * cs[i].b;
            if (det == 0) continue;
            Vertex2 v{(cs[i].c * cs[j].b - cs[j].c * cs[i].b) / det,
                      (cs[i].a * cs[j].c - cs[j].a * cs[i].c) / det};
            if (!detail::feasible(cs, v)) continue;
            if (std::find(verts.begin(), verts.end(), v) == verts.end()) verts.push_back(v);
        }
    }
    std::sort(verts.begin(), verts.end(), [](const Vertex2& x, const Vertex2& y) {
        return x.d != y.d ? x.d < y.d : x.dp < y.dp;
    });
    return verts;
}

struct PolytopeMax {
    Rational value;
    Vertex2 argmax;
};

/// Exact maximum of a*d + b*dp over the region; attained at a vertex.
/// Ties resolve to the lexicographically largest vertex.
inline PolytopeMax polytope_max(const Region2D& region, const Rational& a, const Rational& b) {
    const auto verts = enumerate_vertices(region);
    if (verts.empty()) throw std::domain_error("polytope_max: empty region");
    if (!detail::is_bounded(region)) throw std::domain_error("polytope_max: unbounded region");
    PolytopeMax best{a * verts[0].d + b * verts[0].dp, verts[0]};
    for (const auto& v : verts) {
        const Rational value = a * v.d + b * v.dp;
        if (value > best.value ||
            (value == best.value &&
             (v.d > best.argmax.d || (v.d == best.argmax.d && v.dp > best.argmax.dp))))
            best = {value, v};
    }
    return best;
}

// ---------------------------------------------------------------------------
// Aggregated report
// ---------------------------------------------------------------------------

struct DoFReport {
    AntennaProfile profile;
    DoFValue inner;
    std::optional<DoFValue> outer_coop;        // absent for K = 1
    std::vector<int> outer_coop_witness;       // 1-based
    DoFValue theorem_value;
    Regime regime = Regime::Decomposition;
    std::optional<PartitionPlan> partition;    // decomposition regime, K >= 3
};

inline DoFReport analyze(const AntennaProfile& profile) {
    DoFReport report;
    report.profile = profile;
    report.inner = inner_bound(profile);
    if (profile.user_count() >= 2) {
        CoopBound coop = cooperation_outer_bound(profile);
        report.outer_coop = coop.value;
        report.outer_coop_witness = std::move(coop.witness);
    }
    auto [value, regime] = sum_dof(profile);
    report.theorem_value = value;
    report.regime = regime;
    if (regime == Regime::Decomposition && profile.user_count() >= 3)
        report.partition = three_group_partition(profile);
    return report;
}

inline nlohmann::json report_json(const DoFReport& report) {
    nlohmann::json j{{"profile", report.profile.M},
                     {"inner", rational_json(report.inner)},
                     {"theorem", rational_json(report.theorem_value)},
                     {"regime", regime_name(report.regime)}};
    if (report.outer_coop) {
        j["outer_coop"] = rational_json(*report.outer_coop);
        j["witness"] = report.outer_coop_witness;
    }
    if (report.partition) {
        nlohmann::json groups = nlohmann::json::array();
        for (const auto& g : report.partition->groups) groups.push_back(g);
        j["partition"] = std::move(groups);
    }
    return j;
}

}  // namespace mimodof
