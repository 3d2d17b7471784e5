/**
 * Numeric evidence at desk scale: log-det rate of the largest-user-alone
 * scheme with a high-SNR slope fit, and Monte Carlo robustness runs of the
 * channel transformations over seeded generic realizations.
 */
#pragma once

#include "mimodof/channel.hpp"
#include "mimodof/transform.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mimodof {

// ---------------------------------------------------------------------------
// Rate curves
// ---------------------------------------------------------------------------

struct RatePoint {
    double power;      // linear transmit power P
    double rate_bits;  // bits per channel use
};

struct RateCurve {
    std::vector<RatePoint> points;
    std::string scheme;
    std::uint64_t seed = 0;

    void validate() const {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!(points[i].power > 0.0))
                throw std::invalid_argument("RateCurve: powers must be positive");
            if (points[i].rate_bits < 0.0)
                throw std::invalid_argument("RateCurve: rates must be nonnegative");
            if (i > 0 && !(points[i].power > points[i - 1].power))
                throw std::invalid_argument("RateCurve: powers must be strictly increasing");
            if (i > 0 && points[i].rate_bits < points[i - 1].rate_bits)
                throw std::invalid_argument("RateCurve: rates must be nondecreasing");
        }
    }
};

/// Sum rate when only the largest user transmits: log2 det(I + (P/M1) H11 H11^H)
/// with equal power per antenna and identity noise.
inline double dominant_scheme_rate(const ChannelRealization& ch, double power) {
    if (!(power > 0.0)) throw std::invalid_argument("dominant_scheme_rate: power must be > 0");
    const ComplexMatrix& h11 = ch.block(0, 0);
    require_finite(h11, "dominant_scheme_rate");
    const double per_antenna = power / static_cast<double>(ch.profile.M[0]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h11 * h11.adjoint());
    double rate = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double lambda = std::max(0.0, eig.eigenvalues()(i));
        rate += std::log2(1.0 + per_antenna * lambda);
    }
    return rate;
}

inline RateCurve dominant_scheme_curve(const ChannelRealization& ch,
                                       std::span<const double> powers) {
    RateCurve curve;
    curve.scheme = "dominant_user";
    curve.seed = ch.seed;
    for (double power : powers) curve.points.push_back({power, dominant_scheme_rate(ch, power)});
    curve.validate();
    return curve;
}

/// Least-squares slope of rate against log2(P) over a high-SNR window:
/// at least three points, all with P >= 1e4.
inline double estimate_dof_slope(const RateCurve& curve) {
    curve.validate();
    const auto& pts = curve.points;
    if (pts.size() < 3)
        throw std::invalid_argument("estimate_dof_slope: need at least 3 points");
    for (const auto& pt : pts)
        if (pt.power < 1e4)
            throw std::invalid_argument("estimate_dof_slope: all powers must be >= 1e4");
    double mx = 0.0, my = 0.0;
    for (const auto& pt : pts) {
        mx += std::log2(pt.power);
        my += pt.rate_bits;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& pt : pts) {
        const double dx = std::log2(pt.power) - mx;
        sxx += dx * dx;
        sxy += dx * (pt.rate_bits - my);
    }
    return sxy / sxx;
}

inline std::string curve_csv(const RateCurve& curve) {
    std::ostringstream out;
    out.precision(12);
    out << "P,rate_bits\n";
    for (const auto& pt : curve.points) out << pt.power << "," << pt.rate_bits << "\n";
    return out.str();
}

/// Decade-spaced default window 1e4..1e8.
inline std::vector<double> default_power_grid() { return {1e4, 1e5, 1e6, 1e7, 1e8}; }

// ---------------------------------------------------------------------------
// Monte Carlo transform robustness
// ---------------------------------------------------------------------------

/// One construction-plus-verification attempt; a structured step error is
/// captured rather than propagated.
struct TransformAttempt {
    bool success = false;
    std::optional<VerificationReport> verification;  // present when constructed
    std::optional<std::string> error_step;
    std::optional<std::string> error_message;
};

inline TransformAttempt attempt_transform(const ChannelRealization& ch, TransformVariant variant,
                                          const Tolerance& tol = {}) {
    TransformAttempt attempt;
    try {
        TransformOptions opts;
        opts.tol = tol;
        const TransformResult result = run_transform(ch, variant, opts);
        VerificationReport report =
            verify_transform(ch, result.pair, result.transformed.pattern, tol);
        attempt.success = report.pass();
        attempt.verification = std::move(report);
    } catch (const TransformStepError& err) {
        attempt.error_step = err.step();
        attempt.error_message = err.what();
    }
    return attempt;
}

struct TrialFailure {
    int trial = 0;
    std::uint64_t channel_seed = 0;
    std::string step;     // empty when the construction succeeded but verification failed
    std::string message;
};

struct MonteCarloReport {
    AntennaProfile profile;
    TransformVariant variant = TransformVariant::General3User;
    int trials = 0;
    std::uint64_t seed = 0;
    Tolerance tol{};
    int successes = 0;
    double success_fraction = 0.0;
    double worst_residual = 0.0;   // over successful constructions
    double worst_condition = 1.0;  // over successful constructions
    std::vector<TrialFailure> failures;
};

namespace detail {

inline MonteCarloReport monte_carlo_over(
    const AntennaProfile& profile, TransformVariant variant, int trials, std::uint64_t seed,
    const Tolerance& tol, const std::function<ChannelRealization(int)>& channel_for_trial) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_transform: trials must be >= 1");
    MonteCarloReport report;
    report.profile = profile;
    report.variant = variant;
    report.trials = trials;
    report.seed = seed;
    report.tol = tol;
    for (int t = 0; t < trials; ++t) {
        const ChannelRealization ch = channel_for_trial(t);
        const TransformAttempt attempt = attempt_transform(ch, variant, tol);
        if (attempt.success) {
            ++report.successes;
            report.worst_residual =
                std::max(report.worst_residual, attempt.verification->worst_residual);
            report.worst_condition =
                std::max(report.worst_condition, attempt.verification->worst_condition);
        } else {
            TrialFailure failure;
            failure.trial = t;
            failure.channel_seed = ch.seed;
            failure.step = attempt.error_step.value_or("");
            failure.message = attempt.error_message.value_or("verification failed");
            report.failures.push_back(std::move(failure));
        }
    }
    report.success_fraction =
        static_cast<double>(report.successes) / static_cast<double>(trials);
    return report;
}

}  // namespace detail

/// Runs the transform over `trials` independent realizations (trial t uses
/// channel seed `seed + t`) and reports the success fraction plus worst-case
/// residual and condition number among the successes.
inline MonteCarloReport monte_carlo_transform(const AntennaProfile& profile,
                                              TransformVariant variant, int trials,
                                              std::uint64_t seed, const Tolerance& tol = {}) {
    return detail::monte_carlo_over(profile, variant, trials, seed, tol, [&](int t) {
        return generate_channel(profile, seed + static_cast<std::uint64_t>(t));
    });
}

/// Single-channel variant used to probe hand-crafted (non-generic) inputs.
inline MonteCarloReport monte_carlo_transform(const ChannelRealization& ch,
                                              TransformVariant variant,
                                              const Tolerance& tol = {}) {
    return detail::monte_carlo_over(ch.profile, variant, 1, ch.seed, tol,
                                    [&](int) { return ch; });
}

inline nlohmann::json monte_carlo_json(const MonteCarloReport& report) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& failure : report.failures)
        failures.push_back({{"trial", failure.trial},
                            {"channel_seed", failure.channel_seed},
                            {"step", failure.step},
                            {"message", failure.message}});
    return nlohmann::json{{"profile", report.profile.M},
                          {"variant", variant_name(report.variant)},
                          {"trials", report.trials},
                          {"seed", report.seed},
                          {"successes", report.successes},
                          {"success_fraction", report.success_fraction},
                          {"worst_residual", report.worst_residual},
                          {"worst_condition", report.worst_condition},
                          {"failures", std::move(failures)}};
}

}  // namespace mimodof
