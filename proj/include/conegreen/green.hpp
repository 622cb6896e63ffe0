#ifndef CONEGREEN_GREEN_HPP
#define CONEGREEN_GREEN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "conegreen/genfun.hpp"
#include "conegreen/model.hpp"

namespace conegreen {

struct DeterministicError {
    double bound = 0.0;  // true value lies in [value, value + bound]
};

struct MonteCarloError {
    double ci_half_width = 0.0;
    double confidence = 0.0;
    std::int64_t n_samples = 0;
};

enum class GreenMethod { dp, mc, quadrature };

struct GreenEstimate {
    double value = 0.0;
    std::variant<DeterministicError, MonteCarloError> error;
    GreenMethod method = GreenMethod::dp;
    std::string params;  // echo of the inputs that produced the estimate

    double lower() const;
    double upper() const;
};

using GreenTable = std::map<IVec, GreenEstimate, LexLess>;

/// Distribution of the exit position Z(tau) outside the cone, truncated by a
/// window. total_mass underestimates P_k(tau < inf) by at most
/// truncation_bound. weighted_truncation_bound carries the same missed mass
/// weighted by exp(weight.x) when a weight vector was supplied (used by the
/// harmonic-function series, where it bounds the missed exit contribution).
struct ExitLaw {
    IVec start;
    std::map<IVec, double, LexLess> entries;
    double total_mass = 0.0;
    double truncation_bound = 0.0;
    double weighted_truncation_bound = 0.0;
    Vec weight;  // empty when no weight was requested
};

struct SurvivalEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t n_samples = 0;
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
};

struct DpParams {
    double tol = 1e-12;          // certificate target for leak + tail bounds
    std::int64_t max_steps = 50000;
};

// How many worker threads module-level parallel loops may use (results are
// identical for any value; 0 means hardware concurrency).
void set_worker_threads(int n);
int worker_threads();

/// Green function G_C(k, m) by forward iteration of sub-probability mass
/// killed outside the cone and truncated outside the window. Values are
/// certified lower bounds; the attached bound covers window leakage and the
/// stopped tail via the Chernoff visit cap 1/(1 - P(alpha*)).
GreenTable green_dp(const WalkModel& model, const IVec& k,
                    const std::vector<IVec>& targets, const LatticeWindow& window,
                    const DpParams& params = {});

ExitLaw exit_law_dp(const WalkModel& model, const IVec& k, const LatticeWindow& window,
                    const DpParams& params = {},
                    const std::optional<Vec>& weight = std::nullopt);

GreenEstimate green_mc(const WalkModel& model, const IVec& k, const IVec& m,
                       std::int64_t n_traj, std::int64_t horizon, std::uint64_t seed);

/// Brackets for the tilted walk's survival probability: `upper` counts walks
/// alive at the horizon, `lower` additionally requires escape beyond
/// escape_radius along the drift direction.
SurvivalEstimate survival_mc(const WalkModel& model, const BoundaryData& boundary,
                             const IVec& k, std::int64_t horizon, double escape_radius,
                             std::uint64_t seed, std::int64_t n_traj = 1000000);

enum class HarmonicMethod { series, mc };

struct HarmonicEstimate {
    double value = 0.0;
    double error = 0.0;  // certified bound (series) or CI-style spread (mc)
    HarmonicMethod method = HarmonicMethod::series;
};

struct HarmonicOptions {
    std::int64_t mc_n_traj = 1000000;
    std::int64_t mc_horizon = 10000;
    double mc_escape_radius = 50.0;
    std::uint64_t mc_seed = 1;
};

HarmonicEstimate harmonic_estimate(const WalkModel& model, const BoundaryData& boundary,
                                   const IVec& k, HarmonicMethod method,
                                   const LatticeWindow& window, const DpParams& params = {},
                                   const HarmonicOptions& opts = {});

/// h_alpha(k) = exp(alpha.k) - E_k[exp(alpha.Z(tau)); tau < inf], positive on
/// the state space when the direction u lies in the cone. series: exit-law
/// sum with certified truncation; mc: exp(alpha.k) times the midpoint of the
/// survival brackets of the tilted walk.
double harmonic_h(const WalkModel& model, const BoundaryData& boundary, const IVec& k,
                  HarmonicMethod method, const LatticeWindow& window,
                  const DpParams& params = {}, const HarmonicOptions& opts = {});

/// |sum_{s: k+s in C} mu(s) h(k+s) - h(k)| with h by the series method, all
/// starts sharing the same absolute window.
double harmonicity_residual(const WalkModel& model, const BoundaryData& boundary,
                            const IVec& k, const LatticeWindow& window,
                            const DpParams& params = {});

} // namespace conegreen

#endif
