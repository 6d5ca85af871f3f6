#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppsched/schedule.hpp"
#include "ppsched/types.hpp"

namespace ppsched {

/// Σ payments - Σ_j Σ_t price_j r_j(t). May be negative.
Money revenue(std::span<const Money> payments, const Eigen::MatrixXi& purchases, const InstanceCatalog& catalog);

/// accepted / n, 0 when n = 0.
double satisfaction(int accepted_count, int n);

/// θ rev / rev* + (1 - θ) sat.
double aggregated(Money rev, Money rev_star, double sat, double theta);

/// Fills rev, sat, obj and the counts of an outcome from its schedule.
void finalize_outcome(Outcome& outcome, const Schedule& schedule, int n, const InstanceCatalog& catalog,
                      const SimConfig& config);

/// Raised when a bound or ratio is undefined for the given inputs.
class UndefinedBoundError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct RhoDelta {
    double rho = 0.0;
    double delta = 0.0;
};

/// ρ = Σ v_min / Σ φ̂, δ = Σ v_max / Σ φ̂ over all users.
RhoDelta estimate_rho_delta(const std::vector<Job>& jobs, Money estimated_cost_sum);

struct Bounds {
    double rev_bound = 0.0;  // δ / (ρ - 2)
    std::optional<double> obj_bound;  // δ / (θ (ρ - 2)); empty when θ = 0
};

/// Competitive-ratio bounds; throws UndefinedBoundError when ρ <= 2.
Bounds theoretical_bounds(double rho, double delta, double theta);

}  // namespace ppsched
