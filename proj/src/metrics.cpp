#include "ppsched/metrics.hpp"

#include <fmt/format.h>
#include <numeric>

namespace ppsched {

Money revenue(std::span<const Money> payments, const Eigen::MatrixXi& purchases, const InstanceCatalog& catalog) {
    Money income = std::accumulate(payments.begin(), payments.end(), 0.0);
    Money cost = 0.0;
    for (int j = 0; j < purchases.rows(); ++j) cost += catalog[j].price * purchases.row(j).sum();
    return income - cost;
}

double satisfaction(int accepted_count, int n) {
    if (n <= 0) return 0.0;
    return static_cast<double>(accepted_count) / n;
}

double aggregated(Money rev, Money rev_star, double sat, double theta) {
    return theta * rev / rev_star + (1.0 - theta) * sat;
}

void finalize_outcome(Outcome& outcome, const Schedule& schedule, int n, const InstanceCatalog& catalog,
                      const SimConfig& config) {
    std::vector<Money> payments;
    payments.reserve(schedule.accepted.size());
    for (const auto& a : schedule.accepted) payments.push_back(a.payment);
    outcome.total_payment = std::accumulate(payments.begin(), payments.end(), 0.0);
    outcome.total_cost = schedule.purchase_cost(catalog);
    outcome.rev = revenue(payments, schedule.purchases, catalog);
    outcome.accepted_count = static_cast<int>(schedule.accepted.size());
    outcome.rejected_count = n - outcome.accepted_count;
    outcome.sat = satisfaction(outcome.accepted_count, n);
    outcome.obj = aggregated(outcome.rev, config.rev_star, outcome.sat, config.theta);
}

RhoDelta estimate_rho_delta(const std::vector<Job>& jobs, Money estimated_cost_sum) {
    if (!(estimated_cost_sum > 0.0)) throw UndefinedBoundError("total estimated cost is zero; rho and delta undefined");
    Money v_min = 0.0;
    Money v_max = 0.0;
    for (const auto& job : jobs) {
        v_min += job.min_value();
        v_max += job.max_value();
    }
    return {v_min / estimated_cost_sum, v_max / estimated_cost_sum};
}

Bounds theoretical_bounds(double rho, double delta, double theta) {
    if (!(rho > 2.0)) throw UndefinedBoundError(fmt::format("bounds need rho > 2, got {}", rho));
    Bounds b;
    b.rev_bound = delta / (rho - 2.0);
    if (theta > 0.0) b.obj_bound = delta / (theta * (rho - 2.0));
    return b;
}

}  // namespace ppsched
