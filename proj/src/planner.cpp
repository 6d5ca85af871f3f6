#include "ppsched/planner.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <stdexcept>

namespace ppsched {

namespace {

using Wide = __int128;

Wide gcd_wide(Wide a, Wide b) {
    while (b != 0) {
        const Wide r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Wide lcm_of(const std::vector<int>& demands) {
    Wide l = 1;
    for (int d : demands) {
        l = l / gcd_wide(l, d) * d;
        if (l > (Wide(1) << 100)) throw std::overflow_error("demand lcm too large");
    }
    return l;
}

Wide ceil_div(Wide a, Wide b) { return a <= 0 ? 0 : (a + b - 1) / b; }

}  // namespace

bool covers_job(const std::vector<long long>& units_per_type, const std::vector<int>& demands) {
    const Wide l = lcm_of(demands);
    Wide covered = 0;
    for (std::size_t j = 0; j < demands.size(); ++j) covered += Wide(units_per_type[j]) * (l / demands[j]);
    return covered >= l;
}

Plan plan_schedule(const Job& job, int e, const CapacityLedger& ledger, const InstanceCatalog& catalog,
                   const PlanOptions& options) {
    Plan plan;
    plan.e = e;
    if (e < 1 || e > job.max_exec_time()) return plan;

    const int m = catalog.size();
    const auto& order = options.order == PlanOptions::Order::efficiency ? catalog.by_efficiency()
                                                                         : catalog.by_performance();
    const Wide whole = lcm_of(job.demands);
    std::vector<Wide> unit(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) unit[j] = whole / job.demands[j];

    Eigen::MatrixXi free(m, e);
    Eigen::MatrixXi alloc = Eigen::MatrixXi::Zero(m, e);
    Eigen::MatrixXi bought = Eigen::MatrixXi::Zero(m, e);
    for (int j = 0; j < m; ++j)
        for (int s = 1; s <= e; ++s) free(j, s - 1) = ledger.available(j, job.arrival + s);

    const int k = job.dop_cap;
    Wide covered = 0;
    long long used = 0;
    const auto finish_units = [&](Wide remaining, int j) { return ceil_div(remaining, unit[j]); };

    for (int s = 1; s <= e; ++s) {
        int lead = -1;
        for (int j : order) {
            if (used + finish_units(whole - covered, j) <= k) {
                lead = j;
                break;
            }
        }
        if (lead < 0) return plan;

        const int d_lead = job.demands[lead];
        const Wide target_units = Wide(s) * (d_lead / e) + std::min(s, d_lead % e);
        Wide need = target_units * unit[lead] - covered;
        if (need <= 0) continue;

        for (int j : order) {
            if (need <= 0) break;
            const int avail = free(j, s - 1);
            if (avail <= 0) continue;
            long long take = static_cast<long long>(std::min<Wide>(avail, ceil_div(need, unit[j])));
            while (take > 0 && used + take + finish_units(whole - covered - Wide(take) * unit[j], lead) > k) --take;
            if (take == 0) continue;
            free(j, s - 1) -= static_cast<int>(take);
            alloc(j, s - 1) += static_cast<int>(take);
            used += take;
            covered += Wide(take) * unit[j];
            need -= Wide(take) * unit[j];
        }
        if (need <= 0) continue;
        if (!options.allow_purchase) return plan;

        const int buy = static_cast<int>(ceil_div(need, unit[lead]));
        bought(lead, s - 1) += buy;
        for (int r = s; r <= std::min(e, s + ledger.tau() - 1); ++r) free(lead, r - 1) += buy;
        free(lead, s - 1) -= buy;
        alloc(lead, s - 1) += buy;
        used += buy;
        covered += Wide(buy) * unit[lead];
    }

    if (covered < whole || used > k) return plan;

    plan.feasible = true;
    plan.dop_used = static_cast<int>(used);
    for (int s = 1; s <= e; ++s) {
        for (int j = 0; j < m; ++j) {
            const Slot t = job.arrival + s;
            if (alloc(j, s - 1) > 0) plan.alloc.push_back({j, t, alloc(j, s - 1)});
            if (bought(j, s - 1) > 0) {
                plan.new_purchases.push_back({j, t, bought(j, s - 1)});
                plan.marginal_purchase_cost += bought(j, s - 1) * catalog[j].price;
            }
        }
    }
    return plan;
}

void commit_plan(const Plan& plan, int job_id, CapacityLedger& ledger, std::vector<Allocation>* allocations) {
    if (!plan.feasible) throw std::logic_error("cannot commit an infeasible plan");
    for (const auto& p : plan.new_purchases) ledger.purchase(p.type, p.slot, p.count);
    for (const auto& y : plan.alloc) {
        ledger.commit(y.type, y.slot, y.count);
        if (allocations) allocations->push_back({job_id, y.type, y.slot, y.count});
    }
}

}  // namespace ppsched
