#pragma once

#include <vector>

#include "ppsched/types.hpp"

namespace ppsched::test {

inline Job make_job(int id, Slot a, Slot d, std::vector<int> demands, int dop, std::vector<Money> values) {
    Job j;
    j.id = id;
    j.arrival = a;
    j.deadline = d;
    j.demands = std::move(demands);
    j.dop_cap = dop;
    j.values = std::move(values);
    return j;
}

inline InstanceCatalog one_type(Money price, double performance = 1.0) {
    return InstanceCatalog({{0, price, performance}});
}

inline SimConfig config(Slot T, int tau, double theta = 0.5, Money rev_star = 20.0, double n_est = 2.0) {
    SimConfig c;
    c.T = T;
    c.tau = tau;
    c.theta = theta;
    c.rev_star = rev_star;
    c.n_est = n_est;
    return c;
}

}  // namespace ppsched::test
