#include "ppsched/types.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <numeric>

namespace ppsched {

void SimConfig::validate() const {
    if (T < 1) throw ValidationError(fmt::format("T must be >= 1, got {}", T));
    if (tau < 1) throw ValidationError(fmt::format("tau must be >= 1, got {}", tau));
    if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError(fmt::format("theta must lie in [0,1], got {}", theta));
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError(fmt::format("alpha must lie in [0,1], got {}", alpha));
    if (!(rev_star > 0.0)) throw ValidationError(fmt::format("rev_star must be > 0, got {}", rev_star));
    if (!(n_est >= 1.0)) throw ValidationError(fmt::format("n_est must be >= 1, got {}", n_est));
    if (!(f_total_est >= 0.0)) throw ValidationError(fmt::format("f_total_est must be >= 0, got {}", f_total_est));
}

InstanceCatalog::InstanceCatalog(std::vector<InstanceType> types) : types_(std::move(types)) {
    for (std::size_t j = 0; j < types_.size(); ++j) types_[j].id = static_cast<int>(j);
    validate();
    by_efficiency_.resize(types_.size());
    std::iota(by_efficiency_.begin(), by_efficiency_.end(), 0);
    by_performance_ = by_efficiency_;
    std::stable_sort(by_efficiency_.begin(), by_efficiency_.end(),
                     [&](int a, int b) { return types_[a].efficiency() > types_[b].efficiency(); });
    std::stable_sort(by_performance_.begin(), by_performance_.end(),
                     [&](int a, int b) { return types_[a].performance > types_[b].performance; });
}

InstanceCatalog InstanceCatalog::default_catalog() {
    return InstanceCatalog({{0, 1.0, 1.0}, {1, 2.0, 1.9}, {2, 4.0, 3.8}, {3, 8.0, 7.4}});
}

void InstanceCatalog::validate() const {
    if (types_.empty()) throw ValidationError("instance catalog is empty");
    for (const auto& t : types_) {
        if (!(t.price > 0.0)) throw ValidationError(fmt::format("type {} price must be > 0", t.id + 1));
        if (!(t.performance > 0.0)) throw ValidationError(fmt::format("type {} performance must be > 0", t.id + 1));
    }
}

void Job::validate(Slot T, int num_types) const {
    if (arrival < 1 || arrival > T)
        throw ValidationError(fmt::format("job {}: arrival {} outside [1,{}]", id, arrival, T));
    if (deadline < arrival + 1 || deadline > T)
        throw ValidationError(fmt::format("job {}: deadline {} outside [{},{}]", id, deadline, arrival + 1, T));
    if (static_cast<int>(demands.size()) != num_types)
        throw ValidationError(fmt::format("job {}: {} demands for {} types", id, demands.size(), num_types));
    for (int d : demands)
        if (d < 1) throw ValidationError(fmt::format("job {}: demand {} < 1", id, d));
    if (dop_cap < 1) throw ValidationError(fmt::format("job {}: dop cap {} < 1", id, dop_cap));
    if (static_cast<int>(values.size()) != max_exec_time())
        throw ValidationError(fmt::format("job {}: value table has {} entries, expected {}", id, values.size(),
                                          max_exec_time()));
    for (std::size_t e = 0; e < values.size(); ++e) {
        if (!(values[e] >= 0.0)) throw ValidationError(fmt::format("job {}: negative value at e={}", id, e + 1));
        if (e > 0 && values[e] > values[e - 1])
            throw ValidationError(fmt::format("job {}: value table increases at e={}", id, e + 1));
    }
}

Money evaluate_value(const Job& job, int e) {
    if (e < 1 || e > job.max_exec_time())
        throw std::out_of_range(fmt::format("job {}: execution time {} outside [1,{}]", job.id, e, job.max_exec_time()));
    return job.values[static_cast<std::size_t>(e - 1)];
}

}  // namespace ppsched
