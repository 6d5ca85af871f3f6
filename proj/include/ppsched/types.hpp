#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppsched {

using Slot = int;
using Money = double;

/// Thrown when an input violates a documented invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Run-wide parameters. Slots are 1-indexed: 1..T.
struct SimConfig {
    Slot T = 1;
    int tau = 6;
    double theta = 0.5;
    double alpha = 0.5;
    Money rev_star = 1.0;
    double n_est = 1.0;
    Money f_total_est = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct InstanceType {
    int id = 0;  // 0-based position in the catalog
    Money price = 1.0;  // charged once per purchase; the instance lives tau slots
    double performance = 1.0;

    double efficiency() const { return performance / price; }
};

class InstanceCatalog {
public:
    InstanceCatalog() = default;
    explicit InstanceCatalog(std::vector<InstanceType> types);

    /// Four types with price ratios 1:2:4:8 and performance 1:1.9:3.8:7.4.
    static InstanceCatalog default_catalog();

    int size() const { return static_cast<int>(types_.size()); }
    const InstanceType& operator[](int j) const { return types_.at(static_cast<std::size_t>(j)); }
    const std::vector<InstanceType>& types() const { return types_; }

    /// Type indices, best performance/price first (ties: lower index).
    const std::vector<int>& by_efficiency() const { return by_efficiency_; }
    /// Type indices, highest performance first (ties: lower index).
    const std::vector<int>& by_performance() const { return by_performance_; }

    void validate() const;

private:
    std::vector<InstanceType> types_;
    std::vector<int> by_efficiency_;
    std::vector<int> by_performance_;
};

struct Job {
    int id = 0;
    Slot arrival = 1;
    Slot deadline = 2;
    std::vector<int> demands;  // D_{i,j} in instance-slot units, one per catalog type
    int dop_cap = 1;
    std::vector<Money> values;  // values[e-1] is the valuation at execution time e

    int max_exec_time() const { return deadline - arrival; }
    Money max_value() const { return values.empty() ? 0.0 : values.front(); }
    Money min_value() const { return values.empty() ? 0.0 : values.back(); }

    /// Checks all job invariants against a horizon and type count.
    void validate(Slot T, int num_types) const;
};

/// Valuation at execution time e; throws std::out_of_range outside 1..d-a.
Money evaluate_value(const Job& job, int e);

}  // namespace ppsched
