#pragma once

#include <Eigen/Core>

#include "ppsched/types.hpp"

namespace ppsched {

/// Per-type, per-slot purchases and committed allocations for one run.
///
/// Rows are instance types, column t-1 is slot t. A purchase at slot t adds one
/// unit of capacity to slots t..t+tau-1 (clipped at T), so capacity(j,t) is
/// always the sliding-window sum of purchases ending at t.
class CapacityLedger {
public:
    using Matrix = Eigen::MatrixXi;

    CapacityLedger() = default;
    CapacityLedger(int num_types, Slot T, int tau);

    int num_types() const { return static_cast<int>(purchases_.rows()); }
    Slot horizon() const { return static_cast<Slot>(purchases_.cols()); }
    int tau() const { return tau_; }

    int purchased(int j, Slot t) const;
    int capacity(int j, Slot t) const;
    int committed(int j, Slot t) const;
    /// Capacity minus commitments; 0 outside [1,T].
    int available(int j, Slot t) const;

    void purchase(int j, Slot t, int count);
    /// Throws std::logic_error when count exceeds available(j,t).
    void commit(int j, Slot t, int count);
    /// Inverse of commit.
    void release(int j, Slot t, int count);

    Money purchase_cost(const InstanceCatalog& catalog) const;

    const Matrix& purchases() const { return purchases_; }
    const Matrix& capacities() const { return capacity_; }
    const Matrix& commitments() const { return committed_; }

    bool operator==(const CapacityLedger& other) const;

private:
    void check(int j, Slot t) const;

    int tau_ = 1;
    Matrix purchases_;
    Matrix capacity_;
    Matrix committed_;
};

}  // namespace ppsched
