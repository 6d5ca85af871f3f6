#include "ppsched/ledger.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>

namespace ppsched {

CapacityLedger::CapacityLedger(int num_types, Slot T, int tau)
    : tau_(tau),
      purchases_(Matrix::Zero(num_types, T)),
      capacity_(Matrix::Zero(num_types, T)),
      committed_(Matrix::Zero(num_types, T)) {
    if (num_types < 1 || T < 1 || tau < 1)
        throw ValidationError(fmt::format("bad ledger shape: types={} T={} tau={}", num_types, T, tau));
}

void CapacityLedger::check(int j, Slot t) const {
    if (j < 0 || j >= num_types() || t < 1 || t > horizon())
        throw std::out_of_range(fmt::format("ledger cell (type {}, slot {}) out of range", j + 1, t));
}

int CapacityLedger::purchased(int j, Slot t) const {
    check(j, t);
    return purchases_(j, t - 1);
}

int CapacityLedger::capacity(int j, Slot t) const {
    if (t < 1 || t > horizon()) return 0;
    check(j, t);
    return capacity_(j, t - 1);
}

int CapacityLedger::committed(int j, Slot t) const {
    if (t < 1 || t > horizon()) return 0;
    check(j, t);
    return committed_(j, t - 1);
}

int CapacityLedger::available(int j, Slot t) const {
    if (t < 1 || t > horizon()) return 0;
    check(j, t);
    return capacity_(j, t - 1) - committed_(j, t - 1);
}

void CapacityLedger::purchase(int j, Slot t, int count) {
    check(j, t);
    if (count < 0) throw std::invalid_argument("negative purchase");
    purchases_(j, t - 1) += count;
    const Slot last = std::min<Slot>(horizon(), t + tau_ - 1);
    capacity_.row(j).segment(t - 1, last - t + 1).array() += count;
}

void CapacityLedger::commit(int j, Slot t, int count) {
    check(j, t);
    if (count < 0) throw std::invalid_argument("negative commitment");
    if (count > available(j, t))
        throw std::logic_error(fmt::format("commit of {} exceeds free capacity {} at (type {}, slot {})", count,
                                           available(j, t), j + 1, t));
    committed_(j, t - 1) += count;
}

void CapacityLedger::release(int j, Slot t, int count) {
    check(j, t);
    if (count < 0 || count > committed_(j, t - 1))
        throw std::logic_error(fmt::format("release of {} exceeds commitment at (type {}, slot {})", count, j + 1, t));
    committed_(j, t - 1) -= count;
}

Money CapacityLedger::purchase_cost(const InstanceCatalog& catalog) const {
    Money total = 0.0;
    for (int j = 0; j < num_types(); ++j) total += catalog[j].price * purchases_.row(j).sum();
    return total;
}

bool CapacityLedger::operator==(const CapacityLedger& other) const {
    if (num_types() != other.num_types() || horizon() != other.horizon()) return false;
    return tau_ == other.tau_ && purchases_ == other.purchases_ && capacity_ == other.capacity_ &&
           committed_ == other.committed_;
}

}  // namespace ppsched
