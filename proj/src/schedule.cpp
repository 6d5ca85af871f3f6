#include "ppsched/schedule.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ppsched {

Money Schedule::total_payment() const {
    Money total = 0.0;
    for (const auto& a : accepted) total += a.payment;
    return total;
}

Money Schedule::purchase_cost(const InstanceCatalog& catalog) const {
    Money total = 0.0;
    for (int j = 0; j < purchases.rows(); ++j) total += catalog[j].price * purchases.row(j).sum();
    return total;
}

std::optional<Acceptance> Schedule::acceptance_of(int job_id) const {
    for (const auto& a : accepted)
        if (a.job_id == job_id) return a;
    return std::nullopt;
}

Schedule make_schedule(const CapacityLedger& ledger, std::vector<Acceptance> accepted,
                       std::vector<Allocation> allocations) {
    Schedule s;
    s.accepted = std::move(accepted);
    s.allocations = std::move(allocations);
    s.purchases = ledger.purchases();
    return s;
}

void write_schedule(std::ostream& out, const Schedule& schedule) {
    fmt::print(out, "# ppsched schedule v1 types={} slots={}\n", schedule.purchases.rows(), schedule.purchases.cols());
    for (const auto& a : schedule.accepted) fmt::print(out, "accept {} {} {:.17g}\n", a.job_id, a.e, a.payment);
    for (const auto& y : schedule.allocations)
        fmt::print(out, "alloc {} {} {} {}\n", y.job_id, y.type + 1, y.slot, y.count);
    for (int j = 0; j < schedule.purchases.rows(); ++j)
        for (int t = 0; t < schedule.purchases.cols(); ++t)
            if (schedule.purchases(j, t) != 0) fmt::print(out, "purchase {} {} {}\n", j + 1, t + 1, schedule.purchases(j, t));
}

namespace {

[[noreturn]] void bad_line(int line_no, const std::string& what) {
    throw ValidationError(fmt::format("schedule line {}: {}", line_no, what));
}

}  // namespace

Schedule read_schedule(std::istream& in) {
    std::string line;
    int line_no = 0;
    int types = -1;
    int slots = -1;
    Schedule s;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (types < 0 && std::sscanf(line.c_str(), "# ppsched schedule v1 types=%d slots=%d", &types, &slots) == 2) {
                if (types < 1 || slots < 1) bad_line(line_no, "bad shape in header");
                s.purchases = Eigen::MatrixXi::Zero(types, slots);
            }
            continue;
        }
        if (types < 0) bad_line(line_no, "missing '# ppsched schedule v1 types=<m> slots=<T>' header");
        std::istringstream fields(line);
        std::string kind;
        fields >> kind;
        if (kind == "accept") {
            Acceptance a;
            if (!(fields >> a.job_id >> a.e >> a.payment)) bad_line(line_no, "expected: accept <job> <e> <payment>");
            s.accepted.push_back(a);
        } else if (kind == "alloc") {
            Allocation y;
            if (!(fields >> y.job_id >> y.type >> y.slot >> y.count))
                bad_line(line_no, "expected: alloc <job> <type> <slot> <count>");
            y.type -= 1;
            if (y.type < 0 || y.type >= types) bad_line(line_no, "type out of range");
            s.allocations.push_back(y);
        } else if (kind == "purchase") {
            int j = 0, t = 0, count = 0;
            if (!(fields >> j >> t >> count)) bad_line(line_no, "expected: purchase <type> <slot> <count>");
            if (j < 1 || j > types || t < 1 || t > slots) bad_line(line_no, "purchase cell out of range");
            s.purchases(j - 1, t - 1) += count;
        } else {
            bad_line(line_no, fmt::format("unknown record '{}'", kind));
        }
    }
    if (types < 0) throw ValidationError("schedule file has no header");
    return s;
}

void write_decision_log(std::ostream& out, const Outcome& outcome) {
    out << "algorithm\tjob_id\tarrival\tdecision\te_star\tpayment\test_cost\tincrement\n";
    for (const auto& r : outcome.per_job) {
        fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{:.17g}\t{:.17g}\t{:.17g}\n", outcome.algorithm, r.job_id, r.arrival,
                   r.accepted ? "accept" : "reject", r.e, r.payment, r.est_cost, r.increment);
    }
}

std::vector<JobRecord> read_decision_log(std::istream& in) {
    std::vector<JobRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;
        std::istringstream fields(line);
        std::string algorithm, decision, increment;
        JobRecord r;
        if (!(fields >> algorithm >> r.job_id >> r.arrival >> decision >> r.e >> r.payment >> r.est_cost >> increment))
            throw ValidationError(fmt::format("decision log line {}: malformed", line_no));
        if (decision != "accept" && decision != "reject")
            throw ValidationError(fmt::format("decision log line {}: unknown decision '{}'", line_no, decision));
        r.accepted = decision == "accept";
        // -inf is written for infeasible increments
        r.increment = increment == "-inf" ? -std::numeric_limits<double>::infinity() : std::stod(increment);
        records.push_back(r);
    }
    return records;
}

void write_outcome_summary(std::ostream& out, const Outcome& o) {
    fmt::print(out, "algorithm\t{}\nrev\t{:.17g}\nsat\t{:.17g}\nobj\t{:.17g}\ntotal_payment\t{:.17g}\n", o.algorithm,
               o.rev, o.sat, o.obj, o.total_payment);
    fmt::print(out, "total_cost\t{:.17g}\naccepted\t{}\nrejected\t{}\nwall_time_s\t{:.6f}\n", o.total_cost,
               o.accepted_count, o.rejected_count, o.wall_time);
}

}  // namespace ppsched
