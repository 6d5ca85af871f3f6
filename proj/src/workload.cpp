#include "ppsched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace ppsched {

ArrivalDist parse_arrival_dist(const std::string& name) {
    if (name == "normal" || name == "nor") return ArrivalDist::normal;
    if (name == "uniform" || name == "uni") return ArrivalDist::uniform;
    if (name == "constant" || name == "cons") return ArrivalDist::constant;
    throw ValidationError(fmt::format("unknown arrival distribution '{}'", name));
}

std::string to_string(ArrivalDist dist) {
    switch (dist) {
        case ArrivalDist::normal: return "normal";
        case ArrivalDist::uniform: return "uniform";
        case ArrivalDist::constant: return "constant";
    }
    return "?";
}

void ValueModel::validate() const {
    if (!(markup_lo > 0.0 && markup_lo <= markup_hi))
        throw ValidationError(fmt::format("value model markup range [{}, {}] invalid", markup_lo, markup_hi));
    if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError(fmt::format("value model beta {} outside (0,1]", beta));
}

void GenSpec::validate() const {
    if (T < 1) throw ValidationError("GenSpec.T must be >= 1");
    if (tau < 1) throw ValidationError("GenSpec.tau must be >= 1");
    if (!(users_per_slot >= 0.0)) throw ValidationError("users_per_slot must be >= 0");
    if (demand_lo < 1 || demand_lo > demand_hi)
        throw ValidationError(fmt::format("demand range [{}, {}] invalid", demand_lo, demand_hi));
    if (dop_lo < 1 || dop_lo > dop_hi) throw ValidationError(fmt::format("dop range [{}, {}] invalid", dop_lo, dop_hi));
    if (e_max < 1) throw ValidationError("e_max must be >= 1");
    value_model.validate();
    catalog.validate();
}

void TraceMapping::validate() const {
    if (!(slot_width > 0.0)) throw ValidationError("slot_width must be > 0");
    if (!(demand_scale > 0.0)) throw ValidationError("demand_scale must be > 0");
    if (e_max < 1) throw ValidationError("e_max must be >= 1");
    if (T < 1) throw ValidationError("TraceMapping.T must be >= 1");
    for (int c : {col_submit_time, col_job_id, col_task_count, col_resource_request})
        if (c < 0) throw ValidationError("column indices must be >= 0");
    value_model.validate();
    catalog.validate();
}

std::vector<int> scale_demands(int base_demand, const InstanceCatalog& catalog) {
    std::vector<int> demands(static_cast<std::size_t>(catalog.size()));
    for (int j = 0; j < catalog.size(); ++j)
        demands[j] = std::max(1, static_cast<int>(std::ceil(base_demand / catalog[j].performance - 1e-12)));
    return demands;
}

std::vector<Money> synthesize_values(const std::vector<int>& demands, int dop_cap, int exec_times,
                                     const InstanceCatalog& catalog, int tau, const ValueModel& model,
                                     std::mt19937_64& rng) {
    Money list_cost = std::numeric_limits<Money>::infinity();
    Money fallback = std::numeric_limits<Money>::infinity();
    for (int j = 0; j < catalog.size(); ++j) {
        const Money c = demands[j] * catalog[j].price / tau;
        fallback = std::min(fallback, c);
        if (demands[j] <= dop_cap) list_cost = std::min(list_cost, c);
    }
    if (!std::isfinite(list_cost)) list_cost = fallback;
    std::uniform_real_distribution<double> markup(model.markup_lo, model.markup_hi);
    const Money v_max = markup(rng) * list_cost;
    std::vector<Money> values(static_cast<std::size_t>(exec_times));
    for (int e = 1; e <= exec_times; ++e)
        values[e - 1] = std::max(0.0, v_max * (1.0 - model.beta * (e - 1) / exec_times));
    return values;
}

namespace {

int arrivals_in_slot(const GenSpec& spec, std::mt19937_64& rng) {
    switch (spec.arrival_dist) {
        case ArrivalDist::constant: return static_cast<int>(std::llround(spec.users_per_slot));
        case ArrivalDist::uniform: {
            std::uniform_int_distribution<int> count(0, static_cast<int>(std::llround(2.0 * spec.users_per_slot)));
            return count(rng);
        }
        case ArrivalDist::normal: {
            const double sd = spec.normal_stddev < 0.0 ? spec.users_per_slot / 3.0 : spec.normal_stddev;
            std::normal_distribution<double> count(spec.users_per_slot, sd);
            return std::max(0, static_cast<int>(std::llround(count(rng))));
        }
    }
    return 0;
}

}  // namespace

std::vector<Job> gen_synthetic(const GenSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<int> demand(spec.demand_lo, spec.demand_hi);
    std::uniform_int_distribution<int> dop(spec.dop_lo, spec.dop_hi);
    std::uniform_int_distribution<int> exec(1, spec.e_max);

    std::vector<Job> jobs;
    int next_id = 1;
    for (Slot a = 1; a <= spec.T; ++a) {
        const int count = arrivals_in_slot(spec, rng);
        for (int c = 0; c < count; ++c) {
            Job job;
            job.id = next_id++;
            job.arrival = a;
            job.deadline = a + exec(rng);
            job.demands = scale_demands(demand(rng), spec.catalog);
            job.dop_cap = dop(rng);
            job.values = synthesize_values(job.demands, job.dop_cap, job.max_exec_time(), spec.catalog, spec.tau,
                                           spec.value_model, rng);
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

namespace {

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delimiter)) out.push_back(field);
    if (!line.empty() && line.back() == delimiter) out.emplace_back();
    return out;
}

double parse_number(const std::string& field, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size() && field.find_first_not_of(" \t\r", used) != std::string::npos)
            throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(fmt::format("trace line {}: cannot parse {} from '{}'", line_no, what, field));
    }
}

struct TraceJob {
    double submit = 0.0;
    long long tasks = 0;
    double request = 0.0;
    int first_line = 0;
};

}  // namespace

TraceIngest ingest_trace(std::istream& in, const TraceMapping& mapping) {
    mapping.validate();
    const int needed = 1 + std::max({mapping.col_submit_time, mapping.col_job_id, mapping.col_task_count,
                                     mapping.col_resource_request});
    std::map<std::string, TraceJob> by_id;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && mapping.has_header) continue;
        if (line.empty()) continue;
        const auto cols = split(line, mapping.delimiter);
        if (static_cast<int>(cols.size()) < needed)
            throw ValidationError(
                fmt::format("trace line {}: expected at least {} fields, found {}", line_no, needed, cols.size()));
        const std::string& id = cols[mapping.col_job_id];
        if (id.empty()) throw ValidationError(fmt::format("trace line {}: empty job id", line_no));
        const double submit = parse_number(cols[mapping.col_submit_time], line_no, "submit time");
        const double tasks = parse_number(cols[mapping.col_task_count], line_no, "task count");
        const double request = parse_number(cols[mapping.col_resource_request], line_no, "resource request");
        if (submit < 0.0 || tasks < 1.0 || request <= 0.0)
            throw ValidationError(fmt::format("trace line {}: out-of-range field values", line_no));
        auto [it, fresh] = by_id.try_emplace(id, TraceJob{submit, 0, 0.0, line_no});
        it->second.submit = std::min(it->second.submit, submit);
        it->second.tasks += static_cast<long long>(std::llround(tasks));
        it->second.request += request;
    }

    std::vector<TraceJob> rows;
    int dropped = 0;
    for (const auto& [id, row] : by_id) {
        const Slot arrival = static_cast<Slot>(std::floor(row.submit / mapping.slot_width)) + 1;
        if (arrival > mapping.T) {
            ++dropped;
            continue;
        }
        rows.push_back(row);
    }
    if (dropped > 0)
        std::cerr << fmt::format("warning: dropped {} trace job(s) arriving after slot {}\n", dropped, mapping.T);
    if (rows.empty()) throw ValidationError("trace produced no jobs");
    std::stable_sort(rows.begin(), rows.end(), [](const TraceJob& a, const TraceJob& b) {
        return a.submit != b.submit ? a.submit < b.submit : a.first_line < b.first_line;
    });

    std::mt19937_64 rng(mapping.seed);
    std::uniform_int_distribution<int> exec(1, mapping.e_max);
    TraceIngest result;
    result.dropped_rows = dropped;
    int next_id = 1;
    for (const auto& row : rows) {
        Job job;
        job.id = next_id++;
        job.arrival = static_cast<Slot>(std::floor(row.submit / mapping.slot_width)) + 1;
        job.deadline = job.arrival + exec(rng);
        job.dop_cap = static_cast<int>(std::min<long long>(row.tasks, std::numeric_limits<int>::max()));
        job.demands = scale_demands(std::max(1, static_cast<int>(std::ceil(row.request * mapping.demand_scale - 1e-12))),
                                    mapping.catalog);
        job.values = synthesize_values(job.demands, job.dop_cap, job.max_exec_time(), mapping.catalog, mapping.tau,
                                       mapping.value_model, rng);
        result.jobs.push_back(std::move(job));
    }
    return result;
}

TraceIngest ingest_trace(const std::string& path, const TraceMapping& mapping) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open trace file '{}'", path));
    return ingest_trace(in, mapping);
}

void validate_workload(const std::vector<Job>& jobs, Slot T, int num_types) {
    Slot last = 0;
    for (const auto& job : jobs) {
        job.validate(T, num_types);
        if (job.arrival < last) throw ValidationError(fmt::format("job {} is out of arrival order", job.id));
        last = job.arrival;
    }
}

void write_workload(std::ostream& out, const std::vector<Job>& jobs) {
    out << "# ppsched workload v1\n# id\tarrival\tdeadline\tdemands\tdop_cap\tvalues\n";
    for (const auto& job : jobs) {
        fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{:.17g}\n", job.id, job.arrival, job.deadline, fmt::join(job.demands, ","),
                   job.dop_cap, fmt::join(job.values, ","));
    }
}

std::vector<Job> read_workload(std::istream& in) {
    std::vector<Job> jobs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        Job job;
        std::string demands, values;
        if (!(fields >> job.id >> job.arrival >> job.deadline >> demands >> job.dop_cap >> values))
            throw ValidationError(fmt::format("workload line {}: expected 6 fields", line_no));
        try {
            for (const auto& d : split(demands, ',')) job.demands.push_back(std::stoi(d));
            for (const auto& v : split(values, ',')) job.values.push_back(std::stod(v));
        } catch (const std::exception&) {
            throw ValidationError(fmt::format("workload line {}: malformed list", line_no));
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

}  // namespace ppsched
