#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ppsched/ledger.hpp"
#include "ppsched/types.hpp"

using namespace ppsched;
using ppsched::test::make_job;

TEST_CASE("evaluate_value reads the value table") {
    const Job job = make_job(1, 1, 5, {4, 2}, 5, {100, 80, 50, 30});
    CHECK(evaluate_value(job, 1) == 100);
    CHECK(evaluate_value(job, 4) == 30);
    CHECK_THROWS_AS(evaluate_value(job, 5), std::out_of_range);
    CHECK_THROWS_AS(evaluate_value(job, 0), std::out_of_range);
}

TEST_CASE("job invariants") {
    CHECK_NOTHROW(make_job(1, 1, 5, {4, 2}, 5, {100, 80, 50, 30}).validate(5, 2));
    CHECK_THROWS_AS(make_job(1, 1, 3, {4}, 5, {5, 6}).validate(5, 1), ValidationError);   // increasing values
    CHECK_THROWS_AS(make_job(1, 1, 3, {4}, 5, {5, -1}).validate(5, 1), ValidationError);  // negative value
    CHECK_THROWS_AS(make_job(1, 2, 2, {4}, 5, {}).validate(5, 1), ValidationError);       // d = a
    CHECK_THROWS_AS(make_job(1, 1, 6, {4}, 5, {5, 5, 5, 5, 5}).validate(5, 1), ValidationError);  // d > T
    CHECK_THROWS_AS(make_job(1, 1, 3, {0}, 5, {5, 5}).validate(5, 1), ValidationError);
    CHECK_THROWS_AS(make_job(1, 1, 3, {4}, 0, {5, 5}).validate(5, 1), ValidationError);
    CHECK_THROWS_AS(make_job(1, 1, 3, {4, 4}, 5, {5, 5}).validate(5, 1), ValidationError);  // type count
}

TEST_CASE("sim config invariants") {
    SimConfig c;
    CHECK_NOTHROW(c.validate());
    c.theta = 1.5;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.rev_star = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.n_est = 0.5;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = {};
    c.tau = 0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("catalog ordering") {
    const auto cat = InstanceCatalog::default_catalog();
    CHECK(cat.size() == 4);
    CHECK(cat.by_efficiency().front() == 0);   // 1.0/1 beats 1.9/2, 3.8/4, 7.4/8
    CHECK(cat.by_performance().front() == 3);
    CHECK_THROWS_AS(InstanceCatalog({{0, 0.0, 1.0}}), ValidationError);
}

TEST_CASE("ledger availability") {
    SUBCASE("single purchase lives tau slots") {
        CapacityLedger l(1, 12, 6);
        l.purchase(0, 3, 1);
        for (Slot t = 3; t <= 8; ++t) CHECK(l.available(0, t) == 1);
        CHECK(l.available(0, 9) == 0);
        CHECK(l.available(0, 2) == 0);
    }
    SUBCASE("commitment consumes capacity") {
        CapacityLedger l(1, 12, 6);
        l.purchase(0, 3, 1);
        l.commit(0, 4, 1);
        CHECK(l.available(0, 4) == 0);
        CHECK(l.available(0, 5) == 1);
        CHECK_THROWS_AS(l.commit(0, 4, 1), std::logic_error);
    }
    SUBCASE("empty ledger") {
        CapacityLedger l(2, 5, 3);
        for (int j = 0; j < 2; ++j)
            for (Slot t = 1; t <= 5; ++t) CHECK(l.available(j, t) == 0);
        CHECK(l.purchase_cost(InstanceCatalog({{0, 1, 1}, {1, 2, 2}})) == 0.0);
    }
    SUBCASE("window is clipped at the horizon") {
        CapacityLedger l(1, 4, 6);
        l.purchase(0, 3, 2);
        CHECK(l.capacity(0, 4) == 2);
        CHECK(l.available(0, 5) == 0);
    }
}

TEST_CASE("property: ledger capacity is the tau-window purchase sum and commit/release round-trips") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const Slot T = 1 + static_cast<Slot>(rng() % 15);
        const int tau = 1 + static_cast<int>(rng() % 6);
        CapacityLedger l(m, T, tau);
        std::vector<std::vector<int>> r(m, std::vector<int>(T + 1, 0));
        for (int k = 0; k < 10; ++k) {
            const int j = static_cast<int>(rng() % m);
            const Slot t = 1 + static_cast<Slot>(rng() % T);
            const int c = static_cast<int>(rng() % 3);
            l.purchase(j, t, c);
            r[j][t] += c;
        }
        for (int j = 0; j < m; ++j)
            for (Slot t = 1; t <= T; ++t) {
                int window = 0;
                for (Slot s = std::max(1, t - tau + 1); s <= t; ++s) window += r[j][s];
                REQUIRE(l.capacity(j, t) == window);
            }
        const CapacityLedger before = l;
        std::vector<std::tuple<int, Slot, int>> done;
        for (int k = 0; k < 10; ++k) {
            const int j = static_cast<int>(rng() % m);
            const Slot t = 1 + static_cast<Slot>(rng() % T);
            const int c = l.available(j, t) > 0 ? 1 + static_cast<int>(rng() % l.available(j, t)) : 0;
            if (c == 0) continue;
            l.commit(j, t, c);
            done.emplace_back(j, t, c);
            REQUIRE(l.available(j, t) >= 0);
        }
        for (auto it = done.rbegin(); it != done.rend(); ++it) l.release(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it));
        REQUIRE(l == before);
    }
}
