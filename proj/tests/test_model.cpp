#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "otoprv/model.hpp"
#include "test_support.hpp"

using namespace otoprv;
using testing::matrix_instance;
using testing::point_instance;

namespace {

constexpr double inf = kUnreachable;

Instance line3() {
    // a-b 3, b-c 4, a-c 2 (not metric on purpose: splice saving is 5)
    return matrix_instance({2, 2, 2}, {{0, 3, 2}, {3, 0, 4}, {2, 4, 0}}, 2, 100);
}

}  // namespace

TEST_CASE("reward values") {
    CHECK(reward(5, 0, 0.5) == 0.0);
    CHECK(reward(5, 1, 0.7) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(reward(3, 4, 0.5) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(reward(0, 3, 0.5) == 0.0);
}

TEST_CASE("marginal gain values") {
    CHECK(marginal_gain(2, 0, 0.5) == doctest::Approx(2.0));
    CHECK(marginal_gain(2, 1, 0.5) == doctest::Approx(2 * (std::sqrt(2.0) - 1)).epsilon(1e-12));
    CHECK(marginal_gain(2, 1, 0.5) == doctest::Approx(0.828427).epsilon(1e-6));
}

TEST_CASE("marginal gain is the reward difference and strictly diminishing") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> w(0.01, 100), b(0.01, 0.99);
    std::uniform_int_distribution<int> q(0, 50);
    for (int s = 0; s < 20000; ++s) {
        const double ws = w(rng), bs = b(rng);
        const int qs = q(rng);
        const double g = marginal_gain(ws, qs, bs);
        CHECK(g > 0.0);
        CHECK(g == doctest::Approx(ws * (std::pow(qs + 1.0, bs) - std::pow(double(qs), bs))));
        CHECK(g > marginal_gain(ws, qs + 1, bs));
        CHECK(reward(ws, qs + 1, bs) > reward(ws, qs, bs));
    }
}

TEST_CASE("instance invariants") {
    const std::vector<std::vector<double>> m{{0, 1}, {1, 0}};
    CHECK_NOTHROW(matrix_instance({1, 1}, m, 1, 10, 0.5));
    CHECK_THROWS_AS(matrix_instance({1, 1}, m, 1, 10, 0.0), ModelError);
    CHECK_THROWS_AS(matrix_instance({1, 1}, m, 1, 10, 1.0), ModelError);
    CHECK_THROWS_AS(matrix_instance({1, 1}, m, 1, 0.0, 0.5), ModelError);
    CHECK_THROWS_AS(matrix_instance({1, 1}, m, 0, 10, 0.5), ModelError);
    CHECK_THROWS_AS(matrix_instance({1, -1}, m, 1, 10, 0.5), ModelError);
    CHECK_THROWS_AS(matrix_instance({1, 1, 1}, m, 1, 10, 0.5), ModelError);
    std::vector<Poi> bad_ids{{0, 1, std::nullopt}, {0, 1, std::nullopt}};
    CHECK_THROWS_AS(Instance(bad_ids, TravelMatrix::from_rows(m), 1, 10, 0.5), ModelError);
}

TEST_CASE("travel matrix rows") {
    CHECK_THROWS_AS(TravelMatrix::from_rows({{0, 1}, {1}}), ModelError);
    CHECK_THROWS_AS(TravelMatrix::from_rows({{1, 1}, {1, 0}}), ModelError);
    CHECK_THROWS_AS(TravelMatrix::from_rows({{0, -1}, {1, 0}}), ModelError);
    const auto t = TravelMatrix::from_rows({{0, inf}, {2, 0}});
    CHECK_FALSE(t.reachable(0, 1));
    CHECK(t.reachable(1, 0));
    CHECK(TravelMatrix::from_rows(t.rows()) == t);
}

TEST_CASE("route cost") {
    const auto inst = matrix_instance({1, 1, 1}, {{0, 12.5, 3}, {12.5, 0, inf}, {3, inf, 0}}, 1, 100);
    const std::vector<PoiId> one{1}, ab{0, 1}, broken{2, 0, 1, 2};
    CHECK(route_cost(inst, one) == 0.0);
    CHECK(route_cost(inst, ab) == 12.5);
    CHECK(route_cost(inst, std::vector<PoiId>{2, 0, 1}) == 15.5);
    CHECK(route_cost(inst, broken) == inf);
}

TEST_CASE("evaluate examples") {
    const auto inst = matrix_instance({7, 4, 1}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 2, 10, 0.5);
    SUBCASE("empty") {
        const Solution s = evaluate(inst, {Route{}, Route{}});
        CHECK(s.objective == 0.0);
        CHECK(s.visit_counts == std::vector<int>{0, 0, 0});
    }
    SUBCASE("single POI") {
        const Solution s = evaluate(inst, {Route{{0}, 0}, Route{}});
        CHECK(s.objective == doctest::Approx(7.0));
    }
    SUBCASE("shared POI") {
        const Solution s = evaluate(inst, {Route{{1}, 0}, Route{{1}, 0}});
        CHECK(s.objective == doctest::Approx(5.65685).epsilon(1e-6));
        CHECK(s.visit_counts[1] == 2);
    }
}

TEST_CASE("evaluate names the violated rule and route") {
    const auto inst = matrix_instance({1, 1, 1}, {{0, 6, inf}, {6, 0, 6}, {inf, 6, 0}}, 2, 10);
    const auto rule_of = [&](std::vector<Route> routes) {
        try {
            evaluate(inst, std::move(routes));
        } catch (const ValidationError& e) {
            return std::make_pair(e.route_index(), e.rule());
        }
        FAIL("no violation reported");
        return std::make_pair(std::size_t{0}, RouteRule::Budget);
    };
    CHECK(rule_of({Route{}, Route{{0, 1, 2}}}) == std::make_pair(std::size_t{1}, RouteRule::Budget));
    CHECK(rule_of({Route{{1, 1}}, Route{}}) == std::make_pair(std::size_t{0}, RouteRule::Duplicate));
    CHECK(rule_of({Route{}, Route{{0, 2}}}) == std::make_pair(std::size_t{1}, RouteRule::Unreachable));
    CHECK(rule_of({Route{{5}}, Route{}}) == std::make_pair(std::size_t{0}, RouteRule::UnknownPoi));
    CHECK_THROWS_AS(evaluate(inst, {Route{}}), ValidationError);
}

TEST_CASE("budget tolerance") {
    const auto inst = matrix_instance({1, 1}, {{0, 10 + 5e-10}, {10, 0}}, 1, 10);
    CHECK_NOTHROW(evaluate(inst, {Route{{0, 1}, 0}}));
    const auto over = matrix_instance({1, 1}, {{0, 10 + 1e-8}, {10, 0}}, 1, 10);
    CHECK_THROWS_AS(evaluate(over, {Route{{0, 1}, 0}}), ValidationError);
}

TEST_CASE("delta_remove examples") {
    const auto inst = line3();
    Solution s = evaluate(inst, {Route{{0, 1, 2}}, Route{{2}}});
    SUBCASE("q = 1 middle visit") {
        // splice a-b-c to a-c saves 3 + 4 - 2 = 5
        const RemovalDelta d = delta_remove(inst, s, 0, 1);
        CHECK(d.reward_loss == doctest::Approx(2.0));
        CHECK(d.cost_saving == doctest::Approx(5.0));
        CHECK(d.value() == doctest::Approx(0.4));
        CHECK(d.admissible);
    }
    SUBCASE("q = 2") {
        const RemovalDelta d = delta_remove(inst, s, 0, 2);
        CHECK(d.reward_loss == doctest::Approx(0.828427).epsilon(1e-6));
        CHECK(d.cost_saving == doctest::Approx(4.0));
    }
    SUBCASE("lone visit saves nothing") {
        const RemovalDelta d = delta_remove(inst, s, 1, 2);
        CHECK(d.cost_saving == 0.0);
    }
    CHECK_THROWS(delta_remove(inst, s, 1, 0));
}

TEST_CASE("delta_remove on a Euclidean route obeys the triangle inequality") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 20);
    for (int t = 0; t < 200; ++t) {
        std::vector<Point> pts{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        const auto inst = point_instance({1, 1, 1}, pts, 1, 1000);
        const Solution s = evaluate(inst, {Route{{0, 1, 2}}});
        const RemovalDelta d = delta_remove(inst, s, 0, 1);
        const double expect = inst.cost(0, 1) + inst.cost(1, 2) - inst.cost(0, 2);
        CHECK(d.cost_saving == doctest::Approx(expect));
        CHECK(d.cost_saving >= -1e-12);
    }
}

TEST_CASE("delta_remove reports a missing splice leg as inadmissible") {
    const auto inst = matrix_instance({1, 1, 1}, {{0, 1, inf}, {1, 0, 1}, {inf, 1, 0}}, 1, 10);
    const Solution s = evaluate(inst, {Route{{0, 1, 2}}});
    CHECK_FALSE(delta_remove(inst, s, 0, 1).admissible);
    CHECK(delta_remove(inst, s, 0, 0).admissible);
}

TEST_CASE("delta_remove matches re-evaluation after the splice") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = testing::random_instance(10, 3, 60, seed);
        std::mt19937_64 rng(seed);
        std::vector<Route> routes(3);
        for (auto& r : routes) {
            std::vector<PoiId> ids(10);
            std::iota(ids.begin(), ids.end(), 0);
            std::shuffle(ids.begin(), ids.end(), rng);
            for (PoiId p : ids) {
                r.visits.push_back(p);
                if (route_cost(inst, r.visits) > inst.budget()) r.visits.pop_back();
            }
        }
        const Solution s = evaluate(inst, routes);
        for (std::size_t k = 0; k < routes.size(); ++k)
            for (PoiId p : routes[k].visits) {
                const RemovalDelta d = delta_remove(inst, s, k, p);
                auto changed = routes;
                auto& v = changed[k].visits;
                v.erase(std::find(v.begin(), v.end(), p));
                const double obj_after = testing::oracle_objective(inst, changed);
                CHECK(s.objective - obj_after == doctest::Approx(d.reward_loss).epsilon(1e-9));
                CHECK(s.routes[k].cost - testing::oracle_cost(inst, v) ==
                      doctest::Approx(d.cost_saving).epsilon(1e-9));
            }
    }
}

TEST_CASE("in-place edits stay consistent with full evaluation") {
    const Instance inst = testing::random_instance(12, 4, 80, 3);
    Solution s = empty_solution(inst);
    std::mt19937_64 rng(17);
    for (int step = 0; step < 2000; ++step) {
        const auto k = std::size_t(rng() % 4);
        Route& r = s.routes[k];
        if (r.empty() || rng() % 3) {
            const PoiId p = PoiId(rng() % 12);
            if (r.contains(p)) continue;
            const std::size_t pos = rng() % (r.size() + 1);
            auto trial = r.visits;
            trial.insert(trial.begin() + std::ptrdiff_t(pos), p);
            if (route_cost(inst, trial) > inst.budget()) continue;
            insert_visit(inst, s, k, pos, p);
        } else if (rng() % 8 == 0) {
            clear_route(inst, s, k);
        } else {
            remove_visit(inst, s, k, rng() % r.size());
        }
        REQUIRE(testing::oracle_feasible(inst, s));
        REQUIRE_FALSE(find_violation(inst, s).has_value());
    }
}

TEST_CASE("find_violation catches stale caches") {
    const auto inst = line3();
    Solution s = evaluate(inst, {Route{{0, 1}}, Route{{2}}});
    CHECK_FALSE(find_violation(inst, s).has_value());
    Solution wrong_obj = s;
    wrong_obj.objective += 1e-3;
    CHECK(find_violation(inst, wrong_obj)->find("objective") != std::string::npos);
    Solution wrong_counts = s;
    wrong_counts.visit_counts[0] = 2;
    CHECK(find_violation(inst, wrong_counts).has_value());
    Solution wrong_cost = s;
    wrong_cost.routes[0].cost = 1;
    CHECK(find_violation(inst, wrong_cost)->find("cached cost") != std::string::npos);
    Solution dup = s;
    dup.routes[1].visits = {2, 2};
    CHECK(find_violation(inst, dup)->find("duplicate") != std::string::npos);
}
