#include "doctest.h"

#include "decide/mixed_criteria.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace decide;

namespace {

Prior<double> prior2(double a, double b) {
    Vector<double> v(2);
    v << a, b;
    return Prior<double>(v);
}

std::vector<std::size_t> as_sizes(const RegionScope& scope) {
    std::vector<std::size_t> out;
    for (Index s : scope) out.push_back(static_cast<std::size_t>(s));
    return out;
}

} // namespace

TEST_CASE("mixed bayes stays at a vertex") {
    const auto p = fixtures::p1();
    auto sol = solve_bayes_mixed(p, prior2(0.6, 0.4), RegionScope::all(2));
    CHECK(sol.delta[0] == 1.0);
    CHECK(sol.value == doctest::Approx(0.6));
    CHECK(sol.is_pure);
    CHECK_FALSE(sol.tied);

    sol = solve_bayes_mixed(p, prior2(0.5, 0.5), RegionScope::all(2));
    CHECK(sol.tied);
    CHECK(sol.value == doctest::Approx(0.5));

    sol = solve_bayes_mixed(fixtures::p2(), prior2(0.3, 0.7), RegionScope::all(2));
    CHECK(sol.delta[0] == 1.0);
    CHECK(sol.value == doctest::Approx(2.0));

    CHECK_THROWS_AS(solve_bayes_mixed(p, prior2(0, 1), RegionScope({0}, 2)), DegeneratePosteriorError);
}

TEST_CASE("mixed maximin") {
    auto sol = solve_maximin_mixed(fixtures::p1(), RegionScope::all(2));
    CHECK(std::abs(sol.delta[1] - 0.5) <= 1e-9);
    CHECK(std::abs(sol.value - 0.5) <= 1e-9);
    CHECK_FALSE(sol.is_pure);
    CHECK_FALSE(sol.tied);

    sol = solve_maximin_mixed(fixtures::p1(), RegionScope({1}, 2));
    CHECK(sol.delta[1] == doctest::Approx(1.0));
    CHECK(sol.is_pure);

    // P3: 1 - d = 2 d -> d = 1/3, value 2/3; grid oracle at step 1e-5 agrees
    const auto p3 = fixtures::p3();
    sol = solve_maximin_mixed(p3, RegionScope::all(2));
    const auto grid = oracle::grid_maximin(oracle::to_table(p3.welfare()), {0, 1}, 1e-5);
    CHECK(sol.delta[1] == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(sol.value == doctest::Approx(2.0 / 3).epsilon(1e-9));
    CHECK(std::abs(grid.value - 2.0 / 3) <= 1e-5);
    CHECK(std::abs(grid.delta[1] - 1.0 / 3) <= 1e-5);

    // every delta is optimal when both actions share the binding minimum
    Matrix<double> w(2, 2);
    w << 3, 1,
         2, 1;
    sol = solve_maximin_mixed(DecisionProblem<double>(w), RegionScope::all(2));
    CHECK(sol.value == doctest::Approx(1.0));
    CHECK(sol.tied);
}

TEST_CASE("mixed minimax regret") {
    auto sol = solve_mmr_mixed(fixtures::p1(), RegionScope::all(2));
    CHECK(std::abs(sol.delta[1] - 0.5) <= 1e-9);
    CHECK(std::abs(sol.value - 0.5) <= 1e-9);
    CHECK_FALSE(sol.tied);
    const auto grid = oracle::grid_mmr(oracle::to_table(fixtures::p1().welfare()), {0, 1}, 1e-5);
    CHECK(std::abs(grid.value - 0.5) <= 1e-5);

    sol = solve_mmr_mixed(fixtures::p1(), RegionScope({0}, 2));
    CHECK(sol.value == doctest::Approx(0.0));
    CHECK(sol.delta[0] == doctest::Approx(1.0));

    sol = solve_mmr_mixed(fixtures::p2(), RegionScope::all(2));
    CHECK(sol.value == doctest::Approx(0.0));
    CHECK(sol.delta[0] == doctest::Approx(1.0));

    const auto prof = regret_profile(fixtures::p1(), ChoiceDistribution<double>::binary(0.5),
                                     RegionScope::all(2));
    CHECK(prof[0] == doctest::Approx(0.5));
    CHECK(prof[1] == doctest::Approx(0.5));
}

TEST_CASE("ex-ante mixed") {
    SUBCASE("single block equals the region solve") {
        const auto sol = solve_exante_mixed(fixtures::p1(), IdentificationPartition::single_block(2),
                                            Criterion::MinimaxRegret);
        CHECK(sol.value == doctest::Approx(0.5));
    }
    SUBCASE("point identification has zero regret") {
        std::mt19937_64 rng(2);
        DecisionProblem<double> p(oracle::random_welfare(rng, 3, 5));
        const auto sol = solve_exante_mixed(p, IdentificationPartition::singletons(5), Criterion::MinimaxRegret);
        CHECK(sol.value <= 1e-12);
    }
    SUBCASE("two binary blocks: the larger block regret") {
        // block {s0,s1}: M_a = M_b = 1 -> 0.5; block {s2,s3}: M_a = 0.4,
        // M_b = 0.4 -> 0.2
        Matrix<double> w(2, 4);
        w << 1, 0, 0.4, 0.0,
             0, 1, 0.0, 0.4;
        DecisionProblem<double> p(w);
        const IdentificationPartition part({{0, 1}, {2, 3}}, 4);
        const auto sol = solve_exante_mixed(p, part, Criterion::MinimaxRegret);
        CHECK(sol.blocks[0].value == doctest::Approx(0.5));
        CHECK(sol.blocks[1].value == doctest::Approx(0.2));
        CHECK(sol.value == doctest::Approx(0.5));
        const double joint = oracle::joint_grid_exante(oracle::to_table(w), {0, 0, 1, 1}, 2,
                                                       oracle::Rule::Mmr, {}, 1e-2);
        CHECK(std::abs(joint - 0.5) <= 1e-9);
    }
}

TEST_CASE("LP solutions match the simplex grid (property)") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const Index nc = 1 + static_cast<Index>(rng() % 3), ns = 1 + static_cast<Index>(rng() % 3);
        const auto w = oracle::random_welfare(rng, nc, ns);
        DecisionProblem<double> p(w);
        const auto all = RegionScope::all(ns);
        const auto table = oracle::to_table(w);
        const auto mm = solve_maximin_mixed(p, all);
        const auto mr = solve_mmr_mixed(p, all);
        const auto gmm = oracle::grid_maximin(table, as_sizes(all), 1e-3);
        const auto gmr = oracle::grid_mmr(table, as_sizes(all), 1e-3);
        CHECK(std::abs(mm.value - gmm.value) <= 2e-3);
        CHECK(std::abs(mr.value - gmr.value) <= 2e-3);
        // the LP is never beaten by the grid
        CHECK(mm.value >= gmm.value - 1e-9);
        CHECK(mr.value <= gmr.value + 1e-9);
    }
}

TEST_CASE("mixing never hurts and shrinking never hurts (property)") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        const Index nc = 1 + static_cast<Index>(rng() % 4), ns = 1 + static_cast<Index>(rng() % 6);
        DecisionProblem<double> p(oracle::random_welfare(rng, nc, ns));
        const auto all = RegionScope::all(ns);
        std::vector<Index> sub;
        for (Index s = 0; s < ns; ++s)
            if (rng() % 2) sub.push_back(s);
        if (sub.empty()) sub.push_back(ns - 1);
        const RegionScope part(sub, ns);
        const Prior<double> prior(oracle::random_simplex_point(rng, ns));

        for (const auto* scope : {&all, &part}) {
            CHECK(solve_maximin_mixed(p, *scope).value >= maximin_pure(p, *scope).value - 1e-9);
            CHECK(solve_mmr_mixed(p, *scope).value <= mmr_pure(p, *scope).value + 1e-9);
            CHECK(std::abs(solve_bayes_mixed(p, prior, *scope).value - bayes_pure(p, prior, *scope).value) <=
                  1e-12);
        }
        CHECK(solve_maximin_mixed(p, part).value >= solve_maximin_mixed(p, all).value - 1e-9);
        CHECK(solve_mmr_mixed(p, part).value <= solve_mmr_mixed(p, all).value + 1e-9);
    }
}

TEST_CASE("interior maximin equalizes the binding states (property)") {
    std::mt19937_64 rng(41);
    int interior = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Index ns = 2 + static_cast<Index>(rng() % 4);
        const auto w = oracle::random_welfare(rng, 2, ns);
        DecisionProblem<double> p(w);
        const auto sol = solve_maximin_mixed(p, RegionScope::all(ns));
        const double d = sol.delta[1];
        if (d <= 1e-7 || d >= 1 - 1e-7) continue;
        ++interior;
        // at an interior optimum at least one state improves with d and one
        // worsens; both sit at the optimal value
        double up = 1e9, down = 1e9;
        for (Index s = 0; s < ns; ++s) {
            const double ew = (1 - d) * w(0, s) + d * w(1, s);
            if (std::abs(ew - sol.value) > 1e-7) continue;
            const double slope = w(1, s) - w(0, s);
            if (slope > 0) up = std::min(up, ew);
            if (slope < 0) down = std::min(down, ew);
        }
        REQUIRE(up < 1e9);
        REQUIRE(down < 1e9);
        CHECK(std::abs(up - down) <= 1e-7);
    }
    CHECK(interior > 20);
}
