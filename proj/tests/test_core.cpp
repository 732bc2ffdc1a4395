#include "doctest.h"

#include "decide/core.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace decide;

TEST_CASE("decision problem validation") {
    Matrix<double> w(2, 2);
    w << 1, 0, 0, 1;
    CHECK_NOTHROW(DecisionProblem<double>({"a", "b"}, {"s0", "s1"}, w));
    CHECK_THROWS_AS(DecisionProblem<double>({"a", "a"}, {"s0", "s1"}, w), InputError);
    CHECK_THROWS_AS(DecisionProblem<double>({"a", "b"}, {"s0", "s0"}, w), InputError);
    CHECK_THROWS_AS(DecisionProblem<double>({"a"}, {"s0", "s1"}, w), InputError);
    CHECK_THROWS_AS(DecisionProblem<double>({}, {}, Matrix<double>(0, 0)), InputError);
    w(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(DecisionProblem<double>({"a", "b"}, {"s0", "s1"}, w), InputError);

    const auto p = fixtures::p1();
    CHECK(p.action_index("b") == 1);
    CHECK(p.state_index("s1") == 1);
    CHECK_THROWS_AS(p.state_index("s9"), InputError);
    CHECK(p.best_welfare(0) == 1.0);
}

TEST_CASE("prior and choice distribution validation") {
    Vector<double> ok(2);
    ok << 0.6, 0.4;
    CHECK_NOTHROW(Prior<double>{ok});
    Vector<double> neg(2);
    neg << 1.2, -0.2;
    CHECK_THROWS_AS(Prior<double>{neg}, InputError);
    Vector<double> short_sum(2);
    short_sum << 0.5, 0.4;
    CHECK_THROWS_AS(Prior<double>{short_sum}, InputError);

    CHECK_THROWS_AS(ChoiceDistribution<double>{short_sum}, InputError);
    CHECK(ChoiceDistribution<double>::vertex(3, 2).is_vertex());
    CHECK_FALSE(ChoiceDistribution<double>::binary(0.5).is_vertex());
    CHECK(ChoiceDistribution<double>::binary(1.0 - 1e-10).is_vertex());
    CHECK_THROWS_AS(ChoiceDistribution<double>::vertex(2, 2), InputError);
}

TEST_CASE("expected welfare and regret") {
    const auto p = fixtures::p1();
    const auto half = ChoiceDistribution<double>::binary(0.5);
    CHECK(expected_welfare(p, half, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(expected_welfare(p, ChoiceDistribution<double>::binary(0.7), 1) ==
          doctest::Approx(0.7).epsilon(1e-15));
    CHECK(regret(p, ChoiceDistribution<double>::vertex(2, 0), 1) == 1.0);
    CHECK(regret(p, half, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(regret(p, ChoiceDistribution<double>::vertex(2, 1), 1) == 0.0);

    // vertex mixtures reproduce the table
    const auto p3 = fixtures::p3();
    for (Index c = 0; c < 2; ++c)
        for (Index s = 0; s < 2; ++s)
            CHECK(expected_welfare(p3, ChoiceDistribution<double>::vertex(2, c), s) == p3.welfare(c, s));

    CHECK_THROWS_AS(expected_welfare(p, half, 2), InputError);
    CHECK_THROWS_AS(regret(p, half, -1), InputError);
    CHECK_THROWS_AS(expected_welfare(p, ChoiceDistribution<double>::vertex(3, 0), 0), InputError);
}

TEST_CASE("expected welfare is linear and regret nonnegative (property)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 500; ++trial) {
        const Index nc = 1 + static_cast<Index>(rng() % 5), ns = 1 + static_cast<Index>(rng() % 5);
        DecisionProblem<double> p(oracle::random_welfare(rng, nc, ns));
        const ChoiceDistribution<double> d1(oracle::random_simplex_point(rng, nc));
        const ChoiceDistribution<double> d2(oracle::random_simplex_point(rng, nc));
        const double lambda = u(rng);
        const ChoiceDistribution<double> mix(lambda * d1.probs() + (1 - lambda) * d2.probs());
        for (Index s = 0; s < ns; ++s) {
            const double lhs = expected_welfare(p, mix, s);
            const double rhs = lambda * expected_welfare(p, d1, s) + (1 - lambda) * expected_welfare(p, d2, s);
            CHECK(std::abs(lhs - rhs) <= 1e-12);
            CHECK(regret(p, d1, s) >= 0.0);
            Index best;
            p.welfare().col(s).maxCoeff(&best);
            CHECK(regret(p, ChoiceDistribution<double>::vertex(nc, best), s) == 0.0);
        }
    }
}

namespace {

SamplingModel<double> finite_model(std::vector<std::vector<double>> dists) {
    std::vector<std::string> points;
    for (std::size_t i = 0; i < dists.front().size(); ++i) points.push_back("p" + std::to_string(i));
    std::vector<Vector<double>> v;
    for (auto& d : dists) v.push_back(Eigen::Map<Vector<double>>(d.data(), static_cast<Index>(d.size())));
    return SamplingModel<double>::finite(points, v);
}

} // namespace

TEST_CASE("identification partition from sampling distributions") {
    SUBCASE("distinct distributions are point identified") {
        auto m = finite_model({{0.3, 0.7}, {0.5, 0.5}});
        auto p = compute_identification_partition(m, 1e-9);
        CHECK(p.num_blocks() == 2);
        CHECK(classify_identification(p) == IdentificationClass::UniformPoint);
    }
    SUBCASE("identical distributions form one block") {
        auto m = finite_model({{0.3, 0.7}, {0.3, 0.7}});
        auto p = compute_identification_partition(m, 1e-9);
        CHECK(p.num_blocks() == 1);
        CHECK(p.block(0).size() == 2);
        CHECK(is_unidentified(p));
        CHECK(classify_identification(p) == IdentificationClass::Mixed);
    }
    SUBCASE("three states, two equal") {
        auto m = finite_model({{0.2, 0.8}, {0.2, 0.8}, {0.6, 0.4}});
        auto p = compute_identification_partition(m, 0.0);
        REQUIRE(p.num_blocks() == 2);
        CHECK(p.block(0) == std::vector<Index>{0, 1});
        CHECK(p.block(1) == std::vector<Index>{2});
        CHECK(p.region_of(1) == std::vector<Index>{0, 1});
    }
    SUBCASE("single linkage chains near neighbours") {
        auto m = finite_model({{0.5, 0.5}, {0.5 + 6e-10, 0.5 - 6e-10}, {0.5 + 12e-10, 0.5 - 12e-10}});
        auto p = compute_identification_partition(m, 1e-9);
        CHECK(p.num_blocks() == 1);
        CHECK(compute_identification_partition(m, 0.0).num_blocks() == 3);
    }
    SUBCASE("unit interval is unsupported") {
        auto m = SamplingModel<double>::unit_interval(2);
        CHECK_THROWS_AS(compute_identification_partition(m), UnsupportedOperationError);
    }
}

TEST_CASE("coarser tolerance never splits blocks (property)") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        // distributions drawn from a small menu so that equalities occur
        const std::vector<std::vector<double>> menu{{0.1, 0.9}, {0.1 + 1e-6, 0.9 - 1e-6}, {0.7, 0.3}};
        std::vector<std::vector<double>> d;
        const int ns = 2 + static_cast<int>(rng() % 5);
        for (int s = 0; s < ns; ++s) d.push_back(menu[static_cast<std::size_t>(pick(rng))]);
        const auto m = finite_model(d);
        const auto fine = compute_identification_partition(m, 0.0);
        const auto coarse = compute_identification_partition(m, 1e-5);
        CHECK(coarse.num_blocks() <= fine.num_blocks());
        for (Index s = 0; s < ns; ++s)
            for (Index t = 0; t < ns; ++t)
                if (fine.block_of(s) == fine.block_of(t)) CHECK(coarse.block_of(s) == coarse.block_of(t));
    }
}

TEST_CASE("partition validation and classification") {
    CHECK_THROWS_AS(IdentificationPartition({{0}, {0, 1}}, 2), InputError);
    CHECK_THROWS_AS(IdentificationPartition({{0}}, 2), InputError);
    CHECK_THROWS_AS(IdentificationPartition({{0}, {}}, 1), InputError);
    CHECK_THROWS_AS(IdentificationPartition({{0, 5}}, 2), InputError);

    CHECK(classify_identification(IdentificationPartition::singletons(3)) ==
          IdentificationClass::UniformPoint);
    CHECK(classify_identification(IdentificationPartition({{0, 1}, {2, 3}}, 4)) ==
          IdentificationClass::UniformPartial);
    CHECK(classify_identification(IdentificationPartition({{0}, {1, 2}}, 3)) ==
          IdentificationClass::Mixed);
    // every state sits in its own region
    const IdentificationPartition p({{2, 0}, {1}}, 3);
    for (Index s = 0; s < 3; ++s) {
        const auto& r = p.region_of(s);
        CHECK(std::find(r.begin(), r.end(), s) != r.end());
    }
}

TEST_CASE("sampling model validation") {
    std::vector<Vector<double>> bad{Vector<double>::Constant(2, 0.6)};
    CHECK_THROWS_AS(SamplingModel<double>::finite({"p", "q"}, bad), InputError);
    std::vector<Vector<double>> wrong_size{Vector<double>::Constant(3, 1.0 / 3)};
    CHECK_THROWS_AS(SamplingModel<double>::finite({"p", "q"}, wrong_size), InputError);
    CHECK_THROWS_AS(SamplingModel<double>::unit_interval(2).distribution(0), UnsupportedOperationError);
}

TEST_CASE("scope construction") {
    CHECK_THROWS_AS(RegionScope({}, 3), InputError);
    CHECK_THROWS_AS(RegionScope({3}, 3), InputError);
    RegionScope s({2, 0, 2}, 3);
    CHECK(s.states() == std::vector<Index>{0, 2});
}

TEST_CASE("core works with long double") {
    Matrix<long double> w(2, 2);
    w << 1, 0, 0, 1;
    DecisionProblem<long double> p({"a", "b"}, {"s0", "s1"}, w);
    const auto d = ChoiceDistribution<long double>::binary(0.25L);
    CHECK(static_cast<double>(expected_welfare(p, d, 1)) == doctest::Approx(0.25));
}
