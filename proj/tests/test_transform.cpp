#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <snk/kspace.hpp>
#include <snk/objective.hpp>
#include <snk/solve.hpp>
#include <snk/transform.hpp>

using namespace snk;

TEST_CASE("normalization of bounded instances", "[transform]") {
    const Normalized got = normalize(0.2, 0.7, 3, 1.5);
    CHECK_THAT(got.M, Catch::Matchers::WithinAbs(1.8, 1e-12));
    CHECK(got.map.a == 0.2);
    CHECK(got.map.b == 0.7);

    const Normalized ident = normalize(0.0, 1.0, 5, 2.5);
    CHECK(ident.M == 2.5);
    CHECK(ident.map.to_original(0.3) == 0.3);
    CHECK(ident.map.to_unit(0.3) == 0.3);

    const Normalized empty = normalize(0.2, 0.7, 3, 0.6);
    CHECK_THAT(empty.M, Catch::Matchers::WithinAbs(0.0, 1e-12));

    CHECK_THROWS_AS(normalize(0.7, 0.2, 3, 1.5), parameter_error);
    CHECK_THROWS_AS(normalize(0.5, 0.5, 3, 1.5), parameter_error);
    CHECK_THROWS_AS(normalize(0.2, 0.7, 3, 2.2), infeasible_error);
    CHECK_THROWS_AS(normalize(0.2, 0.7, 3, 0.5), infeasible_error);
}

TEST_CASE("coordinate maps round-trip", "[transform][property]") {
    std::mt19937_64 rng(9501);
    std::uniform_real_distribution<double> ua(-5.0, 5.0);
    std::uniform_real_distribution<double> uw(0.01, 10.0);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(rng);
        const double b = a + uw(rng);
        const AffineMap map{a, b};
        for (int j = 0; j < 10; ++j) {
            const double x = ux(rng);
            CHECK_THAT(map.to_unit(map.to_original(x)),
                       Catch::Matchers::WithinAbs(x, 1e-12));
            const double xp = map.to_original(x);
            CHECK_THAT(map.to_original(map.to_unit(xp)),
                       Catch::Matchers::WithinAbs(xp, 1e-12 * std::max(1.0, std::abs(xp))));
        }
    }
}

TEST_CASE("expansion produces the canonical trine vector", "[transform]") {
    const ObjectiveSpec s = make_smoothstep();

    const KSolution sub = make_k_solution(s, 4, 2.0, 1.0, 0.0, Label::C2_minus);
    const std::vector<double> x = expand(sub, 4);
    REQUIRE(x.size() == 4);
    CHECK(x[0] == 0.0);
    CHECK_THAT(x[1], Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
    CHECK(x[1] == x[2]);
    CHECK(x[2] == x[3]);
    CHECK_THAT(x[0] + x[1] + x[2] + x[3], Catch::Matchers::WithinAbs(2.0, 1e-9));
    CHECK_THAT(eval_F(s, x), Catch::Matchers::WithinAbs(sub.objective, 1e-9));

    const KSolution corners = make_k_solution(s, 4, 2.0, 2.0, 2.0, Label::A);
    const std::vector<double> xc = expand(corners, 4);
    CHECK(xc == std::vector<double>{0.0, 0.0, 1.0, 1.0});

    const KSolution interior = make_k_solution(s, 4, 3.2, 0.0, 0.0, Label::C1);
    const std::vector<double> xi = expand(interior, 4);
    CHECK(xi == std::vector<double>(4, 0.8));
}

TEST_CASE("expansion rejects malformed k-points", "[transform]") {
    KSolution s;
    s.k0 = 1.5;
    s.k1 = 0.5;
    s.ky = 2.0;
    s.y = 0.5;
    CHECK_THROWS_AS(expand(s, 4), parameter_error);

    s = KSolution{};
    s.k0 = 1.0;
    s.k1 = 1.0;
    s.ky = 1.0;
    s.y = 0.5;
    CHECK_THROWS_AS(expand(s, 4), parameter_error); // counts sum to 3, not 4

    s = KSolution{};
    s.k0 = 1.0;
    s.k1 = 0.0;
    s.ky = 3.0;
    CHECK_THROWS_AS(expand(s, 4), parameter_error); // interior coords need y
}

TEST_CASE("antisymmetric complement", "[transform]") {
    const ObjectiveSpec half = make_smoothstep();
    CHECK_THAT(antisym_complement(half, 0.2), Catch::Matchers::WithinAbs(0.8, 1e-15));
    CHECK(antisym_complement(half, 0.5) == 0.5);

    const ObjectiveSpec off = make_probit(10.0, 4.0); // center 0.4
    CHECK_THAT(antisym_complement(off, 0.0), Catch::Matchers::WithinAbs(0.8, 1e-15));
    // the domain extends below 0 so the reflection of 0.8+ still works
    CHECK_THAT(antisym_complement(off, -0.2), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(antisym_complement(off, 1.5), domain_error);
}

TEST_CASE("pair perturbations cancel", "[transform][property]") {
    std::mt19937_64 rng(9502);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (const ObjectiveSpec& spec : {make_smoothstep(), make_probit(8.0, 3.2)}) {
        const double c = spec.center();
        const double two_fc = 2.0 * spec.value(c);
        for (int i = 0; i < 100; ++i) {
            const double x = ux(rng);
            const double xb = antisym_complement(spec, x);
            CHECK_THAT(spec.value(x) + spec.value(xb),
                       Catch::Matchers::WithinAbs(two_fc, 1e-9));

            // shift mass between a reflected pair: the sum is flat
            if (xb < 0.0 || xb > 1.0) continue;
            const double room = std::min({x, 1.0 - x, xb, 1.0 - xb});
            const double delta = ux(rng) * room;
            const double before = spec.value(x) + spec.value(xb);
            const double after = spec.value(x + delta) + spec.value(xb - delta);
            CHECK_THAT(after, Catch::Matchers::WithinAbs(before, 1e-9));
        }
    }
}

TEST_CASE("objective is permutation invariant on expanded vectors",
          "[transform][property]") {
    const ObjectiveSpec s = make_smoothstep();
    std::mt19937_64 rng(9503);

    // one nonzero magnitude: shuffling cannot even reassociate the sum
    const KSolution pure = make_k_solution(s, 6, 2.0, 3.0, 0.0, Label::custom);
    std::vector<double> x = expand(pure, 6);
    const double base = eval_F(s, x);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(x.begin(), x.end(), rng);
        CHECK(eval_F(s, x) == base);
    }

    // mixed magnitudes may reassociate; stay well under the 1e-9 contract
    const KSolution mixed = make_k_solution(s, 7, 3.4, 2.0, 2.0, Label::custom);
    std::vector<double> xm = expand(mixed, 7);
    const double basem = eval_F(s, xm);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(xm.begin(), xm.end(), rng);
        CHECK_THAT(eval_F(s, xm), Catch::Matchers::WithinAbs(basem, 1e-12));
    }
}

TEST_CASE("bounded instances solve and map back", "[transform][property]") {
    std::mt19937_64 rng(9504);
    std::uniform_real_distribution<double> ua(-3.0, 3.0);
    std::uniform_real_distribution<double> uw(0.05, 6.0);
    std::uniform_int_distribution<int> un(1, 40);
    std::uniform_real_distribution<double> ut(0.0, 1.0);

    for (int i = 0; i < 100; ++i) {
        const ObjectiveSpec spec =
            (i % 2 == 0) ? make_smoothstep() : make_logistic(5.0);
        const int n = un(rng);
        const double a = ua(rng);
        const double b = a + uw(rng);
        const double M0 = a * n + ut(rng) * (b - a) * n;

        const ProblemInstance inst = make_bounded_instance(n, M0, a, b, spec);
        REQUIRE(inst.bounds().has_value());
        CHECK(inst.bounds()->a == a);
        CHECK(inst.bounds()->M0 == M0);

        const SolveReport rep = solve_integer(inst, 1e-10);
        REQUIRE(rep.x_unit.size() == std::size_t(n));
        REQUIRE(rep.x.size() == std::size_t(n));

        double mass0 = 0.0;
        const AffineMap map{a, b};
        for (std::size_t j = 0; j < rep.x.size(); ++j) {
            CHECK_THAT(rep.x[j], Catch::Matchers::WithinAbs(
                                     map.to_original(rep.x_unit[j]),
                                     1e-12 * std::max(1.0, std::abs(rep.x[j]))));
            mass0 += rep.x[j];
        }
        const double scale = std::max(1.0, std::abs(M0));
        CHECK_THAT(mass0, Catch::Matchers::WithinAbs(M0, 1e-9 * scale));

        // objective computed from the mapped-back coordinates agrees
        double F = 0.0;
        for (double xp : rep.x) F += spec.value(map.to_unit(xp));
        CHECK_THAT(F, Catch::Matchers::WithinAbs(rep.chosen.objective,
                                                 1e-9 * std::max(1.0, std::abs(F))));
    }
}
