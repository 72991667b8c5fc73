#include <doctest.h>

#include <cmath>

#include "hshift/shiftlab.hpp"

using namespace hs;

namespace {

// log Gamma(z) for Re z > 0: shift up by recurrence, then Stirling.
cd log_gamma(cd z) {
    cd acc = 0.0;
    while (z.real() < 20.0) {
        acc -= std::log(z);
        z += 1.0;
    }
    cd z2 = 1.0 / (z * z);
    cd series = (1.0 / 12.0 - z2 * (1.0 / 360.0 - z2 * (1.0 / 1260.0 - z2 / 1680.0))) / z;
    return acc + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * M_PI) + series;
}

}  // namespace

TEST_SUITE("shiftlab") {

TEST_CASE("window must contain 0") {
    CHECK_THROWS_AS(make_window(1, 5), std::invalid_argument);
    Window w = make_window(-3, 4);
    CHECK(w.size() == 8);
    CHECK(w.pos(-3) == 0);
}

TEST_CASE("B(s) at lambda=0, s=i") {
    CHECK(std::abs(weight_Bs(0.0, {0, 1}, 0) - cd(-0.6, 0.8)) < 1e-15);
    for (int n = -20; n <= 20; ++n) CHECK(std::abs(weight_Bs(0.3, {0, 0.7}, n)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("T(a,b) weights are positive square roots") {
    CHECK(weight_Tab(0.25, 0.75, 0) == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(weight_Tab(0.25, 0.75, 2) == doctest::Approx(std::sqrt(2.25 / 2.75)));
    CHECK_THROWS_AS(weight_Tab(0.0, 0.5, 1), std::invalid_argument);
}

TEST_CASE("S[lambda] has sign of lambda + 2n + 1") {
    for (int n = -10; n <= 10; ++n) {
        double w = weight_S(0.4, n);
        CHECK((w > 0) == (0.4 + 2 * n + 1 > 0));
        CHECK(w == doctest::Approx(1.0 / (0.4 + 2 * n + 1)));
    }
    CHECK_THROWS_AS(weight_S(1.0, -1), std::domain_error);
}

TEST_CASE("constructors produce single-band shifts") {
    Window w = symmetric_window(10);
    for (const auto& t : {make_B(w), make_Bs(0.2, {0, 0.5}, w), make_Tab(0.2, 0.6, w), make_Slambda(0.3, w)}) {
        CHECK(is_weighted_shift(t));
        CHECK(t.m.cwiseAbs().sum() > 0);
    }
    CHECK(is_weighted_shift(make_discrete_shift(1.5, 0.5, w)));
}

TEST_CASE("C(0.25, 0.75, 2) upper-left weights") {
    Window w = symmetric_window(8);
    auto t = make_family(CParams{0.25, 0.75, 2}, w);
    CHECK(t.lanes == 2);
    for (int n = -5; n < 5; ++n) CHECK(t(0, n + 1, 0, n).real() == doctest::Approx(std::sqrt((n + .25) / (n + .75))));
    // coupling block is alpha (T(a,b) - T(b,a))
    for (int n = -5; n < 5; ++n)
        CHECK(t(0, n + 1, 1, n).real() ==
              doctest::Approx(2 * (std::sqrt((n + .25) / (n + .75)) - std::sqrt((n + .75) / (n + .25)))));
}

TEST_CASE("P0(0.5, 1) coupling block is S[0.5]") {
    Window w = symmetric_window(8);
    auto t = make_family(P0Params{0.5, 1}, w);
    for (int n = -8; n < 8; ++n) CHECK(t(0, n + 1, 1, n).real() == doctest::Approx(1.0 / (0.5 + 2 * n + 1)));
}

TEST_CASE("block structure maps H(n) into H(n+1)") {
    Window w = symmetric_window(6);
    auto t = make_family(PParams{0.2, {0, 0.8}, 1.3}, w);
    for (int lr = 0; lr < 2; ++lr)
        for (int lc = 0; lc < 2; ++lc)
            for (int nr = w.lo; nr <= w.hi; ++nr)
                for (int nc = w.lo; nc <= w.hi; ++nc)
                    if (nr != nc + 1) CHECK(t(lr, nr, lc, nc) == cd(0.0));
    // lower-left block is zero
    CHECK(t.m.bottomLeftCorner(w.size(), w.size()).norm() == 0.0);
}

TEST_CASE("U(lambda, s) telescoping") {
    Window w = symmetric_window(30);
    auto u = make_Ulambdas(0.0, {0, 1}, w);
    CHECK(u.m(w.pos(0), w.pos(0)) == cd(1.0));
    CHECK(std::abs(u.m(w.pos(1), w.pos(1)) - cd(-0.6, -0.8)) < 1e-15);
    for (int n = w.lo; n <= w.hi; ++n) CHECK(std::abs(u.m(w.pos(n), w.pos(n))) == doctest::Approx(1.0));
}

TEST_CASE("U(lambda, s) agrees with the gamma-ratio definition") {
    Window w = symmetric_window(25);
    for (auto [lam, s] : {std::pair{0.0, cd(0, 1)}, {0.4, cd(0, 0.3)}, {-0.6, cd(0, 2.2)}, {1.0, cd(0, -0.8)}}) {
        auto u = make_Ulambdas(lam, s, w);
        const double h = 0.5 * (1.0 + lam);
        // arguments stay in Re > 0 only for n >= 0
        auto g = [&](int n) { return std::exp(log_gamma(n + h - s) - log_gamma(n + h + s)); };
        for (int n = 0; n <= w.hi; ++n) {
            cd want = g(n) / g(0);
            CHECK(std::abs(u.m(w.pos(n), w.pos(n)) - want) < 1e-12);
        }
    }
}

TEST_CASE("conjugation U* B U = B(s) on the interior") {
    Window w = symmetric_window(40);
    for (auto [lam, s] : {std::pair{0.0, cd(0, 1)}, {0.7, cd(0, 0.2)}, {-0.9, cd(0, 3.0)}}) {
        auto u = make_Ulambdas(lam, s, w);
        Mat d = u.m.adjoint() * make_B(w).m * u.m - make_Bs(lam, s, w).m;
        const int n = w.size() - 2;
        CHECK(spectral_norm(d.block(1, 1, n, n)) < 1e-12);
    }
}

TEST_CASE("params parse, print and validate") {
    auto p = parse_params("P:0.2,0.8,1");
    CHECK(family_name(p) == "P");
    CHECK(std::get<PParams>(p).s == cd(0, 0.8));
    CHECK(to_string(parse_params("C:0.25,0.75,2")) == "C:0.25,0.75,2");
    CHECK(to_string(parse_params("P0:-0.5,3")) == "P0:-0.5,3");
    CHECK(multiplier_lambda(parse_params("C:0.25,0.5,1")) == doctest::Approx(-0.25));
    CHECK_THROWS_AS(parse_params("P:0.2,0,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("C:0.8,0.2,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("P0:1,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("Q:1,1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_params("P:0.2,abc,1"), std::invalid_argument);
}

TEST_CASE("discrete shift weights") {
    Window w = symmetric_window(6);
    auto t = make_discrete_shift(2.0, 1.5, w, 0.3);
    CHECK(shift_weight(t, 0).real() == doctest::Approx(std::sqrt(1.0 / 2.0)));
    CHECK(shift_weight(t, 3).real() == doctest::Approx(std::sqrt(4.0 / 5.0)));
    CHECK(shift_weight(t, -1) == cd(0.3));
    // n = -3 is own index j = 2 of the anti-holomorphic half
    CHECK(shift_weight(t, -3).real() == doctest::Approx(std::sqrt(2.0 / 2.5)));
}

}
