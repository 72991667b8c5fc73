#include <doctest.h>

#include <cmath>
#include <random>

#include "hshift/mobius.hpp"

using namespace hs;

namespace {

// e^{i theta} (z - a) / (1 - conj(a) z), written out
cd phi(double theta, cd a, cd z) { return std::polar(1.0, theta) * (z - a) / (1.0 - std::conj(a) * z); }

std::vector<cd> probe_points() {
    return {0.0, {0.3, 0.1}, {-0.5, 0.4}, {0.1, -0.8}, {0.7, 0.0}, {-0.2, -0.2}};
}

}  // namespace

TEST_SUITE("mobius") {

TEST_CASE("apply agrees with the defining formula") {
    Mobius g = make_mobius(1.1, {0.3, -0.2});
    for (cd z : probe_points()) CHECK(std::abs(apply(g, z) - phi(1.1, {0.3, -0.2}, z)) < 1e-15);
}

TEST_CASE("theta is reduced to [0, 2pi)") {
    CHECK(make_mobius(-0.5, 0.0).theta == doctest::Approx(2 * M_PI - 0.5));
    CHECK(make_mobius(7.0, 0.0).theta == doctest::Approx(7.0 - 2 * M_PI));
}

TEST_CASE("|a| >= 1 is rejected") {
    CHECK_THROWS_AS(make_mobius(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_mobius(0.0, {0.8, 0.8}), std::invalid_argument);
}

TEST_CASE("compose, invert and star act pointwise") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.6, 0.6), t(0.0, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        Mobius g = make_mobius(t(rng), {u(rng), u(rng)});
        Mobius h = make_mobius(t(rng), {u(rng), u(rng)});
        Mobius gh = compose(g, h), gi = invert(g), gs = star(g);
        for (cd z : probe_points()) {
            CHECK(std::abs(apply(gh, z) - apply(g, apply(h, z))) < 1e-13);
            CHECK(std::abs(apply(gi, apply(g, z)) - z) < 1e-13);
            CHECK(std::abs(apply(gs, z) - std::conj(apply(g, std::conj(z)))) < 1e-13);
        }
    }
}

TEST_CASE("phi_a sends a to 0 and composes with its inverse to the identity") {
    Mobius g = involution({0.4, 0.2});
    CHECK(std::abs(apply(g, {0.4, 0.2})) < 1e-16);
    CHECK(param_distance(compose(g, invert(g)), identity()) < 1e-14);
    CHECK(param_distance(compose(invert(g), g), identity()) < 1e-14);
    CHECK(is_rotation(rotation(0.3)));
    CHECK_FALSE(is_rotation(g));
}

TEST_CASE("deriv0 matches a finite difference") {
    Mobius g = make_mobius(2.0, {-0.35, 0.25});
    const double h = 1e-6;
    cd fd = (apply(g, h) - apply(g, -h)) / (2 * h);
    CHECK(std::abs(deriv0(g) - fd) < 1e-8);
    CHECK(std::abs(deriv0(g) - std::polar(1.0, 2.0) * (1.0 - std::norm(cd(-0.35, 0.25)))) < 1e-15);
}

TEST_CASE("parse and print round trip") {
    Mobius g = parse_mobius("theta=0.5,a=0.25-0.125i");
    CHECK(g.theta == 0.5);
    CHECK(g.a == cd(0.25, -0.125));
    Mobius back = parse_mobius(to_string(g));
    CHECK(param_distance(g, back) < 1e-15);
    CHECK_THROWS(parse_mobius("theta=x,a=0"));
    CHECK_THROWS(parse_mobius("theta=0,a=2"));
}

}
