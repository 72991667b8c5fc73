#include <doctest.h>

#include <cmath>

#include "hshift/calculus.hpp"
#include "hshift/reprmat.hpp"

using namespace hs;

namespace {

// Fourier coefficient n of (1-|a|^2)^{lambda/2+mu} (1+conj(a)z)^{-lambda} |1+conj(a)z|^{-2mu} psi(z)^m,
// psi(z) = (z+a)/(1+conj(a)z), by a plain O(M) sum on the circle.
cd naive_coefficient(double lambda, cd mu, cd a, int m, int n) {
    const int M = 1024;
    const double r = std::norm(a);
    cd acc = 0.0;
    for (int j = 0; j < M; ++j) {
        cd z = std::polar(1.0, 2 * M_PI * j / M);
        cd d = 1.0 + std::conj(a) * z;
        cd f = std::pow(1.0 - r, 0.5 * lambda + mu) * std::pow(d, -lambda) * std::pow(std::abs(d), -2.0 * mu) *
               std::pow((z + a) / d, double(m));
        acc += f * std::pow(z, -double(n));
    }
    return acc / double(M);
}

}  // namespace

TEST_SUITE("reprmat") {

TEST_CASE("parameter ranges") {
    CHECK_NOTHROW(validate(principal(1.0, {0, 0.5})));
    CHECK_THROWS_AS(validate(principal(-1.0, {0, 0.5})), std::invalid_argument);
    CHECK_THROWS_AS(validate(principal(0.0, {0.1, 0.5})), std::invalid_argument);
    CHECK_THROWS_AS(validate(complementary(0.5, 0.3)), std::invalid_argument);
    CHECK_THROWS_AS(validate(holo(0.0)), std::invalid_argument);
    CHECK_NOTHROW(validate(discrete_pair(0.4, 1, 2)));
    CHECK_THROWS_AS(validate(direct_sum({holo(0.5), anti(1.0)})), std::invalid_argument);
    CHECK(std::abs(mu(principal(0.2, {0, 0.7})) - cd(0.4, 0.7)) < 1e-15);
    CHECK(std::abs(mu(complementary(0.0, 0.25)) - cd(0.75, 0)) < 1e-15);
}

TEST_CASE("basis norms") {
    for (int n = -10; n <= 10; ++n) CHECK(norm_sq(principal(0.3, {0, 1}), n) == doctest::Approx(1.0));
    CHECK(norm_sq(complementary(0.0, 0.25), 0) == doctest::Approx(1.0));
    CHECK(norm_sq(complementary(0.0, 0.25), 1) == doctest::Approx(1.0 / 3.0));
    for (int n = 0; n <= 10; ++n) CHECK(norm_sq(holo(2.0), n) == doctest::Approx(1.0 / (n + 1)));
    CHECK_THROWS_AS(norm_sq(holo(2.0), -1), std::invalid_argument);
}

TEST_CASE("generalized binomial") {
    CHECK(gbinom(5.0, 2) == cd(10.0));
    CHECK(std::abs(gbinom(-0.5, 3) - cd(-0.3125)) < 1e-15);
    CHECK(gbinom(2.0, 5) == cd(0.0));
    CHECK(gbinom(1.0, -1) == cd(0.0));
}

TEST_CASE("FFT matrix, series and naive sum agree") {
    const Window w = symmetric_window(12);
    for (const auto& spec : {principal(0.3, {0, 0.7}), principal(-0.4, {0, 1.5}), complementary(0.2, 0.2)}) {
        auto lane = lanes_of(spec).front();
        const cd a(0.3, -0.2);
        auto m = repr_matrix(spec, involution(a), w);
        for (int n = -6; n <= 6; n += 3)
            for (int k = -6; k <= 6; k += 2) {
                cd fft = m(0, n, 0, k);
                cd naive = naive_coefficient(lane.lambda, lane.mu, a, k, n) * lane_norm(lane, n) / lane_norm(lane, k);
                CHECK(std::abs(fft - naive) < 1e-12);
                CHECK(std::abs(fft - matcoef(spec, a, k, n)) < 1e-12);
            }
    }
}

TEST_CASE("discrete matrix coefficients") {
    const Window w = make_window(0, 15);
    const cd a(0.25, 0.3);
    for (double p : {0.5, 1.0, 2.4}) {
        auto h = repr_matrix(holo(p), involution(a), w);
        auto ah = repr_matrix(anti(p), involution(a), w);
        for (int n = 0; n <= 8; ++n)
            for (int k = 0; k <= 8; ++k) {
                CHECK(std::abs(h(0, n, 0, k) - discrete_matcoef(holo(p), a, k, n)) < 1e-12);
                CHECK(std::abs(ah(0, n, 0, k) - discrete_matcoef(anti(p), a, k, n)) < 1e-12);
            }
    }
}

TEST_CASE("rotations are diagonal") {
    const Window w = symmetric_window(10);
    auto m = repr_matrix(discrete_pair(0.4, 1, 0), rotation(0.7), w);
    Mat off = m.m;
    off.diagonal().setZero();
    CHECK(off.norm() == 0.0);
    // holomorphic half: level n + (0.4 + 2)/2
    CHECK(std::abs(m(0, 3, 0, 3) - std::polar(1.0, -(3 + 1.2) * 0.7)) < 1e-15);
    // anti-holomorphic half, own index 2: level -(2 + (2 - 0.4)/2)
    CHECK(std::abs(m(0, -3, 0, -3) - std::polar(1.0, (2 + 0.8) * 0.7)) < 1e-15);
}

TEST_CASE("rotation exponents relative to the common multiplier") {
    auto lane = lanes_of(discrete_pair(0.4, 2, 1)).front();
    CHECK(rotation_exponent(lane, 0, 0.4) == 2);
    CHECK(rotation_exponent(lane, 5, 0.4) == 7);
    CHECK(rotation_exponent(lane, -1, 0.4) == -2);
    CHECK(rotation_exponent(lane, -4, 0.4) == -5);
    CHECK_THROWS_AS(rotation_exponent(lane, 0, 0.3), std::invalid_argument);
}

TEST_CASE("unitarity and projectivity on the interior") {
    const Window w = symmetric_window(24);
    auto gs = sample_group(6, 11);
    for (const auto& spec : {principal(0.3, {0, 0.7}), principal(1.0, 0.0), complementary(-0.5, 0.1),
                             discrete_pair(1.0, 0, 1)}) {
        for (const auto& g : gs) CHECK(unitarity_defect(spec, g, w, 6) < 1e-10);
        for (size_t i = 0; i + 1 < gs.size(); i += 2) {
            auto pc = projectivity_defect(spec, gs[i], gs[i + 1], w, 6);
            CHECK(pc.residual < 1e-10);
            CHECK(std::abs(pc.phase) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("|a| > 0.9 is rejected") {
    CHECK_THROWS(repr_matrix(principal(0.0, {0, 1}), involution(0.95), symmetric_window(5)));
}

}
