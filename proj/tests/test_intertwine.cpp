#include <doctest.h>

#include <cmath>

#include "hshift/intertwine.hpp"

using namespace hs;

namespace {

SolverConfig small_config() {
    SolverConfig c;
    c.margin = 8;
    c.samples = 8;
    return c;
}

IntertwinerReport solve(const ReprSpec& pi, const WindowedOperator& t1, const WindowedOperator& t2,
                        const SolverConfig& c = small_config()) {
    return solve_intertwiner(make_problem(pi, pi, t1, t2, c), c.threshold, c.min_gap);
}

}  // namespace

TEST_SUITE("intertwine") {

TEST_CASE("band structure pairs levels one apart") {
    const Window w = symmetric_window(5);
    auto band_ = shift_structure(principal(0.2, {0, 1}), principal(0.2, {0, 1}), w);
    CHECK(band_.size() == size_t(w.size() - 1));
    for (const auto& e : band_) CHECK(e.target == e.source + 1);
}

TEST_CASE("recursion weights closed form") {
    const Window w = symmetric_window(5);
    auto r = recursion_weights(0.0, {0, 1}, 2.0, w);
    // alpha (w_0 - 1) with w_0 = -0.6 + 0.8i
    CHECK(std::abs(r[w.pos(0)] - 2.0 * cd(-1.6, 0.8)) < 1e-14);
}

TEST_CASE("B(s) against B: one solution along B(s) - B") {
    const Window w = symmetric_window(30);
    const cd s(0, 1);
    auto rep = solve(principal(0.0, s), make_Bs(0.0, s, w), make_B(w));
    REQUIRE(rep.nullity == 1);
    CHECK(rep.gap_ratio > 100);
    CHECK(band_cosine_distance(rep.basis[0], recursion_weights(0.0, s, 1.0, w), -20, 20) < 1e-8);
    CHECK(rep.residuals[0] < 1e-10);
}

TEST_CASE("equal diagonals with s != 0 admit no coupling") {
    const Window w = symmetric_window(30);
    const cd s(0, 0.7);
    CHECK(solve(principal(0.3, s), make_Bs(0.3, s, w), make_Bs(0.3, s, w)).nullity == 0);
    CHECK(solve(principal(0.3, s), make_B(w), make_B(w)).nullity == 0);
}

TEST_CASE("s = 0: the coupling is S[lambda]") {
    const Window w = symmetric_window(30);
    auto rep = solve(principal(-0.5, 0.0), make_B(w), make_B(w));
    REQUIRE(rep.nullity == 1);
    std::vector<cd> sl;
    for (int n = w.lo; n <= w.hi; ++n) sl.push_back(weight_S(-0.5, n));
    CHECK(band_cosine_distance(rep.basis[0], sl, -20, 20) < 1e-8);
}

TEST_CASE("full ansatz finds nothing off the band") {
    const Window w = symmetric_window(10);
    SolverConfig c = small_config();
    c.margin = 3;
    c.ansatz = Ansatz::Full;
    const cd s(0, 1);
    CHECK(solve(principal(0.0, s), make_Bs(0.0, s, w), make_B(w), c).nullity == 1);
    CHECK(solve(principal(0.0, s), make_B(w), make_B(w), c).nullity == 0);
}

TEST_CASE("nullity is stable under more samples") {
    const Window w = symmetric_window(30);
    const cd s(0, 1.5);
    for (int n : {6, 10, 14}) {
        SolverConfig c = small_config();
        c.samples = n;
        CHECK(solve(principal(-0.4, s), make_Bs(-0.4, s, w), make_B(w), c).nullity == 1);
    }
}

TEST_CASE("reducibility certificates") {
    const Window w = symmetric_window(12);
    auto b = make_B(w);
    WindowedOperator zero{w, 1, Mat::Zero(w.size(), w.size())};
    // zero coupling splits into the two lanes
    CHECK(sections_split(make_block(b, zero, b), -8, 8));
    CHECK_FALSE(sections_split(make_family(PParams{0.0, {0, 1}, 1}, w), -8, 8));
    auto pi = principal(0.0, {0, 1});
    CHECK(part_components(pi, pi, b, b, zero, Corner::Upper) == 2);
    CHECK(part_components(pi, pi, b, b, make_Bs(0.0, {0, 1}, w), Corner::Upper) == 1);
}

TEST_CASE("two-continuous grid") {
    const Window w = symmetric_window(30);
    SolverConfig c = small_config();
    GridParams g;
    auto cases = continuous_grid(g, w);
    CHECK(cases.size() == 12);
    for (const auto& cs : cases) {
        auto o = cross_family_nullity(cs, c);
        CHECK_MESSAGE(o.ok, o.label);
        CHECK(o.upper.nullity == 0);
        CHECK(o.lower.nullity == 0);
    }
}

TEST_CASE("four summands with all parameters zero") {
    const Window w = symmetric_window(30);
    auto o = cross_family_nullity(foursum_case(1.5, 0, 0, 0, 0, w), small_config());
    CHECK(o.upper.nullity == 0);
    CHECK(o.lower.nullity == 0);
    CHECK(o.ok);
}

}
