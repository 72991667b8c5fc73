#include <doctest.h>

#include <cmath>

#include "hshift/classify.hpp"

using namespace hs;

TEST_SUITE("classify") {

TEST_CASE("gamma matches the closed forms") {
    const Window w = symmetric_window(40);
    for (BlockShiftParams p : {BlockShiftParams{CParams{0.2, 0.7, 1.5}}, BlockShiftParams{PParams{0.4, {0, 0.9}, 2}},
                               BlockShiftParams{P0Params{-0.3, 1.2}}}) {
        auto t = make_family(p, w);
        for (int n = -20; n <= 20; ++n) {
            double g = block_sections(t, n).a.trace().real() - 2.0;
            CHECK(g == doctest::Approx(gamma_closed_form(p, n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("P0 closed form by hand") {
    CHECK(gamma_closed_form(P0Params{0.5, 1}, 0) == doctest::Approx(1.0 / 2.25));
    CHECK(gamma_closed_form(P0Params{0.5, 2}, 1) == doctest::Approx(4.0 / 12.25));
}

TEST_CASE("family members are irreducible; alpha = 0 is not") {
    const Window w = symmetric_window(20);
    auto t = make_family(PParams{0.0, {0, 1}, 1}, w);
    auto rep = irreducible_check(t, 1, 10);
    CHECK(rep.irreducible);
    CHECK(rep.witnesses.size() == 10);
    auto d = t;
    d.m.topRightCorner(w.size(), w.size()).setZero();
    CHECK_FALSE(irreducible_check(d, 1, 10).irreducible);
}

TEST_CASE("fingerprint argmax by sign of lambda") {
    const Window w = symmetric_window(40);
    // lambda = 0: tie between n = 0 and n = -1
    auto f0 = fingerprint(CParams{0.25, 0.75, 2}, w, 10);
    CHECK(f0.lambda == doctest::Approx(0.0));
    CHECK(f0.gamma[0].second == doctest::Approx(f0.gamma[1].second).epsilon(1e-14));
    CHECK(f0.gamma[0].first == 0);
    CHECK(f0.gamma[1].first == -1);
    CHECK(f0.gamma[2].first == 1);
    CHECK(fingerprint(PParams{-0.5, {0, 0.4}, 2}, w, 10).gamma[0].first == 0);
    auto fp = fingerprint(PParams{0.5, {0, 1.5}, 0.5}, w, 10);
    CHECK(fp.gamma[0].first == -1);
    CHECK(fp.gamma[1].first == 0);
}

TEST_CASE("equivalence verdicts") {
    const Window w = symmetric_window(40);
    auto v = equivalent(PParams{0.2, {0, 0.8}, 1}, PParams{0.2, {0, 0.8}, 1.1}, w, 10);
    CHECK_FALSE(v.equivalent);
    CHECK(v.reason == VerdictReason::FingerprintMismatch);
    CHECK(v.consistent);

    auto sym = equivalent(PParams{0.2, {0, 0.8}, 1}, PParams{0.2, {0, -0.8}, 1}, w, 10);
    CHECK(sym.equivalent);
    CHECK(sym.fingerprints_agree);

    auto cross = equivalent(CParams{0.25, 0.75, 1}, P0Params{0.3, 1}, w, 10);
    CHECK_FALSE(cross.equivalent);
    CHECK(cross.reason == VerdictReason::MultiplierMismatch);
    CHECK(to_string(cross.reason) == "multiplier-mismatch");
}

TEST_CASE("canonical form folds the sign of s") {
    auto c = canonical(PParams{0.1, {0, -2}, 1});
    CHECK(std::get<PParams>(c).s == cd(0, 2));
}

TEST_CASE("representation case table") {
    CHECK(rep_case_table(direct_sum({principal(0.2, {0, 1}), complementary(0.2, 0.1)})).kind == RepCase::TwoContinuous);
    auto mixed = rep_case_table(direct_sum({principal(0.4, {0, 1}), discrete_pair(0.4, 1, 0)}));
    CHECK(mixed.kind == RepCase::ContinuousPlusPair);
    CHECK(mixed.predicts_reducible);
    CHECK(rep_case_table(direct_sum({discrete_pair(1.0, 0, 0), discrete_pair(1.0, 1, 1)})).kind == RepCase::TwoPairs);
    CHECK_THROWS_AS(rep_case_table(direct_sum({principal(0.2, {0, 1}), principal(0.2, {0, 1}), principal(0.2, {0, 1})})),
                    std::invalid_argument);
}

}
