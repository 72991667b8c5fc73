#include "hshift/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace hs {

namespace {

Eigen::Matrix2cd section_matrix(const WindowedOperator& t, int n) {
    Eigen::Matrix2cd s;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) s(r, c) = t(r, n + 1, c, n);
    return s;
}

double norm2(const Eigen::Matrix2cd& m) { return m.jacobiSvd().singularValues()(0); }

bool close(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); }

bool same_params(const BlockShiftParams& x, const BlockShiftParams& y) {
    if (x.index() != y.index()) return false;
    if (auto c = std::get_if<CParams>(&x)) {
        auto& d = std::get<CParams>(y);
        return close(c->a, d.a) && close(c->b, d.b) && close(c->alpha, d.alpha);
    }
    if (auto p = std::get_if<PParams>(&x)) {
        auto& q = std::get<PParams>(y);
        return close(p->lambda, q.lambda) && close(p->s.imag(), q.s.imag()) && close(p->alpha, q.alpha);
    }
    auto& p = std::get<P0Params>(x);
    auto& q = std::get<P0Params>(y);
    return close(p.lambda, q.lambda) && close(p.alpha, q.alpha);
}

}  // namespace

Sections block_sections(const WindowedOperator& t, int n) {
    if (t.lanes != 2) throw std::invalid_argument("block_sections: expected a two-lane operator");
    if (!t.window.contains(n - 1) || !t.window.contains(n + 1))
        throw std::out_of_range("block_sections: n outside the window interior");
    Sections s;
    s.t = section_matrix(t, n);
    Eigen::Matrix2cd prev = section_matrix(t, n - 1);
    s.a = s.t.adjoint() * s.t;
    s.b = prev * prev.adjoint();
    return s;
}

IrreducibilityReport irreducible_check(const WindowedOperator& t, int lo, int hi) {
    IrreducibilityReport rep;
    rep.irreducible = true;
    for (int n = lo; n <= hi; ++n) {
        Sections s = block_sections(t, n);
        double c = norm2(s.a * s.b - s.b * s.a);
        rep.witnesses.emplace_back(n, c);
        if (!(c > 1e-8 * norm2(s.a) * norm2(s.b))) rep.irreducible = false;
    }
    return rep;
}

Fingerprint fingerprint(const WindowedOperator& t, int lo, int hi) {
    Fingerprint fp;
    fp.family = "custom";
    for (int n = lo; n <= hi; ++n) fp.gamma.emplace_back(n, block_sections(t, n).a.trace().real() - 2.0);
    // ties (equal to 12 digits) rank the larger n first
    auto key = [](const std::pair<int, double>& e) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.11e", e.second);
        return std::pair(std::strtod(buf, nullptr), e.first);
    };
    std::sort(fp.gamma.begin(), fp.gamma.end(), [&](auto& x, auto& y) { return key(x) > key(y); });
    return fp;
}

Fingerprint fingerprint(const BlockShiftParams& p, const Window& w, int margin) {
    Fingerprint fp = fingerprint(make_family(p, w), w.lo + margin, w.hi - margin);
    fp.family = family_name(p);
    fp.lambda = multiplier_lambda(p);
    return fp;
}

double gamma_closed_form(const BlockShiftParams& p, int n) {
    validate(p);
    if (auto c = std::get_if<CParams>(&p)) {
        double lam = c->a + c->b - 1.0, h = n + 0.5 * (1.0 + lam), d = 0.5 * (c->a - c->b);
        return (1.0 + c->alpha * c->alpha) * (c->a - c->b) * (c->a - c->b) / (h * h - d * d);
    }
    if (auto q = std::get_if<PParams>(&p)) {
        cd den = n + 0.5 * (1.0 + q->lambda) - q->s;
        return 4.0 * q->alpha * q->alpha * std::norm(q->s) / std::norm(den);
    }
    auto& z = std::get<P0Params>(p);
    double den = z.lambda + 2.0 * n + 1.0;
    return z.alpha * z.alpha / (den * den);
}

BlockShiftParams canonical(const BlockShiftParams& p) {
    validate(p);
    if (auto q = std::get_if<PParams>(&p)) return PParams{q->lambda, cd(0.0, std::abs(q->s.imag())), q->alpha};
    return p;
}

std::string to_string(VerdictReason r) {
    switch (r) {
        case VerdictReason::ParameterRule: return "parameter-rule";
        case VerdictReason::MultiplierMismatch: return "multiplier-mismatch";
        case VerdictReason::FingerprintMismatch: return "fingerprint-mismatch";
    }
    return "?";
}

EquivalenceVerdict equivalent(const BlockShiftParams& p1, const BlockShiftParams& p2, const Window& w, int margin,
                              double tol) {
    return compare(p1, fingerprint(p1, w, margin), p2, fingerprint(p2, w, margin), tol);
}

EquivalenceVerdict compare(const BlockShiftParams& p1, const Fingerprint& f1, const BlockShiftParams& p2,
                           const Fingerprint& f2, double tol) {
    EquivalenceVerdict v;
    v.equivalent = same_params(canonical(p1), canonical(p2));
    const size_t k = std::min<size_t>({5, f1.gamma.size(), f2.gamma.size()});
    for (size_t i = 0; i < k; ++i)
        v.top5_distance = std::max(v.top5_distance, std::abs(f1.gamma[i].second - f2.gamma[i].second));
    const bool same_multiplier = close(f1.lambda, f2.lambda);
    v.fingerprints_agree = same_multiplier && v.top5_distance <= tol;
    if (v.equivalent)
        v.reason = VerdictReason::ParameterRule;
    else if (!same_multiplier)
        v.reason = VerdictReason::MultiplierMismatch;
    else
        v.reason = VerdictReason::FingerprintMismatch;
    v.consistent = v.equivalent == v.fingerprints_agree;
    return v;
}

RepCaseDescriptor rep_case_table(const ReprSpec& spec) {
    if (!std::holds_alternative<DirectSum>(spec.kind))
        throw std::invalid_argument("rep_case_table: expected a direct sum");
    validate(spec);
    int cont = 0, holo_ = 0, anti_ = 0;
    std::vector<const ReprSpec*> stack{&spec};
    while (!stack.empty()) {
        const ReprSpec* s = stack.back();
        stack.pop_back();
        if (auto ds = std::get_if<DirectSum>(&s->kind))
            for (const auto& p : ds->parts) stack.push_back(&p);
        else if (std::holds_alternative<DiscreteHolo>(s->kind))
            ++holo_;
        else if (std::holds_alternative<DiscreteAnti>(s->kind))
            ++anti_;
        else
            ++cont;
    }
    // eigenspace dimension of the rotations at levels far to the right / left
    const int right = cont + holo_, left = cont + anti_;
    if (right != 2 || left != 2)
        throw std::invalid_argument("rep_case_table: rotation eigenspaces of dimension " + std::to_string(right) +
                                    " / " + std::to_string(left) + ", a 2-shift needs 2 / 2");
    if (cont == 2) return {RepCase::TwoContinuous, false, "two continuous summands: see the C, P, P0 families"};
    if (cont == 1) return {RepCase::ContinuousPlusPair, true, "continuous + D+ + D-: every such operator is reducible"};
    return {RepCase::TwoPairs, true, "D+ + D- + D+ + D-: every such operator is reducible"};
}

}  // namespace hs
