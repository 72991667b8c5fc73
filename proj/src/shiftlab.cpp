#include "hshift/shiftlab.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <stdexcept>

namespace hs {

namespace {

void check_finite(cd w, int n) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw std::domain_error("shift: non-finite weight at n=" + std::to_string(n));
}

void require_single_lane(const WindowedOperator& t) {
    if (t.lanes != 1) throw std::invalid_argument("shift: expected a single-lane operator");
}

std::vector<double> parse_floats(std::string_view body) {
    std::vector<double> out;
    while (!body.empty()) {
        auto comma = body.find(',');
        auto tok = body.substr(0, comma);
        double v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::invalid_argument("params: bad number '" + std::string(tok) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Window make_window(int lo, int hi) {
    if (lo > 0 || hi < 0) throw std::invalid_argument("window must contain 0");
    return {lo, hi};
}

cd weight_Bs(double lambda, cd s, int n) {
    double c = n + 0.5 * (1.0 + lambda);
    cd den = c - s;
    if (std::abs(den) < 1e-14) throw std::domain_error("B(s): pole at n=" + std::to_string(n));
    return (c + s) / den;
}

double weight_Tab(double a, double b, int n) {
    if (!(a > 0 && a < 1 && b > 0 && b < 1))
        throw std::invalid_argument("T(a,b): need 0 < a, b < 1");
    return std::sqrt((n + a) / (n + b));
}

double weight_S(double lambda, int n) {
    double den = lambda + 2.0 * n + 1.0;
    if (std::abs(den) < 1e-14) throw std::domain_error("S[lambda]: pole at n=" + std::to_string(n));
    return 1.0 / den;
}

WindowedOperator make_shift(const Window& w, const WeightFn& weight) {
    WindowedOperator t{w, 1, Mat::Zero(w.size(), w.size())};
    for (int n = w.lo; n < w.hi; ++n) {
        cd x = weight(n);
        check_finite(x, n);
        t.m(w.pos(n + 1), w.pos(n)) = x;
    }
    return t;
}

WindowedOperator make_B(const Window& w) {
    return make_shift(w, [](int) { return cd(1.0); });
}

WindowedOperator make_Bs(double lambda, cd s, const Window& w) {
    return make_shift(w, [&](int n) { return weight_Bs(lambda, s, n); });
}

WindowedOperator make_Tab(double a, double b, const Window& w) {
    return make_shift(w, [&](int n) { return cd(weight_Tab(a, b, n)); });
}

WindowedOperator make_Slambda(double lambda, const Window& w) {
    return make_shift(w, [&](int n) { return cd(weight_S(lambda, n)); });
}

WindowedOperator make_block(const WindowedOperator& t1, const WindowedOperator& s,
                            const WindowedOperator& t2) {
    require_single_lane(t1);
    require_single_lane(s);
    require_single_lane(t2);
    const Window& w = t1.window;
    if (s.window.lo != w.lo || s.window.hi != w.hi || t2.window.lo != w.lo || t2.window.hi != w.hi)
        throw std::invalid_argument("make_block: window mismatch");
    int n = w.size();
    WindowedOperator out{w, 2, Mat::Zero(2 * n, 2 * n)};
    out.m.topLeftCorner(n, n) = t1.m;
    out.m.topRightCorner(n, n) = s.m;
    out.m.bottomRightCorner(n, n) = t2.m;
    return out;
}

WindowedOperator make_Ulambdas(double lambda, cd s, const Window& w) {
    if (std::abs(s.real()) > 1e-14 || s == cd(0.0))
        throw std::invalid_argument("U(lambda,s): s must be nonzero and purely imaginary");
    WindowedOperator u{w, 1, Mat::Zero(w.size(), w.size())};
    cd d = 1.0;
    u.m(w.pos(0), w.pos(0)) = d;
    for (int n = 0; n < w.hi; ++n) {
        d /= weight_Bs(lambda, s, n);
        u.m(w.pos(n + 1), w.pos(n + 1)) = d;
    }
    d = 1.0;
    for (int n = 0; n > w.lo; --n) {
        d *= weight_Bs(lambda, s, n - 1);
        u.m(w.pos(n - 1), w.pos(n - 1)) = d;
    }
    return u;
}

WindowedOperator make_discrete_shift(double holo, double anti, const Window& w, cd junction) {
    if (!(holo > 0 && anti > 0)) throw std::invalid_argument("discrete shift: parameters must be > 0");
    return make_shift(w, [&](int n) -> cd {
        if (n >= 0) return std::sqrt((n + 1.0) / (n + holo));
        if (n == -1) return junction;
        int j = -n - 1;
        return std::sqrt(j / (j - 1.0 + anti));
    });
}

cd shift_weight(const WindowedOperator& t, int n, int lane) {
    return t(lane, n + 1, lane, n);
}

std::vector<cd> band(const WindowedOperator& t, int lane_r, int lane_c) {
    std::vector<cd> out;
    for (int n = t.window.lo; n < t.window.hi; ++n) out.push_back(t(lane_r, n + 1, lane_c, n));
    return out;
}

bool is_weighted_shift(const WindowedOperator& t, double tol) {
    const Window& w = t.window;
    for (int lr = 0; lr < t.lanes; ++lr)
        for (int lc = 0; lc < t.lanes; ++lc)
            for (int i = w.lo; i <= w.hi; ++i)
                for (int j = w.lo; j <= w.hi; ++j)
                    if (i != j + 1 && std::abs(t(lr, i, lc, j)) > tol) return false;
    return true;
}

void validate(const BlockShiftParams& p) {
    std::visit(
        [](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, CParams>) {
                if (!(q.a > 0 && q.a < q.b && q.b < 1)) throw std::invalid_argument("C: need 0 < a < b < 1");
                if (!(q.alpha > 0)) throw std::invalid_argument("C: need alpha > 0");
            } else if constexpr (std::is_same_v<T, PParams>) {
                if (!(q.lambda > -1 && q.lambda <= 1)) throw std::invalid_argument("P: need -1 < lambda <= 1");
                if (std::abs(q.s.real()) > 1e-14 || q.s.imag() == 0)
                    throw std::invalid_argument("P: s must be nonzero and purely imaginary");
                if (!(q.alpha > 0)) throw std::invalid_argument("P: need alpha > 0");
            } else {
                if (!(q.lambda > -1 && q.lambda < 1)) throw std::invalid_argument("P0: need -1 < lambda < 1");
                if (!(q.alpha > 0)) throw std::invalid_argument("P0: need alpha > 0");
            }
        },
        p);
}

double multiplier_lambda(const BlockShiftParams& p) {
    if (auto c = std::get_if<CParams>(&p)) return c->a + c->b - 1.0;
    if (auto q = std::get_if<PParams>(&p)) return q->lambda;
    return std::get<P0Params>(p).lambda;
}

std::string family_name(const BlockShiftParams& p) {
    static const char* names[] = {"C", "P", "P0"};
    return names[p.index()];
}

std::string to_string(const BlockShiftParams& p) {
    char buf[160];
    if (auto c = std::get_if<CParams>(&p))
        std::snprintf(buf, sizeof buf, "C:%.12g,%.12g,%.12g", c->a, c->b, c->alpha);
    else if (auto q = std::get_if<PParams>(&p))
        std::snprintf(buf, sizeof buf, "P:%.12g,%.12g,%.12g", q->lambda, q->s.imag(), q->alpha);
    else {
        auto& z = std::get<P0Params>(p);
        std::snprintf(buf, sizeof buf, "P0:%.12g,%.12g", z.lambda, z.alpha);
    }
    return buf;
}

BlockShiftParams parse_params(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("params: missing family prefix");
    auto fam = text.substr(0, colon);
    auto v = parse_floats(text.substr(colon + 1));
    BlockShiftParams p;
    if (fam == "C" && v.size() == 3)
        p = CParams{v[0], v[1], v[2]};
    else if (fam == "P" && v.size() == 3)
        p = PParams{v[0], cd(0.0, v[1]), v[2]};
    else if (fam == "P0" && v.size() == 2)
        p = P0Params{v[0], v[1]};
    else
        throw std::invalid_argument("params: cannot parse '" + std::string(text) + "'");
    validate(p);
    return p;
}

WindowedOperator scaled(const WindowedOperator& t, cd c) {
    WindowedOperator out = t;
    out.m *= c;
    return out;
}

WindowedOperator difference(const WindowedOperator& x, const WindowedOperator& y) {
    if (x.lanes != y.lanes || x.window.lo != y.window.lo || x.window.hi != y.window.hi)
        throw std::invalid_argument("difference: shape mismatch");
    WindowedOperator out = x;
    out.m -= y.m;
    return out;
}

WindowedOperator make_family(const BlockShiftParams& p, const Window& w) {
    validate(p);
    if (auto c = std::get_if<CParams>(&p)) {
        auto tab = make_Tab(c->a, c->b, w), tba = make_Tab(c->b, c->a, w);
        return make_block(tab, scaled(difference(tab, tba), c->alpha), tba);
    }
    if (auto q = std::get_if<PParams>(&p)) {
        auto bs = make_Bs(q->lambda, q->s, w), b = make_B(w);
        return make_block(bs, scaled(difference(bs, b), q->alpha), b);
    }
    auto& z = std::get<P0Params>(p);
    auto b = make_B(w);
    return make_block(b, scaled(make_Slambda(z.lambda, w), z.alpha), b);
}

}  // namespace hs
