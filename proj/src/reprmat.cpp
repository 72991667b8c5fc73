#include "hshift/reprmat.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double mod2(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0) r += 2.0;
    if (r > 2.0 - 1e-12) r = 0.0;
    return r;
}

// Multiplier class (lambda mod 2) of an irreducible summand.
double multiplier_class(const ReprSpec& spec) {
    return std::visit(
        [](const auto& q) -> double {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, DiscreteAnti>)
                return mod2(2.0 - q.lambda);
            else if constexpr (std::is_same_v<T, DirectSum>)
                throw std::logic_error("multiplier_class on a direct sum");
            else
                return mod2(q.lambda);
        },
        spec.kind);
}

void flatten(const ReprSpec& spec, std::vector<const ReprSpec*>& out) {
    if (auto ds = std::get_if<DirectSum>(&spec.kind)) {
        for (const auto& p : ds->parts) flatten(p, out);
    } else {
        out.push_back(&spec);
    }
}

int fourier_size(int reach, double abs_a) {
    double rho = (1.0 + abs_a) / (1.0 - abs_a);
    // spectrum of column `reach` ends near reach*rho; leave room so no alias lands on |n| <= reach
    double need = 2.0 * (reach * rho + 64.0);
    int nf = 256;
    while (nf < need) nf *= 2;
    return nf;
}

std::vector<cd> unit_circle(int nf) {
    std::vector<cd> z(nf);
    for (int j = 0; j < nf; ++j) z[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / nf);
    return z;
}

// Coefficient of z^n in base(z) psi(z)^m, n in [r0,r1], m in [c0,c1].
Mat circle_coefficients(const std::vector<cd>& base, const std::vector<cd>& psi, int r0, int r1,
                        int c0, int c1) {
    const int nf = static_cast<int>(base.size());
    Mat out(r1 - r0 + 1, c1 - c0 + 1);
    std::vector<cd> f(nf), F(nf), pw(nf);
    for (int j = 0; j < nf; ++j) pw[j] = std::polar(1.0, c0 * std::arg(psi[j]));
    Eigen::FFT<double> fft;
    for (int m = c0; m <= c1; ++m) {
        if (m != c0)
            for (int j = 0; j < nf; ++j) pw[j] *= psi[j];
        for (int j = 0; j < nf; ++j) f[j] = base[j] * pw[j];
        fft.fwd(F, f);
        for (int n = r0; n <= r1; ++n) out(n - r0, m - c0) = F[((n % nf) + nf) % nf] / double(nf);
    }
    return out;
}

void check_group_element(const Mobius& g) {
    if (std::abs(g.a) > 0.9) throw std::invalid_argument("repr: |a| > 0.9 outside the supported range");
}

// pi(phi_a) block without the rotation factor, before norm scaling.
Mat involution_coefficients(double lambda, cd mu, cd a, int r0, int r1, int c0, int c1) {
    int reach = std::max({std::abs(r0), std::abs(r1), std::abs(c0), std::abs(c1)});
    int nf = fourier_size(reach, std::abs(a));
    auto z = unit_circle(nf);
    double r = std::norm(a);
    cd pre = std::exp((0.5 * lambda + mu) * std::log(1.0 - r));
    std::vector<cd> base(nf), psi(nf);
    for (int j = 0; j < nf; ++j) {
        cd d = 1.0 + std::conj(a) * z[j];
        base[j] = pre * std::pow(d, cd(-lambda)) * std::exp(-2.0 * mu * std::log(std::abs(d)));
        cd p = (z[j] + a) / d;
        psi[j] = p / std::abs(p);
    }
    return circle_coefficients(base, psi, r0, r1, c0, c1);
}

Mat continuous_block(const Lane& lane, const Mobius& g, int r0, int r1, int c0, int c1) {
    Mat m = involution_coefficients(lane.lambda, lane.mu, g.a, r0, r1, c0, c1);
    for (int n = r0; n <= r1; ++n) {
        cd rot = std::polar(1.0, -(n + 0.5 * lane.lambda) * g.theta);
        double nn = lane_norm(lane, n);
        for (int k = c0; k <= c1; ++k) m(n - r0, k - c0) *= rot * nn / lane_norm(lane, k);
    }
    return m;
}

double holo_norm(double p, int n) {
    if (n < 0) throw std::invalid_argument("discrete series: negative index");
    return std::exp(0.5 * (std::lgamma(n + 1.0) + std::lgamma(p) - std::lgamma(n + p)));
}

Mat holo_block(double p, const Mobius& g, int r0, int r1, int c0, int c1) {
    if (r0 < 0 || c0 < 0) throw std::invalid_argument("discrete series: negative index");
    Mat m = involution_coefficients(p, 0.0, g.a, r0, r1, c0, c1);
    for (int n = r0; n <= r1; ++n) {
        cd rot = std::polar(1.0, -(n + 0.5 * p) * g.theta);
        double nn = holo_norm(p, n);
        for (int k = c0; k <= c1; ++k) m(n - r0, k - c0) *= rot * nn / holo_norm(p, k);
    }
    return m;
}

Mat anti_block(double p, const Mobius& g, int r0, int r1, int c0, int c1) {
    return holo_block(p, g, r0, r1, c0, c1).conjugate();
}

Mat pair_block(const Lane& lane, const Mobius& g, int r0, int r1, int c0, int c1) {
    Mat m = Mat::Zero(r1 - r0 + 1, c1 - c0 + 1);
    int hr0 = std::max(r0, 0), hc0 = std::max(c0, 0);
    if (r1 >= hr0 && c1 >= hc0)
        m.block(hr0 - r0, hc0 - c0, r1 - hr0 + 1, c1 - hc0 + 1) = holo_block(lane.holo, g, hr0, r1, hc0, c1);
    int ar1 = std::min(r1, -1), ac1 = std::min(c1, -1);
    if (ar1 >= r0 && ac1 >= c0) {
        // own index j = -n-1
        int jr0 = -ar1 - 1, jr1 = -r0 - 1, jc0 = -ac1 - 1, jc1 = -c0 - 1;
        Mat a = anti_block(lane.anti, g, jr0, jr1, jc0, jc1);
        for (int n = r0; n <= ar1; ++n)
            for (int k = c0; k <= ac1; ++k) m(n - r0, k - c0) = a(-n - 1 - jr0, -k - 1 - jc0);
    }
    return m;
}

bool same_lane(const Lane& x, const Lane& y) {
    return x.kind == y.kind && x.lambda == y.lambda && x.mu == y.mu && x.weighted == y.weighted &&
           x.holo == y.holo && x.anti == y.anti;
}

std::pair<int, int> lane_range(const Lane& lane, int reach) {
    if (lane.kind == Lane::Kind::Holo || lane.kind == Lane::Kind::Anti) return {0, reach};
    return {-reach, reach};
}

std::pair<int, int> interior(const Lane& lane, const Window& w, int margin) {
    int lo = w.lo + margin, hi = w.hi - margin;
    if (lane.kind == Lane::Kind::Holo || lane.kind == Lane::Kind::Anti) lo = std::max(lo, 0);
    if (lo > hi) throw std::invalid_argument("margin leaves an empty interior");
    return {lo, hi};
}

}  // namespace

ReprSpec principal(double lambda, cd s) { return {Principal{lambda, s}}; }
ReprSpec complementary(double lambda, double sigma) { return {Complementary{lambda, sigma}}; }
ReprSpec holo(double lambda) { return {DiscreteHolo{lambda}}; }
ReprSpec anti(double lambda) { return {DiscreteAnti{lambda}}; }
ReprSpec direct_sum(std::vector<ReprSpec> parts) { return {DirectSum{std::move(parts)}}; }
ReprSpec discrete_pair(double lambda, int m, int k) {
    return direct_sum({holo(lambda + 2.0 * m), anti(2.0 - lambda + 2.0 * k)});
}

void validate(const ReprSpec& spec) {
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Principal>) {
                if (!(q.lambda > -1 && q.lambda <= 1)) throw std::invalid_argument("principal: need -1 < lambda <= 1");
                if (std::abs(q.s.real()) > 1e-14) throw std::invalid_argument("principal: s must be imaginary");
            } else if constexpr (std::is_same_v<T, Complementary>) {
                if (!(q.lambda > -1 && q.lambda < 1)) throw std::invalid_argument("complementary: need -1 < lambda < 1");
                if (!(q.sigma > 0 && q.sigma < 0.5 * (1.0 - std::abs(q.lambda))))
                    throw std::invalid_argument("complementary: need 0 < sigma < (1-|lambda|)/2");
            } else if constexpr (std::is_same_v<T, DirectSum>) {
                std::vector<const ReprSpec*> flat;
                flatten(spec, flat);
                if (flat.empty()) throw std::invalid_argument("direct sum: no summands");
                for (auto* p : flat) validate(*p);
                double cls = multiplier_class(*flat.front());
                for (auto* p : flat) {
                    double d = std::abs(multiplier_class(*p) - cls);
                    if (std::min(d, 2.0 - d) > 1e-12)
                        throw std::invalid_argument("direct sum: summands have different multipliers");
                }
            } else {
                if (!(q.lambda > 0)) throw std::invalid_argument("discrete series: parameter must be > 0");
            }
        },
        spec.kind);
}

cd mu(const ReprSpec& spec) {
    if (auto p = std::get_if<Principal>(&spec.kind)) return 0.5 * (1.0 - p->lambda) + p->s;
    if (auto c = std::get_if<Complementary>(&spec.kind)) return 0.5 * (1.0 - c->lambda) + c->sigma;
    throw std::invalid_argument("mu: continuous series only");
}

std::string describe(const ReprSpec& spec) {
    std::ostringstream os;
    os.precision(12);
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, Principal>)
                os << "P(" << q.lambda << "," << q.s.imag() << "i)";
            else if constexpr (std::is_same_v<T, Complementary>)
                os << "C(" << q.lambda << "," << q.sigma << ")";
            else if constexpr (std::is_same_v<T, DiscreteHolo>)
                os << "D+(" << q.lambda << ")";
            else if constexpr (std::is_same_v<T, DiscreteAnti>)
                os << "D-(" << q.lambda << ")";
            else
                for (size_t i = 0; i < q.parts.size(); ++i) os << (i ? "+" : "") << describe(q.parts[i]);
        },
        spec.kind);
    return os.str();
}

std::vector<Lane> lanes_of(const ReprSpec& spec) {
    validate(spec);
    std::vector<const ReprSpec*> flat;
    flatten(spec, flat);
    std::vector<Lane> out;
    for (size_t i = 0; i < flat.size(); ++i) {
        const auto& k = flat[i]->kind;
        Lane lane;
        if (auto p = std::get_if<Principal>(&k)) {
            lane.lambda = p->lambda;
            lane.mu = mu(*flat[i]);
        } else if (auto c = std::get_if<Complementary>(&k)) {
            lane.lambda = c->lambda;
            lane.mu = mu(*flat[i]);
            lane.weighted = true;
        } else if (auto h = std::get_if<DiscreteHolo>(&k)) {
            lane.holo = h->lambda;
            lane.kind = Lane::Kind::Holo;
            if (i + 1 < flat.size())
                if (auto a = std::get_if<DiscreteAnti>(&flat[i + 1]->kind)) {
                    lane.kind = Lane::Kind::Pair;
                    lane.anti = a->lambda;
                    ++i;
                }
        } else {
            lane.kind = Lane::Kind::Anti;
            lane.anti = std::get<DiscreteAnti>(k).lambda;
        }
        out.push_back(lane);
    }
    return out;
}

bool lane_has_index(const Lane& lane, int n) {
    return n >= 0 || lane.kind == Lane::Kind::Continuous || lane.kind == Lane::Kind::Pair;
}

double lane_norm(const Lane& lane, int n) {
    switch (lane.kind) {
        case Lane::Kind::Continuous: {
            if (!lane.weighted) return 1.0;
            const double lam = lane.lambda, m = lane.mu.real();
            double v = 1.0;
            for (int k = 1; k <= n; ++k) v *= (k - m) / (lam + m + k - 1);
            for (int k = 0; k > n; --k) v *= (lam + m + k - 1) / (k - m);
            return std::sqrt(v);
        }
        case Lane::Kind::Holo: return holo_norm(lane.holo, n);
        case Lane::Kind::Anti: return holo_norm(lane.anti, n);
        case Lane::Kind::Pair: return n >= 0 ? holo_norm(lane.holo, n) : holo_norm(lane.anti, -n - 1);
    }
    return 1.0;
}

double rotation_level(const Lane& lane, int n) {
    switch (lane.kind) {
        case Lane::Kind::Continuous: return n + 0.5 * lane.lambda;
        case Lane::Kind::Holo: return n + 0.5 * lane.holo;
        case Lane::Kind::Anti: return -(n + 0.5 * lane.anti);
        case Lane::Kind::Pair: return n >= 0 ? n + 0.5 * lane.holo : -((-n - 1) + 0.5 * lane.anti);
    }
    return 0;
}

int rotation_exponent(const Lane& lane, int n, double base) {
    double q = rotation_level(lane, n) - 0.5 * base;
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9) throw std::invalid_argument("rotation level not in base + Z");
    return static_cast<int>(r);
}

double norm_sq(const ReprSpec& spec, int n) {
    if (std::holds_alternative<DirectSum>(spec.kind)) throw std::invalid_argument("norm_sq: irreducible spec only");
    auto lane = lanes_of(spec).front();
    if (!lane_has_index(lane, n)) throw std::invalid_argument("norm_sq: invalid index for discrete series");
    double v = lane_norm(lane, n);
    return v * v;
}

cd gbinom(cd x, int j) {
    if (j < 0) return 0.0;
    cd v = 1.0;
    for (int i = 0; i < j; ++i) v *= (x - double(i)) / double(i + 1);
    return v;
}

cd coeff_Ck(double lambda, cd mu, int m, int n, int k) {
    if (k < 0 || k + n - m < 0) throw std::invalid_argument("coeff_Ck: need k >= 0 and k+n-m >= 0");
    return gbinom(-lambda - mu - double(m), k + n - m) * gbinom(double(m) - mu, k);
}

cd matcoef(const ReprSpec& spec, cd a, int m, int n, double tol) {
    if (!std::holds_alternative<Principal>(spec.kind) && !std::holds_alternative<Complementary>(spec.kind))
        throw std::invalid_argument("matcoef: continuous series only");
    if (std::abs(a) >= 1.0) throw std::invalid_argument("matcoef: |a| must be < 1");
    auto lane = lanes_of(spec).front();
    if (a == cd(0.0)) return m == n ? 1.0 : 0.0;
    const double lam = lane.lambda, r = std::norm(a);
    const cd mu_ = lane.mu, x = -lam - mu_ - double(m), y = double(m) - mu_;
    const int k0 = std::max(0, m - n);
    const int K = std::max(64, int(std::ceil(std::log(tol) / std::log(r))) + 16);
    // term_k = C_k(m,n) conj(a)^{k+n-m} a^k
    cd term = coeff_Ck(lam, mu_, m, n, k0) * std::pow(std::conj(a), k0 + n - m) * std::pow(a, k0);
    cd sum = 0.0, prev = 0.0;
    double biggest = 0.0;
    for (int k = k0; k < k0 + K; ++k) {
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        prev = term;
        int j = k + n - m;
        term *= (x - double(j)) / double(j + 1) * (y - double(k)) / double(k + 1) * r;
    }
    double ratio = std::abs(prev) > 0 ? std::abs(term) / std::abs(prev) : 0.0;
    double tail = ratio < 1 ? std::abs(term) / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    if (tail > tol) throw std::range_error("matcoef: series-order-too-small");
    if (biggest * K * kEps > 1e-10) throw std::range_error("matcoef: precision-loss (cancellation)");
    cd c = std::exp((0.5 * lam + mu_) * std::log(1.0 - r));
    return c * sum * lane_norm(lane, n) / lane_norm(lane, m);
}

cd discrete_matcoef(const ReprSpec& spec, cd a, int m, int n) {
    bool anti_ = std::holds_alternative<DiscreteAnti>(spec.kind);
    if (!anti_ && !std::holds_alternative<DiscreteHolo>(spec.kind))
        throw std::invalid_argument("discrete_matcoef: discrete series only");
    if (m < 0 || n < 0) throw std::invalid_argument("discrete_matcoef: negative index");
    double p = anti_ ? std::get<DiscreteAnti>(spec.kind).lambda : std::get<DiscreteHolo>(spec.kind).lambda;
    // coefficient of z^n in (1-|a|^2)^{p/2} (z+a)^m (1+conj(a) z)^{-p-m}
    cd sum = 0.0;
    for (int i = 0; i <= std::min(m, n); ++i)
        sum += gbinom(double(m), i) * std::pow(a, m - i) * gbinom(-p - double(m), n - i) *
               std::pow(std::conj(a), n - i);
    cd v = std::pow(1.0 - std::norm(a), 0.5 * p) * sum * holo_norm(p, n) / holo_norm(p, m);
    return anti_ ? std::conj(v) : v;
}

int spread_reach(int index, double abs_a) {
    if (abs_a == 0.0) return std::abs(index) + 1;
    double rho = (1.0 + abs_a) / (1.0 - abs_a);
    return int(std::ceil(1.25 * std::abs(index) * rho + 64.0 + 40.0 / -std::log(abs_a)));
}

Mat lane_block(const Lane& lane, const Mobius& g, int r0, int r1, int c0, int c1) {
    check_group_element(g);
    if (r0 > r1 || c0 > c1) throw std::invalid_argument("lane_block: empty range");
    if (g.a == 0.0) {
        Mat m = Mat::Zero(r1 - r0 + 1, c1 - c0 + 1);
        for (int n = std::max(r0, c0); n <= std::min(r1, c1); ++n)
            if (lane_has_index(lane, n)) m(n - r0, n - c0) = std::polar(1.0, -rotation_level(lane, n) * g.theta);
        return m;
    }
    switch (lane.kind) {
        case Lane::Kind::Continuous: return continuous_block(lane, g, r0, r1, c0, c1);
        case Lane::Kind::Holo: return holo_block(lane.holo, g, r0, r1, c0, c1);
        case Lane::Kind::Anti: return anti_block(lane.anti, g, r0, r1, c0, c1);
        case Lane::Kind::Pair: return pair_block(lane, g, r0, r1, c0, c1);
    }
    return {};
}

WindowedOperator repr_matrix(const ReprSpec& spec, const Mobius& g, const Window& w) {
    auto lanes = lanes_of(spec);
    const int L = static_cast<int>(lanes.size()), n = w.size();
    WindowedOperator out{w, L, Mat::Zero(L * n, L * n)};
    for (int l = 0; l < L; ++l) {
        if (!lane_has_index(lanes[l], w.lo))
            throw std::invalid_argument("repr_matrix: one-sided discrete lane needs window lo = 0");
        int same = -1;
        for (int k = 0; k < l && same < 0; ++k)
            if (same_lane(lanes[k], lanes[l])) same = k;
        if (same >= 0)
            out.m.block(l * n, l * n, n, n) = out.m.block(same * n, same * n, n, n);
        else
            out.m.block(l * n, l * n, n, n) = lane_block(lanes[l], g, w.lo, w.hi, w.lo, w.hi);
    }
    return out;
}

double unitarity_defect(const ReprSpec& spec, const Mobius& g, const Window& w, int margin) {
    double worst = 0.0;
    for (const auto& lane : lanes_of(spec)) {
        auto [lo, hi] = interior(lane, w, margin);
        auto [r0, r1] = lane_range(lane, spread_reach(std::max(std::abs(lo), std::abs(hi)), std::abs(g.a)));
        Mat m = lane_block(lane, g, r0, r1, lo, hi);
        Mat d = m.adjoint() * m - Mat::Identity(m.cols(), m.cols());
        worst = std::max(worst, spectral_norm(d));
    }
    return worst;
}

ProjectivityCheck projectivity_defect(const ReprSpec& spec, const Mobius& g, const Mobius& h,
                                      const Window& w, int margin) {
    Mobius gh = compose(g, h);
    std::vector<Mat> prod, direct;
    cd num = 0.0;
    double den = 0.0;
    for (const auto& lane : lanes_of(spec)) {
        auto [lo, hi] = interior(lane, w, margin);
        auto [k0, k1] = lane_range(lane, spread_reach(std::max(std::abs(lo), std::abs(hi)), std::abs(h.a)));
        Mat p = lane_block(lane, g, lo, hi, k0, k1) * lane_block(lane, h, k0, k1, lo, hi);
        Mat q = lane_block(lane, gh, lo, hi, lo, hi);
        num += (p.adjoint() * q).trace();
        den += p.squaredNorm();
        prod.push_back(std::move(p));
        direct.push_back(std::move(q));
    }
    cd phase = num / den;
    double worst = 0.0;
    for (size_t i = 0; i < prod.size(); ++i)
        worst = std::max(worst, spectral_norm(direct[i] - phase * prod[i]));
    return {worst, phase};
}

}  // namespace hs
