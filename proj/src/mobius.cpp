#include "hshift/mobius.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace hs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// Coefficients of (alpha z + beta) / (gamma z + delta).
struct Frac {
    cd alpha, beta, gamma, delta;
};

Frac to_frac(const Mobius& g) {
    cd e = std::polar(1.0, g.theta);
    return {e, -e * g.a, -std::conj(g.a), 1.0};
}

Mobius from_frac(const Frac& f) {
    cd rot = f.alpha / f.delta;
    cd a = -f.beta / f.alpha;
    return make_mobius(std::arg(rot), a);
}

}  // namespace

Mobius make_mobius(double theta, cd a) {
    if (!std::isfinite(theta) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw std::invalid_argument("mobius: non-finite parameter");
    if (std::abs(a) >= 1.0) throw std::invalid_argument("mobius: |a| must be < 1");
    return {reduce_angle(theta), a};
}

cd apply(const Mobius& g, cd z) {
    cd den = 1.0 - std::conj(g.a) * z;
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(z))) throw std::domain_error("mobius: pole");
    return std::polar(1.0, g.theta) * (z - g.a) / den;
}

Mobius compose(const Mobius& g, const Mobius& h) {
    Frac p = to_frac(g), q = to_frac(h);
    Frac r{p.alpha * q.alpha + p.beta * q.gamma, p.alpha * q.beta + p.beta * q.delta,
           p.gamma * q.alpha + p.delta * q.gamma, p.gamma * q.beta + p.delta * q.delta};
    return from_frac(r);
}

Mobius invert(const Mobius& g) {
    return make_mobius(-g.theta, -g.a * std::polar(1.0, g.theta));
}

Mobius star(const Mobius& g) { return make_mobius(-g.theta, std::conj(g.a)); }

cd deriv0(const Mobius& g) { return std::polar(1.0 - std::norm(g.a), g.theta); }

bool is_rotation(const Mobius& g) { return g.a == cd(0.0); }

double param_distance(const Mobius& g, const Mobius& h) {
    return std::abs(std::polar(1.0, g.theta) - std::polar(1.0, h.theta)) + std::abs(g.a - h.a);
}

Mobius parse_mobius(std::string_view text) {
    std::string s(text);
    double theta = 0, re = 0, im = 0;
    char sign = '+';
    int used = 0;
    if (std::sscanf(s.c_str(), "theta=%lf,a=%lf%c%lfi%n", &theta, &re, &sign, &im, &used) == 4 &&
        used == static_cast<int>(s.size()) && (sign == '+' || sign == '-')) {
        return make_mobius(theta, {re, sign == '-' ? -im : im});
    }
    used = 0;
    if (std::sscanf(s.c_str(), "theta=%lf,a=%lf%n", &theta, &re, &used) == 2 &&
        used == static_cast<int>(s.size()))
        return make_mobius(theta, re);
    throw std::invalid_argument("mobius: cannot parse '" + s + "'");
}

std::string to_string(const Mobius& g) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "theta=%.12g,a=%.12g%c%.12gi", g.theta, g.a.real(),
                  g.a.imag() < 0 ? '-' : '+', std::abs(g.a.imag()));
    return buf;
}

}  // namespace hs
