#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace hs {

using cd = std::complex<double>;

// phi(z) = e^{i theta} (z - a) / (1 - conj(a) z).  phi_a means theta = 0.
struct Mobius {
    double theta = 0.0;  // reduced to [0, 2pi)
    cd a = 0.0;          // |a| < 1
};

Mobius make_mobius(double theta, cd a);
inline Mobius identity() { return {}; }
inline Mobius rotation(double theta) { return make_mobius(theta, 0.0); }
inline Mobius involution(cd a) { return make_mobius(0.0, a); }

cd apply(const Mobius& g, cd z);
Mobius compose(const Mobius& g, const Mobius& h);  // g after h
Mobius invert(const Mobius& g);
Mobius star(const Mobius& g);  // z -> conj(g(conj z))
cd deriv0(const Mobius& g);

bool is_rotation(const Mobius& g);
double param_distance(const Mobius& g, const Mobius& h);

// "theta=<f>,a=<re>+<im>i"
Mobius parse_mobius(std::string_view text);
std::string to_string(const Mobius& g);

}  // namespace hs
