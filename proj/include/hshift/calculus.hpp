#pragma once

#include <vector>

#include "hshift/mobius.hpp"
#include "hshift/reprmat.hpp"
#include "hshift/shiftlab.hpp"

namespace hs {

// e^{i theta} (T - a)(1 - conj(a) T)^{-1}.  Diagnostics only; truncation of an
// inverse is not the inverse of a truncation.
WindowedOperator mobius_of_operator(const WindowedOperator& t, const Mobius& g);

// ||e^{i theta} pi(g)(T - a) - T pi(g)(1 - conj(a) T)|| on the interior, over ||T|| + 1.
double homogeneity_residual(const WindowedOperator& t, const ReprSpec& spec, const Mobius& g, int margin);

// Fixed-seed samples: every third element is a rotation, the rest have
// |a| cycling through 0.2, 0.35, 0.5 with uniform phases.
std::vector<Mobius> sample_group(int n, unsigned long long seed);

struct HomogeneityReport {
    Window window;
    int margin = 0;
    std::vector<Mobius> samples;
    std::vector<double> residuals;
    double max_residual = 0;
    double tol = 0;
    bool pass = false;
};

HomogeneityReport verify_homogeneous(const WindowedOperator& t, const ReprSpec& spec, int n_samples,
                                     unsigned long long seed, double tol, int margin);

}  // namespace hs
