#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hshift/mobius.hpp"
#include "hshift/shiftlab.hpp"

namespace hs {

struct Principal {
    double lambda;
    cd s;  // purely imaginary
};
struct Complementary {
    double lambda, sigma;
};
struct DiscreteHolo {
    double lambda;
};
struct DiscreteAnti {
    double lambda;
};
struct ReprSpec;
struct DirectSum {
    std::vector<ReprSpec> parts;
};
struct ReprSpec {
    std::variant<Principal, Complementary, DiscreteHolo, DiscreteAnti, DirectSum> kind;
};

ReprSpec principal(double lambda, cd s);
ReprSpec complementary(double lambda, double sigma);
ReprSpec holo(double lambda);
ReprSpec anti(double lambda);
ReprSpec direct_sum(std::vector<ReprSpec> parts);
// D+_{lambda+2m} (+) D-_{2-lambda+2k}, the interleaved discrete pair.
ReprSpec discrete_pair(double lambda, int m, int k);

void validate(const ReprSpec& spec);
cd mu(const ReprSpec& spec);  // continuous series only
std::string describe(const ReprSpec& spec);

// One bilateral component of a representation, realized on l2(window).
// Pair lanes carry D+ on indices n >= 0 and D- on n <= -1 (z^{-n-1}).
// Holo/Anti lanes on their own use indices n >= 0 only.
struct Lane {
    enum class Kind { Continuous, Holo, Anti, Pair };
    Kind kind = Kind::Continuous;
    double lambda = 0;    // continuous multiplier parameter
    cd mu = 0;            // continuous
    bool weighted = false;  // complementary norms
    double holo = 0, anti = 0;
};

std::vector<Lane> lanes_of(const ReprSpec& spec);
bool lane_has_index(const Lane& lane, int n);
double lane_norm(const Lane& lane, int n);  // ||z^n|| in the lane's own realization
// Rotation eigenvalue at index n is exp(-i (q + base/2) theta); returns q.
// Throws if the level is not base/2 plus an integer.
int rotation_exponent(const Lane& lane, int n, double base);
double rotation_level(const Lane& lane, int n);

double norm_sq(const ReprSpec& spec, int n);

cd gbinom(cd x, int j);
cd coeff_Ck(double lambda, cd mu, int m, int n, int k);
cd matcoef(const ReprSpec& spec, cd a, int m, int n, double tol = 1e-14);
cd discrete_matcoef(const ReprSpec& spec, cd a, int m, int n);

// Exact entries <pi(g) e_m, e_n> for n in [r0,r1], m in [c0,c1] of one lane.
Mat lane_block(const Lane& lane, const Mobius& g, int r0, int r1, int c0, int c1);
WindowedOperator repr_matrix(const ReprSpec& spec, const Mobius& g, const Window& w);

// Index reach needed so that columns in [-reach_in, reach_in] lose < 1e-16 of mass.
int spread_reach(int index, double abs_a);

double unitarity_defect(const ReprSpec& spec, const Mobius& g, const Window& w, int margin);

struct ProjectivityCheck {
    double residual;
    cd phase;
};
ProjectivityCheck projectivity_defect(const ReprSpec& spec, const Mobius& g, const Mobius& h,
                                      const Window& w, int margin);

}  // namespace hs
