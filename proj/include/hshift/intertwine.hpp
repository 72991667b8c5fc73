#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hshift/calculus.hpp"
#include "hshift/reprmat.hpp"
#include "hshift/shiftlab.hpp"

namespace hs {

enum class Ansatz { Band, Full };
// Upper solves for S1 in [[T1, S1], [0, T2]]; Lower for S2 in [[T1, 0], [S2, T2]].
enum class Corner { Upper, Lower };

// S e_source has its only admissible component along e_target.
struct BandEntry {
    int source, target;
};
std::vector<BandEntry> shift_structure(const ReprSpec& pi1, const ReprSpec& pi2, const Window& w);

struct SolverConfig {
    int margin = 15;
    int samples = 12;
    unsigned long long seed = 7;
    Ansatz ansatz = Ansatz::Band;
    double threshold = 1e-6;  // relative to the largest singular value
    double min_gap = 100.0;
};

struct IntertwinerProblem {
    ReprSpec pi1, pi2;
    WindowedOperator t1, t2;
    std::vector<Mobius> samples;
    int margin = 15;
    Ansatz ansatz = Ansatz::Band;
    Corner corner = Corner::Upper;
};

IntertwinerProblem make_problem(const ReprSpec& pi1, const ReprSpec& pi2, const WindowedOperator& t1,
                                const WindowedOperator& t2, const SolverConfig& cfg,
                                Corner corner = Corner::Upper);

struct IntertwinerReport {
    int nullity = 0;
    std::vector<WindowedOperator> basis;  // maps lane 2 -> lane 1 (upper) or lane 1 -> lane 2 (lower)
    std::vector<double> residuals;        // ||L(S)|| / sigma_max for each basis element
    std::vector<double> singular_values;  // ascending, divided by sigma_max
    double largest_null = 0, smallest_retained = 0, gap_ratio = 0;
    int unknowns = 0;
    long equations = 0;
};

struct IllSeparated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntertwinerReport solve_intertwiner(const IntertwinerProblem& p, double rank_threshold = 1e-6,
                                    double min_gap = 100.0);

// alpha ((n + (1+lambda)/2 + s)/(n + (1+lambda)/2 - s) - 1) for n in the window.
std::vector<cd> recursion_weights(double lambda, cd s, cd alpha, const Window& w);
// 1 - |<x, y>| / (|x| |y|) over band weights S e_n -> e_{n+1}, n in [lo, hi].
double band_cosine_distance(const WindowedOperator& s, const std::vector<cd>& weights, int lo, int hi);

// Splits the index set of [[T1, S], [0, T2]] into parts (continuous lane, or
// the holomorphic / anti-holomorphic halves of a discrete lane) and returns the
// number of connected components under the nonzero entries.
int part_components(const ReprSpec& pi1, const ReprSpec& pi2, const WindowedOperator& t1,
                    const WindowedOperator& t2, const WindowedOperator& s, Corner corner);
// Propagates orthonormal frames through the 2x2 sections T_n : H(n) -> H(n+1)
// of a two-lane block shift. True if every section is diagonal in the frames,
// i.e. the operator is a direct sum of two weighted shifts.
bool sections_split(const WindowedOperator& t, int lo, int hi);

struct CaseSpec {
    std::string label;
    ReprSpec pi1, pi2;
    WindowedOperator t1, t2;
    int expect_upper = -1, expect_lower = -1;  // -1: no nullity expectation
    bool expect_reducible = false;
};

struct CaseOutcome {
    std::string label;
    IntertwinerReport upper, lower;
    bool reducible_upper = false, reducible_lower = false;
    std::string certificate;
    bool ok = false;
};

CaseOutcome cross_family_nullity(const CaseSpec& c, const SolverConfig& cfg);

struct GridParams {
    double lambda = 0.2;
    double sigma1 = 0.15, sigma2 = 0.3;
    cd s1{0.0, 0.6}, s2{0.0, 1.1};
};
// Two continuous summands, every pairing of homogeneous diagonal shifts.
std::vector<CaseSpec> continuous_grid(const GridParams& g, const Window& w);
// Continuous summand against D+_{lambda+2m} (+) D-_{2-lambda+2k}, m,k in [0, max_mk].
std::vector<CaseSpec> mixed_cases(double lambda, cd s, double sigma, int max_mk, const Window& w);
// D+_{lambda+2a} (+) D-_{2-lambda+2b} against D+_{lambda+2m} (+) D-_{2-lambda+2p}.
CaseSpec foursum_case(double lambda, int a, int b, int m, int p, const Window& w);
// One representative for each zero pattern of (a, b, m, p).
std::vector<CaseSpec> foursum_table(double lambda, const Window& w);
CaseSpec p10_case(const Window& w);

}  // namespace hs
