#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "hshift/reprmat.hpp"
#include "hshift/shiftlab.hpp"

namespace hs {

struct Sections {
    Eigen::Matrix2cd t;  // T_n : H(n) -> H(n+1), H(n) = span{e_n^1, e_n^2}
    Eigen::Matrix2cd a;  // T_n^* T_n
    Eigen::Matrix2cd b;  // T_{n-1} T_{n-1}^*
};
// Needs n - 1 and n + 1 inside the window.
Sections block_sections(const WindowedOperator& t, int n);

struct IrreducibilityReport {
    bool irreducible = false;
    std::vector<std::pair<int, double>> witnesses;  // (n, ||A_n B_n - B_n A_n||)
};
// Sufficient criterion for the three families only: every commutator
// ||[A_n, B_n]|| exceeds 1e-8 ||A_n|| ||B_n|| for n in [lo, hi].
IrreducibilityReport irreducible_check(const WindowedOperator& t, int lo, int hi);

struct Fingerprint {
    std::string family;
    double lambda = 0;                          // multiplier parameter
    std::vector<std::pair<int, double>> gamma;  // (n, trace A_n - 2), descending
};
Fingerprint fingerprint(const WindowedOperator& t, int lo, int hi);
Fingerprint fingerprint(const BlockShiftParams& p, const Window& w, int margin);
double gamma_closed_form(const BlockShiftParams& p, int n);

// s -> i|Im s| for the P family; other families unchanged.
BlockShiftParams canonical(const BlockShiftParams& p);

enum class VerdictReason { ParameterRule, MultiplierMismatch, FingerprintMismatch };
std::string to_string(VerdictReason r);

struct EquivalenceVerdict {
    bool equivalent = false;
    VerdictReason reason = VerdictReason::ParameterRule;
    bool fingerprints_agree = false;
    double top5_distance = 0;  // max |gamma_i - gamma'_i| over the five largest values
    bool consistent = false;   // parameter rule and fingerprint evidence agree
};
EquivalenceVerdict equivalent(const BlockShiftParams& p1, const BlockShiftParams& p2, const Window& w, int margin,
                              double tol = 1e-8);
// Same verdict from precomputed fingerprints.
EquivalenceVerdict compare(const BlockShiftParams& p1, const Fingerprint& f1, const BlockShiftParams& p2,
                           const Fingerprint& f2, double tol = 1e-8);

enum class RepCase { TwoContinuous, ContinuousPlusPair, TwoPairs };
struct RepCaseDescriptor {
    RepCase kind;
    bool predicts_reducible;
    std::string note;
};
// Throws if some rotation eigenspace far out on either side is not two-dimensional.
RepCaseDescriptor rep_case_table(const ReprSpec& spec);

}  // namespace hs
