#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hs {

enum class Tier { Fast, Strict };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// The nine acceptance criteria at window [-60, 60], margin 15.  Strict tightens
// the homogeneity / representation tolerance from 1e-6 to 1e-8 and adds the
// full-matrix intertwiner ansatz on a small window.
std::vector<CriterionResult> run_acceptance(Tier tier,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace hs
