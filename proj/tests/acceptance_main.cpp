// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>
#include <cstring>

#include "hshift/selftest.hpp"

int main(int argc, char** argv) {
    const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
    bool ok = true;
    hs::run_acceptance(strict ? hs::Tier::Strict : hs::Tier::Fast, [&](const hs::CriterionResult& r) {
        std::printf("%s %d %s: %s [%.2f s]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        ok = ok && r.pass;
    });
    return ok ? 0 : 1;
}
