#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsaware/awareness.hpp"

namespace rsaware {

struct FuzzContradiction {
    int instance = 0;
    std::string detail;
};

struct FuzzReport {
    int instances = 0;
    int complete_count = 0;   // both verdicts hold
    int weak_only_count = 0;  // weak-necessary holds, complete fails
    int neither_count = 0;
    std::vector<FuzzContradiction> contradictions;

    bool ok() const { return contradictions.empty(); }
};

// Randomized cross-check of the static verdicts against the pi-space oracle
// and the mixer construction. Instance i is fully determined by
// derive_seed(seed, i): k in {2,3}, 2-3 labels, random table, random
// non-empty support, A = first <= 6 unrestricted remappings with the
// identity forced in. Records a contradiction whenever
//   - verdict_complete but the oracle refutes, or the mixer fails to
//     reproduce an interior mixture exactly,
//   - !verdict_complete but the deterministic prefix fails to refute,
//   - !verdict_weak_necessary but the oracle finds a factorized witness,
//   - verdict_complete without verdict_weak_necessary.
FuzzReport run_theorem_fuzz(int instances, std::uint64_t seed, int mixture_trials = 6);

// One line per counter plus each contradiction, for logs.
std::string fuzz_summary(const FuzzReport& report);

}  // namespace rsaware
