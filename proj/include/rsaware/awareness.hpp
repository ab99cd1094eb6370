#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsaware/shortcuts.hpp"

namespace rsaware {

struct AwarenessEntry {
    Concept g{1, 0};
    ConceptSet confusion{1};
    // an implicant cover of the label's formula equal to the confusion set, if any
    std::optional<ConceptSet> matched_implicant_cover;
    bool singleton_or_hamming1 = false;
};

struct AwarenessReport {
    std::vector<AwarenessEntry> entries;
    bool verdict_weak_necessary = false;
    bool verdict_complete = false;
};

// Necessary condition for weak RS-awareness of the conditionally independent
// class: every confusion set must equal some implicant cover. A false verdict
// is a proof of non-awareness; a true verdict is necessary-only.
AwarenessReport check_weak_necessary(const Program& p, const Support& s,
                                     const std::vector<Remapping>& A);

// Complete RS-awareness holds iff every confusion set is a singleton or a
// pair at Hamming distance 1.
AwarenessReport check_complete(const Program& p, const Support& s,
                               const std::vector<Remapping>& A);

// Mixing marginals for one g: shared bit on agreeing coordinates, the
// pi-weighted bit average on the single disagreeing coordinate. The induced
// factorized distribution equals the mixture table exactly. Fails when the
// confusion set violates the complete-awareness condition.
std::optional<std::vector<Rat>> construct_uci_mixer(const MixtureSpec& m, const Concept& g);

struct OracleResult {
    std::optional<std::vector<double>> weak_witness;        // interior pi, factorized for all g
    std::optional<std::vector<double>> complete_refutation; // pi non-factorized for some g
    bool refutation_deterministic = false;                  // found before any random trial
};

// Searches pi space for factorizability witnesses and refutations, with a
// deterministic prefix ahead of the seeded trials: the uniform pi, then every
// two-remapping pi (1/2, 1/2). Any confusion set violating the Hamming-1
// condition contains a pair at distance >= 2, so the prefix alone refutes
// whenever check_complete is false. Prefix entries with zero components are
// not weak-witness candidates. Dense backing swaps exact equality for the
// 1e-9 factorization tolerance.
OracleResult brute_force_awareness_oracle(const Program& p, const Support& s,
                                          const std::vector<Remapping>& A, int trials,
                                          std::uint64_t seed, Backing backing = Backing::Exact);

}  // namespace rsaware
