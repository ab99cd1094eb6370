#pragma once

#include <vector>

#include "rsaware/concept_space.hpp"
#include "rsaware/formula.hpp"

namespace rsaware {

// beta: C -> Y as an explicit table over all 2^k concepts.
class Program {
public:
    static Program from_formula(const Formula& f);
    static Program from_table(int k, int label_count, std::vector<int> table);

    int arity() const { return k_; }
    int label_count() const { return label_count_; }

    int label_of(const Concept& c) const;
    int label_of_index(std::uint32_t code) const { return table_[code]; }

    // C_y = { w : beta(w) = y }
    ConceptSet consistent_set(int y) const;

    const std::vector<int>& table() const { return table_; }

private:
    Program(int k, int label_count, std::vector<int> table);
    int k_;
    int label_count_;
    std::vector<int> table_;
};

// true iff every concept in cover(w_D) satisfies phi_y
bool is_implicant(const Program& p, int y, const IncompleteConcept& wd);

// Covers of all implicants of phi_y, deduplicated; incomplete concepts are
// scanned by |D| ascending so larger covers come first. Not restricted to
// prime implicants.
std::vector<ConceptSet> enumerate_implicant_covers(const Program& p, int y);

}  // namespace rsaware
