#include "rsaware/program.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rsaware {

Program::Program(int k, int label_count, std::vector<int> table)
    : k_(k), label_count_(label_count), table_(std::move(table)) {}

Program Program::from_formula(const Formula& f) {
    const int k = f.arity();
    const std::size_t n = std::size_t{1} << k;
    std::vector<int> table(n);
    for (std::size_t i = 0; i < n; ++i)
        table[i] = f.eval(Concept(k, static_cast<std::uint32_t>(i))) ? 1 : 0;
    return Program(k, 2, std::move(table));
}

Program Program::from_table(int k, int label_count, std::vector<int> table) {
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("Program: arity must be in [1, 16]");
    if (label_count < 1) throw std::invalid_argument("Program: label_count must be >= 1");
    if (table.size() != (std::size_t{1} << k))
        throw std::invalid_argument("Program: table must have 2^k entries");
    for (int y : table)
        if (y < 0 || y >= label_count) throw std::invalid_argument("Program: label out of range");
    return Program(k, label_count, std::move(table));
}

int Program::label_of(const Concept& c) const {
    if (c.arity() != k_) throw std::invalid_argument("Program::label_of: arity mismatch");
    return table_[c.index()];
}

ConceptSet Program::consistent_set(int y) const {
    if (y < 0 || y >= label_count_) throw std::out_of_range("Program::consistent_set: label");
    ConceptSet out(k_);
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_[i] == y) out.insert(Concept(k_, static_cast<std::uint32_t>(i)));
    return out;
}

bool is_implicant(const Program& p, int y, const IncompleteConcept& wd) {
    if (wd.arity() != p.arity()) throw std::invalid_argument("is_implicant: arity mismatch");
    if (y < 0 || y >= p.label_count()) throw std::out_of_range("is_implicant: label");
    for (const Concept& c : wd.cover().elements())
        if (p.label_of(c) != y) return false;
    return true;
}

std::vector<ConceptSet> enumerate_implicant_covers(const Program& p, int y) {
    const int k = p.arity();
    const std::uint32_t space = (1u << k) - 1;

    std::vector<std::uint32_t> masks;
    masks.reserve(space + 1);
    for (std::uint32_t m = 0; m <= space; ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });

    std::vector<ConceptSet> covers;
    for (std::uint32_t dmask : masks) {
        // all assignments on D = submasks of dmask, ascending
        std::uint32_t vals = 0;
        while (true) {
            IncompleteConcept wd(k, dmask, vals);
            if (is_implicant(p, y, wd)) {
                ConceptSet cv = wd.cover();
                if (std::find(covers.begin(), covers.end(), cv) == covers.end())
                    covers.push_back(std::move(cv));
            }
            if (vals == dmask) break;
            vals = (vals - dmask) & dmask;
        }
    }
    return covers;
}

}  // namespace rsaware
