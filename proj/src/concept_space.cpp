#include "rsaware/concept_space.hpp"

#include <bit>
#include <stdexcept>

namespace rsaware {

namespace {
void check_arity(int k) {
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("arity must be in [1, 16]");
}
}  // namespace

Concept::Concept(int k, std::uint32_t code) : k_(static_cast<std::uint8_t>(k)), code_(code) {
    check_arity(k);
    if (code >= (1u << k)) throw std::invalid_argument("concept code out of range for arity");
}

Concept Concept::from_bits(const std::vector<int>& bits) {
    check_arity(static_cast<int>(bits.size()));
    std::uint32_t code = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("concept bits must be 0/1");
        code = (code << 1) | static_cast<std::uint32_t>(b);
    }
    return Concept(static_cast<int>(bits.size()), code);
}

int Concept::bit(int i) const {
    if (i < 0 || i >= k_) throw std::out_of_range("concept bit index");
    return static_cast<int>((code_ >> (k_ - 1 - i)) & 1u);
}

Concept Concept::with_bit(int i, int value) const {
    if (i < 0 || i >= k_) throw std::out_of_range("concept bit index");
    const std::uint32_t mask = 1u << (k_ - 1 - i);
    std::uint32_t code = value ? (code_ | mask) : (code_ & ~mask);
    return Concept(k_, code);
}

int Concept::hamming(const Concept& other) const {
    if (other.k_ != k_) throw std::invalid_argument("hamming: arity mismatch");
    return std::popcount(code_ ^ other.code_);
}

std::string Concept::str() const {
    std::string s = "(";
    for (int i = 0; i < k_; ++i) {
        if (i) s += ',';
        s += static_cast<char>('0' + bit(i));
    }
    s += ')';
    return s;
}

std::optional<Concept> Concept::parse(std::string_view text, int expect_k) {
    std::vector<int> bits;
    bool open = false, closed = false;
    for (char ch : text) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch == '(') {
            if (open) return std::nullopt;
            open = true;
        } else if (ch == ')') {
            if (!open || closed) return std::nullopt;
            closed = true;
        } else if (ch == ',') {
            if (!open || closed) return std::nullopt;
        } else if (ch == '0' || ch == '1') {
            if (!open || closed) return std::nullopt;
            bits.push_back(ch - '0');
        } else {
            return std::nullopt;
        }
    }
    if (!open || !closed || bits.empty() || bits.size() > kMaxArity) return std::nullopt;
    if (expect_k >= 0 && static_cast<int>(bits.size()) != expect_k) return std::nullopt;
    return Concept::from_bits(bits);
}

ConceptSet::ConceptSet(int k) : k_(k) {
    check_arity(k);
    words_.assign(((std::size_t{1} << k) + 63) / 64, 0);
}

ConceptSet ConceptSet::full(int k) {
    ConceptSet s(k);
    const std::size_t n = std::size_t{1} << k;
    for (std::size_t i = 0; i < n; ++i) s.words_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    s.count_ = n;
    return s;
}

ConceptSet ConceptSet::of(int k, std::initializer_list<std::uint32_t> codes) {
    ConceptSet s(k);
    for (std::uint32_t c : codes) s.insert(Concept(k, c));
    return s;
}

void ConceptSet::insert(const Concept& c) {
    if (c.arity() != k_) throw std::invalid_argument("ConceptSet::insert: arity mismatch");
    const std::uint32_t i = c.index();
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(words_[i >> 6] & bit)) {
        words_[i >> 6] |= bit;
        ++count_;
    }
}

bool ConceptSet::contains(const Concept& c) const {
    return c.arity() == k_ && contains_index(c.index());
}

bool ConceptSet::contains_index(std::uint32_t code) const {
    if (code >= (std::uint32_t{1} << k_)) return false;
    return (words_[code >> 6] >> (code & 63)) & 1u;
}

std::vector<Concept> ConceptSet::elements() const {
    std::vector<Concept> out;
    out.reserve(count_);
    const std::size_t n = std::size_t{1} << k_;
    for (std::size_t i = 0; i < n; ++i)
        if (contains_index(static_cast<std::uint32_t>(i)))
            out.emplace_back(k_, static_cast<std::uint32_t>(i));
    return out;
}

bool ConceptSet::is_subset_of(const ConceptSet& other) const {
    if (other.k_ != k_) return false;
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

std::string ConceptSet::str() const {
    std::string s = "{";
    bool first = true;
    for (const Concept& c : elements()) {
        if (!first) s += ", ";
        first = false;
        s += c.str();
    }
    s += '}';
    return s;
}

std::strong_ordering operator<=>(const ConceptSet& a, const ConceptSet& b) {
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    return a.words_ <=> b.words_;
}

IncompleteConcept::IncompleteConcept(int k, std::uint32_t var_mask, std::uint32_t values)
    : k_(k), var_mask_(var_mask), values_(values) {
    check_arity(k);
    const std::uint32_t space = (k == 32) ? ~0u : ((1u << k) - 1);
    if (var_mask & ~space) throw std::invalid_argument("IncompleteConcept: mask out of range");
    if (values & ~var_mask) throw std::invalid_argument("IncompleteConcept: values outside mask");
}

IncompleteConcept IncompleteConcept::from_assignments(
    int k, const std::vector<std::pair<int, int>>& assigns) {
    check_arity(k);
    std::uint32_t mask = 0, vals = 0;
    for (auto [i, v] : assigns) {
        if (i < 0 || i >= k) throw std::out_of_range("IncompleteConcept: variable index");
        if (v != 0 && v != 1) throw std::invalid_argument("IncompleteConcept: value must be 0/1");
        const std::uint32_t bit = 1u << (k - 1 - i);
        if (mask & bit) throw std::invalid_argument("IncompleteConcept: duplicate variable");
        mask |= bit;
        if (v) vals |= bit;
    }
    return IncompleteConcept(k, mask, vals);
}

int IncompleteConcept::defined_count() const { return std::popcount(var_mask_); }

bool IncompleteConcept::defines(int i) const {
    if (i < 0 || i >= k_) throw std::out_of_range("IncompleteConcept: variable index");
    return (var_mask_ >> (k_ - 1 - i)) & 1u;
}

int IncompleteConcept::value(int i) const {
    if (!defines(i)) throw std::invalid_argument("IncompleteConcept: value of undefined variable");
    return static_cast<int>((values_ >> (k_ - 1 - i)) & 1u);
}

ConceptSet IncompleteConcept::cover() const {
    ConceptSet out(k_);
    const std::uint32_t space = (1u << k_) - 1;
    const std::uint32_t free = space & ~var_mask_;
    // iterate all submasks of the free positions, including 0
    std::uint32_t sub = 0;
    while (true) {
        out.insert(Concept(k_, values_ | sub));
        if (sub == free) break;
        sub = (sub - free) & free;
    }
    return out;
}

bool IncompleteConcept::matches(const Concept& c) const {
    if (c.arity() != k_) return false;
    return (c.index() & var_mask_) == values_;
}

std::string IncompleteConcept::str() const {
    std::string s = "(";
    for (int i = 0; i < k_; ++i) {
        if (i) s += ',';
        s += defines(i) ? static_cast<char>('0' + value(i)) : '*';
    }
    s += ')';
    return s;
}

ConceptSet cover(const IncompleteConcept& wd, int k) {
    if (wd.arity() != k) throw std::invalid_argument("cover: arity mismatch");
    return wd.cover();
}

}  // namespace rsaware
