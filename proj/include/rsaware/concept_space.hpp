#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsaware {

inline constexpr int kMaxArity = 16;

// A k-bit boolean concept vector. The packed code is big-endian: c1 is the
// most significant of the k bits, so the code doubles as the table index.
class Concept {
public:
    Concept() = default;
    Concept(int k, std::uint32_t code);

    static Concept from_bits(const std::vector<int>& bits);

    int arity() const { return k_; }
    std::uint32_t index() const { return code_; }

    // value of variable c_{i+1}, i in [0, k)
    int bit(int i) const;
    Concept with_bit(int i, int value) const;

    int hamming(const Concept& other) const;

    // "(0,1)" with c1 first
    std::string str() const;
    static std::optional<Concept> parse(std::string_view text, int expect_k = -1);

    friend bool operator==(const Concept& a, const Concept& b) = default;
    friend std::strong_ordering operator<=>(const Concept& a, const Concept& b) = default;

private:
    std::uint8_t k_ = 0;
    std::uint32_t code_ = 0;
};

// Set of concepts of a fixed arity, stored as a bitset over the 2^k codes.
class ConceptSet {
public:
    ConceptSet() = default;
    explicit ConceptSet(int k);
    static ConceptSet full(int k);
    static ConceptSet of(int k, std::initializer_list<std::uint32_t> codes);

    int arity() const { return k_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    void insert(const Concept& c);
    bool contains(const Concept& c) const;
    bool contains_index(std::uint32_t code) const;

    // ascending code order
    std::vector<Concept> elements() const;

    bool is_subset_of(const ConceptSet& other) const;

    std::string str() const;

    friend bool operator==(const ConceptSet& a, const ConceptSet& b) = default;
    friend std::strong_ordering operator<=>(const ConceptSet& a, const ConceptSet& b);

private:
    int k_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

// Partial assignment w_D: values on a subset D of the variables.
// Masks live in the same big-endian bit positions as Concept codes.
class IncompleteConcept {
public:
    IncompleteConcept(int k, std::uint32_t var_mask, std::uint32_t values);

    // assigns: (variable i meaning c_{i+1}, value)
    static IncompleteConcept from_assignments(int k,
                                              const std::vector<std::pair<int, int>>& assigns);

    int arity() const { return k_; }
    int defined_count() const;
    bool defines(int i) const;
    int value(int i) const;

    std::uint32_t var_mask() const { return var_mask_; }
    std::uint32_t values() const { return values_; }

    // all 2^(k-|D|) extensions
    ConceptSet cover() const;

    bool matches(const Concept& c) const;

    // "(0,*)" with c1 first
    std::string str() const;

private:
    int k_;
    std::uint32_t var_mask_;
    std::uint32_t values_;
};

ConceptSet cover(const IncompleteConcept& wd, int k);

}  // namespace rsaware
