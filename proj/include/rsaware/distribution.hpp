#pragma once

#include <vector>

#include "rsaware/concept_space.hpp"
#include "rsaware/rational.hpp"

namespace rsaware {

enum class Backing { Exact, Dense };

// Explicit probability table over all 2^k concepts, indexed by concept code.
// Exact backing must sum to exactly 1; dense backing to 1 +/- 1e-12.
class Distribution {
public:
    static Distribution exact(int k, std::vector<Rat> probs);
    static Distribution dense(int k, std::vector<double> probs);
    // dense factory for tables produced by float arithmetic (softmax etc.),
    // where the sum is 1 only up to accumulated rounding
    static Distribution dense_unchecked(int k, std::vector<double> probs);

    static Distribution point_mass(const Concept& c, Backing backing = Backing::Exact);
    static Distribution factorized_exact(const std::vector<Rat>& mu);
    static Distribution factorized(const std::vector<double>& mu);

    bool is_exact() const { return exact_; }
    int arity() const { return k_; }
    std::size_t size() const { return std::size_t{1} << k_; }

    double prob(std::size_t code) const;
    const Rat& exact_prob(std::size_t code) const;

    // P(c_{i+1} = 1)
    double marginal(int i) const;
    Rat exact_marginal(int i) const;
    std::vector<double> marginals() const;
    std::vector<Rat> exact_marginals() const;

    std::vector<double> to_doubles() const;

    // exact equality; requires both sides exact
    bool exact_equals(const Distribution& other) const;

private:
    Distribution() = default;
    int k_ = 0;
    bool exact_ = false;
    std::vector<Rat> rp_;
    std::vector<double> dp_;
};

struct FactorizationCheck {
    bool factorized = false;
    std::vector<double> marginals;
};

// True iff d equals the product of its own marginals on every concept.
// Exact backing: exact equality. Dense backing: max abs deviation <= 1e-9.
FactorizationCheck is_factorized(const Distribution& d);

}  // namespace rsaware
