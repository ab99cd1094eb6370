#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsaware/concept_space.hpp"
#include "rsaware/distribution.hpp"
#include "rsaware/program.hpp"
#include "rsaware/rational.hpp"

namespace rsaware {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Support of the ground-truth concept distribution, optionally weighted.
class Support {
public:
    explicit Support(ConceptSet concepts);
    Support(ConceptSet concepts, std::vector<double> weights);
    static Support full(int k) { return Support(ConceptSet::full(k)); }

    int arity() const { return concepts_.arity(); }
    const ConceptSet& concepts() const { return concepts_; }
    bool contains(const Concept& c) const { return concepts_.contains(c); }
    std::vector<Concept> elements() const { return concepts_.elements(); }
    std::size_t size() const { return concepts_.size(); }

    bool has_weights() const { return !weights_.empty(); }
    // aligned with elements() in ascending code order
    const std::vector<double>& weights() const { return weights_; }

private:
    ConceptSet concepts_;
    std::vector<double> weights_;
};

using ConceptMap = std::vector<std::pair<Concept, Concept>>;

// Label-preserving concept remapping, defined only on the support.
class Remapping {
public:
    // validates totality on s and beta(alpha(g)) = beta(g) for every g
    static Remapping create(const Program& p, const Support& s, const ConceptMap& table);
    static Remapping identity(const Program& p, const Support& s);

    int arity() const { return k_; }
    const ConceptSet& domain() const { return domain_; }
    Concept apply(const Concept& g) const;
    bool is_identity() const;

    // images in ascending domain-code order; the canonical sort key
    const std::vector<std::uint32_t>& image_codes() const { return image_; }

    bool operator==(const Remapping& o) const {
        return k_ == o.k_ && domain_ == o.domain_ && image_ == o.image_;
    }
    bool operator<(const Remapping& o) const { return image_ < o.image_; }

private:
    Remapping(int k, ConceptSet domain, std::vector<std::uint32_t> image);
    int k_ = 0;
    ConceptSet domain_{1};
    std::vector<std::uint32_t> image_;
    std::vector<std::int32_t> pos_;  // code -> index into image_, -1 off support
};

bool is_remapping(const ConceptMap& alpha, const Program& p, const Support& s);

enum class RemapMode { Unrestricted, Disentangled };

// Unrestricted: all maps sending each g into the consistent set of beta(g).
// Disentangled: maps acting through one shared per-bit function on every
// coordinate. Results are sorted lexicographically by remapping table.
// max_results > 0 truncates the unrestricted product walk early (identity
// inclusion is then not guaranteed); otherwise the full product must fit
// in `budget`.
std::vector<Remapping> enumerate_remappings(const Program& p, const Support& s, RemapMode mode,
                                            double budget = 1e7, std::int64_t max_results = -1);

// {alpha(g) : alpha in A}
ConceptSet confusion_set(const std::vector<Remapping>& A, const Concept& g);

// RS mixture (A, pi). pi is kept as exact rationals summing to exactly 1 so
// mixture tables under exact backing are exactly normalized.
class MixtureSpec {
public:
    MixtureSpec(std::vector<Remapping> remappings, const std::vector<double>& pi);
    static MixtureSpec exact(std::vector<Remapping> remappings, std::vector<Rat> pi);
    static MixtureSpec uniform(std::vector<Remapping> remappings);

    std::size_t size() const { return remappings_.size(); }
    int arity() const { return remappings_.front().arity(); }
    const std::vector<Remapping>& remappings() const { return remappings_; }
    const std::vector<Rat>& exact_pi() const { return pi_; }
    std::vector<double> pi() const { return rat_to_double(pi_); }
    // all components strictly inside (0,1); the m=1 simplex counts as interior
    bool interior() const;

private:
    MixtureSpec() = default;
    std::vector<Remapping> remappings_;
    std::vector<Rat> pi_;
};

// p(w|g) = sum_i pi_i [w = alpha_i(g)]
Distribution mixture_remap_distribution(const MixtureSpec& m, const Concept& g,
                                        Backing backing = Backing::Exact);

}  // namespace rsaware
