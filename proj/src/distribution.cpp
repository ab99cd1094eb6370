#include "rsaware/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace rsaware {

namespace {

void check_arity(int k) {
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("distribution arity out of range");
}

}  // namespace

Distribution Distribution::exact(int k, std::vector<Rat> probs) {
    check_arity(k);
    if (probs.size() != (std::size_t{1} << k))
        throw std::invalid_argument("distribution table has wrong size");
    Rat sum = 0;
    for (const Rat& p : probs) {
        if (p < 0) throw std::invalid_argument("negative probability");
        sum += p;
    }
    if (sum != 1) throw std::invalid_argument("exact distribution must sum to exactly 1");
    Distribution d;
    d.k_ = k;
    d.exact_ = true;
    d.rp_ = std::move(probs);
    return d;
}

Distribution Distribution::dense(int k, std::vector<double> probs) {
    check_arity(k);
    if (probs.size() != (std::size_t{1} << k))
        throw std::invalid_argument("distribution table has wrong size");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("negative or non-finite probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("dense distribution must sum to 1 within 1e-12");
    Distribution d;
    d.k_ = k;
    d.exact_ = false;
    d.dp_ = std::move(probs);
    return d;
}

Distribution Distribution::dense_unchecked(int k, std::vector<double> probs) {
    check_arity(k);
    if (probs.size() != (std::size_t{1} << k))
        throw std::invalid_argument("distribution table has wrong size");
    for (double p : probs)
        if (!(p >= 0.0)) throw std::invalid_argument("negative or non-finite probability");
    Distribution d;
    d.k_ = k;
    d.exact_ = false;
    d.dp_ = std::move(probs);
    return d;
}

Distribution Distribution::point_mass(const Concept& c, Backing backing) {
    const std::size_t n = std::size_t{1} << c.arity();
    if (backing == Backing::Exact) {
        std::vector<Rat> p(n, Rat(0));
        p[c.index()] = 1;
        return exact(c.arity(), std::move(p));
    }
    std::vector<double> p(n, 0.0);
    p[c.index()] = 1.0;
    return dense(c.arity(), std::move(p));
}

Distribution Distribution::factorized_exact(const std::vector<Rat>& mu) {
    const int k = static_cast<int>(mu.size());
    check_arity(k);
    for (const Rat& m : mu)
        if (m < 0 || m > 1) throw std::invalid_argument("marginal out of [0,1]");
    const std::size_t n = std::size_t{1} << k;
    std::vector<Rat> p(n, Rat(1));
    for (std::size_t code = 0; code < n; ++code) {
        for (int i = 0; i < k; ++i) {
            const bool bit = ((code >> (k - 1 - i)) & 1u) != 0;
            p[code] *= bit ? mu[i] : Rat(1) - mu[i];
        }
    }
    return exact(k, std::move(p));
}

Distribution Distribution::factorized(const std::vector<double>& mu) {
    const int k = static_cast<int>(mu.size());
    check_arity(k);
    for (double m : mu)
        if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("marginal out of [0,1]");
    const std::size_t n = std::size_t{1} << k;
    std::vector<double> p(n, 1.0);
    for (std::size_t code = 0; code < n; ++code) {
        for (int i = 0; i < k; ++i) {
            const bool bit = ((code >> (k - 1 - i)) & 1u) != 0;
            p[code] *= bit ? mu[i] : 1.0 - mu[i];
        }
    }
    return dense_unchecked(k, std::move(p));
}

double Distribution::prob(std::size_t code) const {
    if (code >= size()) throw std::out_of_range("concept code out of range");
    return exact_ ? rat_to_double(rp_[code]) : dp_[code];
}

const Rat& Distribution::exact_prob(std::size_t code) const {
    if (!exact_) throw std::logic_error("exact_prob on dense distribution");
    if (code >= size()) throw std::out_of_range("concept code out of range");
    return rp_[code];
}

Rat Distribution::exact_marginal(int i) const {
    if (!exact_) throw std::logic_error("exact_marginal on dense distribution");
    if (i < 0 || i >= k_) throw std::out_of_range("marginal index out of range");
    Rat m = 0;
    const int shift = k_ - 1 - i;
    for (std::size_t code = 0; code < size(); ++code)
        if ((code >> shift) & 1u) m += rp_[code];
    return m;
}

double Distribution::marginal(int i) const {
    if (exact_) return rat_to_double(exact_marginal(i));
    if (i < 0 || i >= k_) throw std::out_of_range("marginal index out of range");
    double m = 0.0;
    const int shift = k_ - 1 - i;
    for (std::size_t code = 0; code < size(); ++code)
        if ((code >> shift) & 1u) m += dp_[code];
    return m;
}

std::vector<double> Distribution::marginals() const {
    std::vector<double> out(k_);
    for (int i = 0; i < k_; ++i) out[i] = marginal(i);
    return out;
}

std::vector<Rat> Distribution::exact_marginals() const {
    std::vector<Rat> out(k_);
    for (int i = 0; i < k_; ++i) out[i] = exact_marginal(i);
    return out;
}

std::vector<double> Distribution::to_doubles() const {
    if (!exact_) return dp_;
    return rat_to_double(rp_);
}

bool Distribution::exact_equals(const Distribution& other) const {
    if (!exact_ || !other.exact_) throw std::logic_error("exact_equals needs exact backing");
    return k_ == other.k_ && rp_ == other.rp_;
}

FactorizationCheck is_factorized(const Distribution& d) {
    FactorizationCheck out;
    const int k = d.arity();
    if (d.is_exact()) {
        std::vector<Rat> mu = d.exact_marginals();
        bool ok = true;
        for (std::size_t code = 0; code < d.size() && ok; ++code) {
            Rat prod = 1;
            for (int i = 0; i < k; ++i) {
                const bool bit = ((code >> (k - 1 - i)) & 1u) != 0;
                prod *= bit ? mu[i] : Rat(1) - mu[i];
            }
            ok = prod == d.exact_prob(code);
        }
        out.factorized = ok;
        out.marginals = rat_to_double(mu);
        return out;
    }
    std::vector<double> mu = d.marginals();
    double worst = 0.0;
    for (std::size_t code = 0; code < d.size(); ++code) {
        double prod = 1.0;
        for (int i = 0; i < k; ++i) {
            const bool bit = ((code >> (k - 1 - i)) & 1u) != 0;
            prod *= bit ? mu[i] : 1.0 - mu[i];
        }
        worst = std::max(worst, std::abs(prod - d.prob(code)));
    }
    out.factorized = worst <= 1e-9;
    out.marginals = std::move(mu);
    return out;
}

}  // namespace rsaware
