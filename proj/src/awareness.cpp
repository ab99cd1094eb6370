#include "rsaware/awareness.hpp"

#include <algorithm>

#include "rsaware/rng.hpp"

namespace rsaware {

namespace {

bool singleton_or_hamming1(const ConceptSet& v) {
    const std::vector<Concept> el = v.elements();
    if (el.size() == 1) return true;
    if (el.size() == 2) return el[0].hamming(el[1]) == 1;
    return false;
}

AwarenessReport analyze(const Program& p, const Support& s, const std::vector<Remapping>& A) {
    AwarenessReport rep;
    rep.verdict_weak_necessary = true;
    rep.verdict_complete = true;
    for (const Concept& g : s.elements()) {
        AwarenessEntry e;
        e.g = g;
        e.confusion = confusion_set(A, g);
        const std::vector<ConceptSet> covers = enumerate_implicant_covers(p, p.label_of(g));
        for (const ConceptSet& c : covers) {
            if (c == e.confusion) {
                e.matched_implicant_cover = c;
                break;
            }
        }
        e.singleton_or_hamming1 = singleton_or_hamming1(e.confusion);
        rep.verdict_weak_necessary = rep.verdict_weak_necessary && e.matched_implicant_cover.has_value();
        rep.verdict_complete = rep.verdict_complete && e.singleton_or_hamming1;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

}  // namespace

AwarenessReport check_weak_necessary(const Program& p, const Support& s,
                                     const std::vector<Remapping>& A) {
    return analyze(p, s, A);
}

AwarenessReport check_complete(const Program& p, const Support& s,
                               const std::vector<Remapping>& A) {
    return analyze(p, s, A);
}

std::optional<std::vector<Rat>> construct_uci_mixer(const MixtureSpec& m, const Concept& g) {
    const int k = m.arity();
    const ConceptSet v = confusion_set(m.remappings(), g);
    if (!singleton_or_hamming1(v)) return std::nullopt;
    const std::vector<Concept> el = v.elements();
    std::vector<Rat> mu(k);
    for (int j = 0; j < k; ++j) {
        if (el.size() == 1 || el[0].bit(j) == el[1].bit(j)) {
            mu[j] = el[0].bit(j) ? 1 : 0;
        } else {
            Rat sum = 0;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m.remappings()[i].apply(g).bit(j)) sum += m.exact_pi()[i];
            mu[j] = sum;
        }
    }
    return mu;
}

OracleResult brute_force_awareness_oracle(const Program& p, const Support& s,
                                          const std::vector<Remapping>& A, int trials,
                                          std::uint64_t seed, Backing backing) {
    if (A.empty()) throw std::invalid_argument("oracle needs at least one remapping");
    const std::size_t m = A.size();
    OracleResult res;

    auto factorized_for_all = [&](const MixtureSpec& mix) {
        for (const Concept& g : s.elements()) {
            const Distribution d = mixture_remap_distribution(mix, g, backing);
            if (!is_factorized(d).factorized) return false;
        }
        return true;
    };

    auto consider = [&](const MixtureSpec& mix, bool deterministic) {
        const bool ok = factorized_for_all(mix);
        if (ok && mix.interior() && !res.weak_witness) res.weak_witness = mix.pi();
        if (!ok && !res.complete_refutation) {
            res.complete_refutation = mix.pi();
            res.refutation_deterministic = deterministic;
        }
        return res.weak_witness && res.complete_refutation;
    };

    // deterministic prefix: uniform pi, then every two-remapping half/half pi
    if (consider(MixtureSpec::uniform(A), true)) return res;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            std::vector<Rat> pi(m, Rat(0));
            pi[i] = Rat(1, 2);
            pi[j] = Rat(1, 2);
            if (consider(MixtureSpec::exact(A, std::move(pi)), true)) return res;
        }
    }

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<double> pi = rng.dirichlet_uniform(m);
        // keep strictly interior so every trial is a weak-witness candidate
        double sum = 0.0;
        for (double& x : pi) {
            x = std::max(x, 1e-6);
            sum += x;
        }
        for (double& x : pi) x /= sum;
        std::vector<Rat> rp(m);
        Rat rsum = 0;
        for (std::size_t i = 0; i < m; ++i) {
            rp[i] = rat_from_double(pi[i]);
            rsum += rp[i];
        }
        for (Rat& x : rp) x /= rsum;
        if (consider(MixtureSpec::exact(A, std::move(rp)), false)) return res;
    }
    return res;
}

}  // namespace rsaware
