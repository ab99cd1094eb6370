#include "rsaware/fuzz.hpp"

#include <algorithm>
#include <sstream>

#include "rsaware/rng.hpp"

namespace rsaware {

namespace {

Program random_program(Rng& rng, int k, int labels) {
    std::vector<int> table(std::size_t{1} << k);
    for (auto& y : table) y = static_cast<int>(rng.uniform_index(labels));
    return Program::from_table(k, labels, table);
}

Support random_support(Rng& rng, int k) {
    ConceptSet set(k);
    const std::uint32_t n = 1u << k;
    for (std::uint32_t code = 0; code < n; ++code)
        if (rng.uniform() < 0.5) set.insert(Concept(k, code));
    if (set.size() == 0) set.insert(Concept(k, static_cast<std::uint32_t>(rng.uniform_index(n))));
    return Support(set);
}

// Truncated enumeration keeps instances small; the identity must be present
// for A to model a trainable predictor, so it replaces the tail if missing.
std::vector<Remapping> random_family(const Program& p, const Support& s) {
    auto A = enumerate_remappings(p, s, RemapMode::Unrestricted, 10'000'000, 6);
    const bool has_id = std::any_of(A.begin(), A.end(), [](const Remapping& a) { return a.is_identity(); });
    if (!has_id) {
        A.pop_back();
        A.push_back(Remapping::identity(p, s));
        std::sort(A.begin(), A.end());
    }
    return A;
}

}  // namespace

FuzzReport run_theorem_fuzz(int instances, std::uint64_t seed, int mixture_trials) {
    FuzzReport report;
    report.instances = instances;

    for (int i = 0; i < instances; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        const int k = 2 + static_cast<int>(rng.uniform_index(2));
        const int labels = 2 + static_cast<int>(rng.uniform_index(2));
        const Program p = random_program(rng, k, labels);
        const Support s = random_support(rng, k);
        const auto A = random_family(p, s);

        auto fail = [&](const std::string& what) {
            std::ostringstream os;
            os << "instance " << i << " (k=" << k << ", labels=" << labels
               << ", |supp|=" << s.elements().size() << ", |A|=" << A.size() << "): " << what;
            report.contradictions.push_back({i, os.str()});
        };

        const AwarenessReport verdicts = check_complete(p, s, A);
        const OracleResult oracle = brute_force_awareness_oracle(
            p, s, A, 6, derive_seed(seed, 0x0f00u + static_cast<std::uint64_t>(i)));

        if (verdicts.verdict_complete) {
            ++report.complete_count;
            if (!verdicts.verdict_weak_necessary)
                fail("complete verdict without weak-necessary verdict");
            if (oracle.complete_refutation.has_value())
                fail("complete verdict but oracle found a non-factorized mixture");

            // Mixer soundness: uniform pi plus random interior draws must be
            // reproduced exactly on every support point.
            std::vector<MixtureSpec> mixes;
            mixes.push_back(MixtureSpec::uniform(A));
            for (int t = 0; t < mixture_trials; ++t) {
                auto pi = rng.dirichlet_uniform(A.size());
                for (auto& v : pi) v = std::max(v, 1e-6);
                mixes.emplace_back(A, pi);
            }
            for (const auto& mix : mixes) {
                bool mix_ok = true;
                for (const Concept& g : s.elements()) {
                    const auto mu = construct_uci_mixer(mix, g);
                    if (!mu) {
                        fail("mixer refused " + g.str() + " despite complete verdict");
                        mix_ok = false;
                        break;
                    }
                    const Distribution lhs = Distribution::factorized_exact(*mu);
                    const Distribution rhs = mixture_remap_distribution(mix, g, Backing::Exact);
                    if (!lhs.exact_equals(rhs)) {
                        fail("mixer output differs from mixture at " + g.str());
                        mix_ok = false;
                        break;
                    }
                }
                if (!mix_ok) break;
            }
        } else {
            if (verdicts.verdict_weak_necessary)
                ++report.weak_only_count;
            else
                ++report.neither_count;
            if (!oracle.complete_refutation.has_value())
                fail("incomplete verdict but oracle found no refutation");
            else if (!oracle.refutation_deterministic)
                fail("refutation needed random trials; prefix should suffice");
        }

        if (!verdicts.verdict_weak_necessary && oracle.weak_witness.has_value())
            fail("weak-necessary verdict false but oracle found a factorized witness");
    }

    return report;
}

std::string fuzz_summary(const FuzzReport& report) {
    std::ostringstream os;
    os << "instances: " << report.instances << "\n"
       << "complete: " << report.complete_count << "\n"
       << "weak-only: " << report.weak_only_count << "\n"
       << "neither: " << report.neither_count << "\n"
       << "contradictions: " << report.contradictions.size() << "\n";
    for (const auto& c : report.contradictions) os << "  " << c.detail << "\n";
    return os.str();
}

}  // namespace rsaware
