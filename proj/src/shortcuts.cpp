#include "rsaware/shortcuts.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace rsaware {

Support::Support(ConceptSet concepts) : concepts_(std::move(concepts)) {
    if (concepts_.size() == 0) throw std::invalid_argument("support must be non-empty");
}

Support::Support(ConceptSet concepts, std::vector<double> weights)
    : concepts_(std::move(concepts)), weights_(std::move(weights)) {
    if (concepts_.size() == 0) throw std::invalid_argument("support must be non-empty");
    if (weights_.size() != concepts_.size())
        throw std::invalid_argument("one weight per support element required");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("support weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("support weights must sum to 1 within 1e-12");
}

Remapping::Remapping(int k, ConceptSet domain, std::vector<std::uint32_t> image)
    : k_(k), domain_(std::move(domain)), image_(std::move(image)) {
    pos_.assign(std::size_t{1} << k_, -1);
    std::int32_t idx = 0;
    for (const Concept& g : domain_.elements()) pos_[g.index()] = idx++;
}

Remapping Remapping::create(const Program& p, const Support& s, const ConceptMap& table) {
    if (p.arity() != s.arity()) throw std::invalid_argument("program and support arity differ");
    const int k = p.arity();
    std::vector<std::int64_t> image_by_code(std::size_t{1} << k, -1);
    for (const auto& [src, dst] : table) {
        if (src.arity() != k || dst.arity() != k)
            throw std::invalid_argument("remapping table arity mismatch");
        if (!s.contains(src)) continue;  // off-support rows are ignored
        image_by_code[src.index()] = static_cast<std::int64_t>(dst.index());
    }
    std::vector<std::uint32_t> image;
    image.reserve(s.size());
    for (const Concept& g : s.elements()) {
        const std::int64_t dst = image_by_code[g.index()];
        if (dst < 0) throw std::invalid_argument("remapping table missing support element " + g.str());
        const Concept a(k, static_cast<std::uint32_t>(dst));
        if (p.label_of(a) != p.label_of(g))
            throw std::invalid_argument("not label-preserving at " + g.str());
        image.push_back(a.index());
    }
    return Remapping(k, s.concepts(), std::move(image));
}

Remapping Remapping::identity(const Program& p, const Support& s) {
    ConceptMap table;
    for (const Concept& g : s.elements()) table.emplace_back(g, g);
    return create(p, s, table);
}

Concept Remapping::apply(const Concept& g) const {
    if (g.arity() != k_ || pos_[g.index()] < 0)
        throw std::out_of_range("concept outside remapping domain");
    return Concept(k_, image_[static_cast<std::size_t>(pos_[g.index()])]);
}

bool Remapping::is_identity() const {
    std::size_t i = 0;
    for (const Concept& g : domain_.elements())
        if (image_[i++] != g.index()) return false;
    return true;
}

bool is_remapping(const ConceptMap& alpha, const Program& p, const Support& s) {
    const int k = p.arity();
    std::vector<std::int64_t> image_by_code(std::size_t{1} << k, -1);
    for (const auto& [src, dst] : alpha) {
        if (src.arity() != k || dst.arity() != k)
            throw std::invalid_argument("remapping table arity mismatch");
        if (s.contains(src)) image_by_code[src.index()] = static_cast<std::int64_t>(dst.index());
    }
    for (const Concept& g : s.elements()) {
        const std::int64_t dst = image_by_code[g.index()];
        if (dst < 0)
            throw std::invalid_argument("candidate table missing support element " + g.str());
        if (p.label_of_index(static_cast<std::size_t>(dst)) != p.label_of(g)) return false;
    }
    return true;
}

namespace {

std::vector<Remapping> enumerate_unrestricted(const Program& p, const Support& s, double budget,
                                              std::int64_t max_results) {
    const int k = p.arity();
    const std::vector<Concept> domain = s.elements();
    // choices[i] = consistent set of beta(domain[i]), ascending codes
    std::vector<std::vector<std::uint32_t>> choices;
    choices.reserve(domain.size());
    double total = 1.0;
    for (const Concept& g : domain) {
        const ConceptSet cs = p.consistent_set(p.label_of(g));
        std::vector<std::uint32_t> codes;
        for (const Concept& w : cs.elements()) codes.push_back(w.index());
        total *= static_cast<double>(codes.size());
        choices.push_back(std::move(codes));
    }
    if (max_results <= 0 && total > budget) throw BudgetExceeded("remapping enumeration budget exceeded");

    std::vector<Remapping> out;
    std::vector<std::size_t> odo(domain.size(), 0);
    std::vector<std::uint32_t> image(domain.size());
    // odometer with the last position fastest: lexicographic image order
    while (true) {
        for (std::size_t i = 0; i < domain.size(); ++i) image[i] = choices[i][odo[i]];
        ConceptMap table;
        table.reserve(domain.size());
        for (std::size_t i = 0; i < domain.size(); ++i)
            table.emplace_back(domain[i], Concept(k, image[i]));
        out.push_back(Remapping::create(p, s, table));
        if (max_results > 0 && static_cast<std::int64_t>(out.size()) >= max_results) break;
        std::size_t i = domain.size();
        while (i > 0) {
            --i;
            if (++odo[i] < choices[i].size()) break;
            odo[i] = 0;
            if (i == 0) return out;  // wrapped all the way around
        }
    }
    return out;
}

std::vector<Remapping> enumerate_disentangled(const Program& p, const Support& s) {
    const int k = p.arity();
    std::vector<Remapping> out;
    // per-bit functions: (g(0), g(1)) over {0,1}
    constexpr std::array<std::array<std::uint32_t, 2>, 4> fns{
        {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    for (const auto& fn : fns) {
        ConceptMap table;
        bool valid = true;
        for (const Concept& g : s.elements()) {
            std::uint32_t code = 0;
            for (int i = 0; i < k; ++i) code = (code << 1) | fn[g.bit(i) ? 1 : 0];
            const Concept a(k, code);
            if (p.label_of(a) != p.label_of(g)) {
                valid = false;
                break;
            }
            table.emplace_back(g, a);
        }
        if (!valid) continue;
        Remapping r = Remapping::create(p, s, table);
        // distinct per-bit functions can coincide once restricted to the support
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Remapping> enumerate_remappings(const Program& p, const Support& s, RemapMode mode,
                                            double budget, std::int64_t max_results) {
    if (p.arity() != s.arity()) throw std::invalid_argument("program and support arity differ");
    return mode == RemapMode::Unrestricted ? enumerate_unrestricted(p, s, budget, max_results)
                                           : enumerate_disentangled(p, s);
}

ConceptSet confusion_set(const std::vector<Remapping>& A, const Concept& g) {
    if (A.empty()) throw std::invalid_argument("confusion set of empty remapping list");
    ConceptSet out(g.arity());
    for (const Remapping& a : A) out.insert(a.apply(g));
    return out;
}

namespace {

void check_mixture_shape(const std::vector<Remapping>& A, std::size_t npi) {
    if (A.empty()) throw std::invalid_argument("mixture needs at least one remapping");
    if (npi != A.size()) throw std::invalid_argument("pi length must match remapping count");
    for (const Remapping& a : A)
        if (!(a.domain() == A.front().domain()))
            throw std::invalid_argument("mixture remappings must share one support");
}

}  // namespace

MixtureSpec::MixtureSpec(std::vector<Remapping> remappings, const std::vector<double>& pi) {
    check_mixture_shape(remappings, pi.size());
    double sum = 0.0;
    for (double x : pi) {
        if (!(x >= 0.0)) throw std::invalid_argument("pi components must be >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("pi must sum to 1 within 1e-12");
    // renormalize exactly so exact mixture tables sum to exactly 1
    std::vector<Rat> rp(pi.size());
    Rat rsum = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        rp[i] = rat_from_double(pi[i]);
        rsum += rp[i];
    }
    for (Rat& x : rp) x /= rsum;
    remappings_ = std::move(remappings);
    pi_ = std::move(rp);
}

MixtureSpec MixtureSpec::exact(std::vector<Remapping> remappings, std::vector<Rat> pi) {
    check_mixture_shape(remappings, pi.size());
    Rat sum = 0;
    for (const Rat& x : pi) {
        if (x < 0) throw std::invalid_argument("pi components must be >= 0");
        sum += x;
    }
    if (sum != 1) throw std::invalid_argument("exact pi must sum to exactly 1");
    MixtureSpec m;
    m.remappings_ = std::move(remappings);
    m.pi_ = std::move(pi);
    return m;
}

MixtureSpec MixtureSpec::uniform(std::vector<Remapping> remappings) {
    const std::size_t n = remappings.size();
    if (n == 0) throw std::invalid_argument("mixture needs at least one remapping");
    return exact(std::move(remappings), std::vector<Rat>(n, Rat(1, static_cast<long>(n))));
}

bool MixtureSpec::interior() const {
    if (pi_.size() == 1) return pi_[0] == 1;
    for (const Rat& x : pi_)
        if (x <= 0 || x >= 1) return false;
    return true;
}

Distribution mixture_remap_distribution(const MixtureSpec& m, const Concept& g, Backing backing) {
    const int k = m.arity();
    std::vector<Rat> table(std::size_t{1} << k, Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        table[m.remappings()[i].apply(g).index()] += m.exact_pi()[i];
    if (backing == Backing::Exact) return Distribution::exact(k, std::move(table));
    return Distribution::dense_unchecked(k, rat_to_double(table));
}

}  // namespace rsaware
