#include "rsaware/synthtask.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rsaware/rng.hpp"

namespace rsaware {

void SceneSpec::validate() const {
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("scene arity out of range");
    if (style_dim < 1) throw std::invalid_argument("style_dim must be >= 1");
    if (pixels_per_bit < 1) throw std::invalid_argument("pixels_per_bit must be >= 1");
    if (!(separation > 0.0)) throw std::invalid_argument("separation must be > 0");
    if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise_sigma must be >= 0");
}

namespace {

struct StyleBasis {
    std::vector<double> u;  // input_dim, zero-mean per block, unit rms
    std::vector<double> v;  // style_dim, unit norm
};

StyleBasis style_basis(const SceneSpec& spec, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0));
    StyleBasis b;
    b.u.resize(static_cast<std::size_t>(spec.input_dim()));
    for (double& x : b.u) x = rng.gaussian();
    const int d = spec.pixels_per_bit;
    for (int i = 0; i < spec.k; ++i) {
        double mean = 0.0;
        for (int j = 0; j < d; ++j) mean += b.u[static_cast<std::size_t>(i * d + j)];
        mean /= d;
        for (int j = 0; j < d; ++j) b.u[static_cast<std::size_t>(i * d + j)] -= mean;
    }
    double ss = 0.0;
    for (double x : b.u) ss += x * x;
    // d = 1 leaves u identically zero; the style then has no pixel effect
    if (ss > 0.0) {
        const double scale = std::sqrt(static_cast<double>(b.u.size()) / ss);
        for (double& x : b.u) x *= scale;
    }
    b.v.resize(static_cast<std::size_t>(spec.style_dim));
    double vs = 0.0;
    for (double& x : b.v) {
        x = rng.gaussian();
        vs += x * x;
    }
    for (double& x : b.v) x /= std::sqrt(vs);
    return b;
}

}  // namespace

std::vector<Sample> generate_dataset(const SceneSpec& spec, const Program& p, const Support& s,
                                     std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (p.arity() != spec.k || s.arity() != spec.k)
        throw std::invalid_argument("scene, program and support arity must agree");
    if (n < 1) throw std::invalid_argument("need at least one sample");

    const StyleBasis basis = style_basis(spec, seed);
    const std::vector<Concept> pool = s.elements();
    Rng rng(derive_seed(seed, 1));
    const int d = spec.pixels_per_bit;
    const double amp = spec.separation / 4.0;

    std::vector<Sample> out;
    out.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        Sample smp;
        if (s.has_weights()) {
            double r = rng.uniform();
            std::size_t pick = pool.size() - 1;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                r -= s.weights()[i];
                if (r < 0.0) {
                    pick = i;
                    break;
                }
            }
            smp.g = pool[pick];
        } else {
            smp.g = pool[rng.uniform_index(pool.size())];
        }
        smp.y = p.label_of(smp.g);

        double proj = 0.0;
        for (double vj : basis.v) proj += vj * rng.gaussian();  // v . s, s ~ N(0, I)
        proj *= amp;

        smp.x.resize(static_cast<std::size_t>(spec.input_dim()));
        for (int i = 0; i < spec.k; ++i) {
            const double proto = smp.g.bit(i) ? spec.separation / 2.0 : -spec.separation / 2.0;
            for (int j = 0; j < d; ++j) {
                const std::size_t px = static_cast<std::size_t>(i * d + j);
                smp.x[px] = proto + basis.u[px] * proj + spec.noise_sigma * rng.gaussian();
            }
        }
        out.push_back(std::move(smp));
    }
    return out;
}

Concept oracle_invert(const SceneSpec& spec, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(spec.input_dim()))
        throw std::invalid_argument("input length does not match the scene");
    std::uint32_t code = 0;
    const int d = spec.pixels_per_bit;
    for (int i = 0; i < spec.k; ++i) {
        double mean = 0.0;
        for (int j = 0; j < d; ++j) mean += x[static_cast<std::size_t>(i * d + j)];
        code = (code << 1) | (mean > 0.0 ? 1u : 0u);
    }
    return Concept(spec.k, code);
}

std::pair<std::vector<Sample>, std::vector<Sample>> split_dataset(const std::vector<Sample>& all,
                                                                  std::size_t n_train,
                                                                  std::size_t n_test) {
    if (n_train + n_test > all.size())
        throw std::invalid_argument("split larger than the dataset");
    std::vector<Sample> train(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<Sample> test(all.begin() + static_cast<std::ptrdiff_t>(n_train),
                             all.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));
    return {std::move(train), std::move(test)};
}

void write_dataset_csv(const std::string& path, const SceneSpec& spec,
                       const std::vector<Sample>& samples) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f.precision(17);
    const int dim = spec.input_dim();
    for (int j = 0; j < dim; ++j) f << "x_" << j << ',';
    f << "g,y\n";
    for (const Sample& s : samples) {
        for (double v : s.x) f << v << ',';
        for (int i = 0; i < spec.k; ++i) f << s.g.bit(i);
        f << ',' << s.y << '\n';
    }

    nlohmann::json j{{"k", spec.k},
                     {"style_dim", spec.style_dim},
                     {"pixels_per_bit", spec.pixels_per_bit},
                     {"separation", spec.separation},
                     {"noise_sigma", spec.noise_sigma}};
    std::ofstream side(path + ".spec.json");
    if (!side) throw std::runtime_error("cannot write " + path + ".spec.json");
    side << j.dump(2) << '\n';
}

std::pair<SceneSpec, std::vector<Sample>> read_dataset_csv(const std::string& path) {
    std::ifstream side(path + ".spec.json");
    if (!side) throw std::runtime_error("cannot read " + path + ".spec.json");
    nlohmann::json j;
    side >> j;
    SceneSpec spec;
    spec.k = j.at("k").get<int>();
    spec.style_dim = j.at("style_dim").get<int>();
    spec.pixels_per_bit = j.at("pixels_per_bit").get<int>();
    spec.separation = j.at("separation").get<double>();
    spec.noise_sigma = j.at("noise_sigma").get<double>();
    spec.validate();

    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("missing csv header in " + path);
    std::vector<Sample> out;
    const int dim = spec.input_dim();
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        Sample s;
        s.x.resize(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("truncated csv row");
            s.x[static_cast<std::size_t>(i)] = std::stod(cell);
        }
        if (!std::getline(ss, cell, ',')) throw std::runtime_error("missing concept column");
        std::uint32_t code = 0;
        for (char ch : cell) {
            if (ch != '0' && ch != '1') throw std::runtime_error("bad concept bitstring");
            code = (code << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        if (cell.size() != static_cast<std::size_t>(spec.k))
            throw std::runtime_error("concept bitstring length mismatch");
        s.g = Concept(spec.k, code);
        if (!std::getline(ss, cell)) throw std::runtime_error("missing label column");
        s.y = std::stoi(cell);
        out.push_back(std::move(s));
    }
    return {spec, std::move(out)};
}

}  // namespace rsaware
