#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsaware/program.hpp"
#include "rsaware/shortcuts.hpp"

namespace rsaware {

// Renderer layout: bit i occupies pixels [i*d, (i+1)*d) at prototype
// -sep/2 or +sep/2, plus a rank-1 style perturbation u (v . s) and i.i.d.
// Gaussian pixel noise. u is zero-mean inside every bit block, so the
// sign of the block mean recovers the bit exactly at zero noise.
struct SceneSpec {
    int k = 2;
    int style_dim = 2;
    int pixels_per_bit = 8;
    double separation = 2.0;
    double noise_sigma = 0.25;

    int input_dim() const { return k * pixels_per_bit; }
    void validate() const;
};

struct Sample {
    std::vector<double> x;
    Concept g{1, 0};
    int y = 0;
};

// g from support weights (uniform if absent), s standard normal,
// x = render(g, s) + noise. Deterministic per seed.
std::vector<Sample> generate_dataset(const SceneSpec& spec, const Program& p, const Support& s,
                                     std::size_t n, std::uint64_t seed);

// nearest-prototype decoding per block; evaluation only. Block-mean ties
// decode to bit 0.
Concept oracle_invert(const SceneSpec& spec, const std::vector<double>& x);

// disjoint by index: [0, n_train) and [n_train, n_train + n_test)
std::pair<std::vector<Sample>, std::vector<Sample>> split_dataset(const std::vector<Sample>& all,
                                                                  std::size_t n_train,
                                                                  std::size_t n_test);

// header x_0..x_{kd-1}, g bitstring, y; spec goes to <path>.spec.json
void write_dataset_csv(const std::string& path, const SceneSpec& spec,
                       const std::vector<Sample>& samples);
std::pair<SceneSpec, std::vector<Sample>> read_dataset_csv(const std::string& path);

}  // namespace rsaware
