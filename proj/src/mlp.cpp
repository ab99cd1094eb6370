#include "rsaware/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace rsaware {

Mlp::Mlp(int input_dim, std::vector<int> hidden, int output_dim) {
    if (input_dim < 1 || output_dim < 1) throw std::invalid_argument("bad mlp dimensions");
    for (int h : hidden)
        if (h < 1) throw std::invalid_argument("bad mlp hidden dimension");
    dims_.push_back(input_dim);
    dims_.insert(dims_.end(), hidden.begin(), hidden.end());
    dims_.push_back(output_dim);

    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
        offset_.push_back(total);
        total += static_cast<std::size_t>(dims_[l]) * static_cast<std::size_t>(dims_[l + 1]) +
                 static_cast<std::size_t>(dims_[l + 1]);
    }
    params_.assign(total, 0.0);
}

void Mlp::init(Rng& rng) {
    for (std::size_t l = 0; l < layer_count(); ++l) {
        const auto [begin, end] = layer_range(l);
        const double bound = 1.0 / std::sqrt(static_cast<double>(dims_[l]));
        for (std::size_t i = begin; i < end; ++i) params_[i] = rng.uniform(-bound, bound);
    }
}

std::pair<std::size_t, std::size_t> Mlp::layer_range(std::size_t layer) const {
    if (layer >= layer_count()) throw std::out_of_range("layer index out of range");
    const std::size_t begin = offset_[layer];
    const std::size_t end = layer + 1 < layer_count() ? offset_[layer + 1] : params_.size();
    return {begin, end};
}

std::vector<double> Mlp::forward(const std::vector<double>& input, Tape* tape) const {
    if (input.size() != static_cast<std::size_t>(dims_.front()))
        throw std::invalid_argument("mlp input dimension mismatch");
    if (tape) {
        tape->acts.clear();
        tape->acts.push_back(input);
    }
    std::vector<double> a = input;
    for (std::size_t l = 0; l < layer_count(); ++l) {
        const int in = dims_[l], out = dims_[l + 1];
        const double* w = params_.data() + offset_[l];
        const double* b = w + static_cast<std::size_t>(in) * static_cast<std::size_t>(out);
        std::vector<double> z(static_cast<std::size_t>(out));
        for (int r = 0; r < out; ++r) {
            double acc = b[r];
            const double* row = w + static_cast<std::size_t>(r) * static_cast<std::size_t>(in);
            for (int c = 0; c < in; ++c) acc += row[c] * a[static_cast<std::size_t>(c)];
            z[static_cast<std::size_t>(r)] = acc;
        }
        if (l + 1 < layer_count())
            for (double& v : z) v = v > 0.0 ? v : 0.0;
        a = std::move(z);
        if (tape) tape->acts.push_back(a);
    }
    return a;
}

void Mlp::backward(const Tape& tape, const std::vector<double>& dout,
                   std::vector<double>& grad) const {
    if (tape.acts.size() != dims_.size()) throw std::invalid_argument("tape does not fit this mlp");
    if (dout.size() != static_cast<std::size_t>(dims_.back()))
        throw std::invalid_argument("dout dimension mismatch");
    if (grad.size() != params_.size()) throw std::invalid_argument("grad buffer size mismatch");

    std::vector<double> dz = dout;
    for (std::size_t l = layer_count(); l-- > 0;) {
        const int in = dims_[l], out = dims_[l + 1];
        const std::vector<double>& a_prev = tape.acts[l];
        const double* w = params_.data() + offset_[l];
        double* gw = grad.data() + offset_[l];
        double* gb = gw + static_cast<std::size_t>(in) * static_cast<std::size_t>(out);
        std::vector<double> da(static_cast<std::size_t>(in), 0.0);
        for (int r = 0; r < out; ++r) {
            const double d = dz[static_cast<std::size_t>(r)];
            const double* row = w + static_cast<std::size_t>(r) * static_cast<std::size_t>(in);
            double* grow = gw + static_cast<std::size_t>(r) * static_cast<std::size_t>(in);
            for (int c = 0; c < in; ++c) {
                grow[c] += d * a_prev[static_cast<std::size_t>(c)];
                da[static_cast<std::size_t>(c)] += d * row[c];
            }
            gb[r] += d;
        }
        if (l > 0) {
            // ReLU mask from the stored post-activation
            for (int c = 0; c < in; ++c)
                if (a_prev[static_cast<std::size_t>(c)] <= 0.0) da[static_cast<std::size_t>(c)] = 0.0;
        }
        dz = std::move(da);
    }
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {
    if (!(lr > 0.0)) throw std::invalid_argument("learning rate must be > 0");
}

void Adam::step(std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw std::invalid_argument("adam buffer size mismatch");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
        params[i] -= lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + eps_);
    }
}

}  // namespace rsaware
