#include "rsaware/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsaware {

std::string kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Independent: return "independent";
        case ModelKind::Joint: return "joint";
        case ModelKind::Autoregressive: return "ar";
    }
    return "?";
}

std::string loss_name(LossKind loss) {
    return loss == LossKind::Semantic ? "semantic" : "uniform_kl";
}

ModelKind kind_from_name(const std::string& name) {
    if (name == "independent") return ModelKind::Independent;
    if (name == "joint") return ModelKind::Joint;
    if (name == "ar") return ModelKind::Autoregressive;
    throw std::invalid_argument("unknown model kind: " + name);
}

LossKind loss_from_name(const std::string& name) {
    if (name == "semantic") return LossKind::Semantic;
    if (name == "uniform_kl") return LossKind::UniformKl;
    throw std::invalid_argument("unknown loss: " + name);
}

PerceptionModel::PerceptionModel(ModelKind kind, int k, int block, Mlp net)
    : kind_(kind), k_(k), block_(block), net_(std::move(net)) {}

PerceptionModel PerceptionModel::create(ModelKind kind, int k, int pixels_per_bit,
                                        const std::vector<int>& hidden, std::uint64_t seed) {
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("model arity out of range");
    if (pixels_per_bit < 1) throw std::invalid_argument("pixels_per_bit must be >= 1");
    int in = 0, out = 0;
    switch (kind) {
        case ModelKind::Independent:
            in = pixels_per_bit;  // shared trunk, applied once per block
            out = 1;
            break;
        case ModelKind::Joint:
            in = k * pixels_per_bit;
            out = 1 << k;
            break;
        case ModelKind::Autoregressive:
            // own block's pixels, position one-hot, prefix values; conditionals
            // read their own position's content plus the earlier bits
            in = pixels_per_bit + k + (k - 1);
            out = 1;
            break;
    }
    Mlp net(in, hidden, out);
    Rng rng(derive_seed(seed, 0xA11));
    net.init(rng);
    return PerceptionModel(kind, k, pixels_per_bit, std::move(net));
}

std::vector<double> PerceptionModel::ar_input(const std::vector<double>& x, int pos,
                                              std::uint32_t prefix) const {
    std::vector<double> in;
    in.reserve(static_cast<std::size_t>(block_ + 2 * k_ - 1));
    in.insert(in.end(), x.begin() + static_cast<std::ptrdiff_t>(pos) * block_,
              x.begin() + static_cast<std::ptrdiff_t>(pos + 1) * block_);
    for (int i = 0; i < k_; ++i) in.push_back(i == pos ? 1.0 : 0.0);
    // c_1..c_{k-1} as +1/-1 when conditioned on, 0 when outside the prefix
    for (int i = 0; i < k_ - 1; ++i) {
        if (i < pos)
            in.push_back(((prefix >> (pos - 1 - i)) & 1u) ? 1.0 : -1.0);
        else
            in.push_back(0.0);
    }
    return in;
}

std::vector<double> PerceptionModel::forward(const std::vector<double>& x,
                                             std::vector<Tape>* tapes) const {
    if (x.size() != static_cast<std::size_t>(input_dim()))
        throw std::invalid_argument("perception input dimension mismatch");
    std::vector<double> raw(raw_count());
    if (tapes) tapes->assign(kind_ == ModelKind::Joint ? 1 : raw.size(), Tape{});
    switch (kind_) {
        case ModelKind::Independent: {
            std::vector<double> blockbuf(static_cast<std::size_t>(block_));
            for (int i = 0; i < k_; ++i) {
                std::copy(x.begin() + static_cast<std::ptrdiff_t>(i) * block_,
                          x.begin() + static_cast<std::ptrdiff_t>(i + 1) * block_,
                          blockbuf.begin());
                raw[static_cast<std::size_t>(i)] =
                    net_.forward(blockbuf, tapes ? &(*tapes)[static_cast<std::size_t>(i)] : nullptr)[0];
            }
            break;
        }
        case ModelKind::Joint: {
            raw = net_.forward(x, tapes ? &(*tapes)[0] : nullptr);
            break;
        }
        case ModelKind::Autoregressive: {
            for (int pos = 0; pos < k_; ++pos) {
                for (std::uint32_t prefix = 0; prefix < (1u << pos); ++prefix) {
                    const std::size_t idx = ar_param_index(pos, prefix);
                    raw[idx] = net_.forward(ar_input(x, pos, prefix),
                                            tapes ? &(*tapes)[idx] : nullptr)[0];
                }
            }
            break;
        }
    }
    return raw;
}

void PerceptionModel::backward(const std::vector<Tape>& tapes, const std::vector<double>& draw,
                               std::vector<double>& grad) const {
    if (draw.size() != raw_count()) throw std::invalid_argument("draw size mismatch");
    switch (kind_) {
        case ModelKind::Independent:
        case ModelKind::Autoregressive: {
            if (tapes.size() != draw.size()) throw std::invalid_argument("tape count mismatch");
            for (std::size_t i = 0; i < draw.size(); ++i)
                net_.backward(tapes[i], {draw[i]}, grad);
            break;
        }
        case ModelKind::Joint: {
            if (tapes.size() != 1) throw std::invalid_argument("tape count mismatch");
            net_.backward(tapes[0], draw, grad);
            break;
        }
    }
}

std::vector<EvalRecord> evaluate(const PerceptionModel& model, const Program& p,
                                 const std::vector<Sample>& data) {
    std::vector<EvalRecord> out;
    out.reserve(data.size());
    for (const Sample& s : data) {
        const Distribution d = joint_table(model.kind(), model.arity(), model.forward(s.x));
        const auto [yhat, what] = predict(d, p);
        (void)what;
        EvalRecord r;
        r.pred_label = yhat;
        r.true_label = s.y;
        r.bit_probs = d.marginals();
        r.true_bits.reserve(static_cast<std::size_t>(model.arity()));
        for (int i = 0; i < model.arity(); ++i) r.true_bits.push_back(s.g.bit(i));
        out.push_back(std::move(r));
    }
    return out;
}

ProbeStats probe_stats(const PerceptionModel& model, const std::vector<Sample>& probe) {
    const std::size_t n = std::size_t{1} << model.arity();
    ProbeStats st;
    st.mean_table_by_g.assign(n, {});
    st.marginal_min.assign(static_cast<std::size_t>(model.arity()), 1.0);
    st.marginal_max.assign(static_cast<std::size_t>(model.arity()), 0.0);
    std::vector<std::vector<double>> sums(n, std::vector<double>(n, 0.0));
    std::vector<std::size_t> counts(n, 0);
    for (const Sample& s : probe) {
        const Distribution d = joint_table(model.kind(), model.arity(), model.forward(s.x));
        const std::size_t g = s.g.index();
        ++counts[g];
        for (std::size_t w = 0; w < n; ++w) sums[g][w] += d.prob(w);
        const std::vector<double> mu = d.marginals();
        for (int i = 0; i < model.arity(); ++i) {
            st.marginal_min[static_cast<std::size_t>(i)] =
                std::min(st.marginal_min[static_cast<std::size_t>(i)], mu[static_cast<std::size_t>(i)]);
            st.marginal_max[static_cast<std::size_t>(i)] =
                std::max(st.marginal_max[static_cast<std::size_t>(i)], mu[static_cast<std::size_t>(i)]);
        }
    }
    for (std::size_t g = 0; g < n; ++g) {
        if (counts[g] == 0) continue;
        for (double& v : sums[g]) v /= static_cast<double>(counts[g]);
        st.mean_table_by_g[g] = std::move(sums[g]);
    }
    return st;
}

namespace {

LossValue sample_loss(const PerceptionModel& model, LossKind loss, const Program& p,
                      const std::vector<double>& raw, int y) {
    return loss == LossKind::Semantic
               ? semantic_nll(model.kind(), model.arity(), raw, p, y)
               : uniform_kl(model.kind(), model.arity(), raw, p, y);
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const std::vector<Sample>& train_data,
                  const std::vector<Sample>& test_data, const Program& p) {
    if (cfg.lr <= 0.0) throw std::invalid_argument("lr must be > 0");
    if (cfg.batch < 1) throw std::invalid_argument("batch must be >= 1");
    if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (cfg.eval_every < 1) throw std::invalid_argument("eval_every must be >= 1");
    if (train_data.empty() || test_data.empty()) throw std::invalid_argument("empty dataset");

    const int k = p.arity();
    const std::size_t dim = train_data.front().x.size();
    if (dim % static_cast<std::size_t>(k) != 0)
        throw std::invalid_argument("input length not divisible by arity");
    const int block = static_cast<int>(dim / static_cast<std::size_t>(k));
    for (const Sample& s : train_data)
        if (s.y != p.label_of(s.g) || s.x.size() != dim)
            throw std::invalid_argument("training sample inconsistent with the program");

    PerceptionModel model =
        PerceptionModel::create(cfg.kind, k, block, cfg.hidden, derive_seed(cfg.seed, 1));
    Adam adam(model.net().param_count(), cfg.lr);
    Rng order_rng(derive_seed(cfg.seed, 2));

    const std::size_t probe_n = std::min<std::size_t>(
        static_cast<std::size_t>(cfg.probe_size), test_data.size());
    const std::vector<Sample> probe(test_data.begin(),
                                    test_data.begin() + static_cast<std::ptrdiff_t>(probe_n));

    std::vector<std::size_t> order(train_data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    History hist;
    std::vector<double> grad(model.net().param_count());
    std::vector<Tape> tapes;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        order_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch)) {
            const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch));
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t j = start; j < stop; ++j) {
                const Sample& s = train_data[order[j]];
                const std::vector<double> raw = model.forward(s.x, &tapes);
                for (double r : raw)
                    if (!std::isfinite(r))
                        throw std::runtime_error(
                            "training diverged: non-finite raw parameters at epoch " +
                            std::to_string(epoch) + " (kind=" + kind_name(cfg.kind) +
                            ", loss=" + loss_name(cfg.loss) + ")");
                const LossValue lv = sample_loss(model, cfg.loss, p, raw, s.y);
                if (!lv.finite || !std::isfinite(lv.value))
                    throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                             std::to_string(epoch) +
                                             " (kind=" + kind_name(cfg.kind) +
                                             ", loss=" + loss_name(cfg.loss) + ")");
                epoch_loss += lv.value;
                model.backward(tapes, lv.grad, grad);
            }
            const double inv = 1.0 / static_cast<double>(stop - start);
            for (double& g : grad) g *= inv;
            adam.step(model.net().params(), grad);
        }
        epoch_loss /= static_cast<double>(train_data.size());

        if (epoch % cfg.eval_every == 0 || epoch == cfg.epochs) {
            const std::vector<EvalRecord> records = evaluate(model, p, test_data);
            HistoryEntry e;
            e.epoch = epoch;
            e.train_loss = epoch_loss;
            e.acc_y = accuracy_label(records);
            e.acc_w = accuracy_concept(records);
            e.ece_w = ece(records);
            e.probe = probe_stats(model, probe);
            hist.entries.push_back(std::move(e));
        }
    }
    return TrainResult{std::move(model), std::move(hist)};
}

double grad_check(const PerceptionModel& model, LossKind loss, const Program& p, const Sample& s,
                  std::size_t min_weights, std::uint64_t seed, int sabotage_layer) {
    PerceptionModel m = model;
    std::vector<Tape> tapes;
    std::vector<double> analytic(m.net().param_count(), 0.0);
    {
        const std::vector<double> raw = m.forward(s.x, &tapes);
        const LossValue lv = sample_loss(m, loss, p, raw, s.y);
        if (!lv.finite) throw std::runtime_error("grad_check hit a non-finite loss");
        m.backward(tapes, lv.grad, analytic);
    }
    if (sabotage_layer >= 0) {
        const auto [begin, end] = m.net().layer_range(static_cast<std::size_t>(sabotage_layer));
        for (std::size_t i = begin; i < end; ++i) analytic[i] = -analytic[i];
    }

    const std::size_t total = m.net().param_count();
    std::vector<std::size_t> picks;
    if (total <= min_weights) {
        picks.resize(total);
        for (std::size_t i = 0; i < total; ++i) picks[i] = i;
    } else {
        Rng rng(derive_seed(seed, 3));
        std::vector<std::size_t> all(total);
        for (std::size_t i = 0; i < total; ++i) all[i] = i;
        rng.shuffle(all);
        picks.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(min_weights));
    }

    const double h = 1e-5;
    double worst = 0.0;
    for (std::size_t i : picks) {
        const double keep = m.net().params()[i];
        m.net().params()[i] = keep + h;
        const double up = sample_loss(m, loss, p, m.forward(s.x), s.y).value;
        m.net().params()[i] = keep - h;
        const double dn = sample_loss(m, loss, p, m.forward(s.x), s.y).value;
        m.net().params()[i] = keep;
        const double num = (up - dn) / (2.0 * h);
        const double scale = std::max({std::abs(analytic[i]), std::abs(num), 1e-3});
        worst = std::max(worst, std::abs(analytic[i] - num) / scale);
    }
    return worst;
}

}  // namespace rsaware
