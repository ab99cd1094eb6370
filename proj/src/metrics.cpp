#include "rsaware/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsaware {

namespace {

void check_records(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw std::invalid_argument("no evaluation records");
    for (const EvalRecord& r : records) {
        if (r.bit_probs.size() != r.true_bits.size())
            throw std::invalid_argument("bit_probs and true_bits length mismatch");
        for (double p : r.bit_probs)
            if (!(p >= 0.0 && p <= 1.0))
                throw std::invalid_argument("bit probability outside [0,1]");
    }
}

int predicted_bit(double p) { return p > 0.5 ? 1 : 0; }

}  // namespace

double accuracy_label(const std::vector<EvalRecord>& records) {
    check_records(records);
    std::size_t hits = 0;
    for (const EvalRecord& r : records) hits += r.pred_label == r.true_label;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(records.size());
}

double accuracy_concept(const std::vector<EvalRecord>& records) {
    check_records(records);
    std::size_t hits = 0, total = 0;
    for (const EvalRecord& r : records) {
        for (std::size_t i = 0; i < r.bit_probs.size(); ++i) {
            hits += predicted_bit(r.bit_probs[i]) == r.true_bits[i];
            ++total;
        }
    }
    if (total == 0) throw std::invalid_argument("records carry no bits");
    return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

double ece(const std::vector<EvalRecord>& records, int bins, EceKey key) {
    if (bins < 1) throw std::invalid_argument("need at least one bin");
    if (records.empty()) return 0.0;
    check_records(records);

    std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
    std::vector<double> conf_sum(static_cast<std::size_t>(bins), 0.0);
    std::vector<double> acc_sum(static_cast<std::size_t>(bins), 0.0);
    std::size_t total = 0;
    for (const EvalRecord& r : records) {
        for (std::size_t i = 0; i < r.bit_probs.size(); ++i) {
            const double p = r.bit_probs[i];
            const double conf = key == EceKey::Confidence ? std::max(p, 1.0 - p) : p;
            const double hit = key == EceKey::Confidence
                                   ? (predicted_bit(p) == r.true_bits[i] ? 1.0 : 0.0)
                                   : static_cast<double>(r.true_bits[i]);
            const int idx = std::clamp(
                static_cast<int>(std::ceil(conf * bins)) - 1, 0, bins - 1);
            ++count[static_cast<std::size_t>(idx)];
            conf_sum[static_cast<std::size_t>(idx)] += conf;
            acc_sum[static_cast<std::size_t>(idx)] += hit;
            ++total;
        }
    }
    double out = 0.0;
    for (int b = 0; b < bins; ++b) {
        const std::size_t n = count[static_cast<std::size_t>(b)];
        if (n == 0) continue;
        const double conf = conf_sum[static_cast<std::size_t>(b)] / static_cast<double>(n);
        const double acc = acc_sum[static_cast<std::size_t>(b)] / static_cast<double>(n);
        out += (static_cast<double>(n) / static_cast<double>(total)) * std::abs(acc - conf);
    }
    return 100.0 * out;
}

void write_records_csv(const std::string& path, const std::vector<EvalRecord>& records) {
    check_records(records);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f.precision(17);
    const std::size_t k = records.front().bit_probs.size();
    f << "pred_y,true_y";
    for (std::size_t i = 0; i < k; ++i) f << ",p_" << i + 1;
    for (std::size_t i = 0; i < k; ++i) f << ",b_" << i + 1;
    f << '\n';
    for (const EvalRecord& r : records) {
        if (r.bit_probs.size() != k) throw std::invalid_argument("ragged records");
        f << r.pred_label << ',' << r.true_label;
        for (double p : r.bit_probs) f << ',' << p;
        for (int b : r.true_bits) f << ',' << b;
        f << '\n';
    }
}

std::vector<EvalRecord> read_records_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("missing csv header in " + path);
    std::size_t cols = 1;
    for (char c : line) cols += c == ',';
    if (cols < 4 || (cols - 2) % 2 != 0)
        throw std::runtime_error("unexpected records header in " + path);
    const std::size_t k = (cols - 2) / 2;

    std::vector<EvalRecord> out;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        EvalRecord r;
        auto next = [&]() {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("truncated records row");
            return cell;
        };
        r.pred_label = std::stoi(next());
        r.true_label = std::stoi(next());
        for (std::size_t i = 0; i < k; ++i) r.bit_probs.push_back(std::stod(next()));
        for (std::size_t i = 0; i < k; ++i) r.true_bits.push_back(std::stoi(next()));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace rsaware
