#pragma once

#include <string>
#include <vector>

namespace rsaware {

struct EvalRecord {
    int pred_label = 0;
    int true_label = 0;
    std::vector<double> bit_probs;  // p(c_{i+1} = 1)
    std::vector<int> true_bits;
};

// Binning key for calibration: Confidence bins by max(p, 1-p) and scores the
// predicted bit; PositiveProb bins by p itself and scores the positive rate
// (the reliability-diagram alternative).
enum class EceKey { Confidence, PositiveProb };

// percentage of records with pred_label == true_label
double accuracy_label(const std::vector<EvalRecord>& records);

// micro-averaged per-bit accuracy over all (record, position) pairs;
// predicted bit is p > 0.5, ties decode to 0
double accuracy_concept(const std::vector<EvalRecord>& records);

// sum_i (|D_i|/|D|) |acc(D_i) - conf(D_i)| * 100 over K bins; bins are
// (i/K, (i+1)/K] with the boundary in the lower bin and 0 in the first
double ece(const std::vector<EvalRecord>& records, int bins = 10,
           EceKey key = EceKey::Confidence);

void write_records_csv(const std::string& path, const std::vector<EvalRecord>& records);
std::vector<EvalRecord> read_records_csv(const std::string& path);

}  // namespace rsaware
