#ifndef ICASCADE_RUNTIME_HPP
#define ICASCADE_RUNTIME_HPP

#include "icascade/thresholds.hpp"
#include "icascade/types.hpp"

namespace icascade {

struct CascadeModel {
    StrongClassifier classifier;
    Partition partition;
    ThresholdVector thresholds;
    double check_cost = 0.5;
};

struct ClassificationResult {
    int label = -1;
    std::size_t exit_stage = 0; // 1..S on early rejection, S+1 on fall-through
    std::size_t weak_evals = 0;
    std::size_t checks = 0;
    double cost = 0.0; // weak_evals + checks * c
};

struct EvaluationReport {
    double avg_cost = 0.0;
    double avg_weak_evals = 0.0;
    double detection_rate = 0.0;
    double false_positive_rate = 0.0;
    double analytic_cost = 0.0;
    std::vector<std::size_t> per_stage_rejections; // size S
    std::size_t fall_through = 0;                  // samples that reached the full evaluation
    bool no_negatives = false;
    bool no_positives = false;
};

void validate_model(const CascadeModel& model);

/// Evaluates members incrementally, reusing the running prefix sum across
/// stages; stage i costs r_i - r_{i-1} new weak evaluations plus one check.
ClassificationResult classify(const CascadeModel& model, const std::vector<double>& x);

EvaluationReport batch_evaluate(const CascadeModel& model, const LabeledDataset& data);

/// Sweeps the fall-through threshold over the observed score range (stage
/// thresholds fixed) and reports (false_positive_rate, detection_rate)
/// pairs, threshold descending.
std::vector<std::pair<double, double>> roc_sweep(const CascadeModel& model,
                                                 const LabeledDataset& data,
                                                 std::size_t n_points);

} // namespace icascade

#endif
