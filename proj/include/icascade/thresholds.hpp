#ifndef ICASCADE_THRESHOLDS_HPP
#define ICASCADE_THRESHOLDS_HPP

#include "icascade/cost.hpp"

namespace icascade {

/// Stage thresholds t_1..t_S aligned with a Partition, plus the global
/// threshold for the fall-through full evaluation. Stage i rejects iff
/// P_{r_i}(x) <= values[i-1].
struct ThresholdVector {
    std::vector<double> values;
    double final_threshold = 0.0;
};

struct LearnerConfig {
    double target_detection = 0.98; // D_o
    double step = 0.01;             // threshold increment per move
    std::size_t max_iterations = 100000;
};

/// t_i = t - M_{r_i}: rejection at stage i then implies H(x) <= t, so the
/// cascade's decisions equal the strong classifier's on every input.
ThresholdVector bound_thresholds(const ScoreProfile& profile, const Partition& partition);

/// Largest t_i (up to a 1e-9 margin) keeping every surviving positive
/// strictly above it, stage by stage; detection on the profile is 1.
ThresholdVector exact_detection_thresholds(const ScoreProfile& profile,
                                           const Partition& partition);

/// Fraction of positives with P_r > t. When `survivors` is given, only
/// those positive indices enter the denominator.
double stage_detection_rate(const ScoreProfile& profile, std::size_t r, double t,
                            const std::vector<std::size_t>* survivors = nullptr);

/// Fraction of the profile's positives that survive every stage check,
/// measured by direct simulation (the final fall-through decision is the
/// strong classifier's own and is not charged against the stages).
double cascade_detection_rate(const ScoreProfile& profile, const Partition& partition,
                              const ThresholdVector& thresholds);

struct LearnRecord {
    std::size_t iteration = 0;
    std::size_t stage = 0; // 1-based stage whose threshold moved
    double cost = 0.0;     // analytic f_S after the move
    double detection = 0.0;
};

struct LearnResult {
    ThresholdVector thresholds;
    std::vector<LearnRecord> trace;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    double final_detection = 1.0;
};

/// Greedy cost reduction under a detection-rate floor: starts from the
/// detection-1 thresholds, repeatedly raises the single stage threshold
/// with the best cost-per-detection tradeoff, and stops before the
/// measured detection rate would drop below target_detection.
LearnResult learn_thresholds(const ScoreProfile& profile, const Partition& partition,
                             const CostParams& params, const LearnerConfig& config);

} // namespace icascade

#endif
