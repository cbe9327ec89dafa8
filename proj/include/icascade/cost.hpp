#ifndef ICASCADE_COST_HPP
#define ICASCADE_COST_HPP

#include "icascade/profile.hpp"

namespace icascade {

/// T weak classifiers of unit cost, inequality checks of cost c in (0,1),
/// and the global decision threshold t.
struct CostParams {
    std::size_t weak_count = 0; // T
    double check_cost = 0.5;    // c
    double threshold = 0.0;     // t
};

/// Strictly increasing partition points r_1 < ... < r_S, each in [1, T-1].
struct Partition {
    std::vector<std::size_t> points;

    std::size_t stages() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

void validate_params(const CostParams& params);
void validate_partition(const Partition& partition, std::size_t weak_count);

/// f_1(r, p) = p (r + c) + (1 - p)(T + 2c).
double one_stage_cost(double p, std::size_t r, const CostParams& params);

/// Expected cost of the full cascade: rejection at stage i pays r_i + i c,
/// survival pays T + (S+1) c. Conditional rejection rates come from the
/// profile at params.threshold. An empty partition costs T + c (single
/// final check, no stage checks).
double cascade_cost(const ScoreProfile& profile, const Partition& partition,
                    const CostParams& params);

/// Cost of extending `fixed` (stages 1..i-1) with a stage at r, written as
/// constant-prefix terms plus the new stage's contribution. Agrees with
/// cascade_cost(fixed + {r}) exactly.
double conditional_stage_cost(const ScoreProfile& profile, const Partition& fixed,
                              std::size_t r, const CostParams& params);

/// True iff appending a stage with conditional rejection rate p_new at
/// r_new strictly reduces the cascade cost: p_new > c / (T + c - r_new).
bool stage_addition_gain(double p_new, std::size_t r_new, const CostParams& params);

/// Cascade cost with arbitrary per-stage thresholds: stage i rejects a
/// survivor iff P_{r_i} <= stage_thresholds[i-1]. Used by the threshold
/// learner and by evaluation reports.
double thresholded_cascade_cost(const ScoreProfile& profile, const Partition& partition,
                                const std::vector<double>& stage_thresholds,
                                const CostParams& params);

} // namespace icascade

#endif
