#ifndef ICASCADE_OPTIMIZER_HPP
#define ICASCADE_OPTIMIZER_HPP

#include "icascade/cost.hpp"

namespace icascade {

enum class SearchMode { one_stage, local, joint };

struct OptimizerConfig {
    SearchMode mode = SearchMode::joint;
    std::size_t max_stages = 8;
    double mu = 0.0;         // alternating stop gap, two-stage phase
    double eps = 0.0;        // alternating stop gap, multi-stage phases
    bool exhaustive = true;  // full-range scans, no lower-bound shortcuts
    std::size_t patience = 5; // heuristic scan: stop after this many worsening steps
};

/// One row per alternating coordinate update: stage `stage_index` of the
/// `stage_count`-stage phase moved from old_point to new_point, with the
/// full objective evaluated after the move.
struct TraceRecord {
    std::size_t stage_count = 0;
    std::size_t stage_index = 0; // 1-based
    std::size_t old_point = 0;
    std::size_t new_point = 0;
    double objective = 0.0;
};

struct OptimizerTrace {
    std::vector<TraceRecord> records;
};

struct OneStageResult {
    std::size_t point = 0;
    double cost = 0.0;
};

struct StageSolution {
    Partition partition;
    double cost = 0.0;
};

struct ChainResult {
    Partition partition;
    double cost = 0.0;
    std::vector<double> stage_costs;               // cost after 1..S accepted stages
    std::vector<std::size_t> step_bound_violations; // stages where r_{i+1} < 2 r_i - r_{i-1}
};

struct JointResult {
    Partition partition;
    double cost = 0.0;
    std::vector<StageSolution> per_stage_count; // best solution for 1..max_stages stages
    OptimizerTrace trace;
};

/// argmin over r in [1, T-1] of f_1(p(r), r); ties to the smallest r.
OneStageResult optimize_one_stage(const ScoreProfile& profile, const CostParams& params,
                                  const OptimizerConfig& config);

/// Greedy chain: stage i minimizes the conditional cost given stages
/// 1..i-1, starting the scan at 2 r_{i-1} - r_{i-2} unless exhaustive.
/// Stops when the gain condition fails or max_stages is reached.
ChainResult optimize_local_chain(const ScoreProfile& profile, const CostParams& params,
                                 const OptimizerConfig& config);

/// Alternating minimization over (r_1, r_2) with per-round search caps.
JointResult optimize_joint_two_stage(const ScoreProfile& profile, const CostParams& params,
                                     const OptimizerConfig& config);

/// Grows the cascade one stage at a time; for each stage count runs capped
/// coordinate sweeps to a fixed point. Records the per-stage-count best.
JointResult optimize_joint(const ScoreProfile& profile, const CostParams& params,
                           const OptimizerConfig& config);

/// Exhaustive enumeration of all strictly increasing S-tuples in [1, T-1];
/// the test oracle. Guarded at C(T-1, S) <= 1e7 candidates.
StageSolution brute_force_partitions(const ScoreProfile& profile, const CostParams& params,
                                     std::size_t stages);

} // namespace icascade

#endif
