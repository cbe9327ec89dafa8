#include "icascade/thresholds.hpp"

#include <algorithm>
#include <limits>

#include "icascade/errors.hpp"

namespace icascade {

namespace {

constexpr double kPassMargin = 1e-9; // keeps the minimal positive strictly passing

} // namespace

ThresholdVector bound_thresholds(const ScoreProfile& profile, const Partition& partition) {
    validate_partition(partition, profile.weak_count);
    ThresholdVector out;
    out.final_threshold = profile.source_threshold;
    out.values.reserve(partition.stages());
    for (std::size_t r : partition.points) {
        out.values.push_back(profile.source_threshold - profile.tail_weight[r]);
    }
    return out;
}

ThresholdVector exact_detection_thresholds(const ScoreProfile& profile,
                                           const Partition& partition) {
    validate_partition(partition, profile.weak_count);
    if (profile.positives_prefix.empty())
        throw NoPositives("exact_detection_thresholds: no positives");

    ThresholdVector out;
    out.final_threshold = profile.source_threshold;
    std::vector<std::size_t> survivors(profile.positives_prefix.size());
    for (std::size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;

    for (std::size_t r : partition.points) {
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t idx : survivors) {
            lowest = std::min(lowest, profile.positives_prefix[idx][r]);
        }
        const double t_i = lowest - kPassMargin;
        out.values.push_back(t_i);
        std::vector<std::size_t> next;
        next.reserve(survivors.size());
        for (std::size_t idx : survivors) {
            if (profile.positives_prefix[idx][r] > t_i) next.push_back(idx);
        }
        survivors = std::move(next);
    }
    return out;
}

double stage_detection_rate(const ScoreProfile& profile, std::size_t r, double t,
                            const std::vector<std::size_t>* survivors) {
    if (r > profile.weak_count) throw BadRange("stage_detection_rate: r out of range");
    if (profile.positives_prefix.empty()) throw NoPositives("stage_detection_rate: no positives");
    std::size_t total = 0;
    std::size_t passed = 0;
    if (survivors) {
        total = survivors->size();
        for (std::size_t idx : *survivors) {
            if (profile.positives_prefix[idx][r] > t) ++passed;
        }
    } else {
        total = profile.positives_prefix.size();
        for (const auto& prefix : profile.positives_prefix) {
            if (prefix[r] > t) ++passed;
        }
    }
    if (total == 0) return 1.0;
    return static_cast<double>(passed) / static_cast<double>(total);
}

double cascade_detection_rate(const ScoreProfile& profile, const Partition& partition,
                              const ThresholdVector& thresholds) {
    if (profile.positives_prefix.empty())
        throw NoPositives("cascade_detection_rate: no positives");
    std::size_t surviving = 0;
    for (const auto& prefix : profile.positives_prefix) {
        bool alive = true;
        for (std::size_t i = 0; i < partition.stages(); ++i) {
            if (prefix[partition.points[i]] <= thresholds.values[i]) {
                alive = false;
                break;
            }
        }
        if (alive) ++surviving;
    }
    return static_cast<double>(surviving) /
           static_cast<double>(profile.positives_prefix.size());
}

LearnResult learn_thresholds(const ScoreProfile& profile, const Partition& partition,
                             const CostParams& params, const LearnerConfig& config) {
    validate_params(params);
    validate_partition(partition, params.weak_count);
    if (profile.positives_prefix.empty()) throw NoPositives("learn_thresholds: no positives");
    if (profile.negatives_prefix.empty()) throw NoNegatives("learn_thresholds: no negatives");
    if (!(config.target_detection > 0.0 && config.target_detection <= 1.0))
        throw BadParams("learn_thresholds: target_detection must lie in (0, 1]");
    if (!(config.step > 0.0)) throw BadParams("learn_thresholds: step must be > 0");

    LearnResult result;
    result.thresholds = exact_detection_thresholds(profile, partition);
    const std::size_t S = partition.stages();

    double cost = thresholded_cascade_cost(profile, partition, result.thresholds.values, params);
    double detection = cascade_detection_rate(profile, partition, result.thresholds);
    result.initial_cost = cost;

    for (std::size_t iter = 1; iter <= config.max_iterations && S > 0; ++iter) {
        std::size_t best_stage = S;
        double best_cost = 0.0;
        double best_detection = 0.0;
        bool best_free = false;
        double best_ratio = -1.0;

        for (std::size_t j = 0; j < S; ++j) {
            ThresholdVector trial = result.thresholds;
            trial.values[j] += config.step;
            const double trial_cost =
                thresholded_cascade_cost(profile, partition, trial.values, params);
            const double trial_detection = cascade_detection_rate(profile, partition, trial);
            const double cost_drop = cost - trial_cost;
            const double detection_drop = detection - trial_detection;
            if (!(cost_drop > 0.0)) continue;
            if (trial_detection + 1e-12 < config.target_detection) continue;

            const bool free_move = detection_drop <= 0.0;
            const double ratio = free_move ? 0.0 : cost_drop / detection_drop;
            const bool better = best_stage == S ||
                                (free_move && !best_free) ||
                                (free_move == best_free && !free_move && ratio > best_ratio);
            if (better) {
                best_stage = j;
                best_cost = trial_cost;
                best_detection = trial_detection;
                best_free = free_move;
                best_ratio = ratio;
            }
        }

        if (best_stage == S) break; // no admissible cost-reducing move left
        result.thresholds.values[best_stage] += config.step;
        cost = best_cost;
        detection = best_detection;
        result.trace.push_back({iter, best_stage + 1, cost, detection});
    }

    result.final_cost = cost;
    result.final_detection = detection;
    return result;
}

} // namespace icascade
