#include "icascade/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "icascade/errors.hpp"

namespace icascade {

namespace {

struct ScanResult {
    std::size_t point = 0;
    double value = std::numeric_limits<double>::infinity();
};

// argmin of eval over [lo, hi]; ties go to the smallest r. In heuristic
// mode the scan walks from `start` outward and stops after `patience`
// consecutive non-improving steps.
ScanResult scan_argmin(std::size_t lo, std::size_t hi,
                       const std::function<double(std::size_t)>& eval, bool exhaustive,
                       std::size_t patience, bool descend_from_hi = false) {
    ScanResult best;
    if (lo > hi) return best;
    if (exhaustive) {
        for (std::size_t r = lo; r <= hi; ++r) {
            const double f = eval(r);
            if (f < best.value) {
                best.value = f;
                best.point = r;
            }
        }
        return best;
    }
    std::size_t bad = 0;
    if (descend_from_hi) {
        for (std::size_t r = hi;; --r) {
            const double f = eval(r);
            if (f < best.value) {
                best.value = f;
                best.point = r;
                bad = 0;
            } else if (++bad >= patience) {
                break;
            }
            if (r == lo) break;
        }
    } else {
        for (std::size_t r = lo; r <= hi; ++r) {
            const double f = eval(r);
            if (f < best.value) {
                best.value = f;
                best.point = r;
                bad = 0;
            } else if (++bad >= patience) {
                break;
            }
        }
    }
    return best;
}

// One stage-count phase of the alternating scheme: coordinate sweeps with
// each stage capped at its value from the previous sweep, run until the
// objective gap falls to `gap`.
StageSolution alternating_phase(const ScoreProfile& profile, const CostParams& params,
                                const OptimizerConfig& config, std::vector<std::size_t> points,
                                double gap, OptimizerTrace& trace) {
    const std::size_t T = params.weak_count;
    const std::size_t n = points.size();
    auto full_cost = [&](const std::vector<std::size_t>& pts) {
        Partition part{pts};
        return cascade_cost(profile, part, params);
    };

    double current = full_cost(points);
    for (;;) {
        const double before = current;
        std::vector<std::size_t> caps = points;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t lo = j == 0 ? 1 : points[j - 1] + 1;
            const std::size_t hi = std::min(caps[j], j + 1 < n ? points[j + 1] - 1 : T - 1);
            if (lo > hi) continue;
            auto eval = [&](std::size_t r) {
                std::vector<std::size_t> trial = points;
                trial[j] = r;
                return full_cost(trial);
            };
            const ScanResult found =
                scan_argmin(lo, hi, eval, config.exhaustive, config.patience, true);
            if (found.point != points[j]) {
                trace.records.push_back({n, j + 1, points[j], found.point, found.value});
                points[j] = found.point;
            }
        }
        current = full_cost(points);
        if (before - current <= gap) break;
    }
    return {Partition{points}, current};
}

ScanResult one_stage_scan(const ScoreProfile& profile, const CostParams& params,
                          const OptimizerConfig& config) {
    auto eval = [&](std::size_t r) {
        return one_stage_cost(rejection_rate(profile, r, params.threshold), r, params);
    };
    return scan_argmin(1, params.weak_count - 1, eval, config.exhaustive, config.patience);
}

} // namespace

OneStageResult optimize_one_stage(const ScoreProfile& profile, const CostParams& params,
                                  const OptimizerConfig& config) {
    validate_params(params);
    if (profile.negatives_prefix.empty()) throw NoNegatives("optimize_one_stage: no negatives");
    const ScanResult found = one_stage_scan(profile, params, config);
    return {found.point, found.value};
}

ChainResult optimize_local_chain(const ScoreProfile& profile, const CostParams& params,
                                 const OptimizerConfig& config) {
    validate_params(params);
    if (profile.negatives_prefix.empty()) throw NoNegatives("optimize_local_chain: no negatives");
    if (config.max_stages < 1) throw BadParams("optimize_local_chain: max_stages must be >= 1");

    const std::size_t T = params.weak_count;
    ChainResult result;
    double previous_cost = static_cast<double>(T) + params.check_cost; // S = 0 baseline
    std::size_t r_prev = 0;   // r_{i-1}
    std::size_t r_prev2 = 0;  // r_{i-2}

    for (std::size_t i = 1; i <= config.max_stages; ++i) {
        std::size_t lo = r_prev + 1;
        std::size_t theorem_bound = 0;
        // r_0 = 0 by convention, so stage 2 is bounded by 2 r_1
        if (i >= 2 && 2 * r_prev >= r_prev2) theorem_bound = 2 * r_prev - r_prev2;
        if (!config.exhaustive) lo = std::max(lo, theorem_bound);
        if (lo > T - 1) break;

        auto eval = [&](std::size_t r) {
            return conditional_stage_cost(profile, result.partition, r, params);
        };
        const ScanResult found = scan_argmin(lo, T - 1, eval, config.exhaustive, config.patience);
        const std::size_t r_new = found.point;
        const double p_new =
            conditional_rejection_rate(profile, r_new, r_prev, params.threshold);
        if (!stage_addition_gain(p_new, r_new, params)) break;
        if (!(found.value < previous_cost)) break;

        if (config.exhaustive && theorem_bound > 0 && theorem_bound < T && r_new < theorem_bound)
            result.step_bound_violations.push_back(i);

        result.partition.points.push_back(r_new);
        result.stage_costs.push_back(found.value);
        previous_cost = found.value;
        r_prev2 = r_prev;
        r_prev = r_new;
    }

    if (result.partition.empty()) {
        // not even one stage pays off; report the degenerate chain
        result.cost = previous_cost;
    } else {
        result.cost = result.stage_costs.back();
    }
    return result;
}

JointResult optimize_joint_two_stage(const ScoreProfile& profile, const CostParams& params,
                                     const OptimizerConfig& config) {
    validate_params(params);
    if (params.weak_count < 3) throw RangeError("optimize_joint_two_stage: T must be >= 3");
    if (profile.negatives_prefix.empty())
        throw NoNegatives("optimize_joint_two_stage: no negatives");

    const std::size_t T = params.weak_count;
    JointResult result;

    const ScanResult init1 = one_stage_scan(profile, params, config);
    std::size_t r1 = init1.point;
    if (r1 >= T - 1) r1 = T - 2; // leave room for stage 2

    std::size_t lo2 = r1 + 1;
    if (!config.exhaustive) lo2 = std::max(lo2, 2 * r1);
    if (lo2 > T - 1) lo2 = r1 + 1;
    auto eval2 = [&](std::size_t r) {
        return conditional_stage_cost(profile, Partition{{r1}}, r, params);
    };
    const ScanResult init2 = scan_argmin(lo2, T - 1, eval2, config.exhaustive, config.patience);

    result.per_stage_count.push_back({Partition{{init1.point}}, init1.value});
    const StageSolution solved = alternating_phase(profile, params, config,
                                                   {r1, init2.point}, config.mu, result.trace);
    result.partition = solved.partition;
    result.cost = solved.cost;
    result.per_stage_count.push_back(solved);
    return result;
}

JointResult optimize_joint(const ScoreProfile& profile, const CostParams& params,
                           const OptimizerConfig& config) {
    validate_params(params);
    if (profile.negatives_prefix.empty()) throw NoNegatives("optimize_joint: no negatives");
    if (config.max_stages < 1) throw BadParams("optimize_joint: max_stages must be >= 1");

    const std::size_t T = params.weak_count;
    JointResult result;

    const ScanResult init1 = one_stage_scan(profile, params, config);
    result.per_stage_count.push_back({Partition{{init1.point}}, init1.value});

    for (std::size_t i = 2; i <= config.max_stages; ++i) {
        const StageSolution& prev = result.per_stage_count.back();
        const std::vector<std::size_t>& prev_pts = prev.partition.points;
        if (prev.partition.stages() < i - 1) {
            // an earlier stage count already stalled; carry it forward
            result.per_stage_count.push_back(prev);
            continue;
        }

        const std::size_t last = prev_pts.back();
        const std::size_t before_last = prev_pts.size() >= 2 ? prev_pts[prev_pts.size() - 2] : 0;
        std::size_t lo = last + 1;
        if (!config.exhaustive && 2 * last >= before_last) lo = std::max(lo, 2 * last - before_last);
        if (lo > T - 1) {
            result.per_stage_count.push_back(prev);
            continue;
        }

        auto eval = [&](std::size_t r) {
            return conditional_stage_cost(profile, prev.partition, r, params);
        };
        const ScanResult init_i = scan_argmin(lo, T - 1, eval, config.exhaustive, config.patience);

        std::vector<std::size_t> points = prev_pts;
        points.push_back(init_i.point);
        const StageSolution solved =
            alternating_phase(profile, params, config, std::move(points), config.eps, result.trace);
        result.per_stage_count.push_back(solved);
    }

    const StageSolution* best = &result.per_stage_count.front();
    for (const StageSolution& s : result.per_stage_count) {
        if (s.cost < best->cost) best = &s;
    }
    result.partition = best->partition;
    result.cost = best->cost;
    return result;
}

StageSolution brute_force_partitions(const ScoreProfile& profile, const CostParams& params,
                                     std::size_t stages) {
    validate_params(params);
    if (stages < 1) throw BadParams("brute_force_partitions: S must be >= 1");
    const std::size_t T = params.weak_count;
    if (stages > T - 1) throw TooLarge("brute_force_partitions: S exceeds T - 1");

    double combos = 1.0;
    for (std::size_t k = 1; k <= stages; ++k) {
        combos *= static_cast<double>(T - 1 - (stages - k)) / static_cast<double>(k);
        if (combos > 1e7) throw TooLarge("brute_force_partitions: candidate count above 1e7");
    }

    StageSolution best;
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> points(stages);
    // lexicographic enumeration of increasing S-tuples in [1, T-1]
    for (std::size_t k = 0; k < stages; ++k) points[k] = k + 1;
    for (;;) {
        const double f = cascade_cost(profile, Partition{points}, params);
        if (f < best.cost) {
            best.cost = f;
            best.partition = Partition{points};
        }
        std::size_t k = stages;
        while (k-- > 0) {
            if (points[k] < T - 1 - (stages - 1 - k)) {
                ++points[k];
                for (std::size_t m = k + 1; m < stages; ++m) points[m] = points[m - 1] + 1;
                break;
            }
            if (k == 0) return best;
        }
    }
}

} // namespace icascade
