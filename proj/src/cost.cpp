#include "icascade/cost.hpp"

#include "icascade/errors.hpp"

namespace icascade {

void validate_params(const CostParams& params) {
    if (params.weak_count < 2) throw RangeError("cost: T must be >= 2");
    if (!(params.check_cost > 0.0 && params.check_cost < 1.0))
        throw RangeError("cost: c must lie in (0, 1)");
}

void validate_partition(const Partition& partition, std::size_t weak_count) {
    std::size_t prev = 0;
    for (std::size_t r : partition.points) {
        if (r <= prev) throw RangeError("partition: points must be strictly increasing");
        if (r >= weak_count) throw RangeError("partition: points must be < T");
        prev = r;
    }
    if (!partition.points.empty() && partition.points.front() < 1)
        throw RangeError("partition: points must be >= 1");
}

double one_stage_cost(double p, std::size_t r, const CostParams& params) {
    validate_params(params);
    if (r < 1 || r >= params.weak_count) throw RangeError("one_stage_cost: need 1 <= r < T");
    const double T = static_cast<double>(params.weak_count);
    const double c = params.check_cost;
    return p * (static_cast<double>(r) + c) + (1.0 - p) * (T + 2.0 * c);
}

double cascade_cost(const ScoreProfile& profile, const Partition& partition,
                    const CostParams& params) {
    validate_params(params);
    validate_partition(partition, params.weak_count);
    const double T = static_cast<double>(params.weak_count);
    const double c = params.check_cost;
    const std::size_t S = partition.stages();
    if (S == 0) return T + c;

    double cost = 0.0;
    double survivor_mass = 1.0;
    std::size_t r_prev = 0;
    for (std::size_t i = 0; i < S; ++i) {
        const std::size_t r = partition.points[i];
        const double p = conditional_rejection_rate(profile, r, r_prev, params.threshold);
        const double stage_checks = static_cast<double>(i + 1) * c;
        cost += survivor_mass * p * (static_cast<double>(r) + stage_checks);
        survivor_mass *= 1.0 - p;
        r_prev = r;
    }
    cost += survivor_mass * (T + static_cast<double>(S + 1) * c);
    return cost;
}

double conditional_stage_cost(const ScoreProfile& profile, const Partition& fixed,
                              std::size_t r, const CostParams& params) {
    validate_params(params);
    validate_partition(fixed, params.weak_count);
    if ((!fixed.empty() && r <= fixed.points.back()) || r < 1 || r >= params.weak_count)
        throw RangeError("conditional_stage_cost: r must extend the fixed partition");
    const double T = static_cast<double>(params.weak_count);
    const double c = params.check_cost;
    const std::size_t i = fixed.stages() + 1; // index of the new stage

    // bracketed prefix terms: costs and survivor mass of the fixed stages
    double prefix_cost = 0.0;
    double survivor_mass = 1.0;
    std::size_t r_prev = 0;
    for (std::size_t j = 0; j < fixed.stages(); ++j) {
        const std::size_t rj = fixed.points[j];
        const double pj = conditional_rejection_rate(profile, rj, r_prev, params.threshold);
        prefix_cost += survivor_mass * pj * (static_cast<double>(rj) + static_cast<double>(j + 1) * c);
        survivor_mass *= 1.0 - pj;
        r_prev = rj;
    }

    const double p = conditional_rejection_rate(profile, r, r_prev, params.threshold);
    return prefix_cost +
           survivor_mass * p * (static_cast<double>(r) + static_cast<double>(i) * c) +
           survivor_mass * (1.0 - p) * (T + static_cast<double>(i + 1) * c);
}

bool stage_addition_gain(double p_new, std::size_t r_new, const CostParams& params) {
    validate_params(params);
    if (r_new < 1 || r_new >= params.weak_count)
        throw RangeError("stage_addition_gain: need 1 <= r_new < T");
    const double T = static_cast<double>(params.weak_count);
    const double c = params.check_cost;
    return p_new > c / (T + c - static_cast<double>(r_new));
}

double thresholded_cascade_cost(const ScoreProfile& profile, const Partition& partition,
                                const std::vector<double>& stage_thresholds,
                                const CostParams& params) {
    validate_params(params);
    validate_partition(partition, params.weak_count);
    if (stage_thresholds.size() != partition.stages())
        throw RangeError("thresholded_cascade_cost: thresholds misaligned with partition");
    if (profile.negatives_prefix.empty())
        throw NoNegatives("thresholded_cascade_cost: no negatives");

    const double T = static_cast<double>(params.weak_count);
    const double c = params.check_cost;
    const std::size_t S = partition.stages();
    const double n = static_cast<double>(profile.negatives_prefix.size());
    if (S == 0) return T + c;

    std::vector<char> alive(profile.negatives_prefix.size(), 1);
    double cost = 0.0;
    std::size_t survivors = profile.negatives_prefix.size();
    for (std::size_t i = 0; i < S; ++i) {
        const std::size_t r = partition.points[i];
        std::size_t rejected = 0;
        for (std::size_t k = 0; k < profile.negatives_prefix.size(); ++k) {
            if (alive[k] && profile.negatives_prefix[k][r] <= stage_thresholds[i]) {
                alive[k] = 0;
                ++rejected;
            }
        }
        survivors -= rejected;
        cost += static_cast<double>(rejected) / n *
                (static_cast<double>(r) + static_cast<double>(i + 1) * c);
    }
    cost += static_cast<double>(survivors) / n * (T + static_cast<double>(S + 1) * c);
    return cost;
}

} // namespace icascade
