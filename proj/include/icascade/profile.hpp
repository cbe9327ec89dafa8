#ifndef ICASCADE_PROFILE_HPP
#define ICASCADE_PROFILE_HPP

#include "icascade/types.hpp"

namespace icascade {

/// Per-sample cumulative prefix scores P_r(x) for r = 0..T, split by class,
/// plus the tail weights M_r = sum_{i>r} alpha_i. P_r(x) + M_r is the
/// tightest upper bound on the full score knowable after r members, and it
/// is non-increasing in r, so every rejection query reduces to comparing
/// that bound against a threshold.
struct ScoreProfile {
    std::vector<std::vector<double>> negatives_prefix; // N_neg x (T+1)
    std::vector<std::vector<double>> positives_prefix; // N_pos x (T+1)
    std::vector<double> tail_weight;                   // M_0..M_T
    std::size_t weak_count = 0;                        // T
    double source_threshold = 0.0;

    double upper_bound(const std::vector<double>& prefix, std::size_t r) const {
        return prefix[r] + tail_weight[r];
    }
};

ScoreProfile build_profile(const StrongClassifier& classifier, const LabeledDataset& data);

/// p(r): fraction of negatives with P_r + M_r <= t. r in [0, T].
double rejection_rate(const ScoreProfile& profile, std::size_t r, double t);

/// p(r | r_prev): among negatives surviving r_prev (P + M > t there),
/// the fraction rejected at r. Returns 1 when no negative survives r_prev;
/// the value is then multiplied by survivor mass 0 downstream.
double conditional_rejection_rate(const ScoreProfile& profile, std::size_t r,
                                  std::size_t r_prev, double t);

/// Smallest r >= 1 with 1 - p(r) <= epsilon. Throws NoSaturation when even
/// p(T) misses the target.
std::size_t saturation_point(const ScoreProfile& profile, double t, double epsilon);

} // namespace icascade

#endif
