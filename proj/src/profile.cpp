#include "icascade/profile.hpp"

#include <cassert>
#include <cmath>

#include "icascade/boosting.hpp"
#include "icascade/errors.hpp"

namespace icascade {

ScoreProfile build_profile(const StrongClassifier& classifier, const LabeledDataset& data) {
    if (data.size() == 0) throw EmptyClass("build_profile: empty dataset");
    const std::size_t T = classifier.size();

    ScoreProfile profile;
    profile.weak_count = T;
    profile.source_threshold = classifier.global_threshold;

    // M_r as exact suffix sums of the (canonical) weights
    profile.tail_weight.assign(T + 1, 0.0);
    for (std::size_t r = T; r-- > 0;) {
        profile.tail_weight[r] = profile.tail_weight[r + 1] + classifier.members[r].weight;
    }

    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& x = data.features[i];
        if (x.size() != classifier.dimensionality)
            throw DimensionMismatch("build_profile: sample dimensionality mismatch");
        std::vector<double> prefix(T + 1, 0.0);
        double acc = 0.0;
        for (std::size_t r = 0; r < T; ++r) {
            const auto& m = classifier.members[r];
            acc += m.weight * m.hypothesis.predict(x);
            prefix[r + 1] = acc;
        }
        auto& bucket = data.labels[i] > 0 ? profile.positives_prefix : profile.negatives_prefix;
        bucket.push_back(std::move(prefix));
    }
    return profile;
}

double rejection_rate(const ScoreProfile& profile, std::size_t r, double t) {
    if (r > profile.weak_count) throw BadRange("rejection_rate: r out of range");
    if (profile.negatives_prefix.empty()) throw NoNegatives("rejection_rate: no negatives");
    std::size_t rejected = 0;
    for (const auto& prefix : profile.negatives_prefix) {
        if (profile.upper_bound(prefix, r) <= t) ++rejected;
    }
    return static_cast<double>(rejected) / static_cast<double>(profile.negatives_prefix.size());
}

double conditional_rejection_rate(const ScoreProfile& profile, std::size_t r,
                                  std::size_t r_prev, double t) {
    if (r_prev >= r || r > profile.weak_count)
        throw BadRange("conditional_rejection_rate: need r_prev < r <= T");
    if (profile.negatives_prefix.empty())
        throw NoNegatives("conditional_rejection_rate: no negatives");
    std::size_t survivors = 0;
    std::size_t rejected = 0;
    for (const auto& prefix : profile.negatives_prefix) {
        if (profile.upper_bound(prefix, r_prev) > t) {
            ++survivors;
            if (profile.upper_bound(prefix, r) <= t) ++rejected;
        }
    }
    if (survivors == 0) return 1.0; // inert: downstream mass is zero
    return static_cast<double>(rejected) / static_cast<double>(survivors);
}

std::size_t saturation_point(const ScoreProfile& profile, double t, double epsilon) {
    if (!(epsilon >= 0.0)) throw BadParams("saturation_point: epsilon must be >= 0");
    for (std::size_t r = 1; r <= profile.weak_count; ++r) {
        if (1.0 - rejection_rate(profile, r, t) <= epsilon) return r;
    }
    throw NoSaturation("saturation_point: p(T) below 1 - epsilon");
}

} // namespace icascade
