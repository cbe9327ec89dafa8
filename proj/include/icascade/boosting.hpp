#ifndef ICASCADE_BOOSTING_HPP
#define ICASCADE_BOOSTING_HPP

#include <cstdint>

#include "icascade/types.hpp"

namespace icascade {

/// Discrete AdaBoost over decision stumps. The best stump per round is
/// found by an exhaustive scan over (feature, midpoint between adjacent
/// sorted values, polarity). Stops early when a round reaches weighted
/// error 0 (after keeping that member). The result is canonicalized.
StrongClassifier train_adaboost(const LabeledDataset& data, std::size_t rounds,
                                std::uint64_t seed);

/// Stable-sorts members by descending weight and rescales weights and the
/// global threshold by 1/sum(weights). Decisions are unchanged.
StrongClassifier canonicalize(const StrongClassifier& classifier);

/// H(x) = sum_i alpha_i h_i(x).
double strong_score(const StrongClassifier& classifier, const std::vector<double>& x);

/// +1 iff strong_score(x) > global_threshold.
int strong_decide(const StrongClassifier& classifier, const std::vector<double>& x);

/// Fraction of samples misclassified by the thresholded strong classifier.
double training_error(const StrongClassifier& classifier, const LabeledDataset& data);

} // namespace icascade

#endif
