#include "icascade/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "icascade/errors.hpp"

namespace icascade {

namespace {

constexpr double kWeightFloor = 1e-12;

struct StumpCandidate {
    double error = std::numeric_limits<double>::infinity();
    WeakHypothesis hypothesis;
};

// Exhaustive scan over (feature, midpoint, polarity). Candidates are
// midpoints between adjacent distinct sorted values, so no sample sits
// exactly on a split. Iteration order (feature ascending, split ascending,
// polarity +1 first) plus strict improvement implements the tie-break rule.
StumpCandidate best_stump(const LabeledDataset& data,
                          const std::vector<std::vector<std::size_t>>& sorted_by_feature,
                          const std::vector<double>& sample_weights) {
    const std::size_t dim = data.dimensionality();
    double total_pos = 0.0;
    double total_neg = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.labels[i] > 0 ? total_pos : total_neg) += sample_weights[i];
    }

    StumpCandidate best;
    for (std::size_t f = 0; f < dim; ++f) {
        const auto& order = sorted_by_feature[f];
        double pos_left = 0.0;
        double neg_left = 0.0;
        std::size_t i = 0;
        while (i < order.size()) {
            const double value = data.features[order[i]][f];
            // absorb the whole group of equal values into the left side
            while (i < order.size() && data.features[order[i]][f] == value) {
                const std::size_t s = order[i];
                (data.labels[s] > 0 ? pos_left : neg_left) += sample_weights[s];
                ++i;
            }
            if (i == order.size()) break;
            const double split = value + 0.5 * (data.features[order[i]][f] - value);

            // polarity +1: right side (x >= split) votes +1
            const double err_plus = pos_left + (total_neg - neg_left);
            if (err_plus < best.error) {
                best.error = err_plus;
                best.hypothesis = WeakHypothesis{f, split, +1};
            }
            // polarity -1: left side (x < split) votes +1
            const double err_minus = neg_left + (total_pos - pos_left);
            if (err_minus < best.error) {
                best.error = err_minus;
                best.hypothesis = WeakHypothesis{f, split, -1};
            }
        }
    }
    return best;
}

} // namespace

StrongClassifier train_adaboost(const LabeledDataset& data, std::size_t rounds,
                                std::uint64_t seed) {
    (void)seed; // the exhaustive scan is deterministic on its own
    if (rounds < 1) throw BadParams("train_adaboost: rounds must be >= 1");
    if (data.size() == 0) throw EmptyClass("train_adaboost: empty dataset");
    if (data.count_label(+1) == 0) throw EmptyClass("train_adaboost: no positive samples");
    if (data.count_label(-1) == 0) throw EmptyClass("train_adaboost: no negative samples");
    const std::size_t dim = data.dimensionality();
    for (const auto& x : data.features) {
        if (x.size() != dim)
            throw DimensionMismatch("train_adaboost: ragged feature vectors");
    }

    bool any_split = false;
    for (std::size_t f = 0; f < dim && !any_split; ++f) {
        for (std::size_t i = 1; i < data.size(); ++i) {
            if (data.features[i][f] != data.features[0][f]) {
                any_split = true;
                break;
            }
        }
    }
    if (!any_split) throw DegenerateData("train_adaboost: all feature columns constant");

    // per-feature sample order, computed once; ties broken by sample index
    std::vector<std::vector<std::size_t>> sorted_by_feature(dim);
    for (std::size_t f = 0; f < dim; ++f) {
        auto& order = sorted_by_feature[f];
        order.resize(data.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return data.features[a][f] < data.features[b][f];
        });
    }

    std::vector<double> sample_weights(data.size(), 1.0 / static_cast<double>(data.size()));
    StrongClassifier classifier;
    classifier.dimensionality = dim;
    classifier.global_threshold = 0.0;

    for (std::size_t round = 0; round < rounds; ++round) {
        const StumpCandidate stump = best_stump(data, sorted_by_feature, sample_weights);
        if (!(stump.error < 0.5)) break; // nothing better than chance left

        const double err = std::clamp(stump.error, kWeightFloor, 1.0 - kWeightFloor);
        const double alpha = 0.5 * std::log((1.0 - err) / err);
        classifier.members.push_back({alpha, stump.hypothesis});
        if (stump.error <= 0.0) break; // perfect round, Eq-style early stop

        double sum = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const int h = stump.hypothesis.predict(data.features[i]);
            sample_weights[i] *= std::exp(-alpha * data.labels[i] * h);
            sample_weights[i] = std::max(sample_weights[i], kWeightFloor);
            sum += sample_weights[i];
        }
        for (double& w : sample_weights) w /= sum;
    }

    if (classifier.members.empty())
        throw DegenerateData("train_adaboost: no usable weak hypothesis found");
    return canonicalize(classifier);
}

StrongClassifier canonicalize(const StrongClassifier& classifier) {
    double sum = 0.0;
    for (const auto& m : classifier.members) {
        if (!(m.weight > 0.0))
            throw NonPositiveWeight("canonicalize: member weight must be > 0");
        sum += m.weight;
    }
    StrongClassifier out = classifier;
    std::stable_sort(out.members.begin(), out.members.end(),
                     [](const StrongClassifier::Member& a, const StrongClassifier::Member& b) {
                         return a.weight > b.weight;
                     });
    for (auto& m : out.members) m.weight /= sum;
    out.global_threshold /= sum;
    return out;
}

double strong_score(const StrongClassifier& classifier, const std::vector<double>& x) {
    if (x.size() != classifier.dimensionality)
        throw DimensionMismatch("strong_score: input dimensionality mismatch");
    double score = 0.0;
    for (const auto& m : classifier.members) score += m.weight * m.hypothesis.predict(x);
    return score;
}

int strong_decide(const StrongClassifier& classifier, const std::vector<double>& x) {
    return strong_score(classifier, x) > classifier.global_threshold ? 1 : -1;
}

double training_error(const StrongClassifier& classifier, const LabeledDataset& data) {
    if (data.size() == 0) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (strong_decide(classifier, data.features[i]) != data.labels[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(data.size());
}

} // namespace icascade
