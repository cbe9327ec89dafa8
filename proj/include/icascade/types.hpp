#ifndef ICASCADE_TYPES_HPP
#define ICASCADE_TYPES_HPP

#include <cstddef>
#include <vector>

namespace icascade {

/// Axis-aligned decision stump with output in {+1, -1}.
/// Votes +1 iff polarity * feature >= polarity * split_value.
struct WeakHypothesis {
    std::size_t feature_index = 0;
    double split_value = 0.0;
    int polarity = 1; // +1 or -1

    int vote(double feature_value) const {
        return polarity * feature_value >= polarity * split_value ? 1 : -1;
    }

    int predict(const std::vector<double>& x) const { return vote(x[feature_index]); }
};

/// Weighted vote over an ordered list of weak hypotheses, thresholded
/// at global_threshold. After canonicalization the weights are sorted
/// non-increasing and sum to 1.
struct StrongClassifier {
    struct Member {
        double weight = 0.0;
        WeakHypothesis hypothesis;
    };

    std::vector<Member> members;
    double global_threshold = 0.0;
    std::size_t dimensionality = 0;

    std::size_t size() const { return members.size(); }
};

struct LabeledDataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels; // +1 or -1

    std::size_t size() const { return labels.size(); }
    std::size_t dimensionality() const { return features.empty() ? 0 : features.front().size(); }

    void add(std::vector<double> x, int label) {
        features.push_back(std::move(x));
        labels.push_back(label);
    }

    std::size_t count_label(int label) const {
        std::size_t n = 0;
        for (int l : labels)
            if (l == label) ++n;
        return n;
    }
};

} // namespace icascade

#endif
