#ifndef ICASCADE_TEST_HELPERS_HPP
#define ICASCADE_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "icascade/boosting.hpp"
#include "icascade/profile.hpp"
#include "icascade/types.hpp"

// Fixture machinery shared across the test binaries.
//
// The "step" classifier has T members with uniform weight 1/T, member i
// voting on feature i (vote +1 iff x[i] >= 0). A sample whose features are
// all +1 except a single -1 at position j-1 has
//   P_r + M_r = 1        for r <  j
//   P_r + M_r = 1 - 2/T  for r >= j,
// so with global threshold t = 1 - 1/T (midway between the two levels,
// leaving a 1/T margin on both sides of every comparison) its first
// rejection index is exactly j. That gives closed-form control over p(r)
// in every fixture.

namespace testfix {

inline icascade::StrongClassifier step_classifier(std::size_t T) {
    icascade::StrongClassifier c;
    c.dimensionality = T;
    c.global_threshold = 1.0 - 1.0 / static_cast<double>(T);
    for (std::size_t i = 0; i < T; ++i) {
        c.members.push_back({1.0 / static_cast<double>(T),
                             icascade::WeakHypothesis{i, 0.0, +1}});
    }
    return c;
}

// reject_at = 0 means "never rejected" (all votes +1).
inline std::vector<double> vote_vector(std::size_t T, std::size_t reject_at) {
    std::vector<double> x(T, 1.0);
    if (reject_at >= 1 && reject_at <= T) x[reject_at - 1] = -1.0;
    return x;
}

// Negatives with the given first-rejection indices plus `n_pos` positives
// that are never rejected by the bound test.
inline icascade::LabeledDataset step_dataset(std::size_t T,
                                             const std::vector<std::size_t>& reject_indices,
                                             std::size_t n_pos = 1) {
    icascade::LabeledDataset data;
    for (std::size_t j : reject_indices) data.add(vote_vector(T, j), -1);
    for (std::size_t i = 0; i < n_pos; ++i) data.add(vote_vector(T, 0), +1);
    return data;
}

// Profile realizing p(r) = min(0.012 r, 1) over 1000 negatives at T = 200:
// 12 negatives first rejected at each r = 1..83 and 4 at r = 84.
inline icascade::LabeledDataset closed_form_dataset(std::size_t n_pos = 1) {
    std::vector<std::size_t> indices;
    for (std::size_t r = 1; r <= 83; ++r) {
        for (int k = 0; k < 12; ++k) indices.push_back(r);
    }
    for (int k = 0; k < 4; ++k) indices.push_back(84);
    return step_dataset(200, indices, n_pos);
}

// Random step-profile dataset: first-rejection indices drawn uniformly
// from [1, T], with a slice of never-rejected negatives.
inline icascade::LabeledDataset random_step_dataset(std::size_t T, std::size_t n_neg,
                                                    std::uint64_t seed,
                                                    double never_fraction = 0.1,
                                                    std::size_t n_pos = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(1, T);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < n_neg; ++i) {
        indices.push_back(unit(rng) < never_fraction ? 0 : pick(rng));
    }
    return step_dataset(T, indices, n_pos);
}

// Concave saturating rejection curve p(r) = min(r / r_sat, 1)^gamma with
// gamma in [0.3, 0.6] and r_sat in [0.2 T, 0.4 T], the shape regime the
// paper's smoothness assumptions describe. Counts per first-rejection
// index are the rounded increments of the cumulative curve. Alternating
// minimization is only guaranteed optimal under such shapes; on arbitrary
// step profiles it can stop one lattice step short of the optimum (see
// the gap-bound test in test_optimizer.cpp).
inline icascade::LabeledDataset concave_step_dataset(std::size_t T, std::size_t n_neg,
                                                     std::uint64_t seed,
                                                     std::size_t n_pos = 1) {
    std::mt19937_64 rng(seed * 7919 + 13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double gamma = 0.3 + 0.3 * unit(rng);
    const double r_sat = (0.2 + 0.2 * unit(rng)) * static_cast<double>(T);
    std::vector<std::size_t> indices;
    std::size_t assigned = 0;
    for (std::size_t r = 1; r <= T; ++r) {
        const double cum = std::pow(std::min(1.0, static_cast<double>(r) / r_sat), gamma);
        const std::size_t want =
            static_cast<std::size_t>(cum * static_cast<double>(n_neg) + 0.5);
        for (; assigned < want; ++assigned) indices.push_back(r);
    }
    while (indices.size() < n_neg) indices.push_back(0);
    return step_dataset(T, indices, n_pos);
}

} // namespace testfix

#endif
