#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "icascade/boosting.hpp"
#include "icascade/errors.hpp"
#include "icascade/profile.hpp"
#include "helpers.hpp"

using namespace icascade;

namespace {

// weights [0.4, 0.3, 0.2, 0.1], member i voting +1 iff x[i] >= 0
StrongClassifier weighted_classifier() {
    StrongClassifier c;
    c.dimensionality = 4;
    c.global_threshold = 0.0;
    const double w[4] = {0.4, 0.3, 0.2, 0.1};
    for (std::size_t i = 0; i < 4; ++i) {
        c.members.push_back({w[i], WeakHypothesis{i, 0.0, +1}});
    }
    return c;
}

} // namespace

TEST_CASE("tail weights are suffix sums") {
    LabeledDataset data;
    data.add({1.0, 1.0, 1.0, 1.0}, -1);
    const ScoreProfile p = build_profile(weighted_classifier(), data);
    REQUIRE(p.tail_weight.size() == 5);
    CHECK(p.tail_weight[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.tail_weight[1] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p.tail_weight[2] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(p.tail_weight[3] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(p.tail_weight[4] == 0.0);
}

TEST_CASE("prefix matrix equals hand computation and P_T recovers the score") {
    const StrongClassifier c = weighted_classifier();
    LabeledDataset data;
    data.add({1.0, 1.0, 1.0, 1.0}, -1);   // votes + + + +
    data.add({-1.0, 1.0, -1.0, 1.0}, -1); // votes - + - +
    data.add({1.0, -1.0, -1.0, -1.0}, +1); // votes + - - -
    const ScoreProfile p = build_profile(c, data);

    const double expect_s1[5] = {0.0, 0.4, 0.7, 0.9, 1.0};
    const double expect_s2[5] = {0.0, -0.4, -0.1, -0.3, -0.2};
    const double expect_s3[5] = {0.0, 0.4, 0.1, -0.1, -0.2};
    REQUIRE(p.negatives_prefix.size() == 2);
    REQUIRE(p.positives_prefix.size() == 1);
    for (std::size_t r = 0; r <= 4; ++r) {
        CHECK(p.negatives_prefix[0][r] == doctest::Approx(expect_s1[r]).epsilon(1e-12));
        CHECK(p.negatives_prefix[1][r] == doctest::Approx(expect_s2[r]).epsilon(1e-12));
        CHECK(p.positives_prefix[0][r] == doctest::Approx(expect_s3[r]).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& prefix = i < 2 ? p.negatives_prefix[i] : p.positives_prefix[0];
        CHECK(std::abs(prefix[4] - strong_score(c, data.features[i])) <= 1e-12);
    }
}

TEST_CASE("rejection rate counting") {
    // 10 negatives with first-rejection indices 1,2,2,3,5,5,5,6 and two
    // never-rejected ones; T = 6, t = 5/6
    const std::vector<std::size_t> indices = {1, 2, 2, 3, 5, 5, 5, 6, 0, 0};
    const LabeledDataset data = testfix::step_dataset(6, indices);
    const StrongClassifier c = testfix::step_classifier(6);
    const ScoreProfile p = build_profile(c, data);
    const double t = c.global_threshold;

    SUBCASE("below-minimum threshold rejects nothing") {
        CHECK(rejection_rate(p, 3, -2.0) == 0.0);
    }
    SUBCASE("hand counts") {
        CHECK(rejection_rate(p, 1, t) == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(rejection_rate(p, 2, t) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(rejection_rate(p, 3, t) == doctest::Approx(0.4).epsilon(1e-15));
        CHECK(rejection_rate(p, 4, t) == doctest::Approx(0.4).epsilon(1e-15));
        CHECK(rejection_rate(p, 5, t) == doctest::Approx(0.7).epsilon(1e-15));
        CHECK(rejection_rate(p, 6, t) == doctest::Approx(0.8).epsilon(1e-15));
    }
    SUBCASE("range and class guards") {
        CHECK_THROWS_AS(rejection_rate(p, 7, t), BadRange);
        LabeledDataset pos_only;
        pos_only.add(testfix::vote_vector(6, 0), +1);
        const ScoreProfile q = build_profile(c, pos_only);
        CHECK_THROWS_AS(rejection_rate(q, 1, t), NoNegatives);
    }
}

TEST_CASE("p(T) = 1 when the strong classifier rejects every negative") {
    const LabeledDataset data = testfix::step_dataset(6, {1, 2, 3, 4, 5, 6});
    const StrongClassifier c = testfix::step_classifier(6);
    const ScoreProfile p = build_profile(c, data);
    CHECK(rejection_rate(p, 6, c.global_threshold) == 1.0);
}

TEST_CASE("conditional rejection rate") {
    const std::vector<std::size_t> indices = {1, 2, 2, 3, 5, 5, 5, 6, 0, 0};
    const LabeledDataset data = testfix::step_dataset(6, indices);
    const StrongClassifier c = testfix::step_classifier(6);
    const ScoreProfile p = build_profile(c, data);
    const double t = c.global_threshold;

    SUBCASE("adjacent step with no new rejection is 0") {
        CHECK(conditional_rejection_rate(p, 4, 3, t) == 0.0);
    }
    SUBCASE("hand ratio: survivors of r=2 are 7, of which 4 fall by r=5") {
        CHECK(conditional_rejection_rate(p, 5, 2, t) ==
              doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    }
    SUBCASE("separable fixture reaches 1 at r = T") {
        const LabeledDataset sep = testfix::step_dataset(6, {1, 3, 6, 6});
        const ScoreProfile q = build_profile(c, sep);
        CHECK(conditional_rejection_rate(q, 6, 3, t) == 1.0);
    }
    SUBCASE("empty survivor set returns 1") {
        const LabeledDataset all_early = testfix::step_dataset(6, {1, 1, 2});
        const ScoreProfile q = build_profile(c, all_early);
        CHECK(conditional_rejection_rate(q, 5, 3, t) == 1.0);
    }
    SUBCASE("bad range throws") {
        CHECK_THROWS_AS(conditional_rejection_rate(p, 3, 3, t), BadRange);
        CHECK_THROWS_AS(conditional_rejection_rate(p, 2, 5, t), BadRange);
    }
}

TEST_CASE("saturation point") {
    const StrongClassifier c200 = testfix::step_classifier(200);
    SUBCASE("epsilon = 1 is vacuous") {
        const LabeledDataset data = testfix::step_dataset(200, {100, 150});
        const ScoreProfile p = build_profile(c200, data);
        CHECK(saturation_point(p, c200.global_threshold, 1.0) == 1);
    }
    SUBCASE("closed-form p(r) = min(0.012 r, 1) saturates at 83") {
        const ScoreProfile p = build_profile(c200, testfix::closed_form_dataset());
        CHECK(saturation_point(p, c200.global_threshold, 0.01) == 83);
    }
    SUBCASE("perfect rejection guarantees existence at epsilon = 0") {
        const StrongClassifier c = testfix::step_classifier(6);
        const LabeledDataset data = testfix::step_dataset(6, {2, 4, 4, 5});
        const ScoreProfile p = build_profile(c, data);
        const std::size_t r = saturation_point(p, c.global_threshold, 0.0);
        CHECK(r == 5);
    }
    SUBCASE("no saturation throws") {
        const StrongClassifier c = testfix::step_classifier(6);
        const LabeledDataset data = testfix::step_dataset(6, {2, 0, 0, 0});
        const ScoreProfile p = build_profile(c, data);
        CHECK_THROWS_AS(saturation_point(p, c.global_threshold, 0.01), NoSaturation);
    }
}

TEST_CASE("bound tightening, monotone p(r), and the stacking identity") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const std::size_t T = 30;
        const StrongClassifier c = testfix::step_classifier(T);
        const LabeledDataset data = testfix::random_step_dataset(T, 80, seed);
        const ScoreProfile p = build_profile(c, data);
        const double t = c.global_threshold;

        for (const auto& prefix : p.negatives_prefix) {
            for (std::size_t r = 0; r < T; ++r) {
                CHECK(p.upper_bound(prefix, r + 1) <= p.upper_bound(prefix, r) + 1e-12);
            }
        }
        double prev = rejection_rate(p, 0, t);
        CHECK(prev == 0.0);
        for (std::size_t r = 1; r <= T; ++r) {
            const double cur = rejection_rate(p, r, t);
            CHECK(cur >= prev);
            prev = cur;
        }
        std::uniform_int_distribution<std::size_t> pick(1, T - 1);
        for (int k = 0; k < 100; ++k) {
            std::size_t r_prev = pick(rng);
            std::size_t r = r_prev + 1 + rng() % (T - r_prev);
            const double lhs = 1.0 - rejection_rate(p, r, t);
            const double rhs = (1.0 - rejection_rate(p, r_prev, t)) *
                               (1.0 - conditional_rejection_rate(p, r, r_prev, t));
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
}
