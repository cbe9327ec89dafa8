#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "icascade/boosting.hpp"
#include "icascade/dataset.hpp"
#include "icascade/errors.hpp"
#include "icascade/runtime.hpp"
#include "helpers.hpp"

using namespace icascade;

namespace {

CascadeModel step_model(std::size_t T, const std::vector<std::size_t>& points) {
    CascadeModel model;
    model.classifier = testfix::step_classifier(T);
    model.partition = Partition{points};
    LabeledDataset probe;
    probe.add(testfix::vote_vector(T, 0), -1);
    const ScoreProfile p = build_profile(model.classifier, probe);
    model.thresholds = bound_thresholds(p, model.partition);
    model.check_cost = 0.5;
    return model;
}

struct Boosted {
    LabeledDataset data;
    CascadeModel model;
};

Boosted boosted_model(const std::vector<std::size_t>& points) {
    Boosted b;
    b.data = generate_dataset(DatasetKind::gaussians, 300, 300, 3, 29, 2.2);
    b.model.classifier = train_adaboost(b.data, 50, 29);
    b.model.partition = Partition{points};
    const ScoreProfile p = build_profile(b.model.classifier, b.data);
    b.model.thresholds = bound_thresholds(p, b.model.partition);
    b.model.check_cost = 0.5;
    return b;
}

} // namespace

TEST_CASE("classification cost bookkeeping") {
    const CascadeModel model = step_model(20, {5, 12});

    SUBCASE("rejection at stage 1") {
        const ClassificationResult r = classify(model, testfix::vote_vector(20, 2));
        CHECK(r.label == -1);
        CHECK(r.exit_stage == 1);
        CHECK(r.weak_evals == 5);
        CHECK(r.checks == 1);
        CHECK(r.cost == doctest::Approx(5.5).epsilon(1e-15));
    }
    SUBCASE("rejection at stage 2") {
        const ClassificationResult r = classify(model, testfix::vote_vector(20, 9));
        CHECK(r.exit_stage == 2);
        CHECK(r.weak_evals == 12);
        CHECK(r.checks == 2);
        CHECK(r.cost == doctest::Approx(13.0).epsilon(1e-15));
    }
    SUBCASE("fall-through survivor") {
        const ClassificationResult r = classify(model, testfix::vote_vector(20, 0));
        CHECK(r.label == 1);
        CHECK(r.exit_stage == 3);
        CHECK(r.weak_evals == 20);
        CHECK(r.checks == 3);
        CHECK(r.cost == doctest::Approx(21.5).epsilon(1e-15));
    }
    SUBCASE("dimension guard") {
        CHECK_THROWS_AS(classify(model, {1.0, 1.0}), DimensionMismatch);
    }
}

TEST_CASE("incremental prefix evaluation matches the from-scratch score") {
    const Boosted b = boosted_model({7, 20, 35});
    CascadeModel open = b.model;
    // thresholds low enough that nothing is rejected: the fall-through
    // accumulator must equal Eq.-(1)-style evaluation for every input
    for (double& t : open.thresholds.values) t = -2.0;
    for (const auto& x : b.data.features) {
        const ClassificationResult r = classify(open, x);
        CHECK(r.exit_stage == 4);
        const double score = strong_score(b.model.classifier, x);
        const int expect = score > b.model.classifier.global_threshold ? 1 : -1;
        CHECK(r.label == expect);
    }
}

TEST_CASE("bound thresholds give zero disagreements with the strong classifier") {
    const Boosted b = boosted_model({6, 15, 30});
    std::size_t disagreements = 0;
    for (const auto& x : b.data.features) {
        if (classify(b.model, x).label != strong_decide(b.model.classifier, x))
            ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("batch evaluation") {
    const Boosted b = boosted_model({6, 15, 30});

    SUBCASE("per-stage tallies account for every sample") {
        const EvaluationReport rep = batch_evaluate(b.model, b.data);
        std::size_t total = rep.fall_through;
        for (std::size_t n : rep.per_stage_rejections) total += n;
        CHECK(total == b.data.size());
        CHECK(rep.avg_weak_evals <= static_cast<double>(b.model.classifier.size()));
    }
    SUBCASE("measured cost on the profiling negatives equals the analytic cost") {
        LabeledDataset negatives;
        for (std::size_t i = 0; i < b.data.size(); ++i) {
            if (b.data.labels[i] < 0) negatives.add(b.data.features[i], -1);
        }
        const EvaluationReport rep = batch_evaluate(b.model, negatives);
        CHECK(std::abs(rep.avg_cost - rep.analytic_cost) <=
              1e-12 * std::max(1.0, rep.analytic_cost));
    }
    SUBCASE("positives-only run flags the missing class") {
        LabeledDataset positives;
        for (std::size_t i = 0; i < b.data.size(); ++i) {
            if (b.data.labels[i] > 0) positives.add(b.data.features[i], +1);
        }
        const EvaluationReport rep = batch_evaluate(b.model, positives);
        CHECK(rep.no_negatives);
        CHECK(rep.false_positive_rate == 0.0);
        // bound thresholds: cascade detection equals the strong classifier's
        std::size_t strong_detected = 0;
        for (const auto& x : positives.features) {
            if (strong_decide(b.model.classifier, x) > 0) ++strong_detected;
        }
        CHECK(rep.detection_rate ==
              doctest::Approx(static_cast<double>(strong_detected) /
                              static_cast<double>(positives.size()))
                  .epsilon(1e-15));
    }
    SUBCASE("empty dataset throws") {
        CHECK_THROWS_AS(batch_evaluate(b.model, LabeledDataset{}), EmptyClass);
    }
}

TEST_CASE("adding a stage never increases weak evals for earlier rejections") {
    const std::size_t T = 30;
    const CascadeModel two = step_model(T, {8, 20});
    const CascadeModel three = step_model(T, {4, 8, 20});
    for (std::size_t j = 1; j <= T; ++j) {
        const auto x = testfix::vote_vector(T, j);
        const ClassificationResult r2 = classify(two, x);
        const ClassificationResult r3 = classify(three, x);
        if (r2.exit_stage <= 2) CHECK(r3.weak_evals <= r2.weak_evals);
    }
}

TEST_CASE("roc sweep") {
    const Boosted b = boosted_model({6, 15});

    SUBCASE("endpoints and monotone axes") {
        const auto curve = roc_sweep(b.model, b.data, 25);
        REQUIRE(curve.size() >= 2);
        // threshold descending: rates grow along the curve
        for (std::size_t i = 1; i < curve.size(); ++i) {
            CHECK(curve[i].first >= curve[i - 1].first - 1e-15);
            CHECK(curve[i].second >= curve[i - 1].second - 1e-15);
        }
        CHECK(curve.front().first == 0.0);
        CHECK(curve.front().second == 0.0);
        // the loosest threshold accepts every survivor
        CHECK(curve.back().second >= curve.front().second);
    }
    SUBCASE("tracks the strong classifier's ROC closely") {
        const auto cascade_curve = roc_sweep(b.model, b.data, 40);
        // strong-classifier ROC at the same thresholds, brute force
        std::vector<double> scores;
        for (const auto& x : b.data.features)
            scores.push_back(strong_score(b.model.classifier, x));
        for (const auto& [fpr, dr] : cascade_curve) {
            // every cascade point must be dominated-or-matched by some
            // strong-classifier operating point within 0.02 detection
            double best_dr = 0.0;
            std::vector<double> taus = scores;
            taus.push_back(-2.0);
            for (double tau : taus) {
                std::size_t fp = 0, tp = 0, np = 0, nn = 0;
                for (std::size_t i = 0; i < b.data.size(); ++i) {
                    const bool accept = scores[i] > tau;
                    if (b.data.labels[i] > 0) {
                        ++np;
                        if (accept) ++tp;
                    } else {
                        ++nn;
                        if (accept) ++fp;
                    }
                }
                const double s_fpr = static_cast<double>(fp) / static_cast<double>(nn);
                const double s_dr = static_cast<double>(tp) / static_cast<double>(np);
                if (s_fpr <= fpr + 1e-12) best_dr = std::max(best_dr, s_dr);
            }
            CHECK(dr <= best_dr + 0.02);
            CHECK(dr >= 0.0);
        }
    }
    SUBCASE("needs at least two points") {
        CHECK_THROWS_AS(roc_sweep(b.model, b.data, 1), BadParams);
    }
}

TEST_CASE("model validation") {
    CascadeModel model = step_model(20, {5, 12});
    model.thresholds.values.pop_back();
    CHECK_THROWS_AS(validate_model(model), RangeError);
    CascadeModel bad_c = step_model(20, {5, 12});
    bad_c.check_cost = 1.5;
    CHECK_THROWS_AS(validate_model(bad_c), RangeError);
}
