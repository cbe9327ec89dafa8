#include "icascade/runtime.hpp"

#include <algorithm>
#include <cmath>

#include "icascade/boosting.hpp"
#include "icascade/errors.hpp"
#include "icascade/profile.hpp"

namespace icascade {

void validate_model(const CascadeModel& model) {
    validate_partition(model.partition, model.classifier.size());
    if (model.thresholds.values.size() != model.partition.stages())
        throw RangeError("cascade model: thresholds misaligned with partition");
    if (!(model.check_cost > 0.0 && model.check_cost < 1.0))
        throw RangeError("cascade model: check cost must lie in (0, 1)");
}

ClassificationResult classify(const CascadeModel& model, const std::vector<double>& x) {
    if (x.size() != model.classifier.dimensionality)
        throw DimensionMismatch("classify: input dimensionality mismatch");

    const std::size_t T = model.classifier.size();
    const std::size_t S = model.partition.stages();
    ClassificationResult result;
    double acc = 0.0;
    std::size_t evaluated = 0;

    for (std::size_t i = 0; i < S; ++i) {
        const std::size_t r = model.partition.points[i];
        while (evaluated < r) {
            const auto& m = model.classifier.members[evaluated];
            acc += m.weight * m.hypothesis.predict(x);
            ++evaluated;
        }
        if (acc <= model.thresholds.values[i]) {
            result.label = -1;
            result.exit_stage = i + 1;
            result.weak_evals = r;
            result.checks = i + 1;
            result.cost = static_cast<double>(r) +
                          static_cast<double>(i + 1) * model.check_cost;
            return result;
        }
    }

    while (evaluated < T) {
        const auto& m = model.classifier.members[evaluated];
        acc += m.weight * m.hypothesis.predict(x);
        ++evaluated;
    }
    result.label = acc > model.thresholds.final_threshold ? 1 : -1;
    result.exit_stage = S + 1;
    result.weak_evals = T;
    result.checks = S + 1;
    result.cost = static_cast<double>(T) + static_cast<double>(S + 1) * model.check_cost;
    return result;
}

EvaluationReport batch_evaluate(const CascadeModel& model, const LabeledDataset& data) {
    validate_model(model);
    if (data.size() == 0) throw EmptyClass("batch_evaluate: empty dataset");

    const std::size_t S = model.partition.stages();
    EvaluationReport report;
    report.per_stage_rejections.assign(S, 0);

    double cost_sum = 0.0;
    double weak_sum = 0.0;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t detected = 0;
    std::size_t false_positives = 0;

    for (std::size_t i = 0; i < data.size(); ++i) {
        const ClassificationResult r = classify(model, data.features[i]);
        cost_sum += r.cost;
        weak_sum += static_cast<double>(r.weak_evals);
        if (r.exit_stage <= S) {
            ++report.per_stage_rejections[r.exit_stage - 1];
        } else {
            ++report.fall_through;
        }
        if (data.labels[i] > 0) {
            ++positives;
            if (r.label > 0) ++detected;
        } else {
            ++negatives;
            if (r.label > 0) ++false_positives;
        }
    }

    const double n = static_cast<double>(data.size());
    report.avg_cost = cost_sum / n;
    report.avg_weak_evals = weak_sum / n;
    report.no_positives = positives == 0;
    report.no_negatives = negatives == 0;
    report.detection_rate =
        positives == 0 ? 1.0 : static_cast<double>(detected) / static_cast<double>(positives);
    report.false_positive_rate =
        negatives == 0 ? 0.0
                       : static_cast<double>(false_positives) / static_cast<double>(negatives);

    if (negatives > 0) {
        const ScoreProfile profile = build_profile(model.classifier, data);
        const CostParams params{model.classifier.size(), model.check_cost,
                                model.thresholds.final_threshold};
        report.analytic_cost =
            thresholded_cascade_cost(profile, model.partition, model.thresholds.values, params);
    } else {
        report.analytic_cost = 0.0;
    }
    return report;
}

std::vector<std::pair<double, double>> roc_sweep(const CascadeModel& model,
                                                 const LabeledDataset& data,
                                                 std::size_t n_points) {
    validate_model(model);
    if (n_points < 2) throw BadParams("roc_sweep: n_points must be >= 2");

    std::size_t positives = 0;
    std::size_t negatives = 0;
    struct Outcome {
        bool survives = false;
        double score = 0.0;
        bool positive = false;
    };
    std::vector<Outcome> outcomes;
    outcomes.reserve(data.size());
    std::vector<double> scores;

    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& x = data.features[i];
        if (x.size() != model.classifier.dimensionality)
            throw DimensionMismatch("roc_sweep: sample dimensionality mismatch");
        double acc = 0.0;
        std::size_t evaluated = 0;
        bool survives = true;
        for (std::size_t s = 0; s < model.partition.stages() && survives; ++s) {
            const std::size_t r = model.partition.points[s];
            while (evaluated < r) {
                const auto& m = model.classifier.members[evaluated];
                acc += m.weight * m.hypothesis.predict(x);
                ++evaluated;
            }
            if (acc <= model.thresholds.values[s]) survives = false;
        }
        double score = 0.0;
        if (survives) {
            while (evaluated < model.classifier.size()) {
                const auto& m = model.classifier.members[evaluated];
                acc += m.weight * m.hypothesis.predict(x);
                ++evaluated;
            }
            score = acc;
            scores.push_back(score);
        }
        const bool positive = data.labels[i] > 0;
        (positive ? positives : negatives) += 1;
        outcomes.push_back({survives, score, positive});
    }

    std::sort(scores.begin(), scores.end());
    std::vector<double> sweep;
    if (scores.empty()) {
        sweep = {0.0};
    } else {
        sweep.push_back(scores.front() - 1.0); // everything surviving is accepted
        if (n_points >= 2) {
            const std::size_t inner = n_points - 1;
            for (std::size_t k = 0; k < inner; ++k) {
                const std::size_t idx =
                    inner == 1 ? scores.size() - 1 : k * (scores.size() - 1) / (inner - 1);
                sweep.push_back(scores[idx]);
            }
        }
        sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    }

    std::vector<std::pair<double, double>> curve;
    for (auto it = sweep.rbegin(); it != sweep.rend(); ++it) {
        const double tau = *it;
        std::size_t accepted_pos = 0;
        std::size_t accepted_neg = 0;
        for (const Outcome& o : outcomes) {
            if (o.survives && o.score > tau) {
                (o.positive ? accepted_pos : accepted_neg) += 1;
            }
        }
        const double dr = positives == 0
                              ? 0.0
                              : static_cast<double>(accepted_pos) / static_cast<double>(positives);
        const double fpr = negatives == 0
                               ? 0.0
                               : static_cast<double>(accepted_neg) / static_cast<double>(negatives);
        curve.emplace_back(fpr, dr);
    }
    return curve;
}

} // namespace icascade
