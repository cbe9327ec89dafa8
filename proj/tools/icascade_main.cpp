#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "icascade/boosting.hpp"
#include "icascade/dataset.hpp"
#include "icascade/errors.hpp"
#include "icascade/optimizer.hpp"
#include "icascade/profile.hpp"
#include "icascade/runtime.hpp"
#include "icascade/serialize.hpp"
#include "icascade/thresholds.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace icascade;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitIo = 5;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open for writing: " + path);
    file << text;
    if (!file) throw std::ios_base::failure("write failed: " + path);
}

std::string csv_number(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

void check_threads_env() {
    if (const char* raw = std::getenv("ICASCADE_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(raw, &end, 10);
        if (end == raw || *end != '\0' || n < 1)
            throw CLI::ValidationError("ICASCADE_THREADS must be a positive integer");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"iCascade: turn an AdaBoost strong classifier into a cost-minimal cascade"};
    app.footer("Exit codes: 0 ok, 2 usage, 3 data error, 4 numeric precondition, 5 I/O.\n"
               "ICASCADE_THREADS caps internal parallelism.");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic labeled dataset (CSV)");
    std::string gen_kind = "gaussians";
    std::size_t gen_pos = 1000, gen_neg = 1000, gen_dim = 2;
    std::uint64_t gen_seed = 0;
    double gen_separation = 4.0;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "gaussians | rings | xor_soft")->capture_default_str();
    gen->add_option("--n-pos", gen_pos, "positive sample count")->capture_default_str();
    gen->add_option("--n-neg", gen_neg, "negative sample count")->capture_default_str();
    gen->add_option("--dim", gen_dim, "feature dimensionality (>= 2)")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--separation", gen_separation, "class separation scale")
        ->capture_default_str();
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // train
    auto* train = app.add_subcommand("train", "Train an AdaBoost strong classifier");
    std::string train_data, train_out;
    std::size_t train_rounds = 200;
    std::uint64_t train_seed = 0;
    double train_threshold = 0.0, train_cost_c = 0.5;
    train->add_option("--data", train_data, "training CSV")->required();
    train->add_option("--rounds", train_rounds, "boosting rounds")->capture_default_str();
    train->add_option("--seed", train_seed, "RNG seed")->capture_default_str();
    train->add_option("--threshold", train_threshold,
                      "global decision threshold (normalized score units)")
        ->capture_default_str();
    train->add_option("--cost-c", train_cost_c, "inequality-check cost, in (0,1)")
        ->capture_default_str();
    train->add_option("--out", train_out, "output model envelope")->required();

    // partition
    auto* part = app.add_subcommand("partition", "Search optimal partition points");
    std::string part_model, part_data, part_mode = "joint", part_out, part_table, part_trace;
    std::size_t part_stages = 8;
    double part_mu = 0.0, part_eps = 0.0, part_cost_c = -1.0;
    bool part_heuristic = false;
    part->add_option("--model", part_model, "model envelope from `train`")->required();
    part->add_option("--data", part_data, "profiling CSV")->required();
    part->add_option("--mode", part_mode, "one | local | joint")->capture_default_str();
    part->add_option("--stages", part_stages, "maximum stage count")->capture_default_str();
    part->add_option("--cost-c", part_cost_c, "override the envelope's check cost");
    part->add_option("--mu", part_mu, "two-stage alternating stop gap")->capture_default_str();
    part->add_option("--eps", part_eps, "multi-stage alternating stop gap")->capture_default_str();
    part->add_flag("--heuristic", part_heuristic,
                   "enable early-stop scans and lower-bound shortcuts");
    part->add_option("--out", part_out, "output cascade envelope")->required();
    part->add_option("--table", part_table, "cost-vs-stage-count CSV");
    part->add_option("--trace", part_trace, "alternating-update trace CSV");

    // thresholds
    auto* thr = app.add_subcommand("thresholds", "Set per-stage thresholds");
    std::string thr_cascade, thr_data, thr_mode = "learn", thr_out, thr_trace;
    double thr_target = 0.98, thr_step = 0.01;
    std::size_t thr_max_iter = 100000;
    thr->add_option("--cascade", thr_cascade, "cascade envelope from `partition`")->required();
    thr->add_option("--data", thr_data, "profiling CSV")->required();
    thr->add_option("--mode", thr_mode, "bound | exact | learn")->capture_default_str();
    thr->add_option("--target-d", thr_target, "target detection rate D_o")->capture_default_str();
    thr->add_option("--step", thr_step, "threshold increment per move")->capture_default_str();
    thr->add_option("--max-iterations", thr_max_iter, "learning iteration cap")
        ->capture_default_str();
    thr->add_option("--out", thr_out, "output cascade envelope")->required();
    thr->add_option("--trace", thr_trace, "learning trace CSV");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a cascade on a dataset");
    std::string eval_cascade, eval_data, eval_report, eval_model;
    eval->add_option("--cascade", eval_cascade, "cascade envelope")->required();
    eval->add_option("--data", eval_data, "evaluation CSV")->required();
    eval->add_option("--report", eval_report, "output report JSON")->required();
    eval->add_option("--model", eval_model,
                     "optional model envelope; eval refuses a digest mismatch");

    // roc
    auto* roc = app.add_subcommand("roc", "Sweep the fall-through threshold into an ROC curve");
    std::string roc_cascade, roc_data, roc_out;
    std::size_t roc_points = 50;
    roc->add_option("--cascade", roc_cascade, "cascade envelope")->required();
    roc->add_option("--data", roc_data, "evaluation CSV")->required();
    roc->add_option("--points", roc_points, "number of sweep points")->capture_default_str();
    roc->add_option("--out", roc_out, "output ROC CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    check_threads_env();
    Timer timer;

    if (gen->parsed()) {
        const LabeledDataset data = generate_dataset(dataset_kind_from_string(gen_kind), gen_pos,
                                                     gen_neg, gen_dim, gen_seed, gen_separation);
        save_csv(gen_out, data);
        std::cout << "wrote " << data.size() << " samples to " << gen_out << "\n";
        return kExitOk;
    }

    if (train->parsed()) {
        const LabeledDataset data = load_csv(train_data);
        StrongClassifier classifier = train_adaboost(data, train_rounds, train_seed);
        classifier.global_threshold = train_threshold;

        ModelEnvelope envelope;
        envelope.classifier = classifier;
        envelope.cost_c = train_cost_c;
        envelope.provenance.seed = train_seed;
        envelope.provenance.dataset_digest = digest_file(train_data);
        save_envelope(train_out, envelope);
        std::cout << "trained " << classifier.size() << " members, training error "
                  << training_error(classifier, data) << ", wrote " << train_out << " ("
                  << timer.seconds() << " s)\n";
        return kExitOk;
    }

    if (part->parsed()) {
        ModelEnvelope envelope = load_envelope(part_model);
        if (part_cost_c > 0.0) envelope.cost_c = part_cost_c;
        const LabeledDataset data = load_csv(part_data);
        const ScoreProfile profile = build_profile(envelope.classifier, data);
        const CostParams params{envelope.classifier.size(), envelope.cost_c,
                                envelope.classifier.global_threshold};
        OptimizerConfig config;
        config.max_stages = part_stages;
        config.mu = part_mu;
        config.eps = part_eps;
        config.exhaustive = !part_heuristic;

        Partition chosen;
        double cost = 0.0;
        std::string table_csv = "stages,cost\n";
        std::string trace_csv = "stage_count,stage,old_r,new_r,objective\n";
        if (part_mode == "one") {
            config.mode = SearchMode::one_stage;
            const OneStageResult res = optimize_one_stage(profile, params, config);
            chosen.points = {res.point};
            cost = res.cost;
            table_csv += "1," + csv_number(res.cost) + "\n";
        } else if (part_mode == "local") {
            config.mode = SearchMode::local;
            const ChainResult res = optimize_local_chain(profile, params, config);
            chosen = res.partition;
            cost = res.cost;
            for (std::size_t i = 0; i < res.stage_costs.size(); ++i)
                table_csv += std::to_string(i + 1) + "," + csv_number(res.stage_costs[i]) + "\n";
        } else if (part_mode == "joint") {
            config.mode = SearchMode::joint;
            const JointResult res = optimize_joint(profile, params, config);
            chosen = res.partition;
            cost = res.cost;
            for (std::size_t i = 0; i < res.per_stage_count.size(); ++i)
                table_csv +=
                    std::to_string(i + 1) + "," + csv_number(res.per_stage_count[i].cost) + "\n";
            for (const TraceRecord& rec : res.trace.records)
                trace_csv += std::to_string(rec.stage_count) + "," +
                             std::to_string(rec.stage_index) + "," +
                             std::to_string(rec.old_point) + "," + std::to_string(rec.new_point) +
                             "," + csv_number(rec.objective) + "\n";
        } else {
            throw CLI::ValidationError("--mode must be one | local | joint");
        }

        envelope.partition = chosen;
        envelope.thresholds.reset();
        envelope.provenance.dataset_digest = digest_file(part_data);
        save_envelope(part_out, envelope);
        if (!part_table.empty()) write_text(part_table, table_csv);
        if (!part_trace.empty()) write_text(part_trace, trace_csv);
        std::cout << "partition";
        for (std::size_t r : chosen.points) std::cout << " " << r;
        std::cout << " cost " << cost << " (" << timer.seconds() << " s)\n";
        return kExitOk;
    }

    if (thr->parsed()) {
        ModelEnvelope envelope = load_envelope(thr_cascade);
        if (!envelope.partition) throw BadParams("cascade envelope has no partition yet");
        const LabeledDataset data = load_csv(thr_data);
        const ScoreProfile profile = build_profile(envelope.classifier, data);
        const CostParams params{envelope.classifier.size(), envelope.cost_c,
                                envelope.classifier.global_threshold};

        std::string trace_csv = "iteration,stage,cost,detection\n";
        if (thr_mode == "bound") {
            envelope.thresholds = bound_thresholds(profile, *envelope.partition);
        } else if (thr_mode == "exact") {
            envelope.thresholds = exact_detection_thresholds(profile, *envelope.partition);
        } else if (thr_mode == "learn") {
            LearnerConfig config{thr_target, thr_step, thr_max_iter};
            const LearnResult res = learn_thresholds(profile, *envelope.partition, params, config);
            envelope.thresholds = res.thresholds;
            for (const LearnRecord& rec : res.trace)
                trace_csv += std::to_string(rec.iteration) + "," + std::to_string(rec.stage) +
                             "," + csv_number(rec.cost) + "," + csv_number(rec.detection) + "\n";
            std::cout << "cost " << res.initial_cost << " -> " << res.final_cost
                      << ", detection " << res.final_detection << "\n";
        } else {
            throw CLI::ValidationError("--mode must be bound | exact | learn");
        }

        save_envelope(thr_out, envelope);
        if (!thr_trace.empty()) write_text(thr_trace, trace_csv);
        std::cout << "wrote " << thr_out << " (" << timer.seconds() << " s)\n";
        return kExitOk;
    }

    if (eval->parsed()) {
        const ModelEnvelope envelope = load_envelope(eval_cascade);
        if (!eval_model.empty()) {
            const ModelEnvelope reference = load_envelope(eval_model);
            if (classifier_digest(reference.classifier) !=
                classifier_digest(envelope.classifier))
                throw BadParams("cascade classifier digest does not match --model");
        }
        const CascadeModel model = cascade_from_envelope(envelope);
        const LabeledDataset data = load_csv(eval_data);
        const EvaluationReport report = batch_evaluate(model, data);

        ordered_json j;
        j["command"] = "eval";
        // input paths are deliberately not recorded: the report must be
        // byte-identical across reruns regardless of where inputs live
        j["stages"] = model.partition.points;
        j["avg_cost"] = report.avg_cost;
        j["avg_weak_evals"] = report.avg_weak_evals;
        j["detection_rate"] = report.detection_rate;
        j["false_positive_rate"] = report.false_positive_rate;
        j["analytic_cost"] = report.analytic_cost;
        j["per_stage_rejections"] = report.per_stage_rejections;
        j["fall_through"] = report.fall_through;
        if (report.no_negatives) j["warning"] = "no negatives in dataset";
        if (report.no_positives) j["warning"] = "no positives in dataset";
        write_text(eval_report, j.dump(2) + "\n");
        // timing goes to stdout only; the report file stays deterministic
        std::cout << "avg cost " << report.avg_cost << ", detection " << report.detection_rate
                  << ", fpr " << report.false_positive_rate << " (" << timer.seconds()
                  << " s)\n";
        return kExitOk;
    }

    if (roc->parsed()) {
        const CascadeModel model = cascade_from_envelope(load_envelope(roc_cascade));
        const LabeledDataset data = load_csv(roc_data);
        const auto curve = roc_sweep(model, data, roc_points);
        std::string csv = "false_positive_rate,detection_rate\n";
        for (const auto& [fpr, dr] : curve)
            csv += csv_number(fpr) + "," + csv_number(dr) + "\n";
        write_text(roc_out, csv);
        std::cout << "wrote " << curve.size() << " ROC points to " << roc_out << "\n";
        return kExitOk;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        return kExitUsage;
    } catch (const EmptyClass& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const DimensionMismatch& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const DegenerateData& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const BadParams& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
