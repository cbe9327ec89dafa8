#include "icascade/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "icascade/errors.hpp"

namespace icascade {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json classifier_to_json(const StrongClassifier& classifier) {
    ordered_json j;
    j["dimensionality"] = classifier.dimensionality;
    j["global_threshold"] = classifier.global_threshold;
    ordered_json members = ordered_json::array();
    for (const auto& m : classifier.members) {
        ordered_json member;
        member["weight"] = m.weight;
        member["feature"] = m.hypothesis.feature_index;
        member["split"] = m.hypothesis.split_value;
        member["polarity"] = m.hypothesis.polarity;
        members.push_back(std::move(member));
    }
    j["members"] = std::move(members);
    return j;
}

StrongClassifier classifier_from_json(const ordered_json& j) {
    StrongClassifier classifier;
    classifier.dimensionality = j.at("dimensionality").get<std::size_t>();
    classifier.global_threshold = j.at("global_threshold").get<double>();
    for (const auto& member : j.at("members")) {
        StrongClassifier::Member m;
        m.weight = member.at("weight").get<double>();
        m.hypothesis.feature_index = member.at("feature").get<std::size_t>();
        m.hypothesis.split_value = member.at("split").get<double>();
        m.hypothesis.polarity = member.at("polarity").get<int>();
        if (m.hypothesis.polarity != 1 && m.hypothesis.polarity != -1)
            throw BadParams("model: polarity must be +1 or -1");
        classifier.members.push_back(m);
    }
    return classifier;
}

} // namespace

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << hash;
    return out.str();
}

std::string digest_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open for digest: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return digest_bytes(buffer.str());
}

std::string classifier_digest(const StrongClassifier& classifier) {
    return digest_bytes(classifier_to_json(classifier).dump());
}

std::string envelope_to_string(const ModelEnvelope& envelope) {
    ordered_json j;
    j["format_version"] = envelope.format_version;
    j["classifier"] = classifier_to_json(envelope.classifier);
    j["classifier_digest"] = classifier_digest(envelope.classifier);
    if (envelope.partition) j["partition"] = envelope.partition->points;
    if (envelope.thresholds) {
        ordered_json t;
        t["values"] = envelope.thresholds->values;
        t["final_threshold"] = envelope.thresholds->final_threshold;
        j["stage_thresholds"] = std::move(t);
    }
    j["cost_c"] = envelope.cost_c;
    ordered_json prov;
    prov["seed"] = envelope.provenance.seed;
    prov["dataset_digest"] = envelope.provenance.dataset_digest;
    prov["tool_version"] = envelope.provenance.tool_version;
    j["provenance"] = std::move(prov);
    return j.dump(2) + "\n";
}

ModelEnvelope envelope_from_string(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    ModelEnvelope envelope;
    envelope.format_version = j.at("format_version").get<int>();
    if (envelope.format_version != 1)
        throw BadParams("unsupported model format_version " +
                        std::to_string(envelope.format_version));
    envelope.classifier = classifier_from_json(j.at("classifier"));
    if (j.contains("partition")) {
        Partition p;
        p.points = j["partition"].get<std::vector<std::size_t>>();
        envelope.partition = std::move(p);
    }
    if (j.contains("stage_thresholds")) {
        ThresholdVector t;
        t.values = j["stage_thresholds"].at("values").get<std::vector<double>>();
        t.final_threshold = j["stage_thresholds"].at("final_threshold").get<double>();
        envelope.thresholds = std::move(t);
    }
    envelope.cost_c = j.at("cost_c").get<double>();
    const auto& prov = j.at("provenance");
    envelope.provenance.seed = prov.at("seed").get<std::uint64_t>();
    envelope.provenance.dataset_digest = prov.at("dataset_digest").get<std::string>();
    envelope.provenance.tool_version = prov.at("tool_version").get<std::string>();
    return envelope;
}

void save_envelope(const std::string& path, const ModelEnvelope& envelope) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open for writing: " + path);
    file << envelope_to_string(envelope);
    if (!file) throw std::ios_base::failure("write failed: " + path);
}

ModelEnvelope load_envelope(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open for reading: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    try {
        return envelope_from_string(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        throw BadParams("model parse error in " + path + ": " + e.what());
    }
}

CascadeModel cascade_from_envelope(const ModelEnvelope& envelope) {
    if (!envelope.partition) throw BadParams("envelope carries no partition");
    if (!envelope.thresholds) throw BadParams("envelope carries no stage thresholds");
    CascadeModel model;
    model.classifier = envelope.classifier;
    model.partition = *envelope.partition;
    model.thresholds = *envelope.thresholds;
    model.check_cost = envelope.cost_c;
    validate_model(model);
    return model;
}

} // namespace icascade
