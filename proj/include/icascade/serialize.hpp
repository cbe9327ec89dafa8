#ifndef ICASCADE_SERIALIZE_HPP
#define ICASCADE_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "icascade/runtime.hpp"

namespace icascade {

inline constexpr const char* kToolVersion = "icascade 1.0.0";

struct Provenance {
    std::uint64_t seed = 0;
    std::string dataset_digest;
    std::string tool_version = kToolVersion;
};

/// Versioned on-disk model: the classifier, plus the optional cascade
/// pieces added by later pipeline steps. Serialization is canonical, so
/// save -> load -> save is byte-identical.
struct ModelEnvelope {
    int format_version = 1;
    StrongClassifier classifier;
    std::optional<Partition> partition;
    std::optional<ThresholdVector> thresholds;
    double cost_c = 0.5;
    Provenance provenance;
};

/// FNV-1a 64-bit digest as a hex string.
std::string digest_bytes(const std::string& bytes);
std::string digest_file(const std::string& path);

/// Digest of the classifier alone; lets `eval` detect a cascade that was
/// built from a different model file.
std::string classifier_digest(const StrongClassifier& classifier);

std::string envelope_to_string(const ModelEnvelope& envelope);
ModelEnvelope envelope_from_string(const std::string& text);

void save_envelope(const std::string& path, const ModelEnvelope& envelope);
ModelEnvelope load_envelope(const std::string& path);

/// Builds the runnable cascade from an envelope that has partition and
/// thresholds attached.
CascadeModel cascade_from_envelope(const ModelEnvelope& envelope);

} // namespace icascade

#endif
