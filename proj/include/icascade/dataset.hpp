#ifndef ICASCADE_DATASET_HPP
#define ICASCADE_DATASET_HPP

#include <cstdint>
#include <string>

#include "icascade/types.hpp"

namespace icascade {

enum class DatasetKind { gaussians, rings, xor_soft };

DatasetKind dataset_kind_from_string(const std::string& name);

/// Deterministic synthetic data. `separation` scales how far apart the
/// classes sit (gaussians: distance between cluster means; rings: gap
/// between the inner disk and the annulus; xor_soft: corner spread).
LabeledDataset generate_dataset(DatasetKind kind, std::size_t n_pos, std::size_t n_neg,
                                std::size_t dim, std::uint64_t seed,
                                double separation = 4.0);

/// Headerless CSV: first column label (+1/-1), remaining columns features.
void save_csv(const std::string& path, const LabeledDataset& data);
LabeledDataset load_csv(const std::string& path);

} // namespace icascade

#endif
