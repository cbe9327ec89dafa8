#include "icascade/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "icascade/errors.hpp"

namespace icascade {

namespace {

// Hand-rolled Box-Muller on top of mt19937_64 so the byte stream does not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { // in (0, 1]
        return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform();
        const double v = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * std::numbers::pi * v;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::vector<double> gaussian_point(Rng& rng, std::size_t dim, double mean_shift) {
    std::vector<double> x(dim);
    for (double& v : x) v = mean_shift + rng.normal();
    return x;
}

std::vector<double> ring_point(Rng& rng, std::size_t dim, double r_lo, double r_hi) {
    std::vector<double> x(dim, 0.0);
    const double radius = r_lo + (r_hi - r_lo) * rng.uniform();
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    x[0] = radius * std::cos(angle);
    x[1] = radius * std::sin(angle);
    for (std::size_t d = 2; d < dim; ++d) x[d] = 0.25 * rng.normal();
    return x;
}

std::vector<double> xor_point(Rng& rng, std::size_t dim, double spread, bool positive) {
    std::vector<double> x(dim, 0.0);
    const bool flip = rng.uniform() < 0.5;
    const double sx = flip ? spread : -spread;
    const double sy = positive == flip ? spread : -spread;
    x[0] = sx + 0.4 * rng.normal();
    x[1] = sy + 0.4 * rng.normal();
    for (std::size_t d = 2; d < dim; ++d) x[d] = 0.25 * rng.normal();
    return x;
}

void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

} // namespace

DatasetKind dataset_kind_from_string(const std::string& name) {
    if (name == "gaussians") return DatasetKind::gaussians;
    if (name == "rings") return DatasetKind::rings;
    if (name == "xor_soft") return DatasetKind::xor_soft;
    throw BadParams("unknown dataset kind: " + name);
}

LabeledDataset generate_dataset(DatasetKind kind, std::size_t n_pos, std::size_t n_neg,
                                std::size_t dim, std::uint64_t seed, double separation) {
    if (n_pos < 1 || n_neg < 1) throw BadParams("generate_dataset: need samples of both labels");
    if (dim < 2) throw BadParams("generate_dataset: dim must be >= 2");
    if (!(separation > 0.0)) throw BadParams("generate_dataset: separation must be > 0");

    Rng rng(seed);
    LabeledDataset data;
    const double shift = 0.5 * separation / std::sqrt(static_cast<double>(dim));

    switch (kind) {
        case DatasetKind::gaussians:
            for (std::size_t i = 0; i < n_pos; ++i) data.add(gaussian_point(rng, dim, shift), +1);
            for (std::size_t i = 0; i < n_neg; ++i) data.add(gaussian_point(rng, dim, -shift), -1);
            break;
        case DatasetKind::rings:
            for (std::size_t i = 0; i < n_pos; ++i) data.add(ring_point(rng, dim, 0.0, 1.0), +1);
            for (std::size_t i = 0; i < n_neg; ++i)
                data.add(ring_point(rng, dim, 1.0 + separation * 0.2, 1.0 + separation * 0.6), -1);
            break;
        case DatasetKind::xor_soft:
            for (std::size_t i = 0; i < n_pos; ++i)
                data.add(xor_point(rng, dim, 0.5 * separation, true), +1);
            for (std::size_t i = 0; i < n_neg; ++i)
                data.add(xor_point(rng, dim, 0.5 * separation, false), -1);
            break;
    }
    return data;
}

void save_csv(const std::string& path, const LabeledDataset& data) {
    std::string out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        out += data.labels[i] > 0 ? "1" : "-1";
        for (double v : data.features[i]) {
            out += ',';
            append_double(out, v);
        }
        out += '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open for writing: " + path);
    file << out;
    if (!file) throw std::ios_base::failure("write failed: " + path);
}

LabeledDataset load_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open for reading: " + path);

    LabeledDataset data;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str())
                throw BadParams("csv parse error at line " + std::to_string(line_no));
            values.push_back(v);
        }
        if (values.size() < 2)
            throw BadParams("csv row needs a label and at least one feature, line " +
                            std::to_string(line_no));
        const int label = values.front() > 0 ? +1 : -1;
        data.add(std::vector<double>(values.begin() + 1, values.end()), label);
    }
    if (data.size() == 0) throw BadParams("csv is empty: " + path);
    const std::size_t dim = data.dimensionality();
    for (const auto& x : data.features) {
        if (x.size() != dim) throw DimensionMismatch("csv rows have inconsistent widths");
    }
    return data;
}

} // namespace icascade
