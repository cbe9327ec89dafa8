#ifndef ICASCADE_ERRORS_HPP
#define ICASCADE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace icascade {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyClass : std::runtime_error {
    explicit EmptyClass(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateData : std::runtime_error {
    explicit DegenerateData(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveWeight : std::runtime_error {
    explicit NonPositiveWeight(const std::string& what) : std::runtime_error(what) {}
};

struct NoNegatives : std::runtime_error {
    explicit NoNegatives(const std::string& what) : std::runtime_error(what) {}
};

struct NoPositives : std::runtime_error {
    explicit NoPositives(const std::string& what) : std::runtime_error(what) {}
};

struct BadRange : std::runtime_error {
    explicit BadRange(const std::string& what) : std::runtime_error(what) {}
};

struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

struct NoSaturation : std::runtime_error {
    explicit NoSaturation(const std::string& what) : std::runtime_error(what) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct BadParams : std::runtime_error {
    explicit BadParams(const std::string& what) : std::runtime_error(what) {}
};

} // namespace icascade

#endif
