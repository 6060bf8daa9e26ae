#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace swipt {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Relaying protocol of a source-relay-destination link.
enum class Protocol { af, df };

inline const char* to_string(Protocol p) { return p == Protocol::af ? "AF" : "DF"; }

/// Bad or inconsistent configuration (sizes, ranges, unparsable input).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Request outside what an algorithm supports (e.g. exhaustive search at large N).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite values where finite ones are required.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Square dense matrix of channel power gains, row-major.
class GainMatrix {
public:
    GainMatrix() = default;
    explicit GainMatrix(std::size_t n, double fill = 0.0) : n_(n), v_(n * n, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

    std::size_t size() const { return n_; }
    const std::vector<double>& data() const { return v_; }

private:
    std::size_t n_ = 0;
    std::vector<double> v_;
};

}  // namespace swipt
