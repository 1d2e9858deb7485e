#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mildflow {

/// Flat key=value experiment description. Keys in the file are exactly the
/// member names below; list values are comma separated and accept "inf".
struct ExperimentConfig {
    std::string experiment = "norms";
    // grid
    int dim = 2;
    int n = 64;
    double L = 6.283185307179586;
    // exponents
    std::vector<double> q{3.0};
    std::vector<double> r{3.0};
    std::vector<double> s{0.0};
    std::vector<double> q_tilde{4.0};
    std::vector<double> p{3.0};  ///< second factor exponent of the product bounds
    // time
    std::vector<double> T{0.25, 0.5, 1.0};
    int M = 64;
    double gamma = 2.0;
    // corpus
    std::string family = "random_band_limited";
    std::uint64_t seed = 1;
    int count = 4;
    int band_min = 1;
    int band_max = 4;
    std::array<int, 3> mode{1, 0, 0};
    double width = 0.1;
    double exponent = 2.0 / 3.0;
    std::vector<double> amplitude{1.0};
    // sweeps and solver
    int levels = 1;  ///< resolutions n, 2n, ..., 2^{levels-1} n
    double delta = 0.05;
    double tol = 1e-10;
    int max_iter = 50;
    int steps = 256;  ///< oracle steps over [0, T]
    std::string dump;    ///< corpus: directory for spectral dumps (empty: none)
    std::string output;  ///< CSV path (empty: stdout)

    /// Range checks independent of the experiment windows.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ValidationError naming the line for malformed or unknown entries.
ExperimentConfig parse_config(std::istream& in);
/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Every key, one per line, in a form parse_config reads back exactly.
std::string emit_config(const ExperimentConfig& cfg);

}  // namespace mildflow
