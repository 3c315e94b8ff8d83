#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zakspace/algebra.hpp"
#include "zakspace/arith.hpp"

// Front end behind the `zakspace` executable.
//
//   zakspace <factor|pairs|mub-check|localize|report> <M>
//            [--ma <int>] [--format json|csv|text] [--heatmap <path>]
//            [--tol <real>] [--max-m <int>] [--output <path>]
//
// Exit codes: 0 success, 1 validation error, 2 property violation.

namespace zakspace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitViolation = 2;

inline constexpr Int kDefaultMaxM = 4096;

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string command;
    Int m = 0;
    std::optional<Int> m_a;  // empty selects every canonical pair
    Format format = Format::Text;
    double tolerance = kMatrixTol;
    Int max_m = kDefaultMaxM;
    std::string heatmap_path;
    std::string output_path;
    double perturb = 0.0;  // added to one overlap entry; fault injection for conformance tests
};

/// Formats x with 12 significant digits.
std::string format_real(double x);

/// Binary PGM (P5, maxval 255).
std::string encode_pgm(std::size_t width, std::size_t height, const std::vector<std::uint8_t>& pixels);

/// Grayscale of |amplitude| over the ATilde grid of b: f-bar selects the row,
/// g-bar the column; normalized so the largest modulus maps to 255.
std::string localization_heatmap(const Bipartition& b, const StateVector& state);

/// Parses argv-style arguments (without the program name) and runs the
/// command. Diagnostics go to err, results to out (or --output).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zakspace::cli
