#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crossum/bias.hpp"
#include "crossum/crossgrid.hpp"
#include "crossum/stats.hpp"

namespace crossum {

/// Exact decimal rounding of the binary value, halves away from zero.
/// round_half_up(43.5, 0) == "44", round_half_up(-0.004, 2) == "0.00".
std::string round_half_up(double v, int decimals);

/// round_half_up for decimals >= 0, shortest round-trip text otherwise.
std::string format_number(double v, int decimals);

/// Keeps [A-Za-z0-9._-]; everything else becomes '_'.
std::string sanitize_filename(std::string_view name);

/// Writes the whole file in one go (binary mode, truncating).
void write_file(const std::filesystem::path& path, const std::string& contents);

// --- matrices -------------------------------------------------------------

/// Header "train\test,<test datasets...>,avg"; one row per train dataset with
/// a trailing row average; a final "avg" row of column averages whose last
/// cell is the overall mean.
std::string matrix_csv(const CrossMatrix& m, int decimals = -1);

/// Reads matrix_csv output (the avg row and column are optional and ignored).
CrossMatrix parse_matrix_csv(std::string_view text, std::string_view source = "<matrix>");
CrossMatrix read_matrix_csv(const std::filesystem::path& path);

struct MatrixMeta {
  std::string system;
  std::string metric;
  std::string aggregation;
  std::string fingerprint;
  bool normalized = false;
};

/// Full-precision JSON mirror of matrix_csv with explicit axis labels.
std::string matrix_json(const CrossMatrix& m, const MatrixMeta& meta);

struct Holistic {
  double stiffness = 0.0;
  double stableness = 0.0;
  double in_dataset = 0.0;
};

Holistic holistic(const CrossMatrix& m);
std::string holistic_csv(const std::string& system, const std::string& metric, const Holistic& h,
                         int decimals = -1);

/// Diverging heatmap: positive cells grey, negative red, zero white, with
/// intensity proportional to |v| / max|v|. Non-finite values throw.
std::string heatmap_svg(const CrossMatrix& grid, const std::string& title, int decimals = 2);

// --- rankings, profiles, significance -------------------------------------

/// "rank,system,value", rank 1 = largest value.
std::string ranking_csv(const std::vector<std::pair<std::string, double>>& ranking, int decimals = -1);

/// "dataset,coverage,copy_length,novelty,fusion,repetition" using each
/// profile's selected novelty and repetition orders.
std::string profiles_csv(std::span<const BiasProfile> profiles);
std::string profiles_json(std::span<const BiasProfile> profiles);

/// dataset -> {coverage, copy_length, novelty, fusion, repetition}.
std::map<std::string, std::array<double, 5>> parse_profiles_csv(std::string_view text);

struct SignificanceRow {
  std::string system_a;
  std::string system_b;
  std::string metric;
  std::string measure;
  TestResult result;
};

/// Merges rows into an existing significance.csv body (may be empty),
/// replacing rows with the same (system_a, system_b, metric, measure) key.
/// Output rows are sorted by that key.
std::string merge_significance(std::string_view existing, std::span<const SignificanceRow> rows);

}  // namespace crossum
