#pragma once

// Configuration-driven experiment runner behind the command-line tool.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "twolayer/potentials.hpp"

namespace twolayer::runner {

struct SurfaceSpec {
  std::string builtin;     // one of gamma1..3, or empty
  std::string expression;  // f(t)
  std::string d_expression;   // optional f'(t)
  std::string d2_expression;  // optional f''(t)
};

struct IncidentSpec {
  bool plane = true;
  double theta_d = 4.0 * kPi / 3.0;
  Point2 y0{};
};

struct BetaSpec {
  std::optional<Complex> constant;
  std::string expression;  // real-valued expression in t when not constant
};

struct OutputSpec {
  std::filesystem::path dir;  // empty: no files written
  bool density = true;
  bool field = true;
};

struct RunConfig {
  ProblemKind kind = ProblemKind::dirichlet;
  double k_plus = 2.7;
  double k_minus = 3.5;
  SurfaceSpec surface{"gamma1", "", "", ""};
  IncidentSpec incident{};
  BetaSpec beta{Complex(1.0), ""};
  std::optional<double> eta;
  int N = 16;
  double A = 10.0 * kPi;
  std::vector<Point2> points;
  OutputSpec output{};
  unsigned threads = 0;
};

/// Parses and validates. Errors are ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& file);
/// Resolved configuration, with every default filled in.
nlohmann::json to_json(const RunConfig& c);
/// Throws ConfigError on the first invalid field.
void validate(const RunConfig& c);

/// 64-bit FNV-1a of the compact resolved JSON without the output and thread
/// settings, as 16 hex digits.
std::string config_hash(const RunConfig& c);

BoundaryProblem make_problem(const RunConfig& c);

struct PointResult {
  FieldSample sample;
  /// Exact scattered field (point source) or total field (flat surface
  /// under plane incidence), when known.
  std::optional<Complex> exact;
  /// Relative error of the scattered field (point source) or absolute error
  /// of the total field (plane wave).
  std::optional<double> error;
};

struct RunReport {
  std::string hash;
  int N = 0;
  double A = 0.0;
  std::size_t unknowns = 0;
  double condition_estimate = 0.0;
  double residual_norm = 0.0;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
  double eval_seconds = 0.0;
  std::vector<PointResult> points;
  std::vector<std::filesystem::path> files;
};

RunReport run(const RunConfig& c);
nlohmann::json to_json(const RunReport& r);

struct SweepRow {
  int N = 0;
  Point2 x{};
  Complex value{};  // scattered field for point sources, total field otherwise
  std::optional<Complex> exact;
  std::optional<double> error;
  std::optional<double> diff;  // |value_N - value_prev|
};

/// One run per N (ascending), rows per evaluation point. Writes sweep.csv
/// when an output directory is set.
std::vector<SweepRow> convergence_sweep(const RunConfig& c, const std::vector<int>& n_list);

/// Names of the bundled example configurations.
std::vector<std::string> preset_names();
/// Example configurations; swap_media exchanges k_plus and k_minus.
RunConfig preset(const std::string& name, bool swap_media = false);

/// Writes "# config_hash=... config=..." as the first CSV line.
std::string csv_header_comment(const RunConfig& c);

}  // namespace twolayer::runner
