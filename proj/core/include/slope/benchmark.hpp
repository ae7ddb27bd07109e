#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slope/slope_engine.hpp"

namespace slope {

struct ColumnRange {
  int first = 1;
  int last = 1;

  int width() const { return last - first + 1; }
};

/// One row of a pair-metadata file.
struct PairSpec {
  std::string id;
  ColumnRange cause;
  ColumnRange effect;
  double weight = 1.0;
};

/// Parses `id cause_first cause_last effect_first effect_last weight` rows.
/// Numeric ids become "pairNNNN". Multivariate rows are skipped and their
/// ids appended to `skipped` when given. Throws MalformedMeta.
std::vector<PairSpec> parse_meta(const std::string& text,
                                 std::vector<std::string>* skipped = nullptr);
std::vector<PairSpec> load_meta(const std::filesystem::path& path,
                                std::vector<std::string>* skipped = nullptr);

/// Specs for every `<stem>.txt` with a `<stem>.truth` sidecar in `dir`,
/// sorted by stem. The truth file holds XtoY or YtoX.
std::vector<PairSpec> discover_truth_files(const std::filesystem::path& dir);

struct SuiteEntry {
  std::string id;
  std::size_t n = 0;
  double weight = 1.0;
  Decision truth = Decision::XtoY;
  std::optional<ScoreReport> report;  // empty when errored
  std::string error;
  double p_adj = 1.0;
  bool significant = false;

  bool errored() const { return !report.has_value(); }
  /// 1 for correct, 0 for wrong, 0.5 for undecided.
  double score() const;
};

struct SuiteConfig {
  InferConfig infer;
  double alpha = 0.001;
  std::size_t threads = 1;
};

/// Scores every spec against `<dir>/<id>.txt`. Per-pair failures are
/// recorded in the entry. Results keep input order. BH adjustment is applied
/// over the non-errored entries.
std::vector<SuiteEntry> run_suite(const std::filesystem::path& dir,
                                  std::span<const PairSpec> specs,
                                  const SuiteConfig& cfg);

/// Benjamini-Hochberg step-up adjusted p-values in input order. Throws
/// InvalidP for values outside (0, 1].
std::vector<double> bh_adjust(std::span<const double> pvals);

/// Fills p_adj and significant for the non-errored entries.
void apply_fdr(std::vector<SuiteEntry>& results, double alpha);

/// Weighted accuracy over the non-errored entries; undecided counts half.
/// Throws EmptySuite.
double weighted_accuracy(std::span<const SuiteEntry> results);

struct RatePoint {
  std::size_t k = 0;
  double cum_weight = 0.0;
  double accuracy = 0.0;
};

/// Accuracy over the top-k entries ranked by descending confidence (ties by
/// id). Errored entries are excluded. Throws EmptySuite.
std::vector<RatePoint> decision_rate_curve(std::span<const SuiteEntry> results);

/// Same curve ranked by ascending p-value (ties by id).
std::vector<RatePoint> decision_rate_curve_by_p(
    std::span<const SuiteEntry> results);

/// Numbers are written with 12 significant digits.
std::string format_number(double v);

inline constexpr const char* kResultsHeader =
    "id,n,L_x,L_y,L_y_given_x,L_x_given_y,delta_xy,delta_yx,decision,"
    "confidence,p_value,p_adj,significant,global_class_xy,global_class_yx,"
    "n_locals_xy,n_locals_yx";

void write_results_csv(std::ostream& os, std::span<const SuiteEntry> results);
void write_rate_csv(std::ostream& os, std::span<const RatePoint> curve);

/// One parsed row of a results CSV; errored rows have decision "Errored".
struct ResultRow {
  std::string id;
  std::size_t n = 0;
  double L_x = 0, L_y = 0, L_y_given_x = 0, L_x_given_y = 0;
  double delta_xy = 0, delta_yx = 0;
  std::string decision;
  double confidence = 0, p_value = 1, p_adj = 1;
  bool significant = false;
  std::string global_class_xy, global_class_yx;
  std::size_t n_locals_xy = 0, n_locals_yx = 0;
};

std::vector<ResultRow> read_results_csv(std::istream& is);

}  // namespace slope
