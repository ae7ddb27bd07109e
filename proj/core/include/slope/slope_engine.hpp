#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "slope/data_model.hpp"
#include "slope/mdl_codec.hpp"
#include "slope/regression.hpp"

namespace slope {

/// One global function plus optional local functions, each local keyed by a
/// duplicated source value. All locals share one class.
struct CompoundModel {
  FittedFunction global_fn;
  std::map<double, FittedFunction> locals;
  std::optional<FunctionClass> local_class;

  std::size_t size() const { return 1 + locals.size(); }
};

/// L(F) for a compound model over a source with `distinct_x` distinct
/// values. Throws InvalidModel if there are more locals than distinct values
/// or the locals mix classes.
double model_code_len(const CompoundModel& model, std::size_t distinct_x,
                      const EncodingConfig& cfg);

/// L(F) + L(Y | F, X), using each function's n_f and sigma_hat as the data
/// assignment.
double conditional_total(const CompoundModel& model, double tau,
                         std::size_t distinct_x, const EncodingConfig& cfg);

struct ConditionalResult {
  double bits = 0.0;
  CompoundModel model;
};

/// Normalized source/target data with their resolutions, as consumed by
/// conditional_costs.
struct DirectedData {
  std::span<const double> source;
  std::span<const double> target;
  double tau_target = 1.0;
};

/// Best global function over all classes, by total cost.
ConditionalResult fit_global(const DirectedData& data,
                             const EncodingConfig& cfg);

/// Local fit for one duplicate group of class `cls`, or nullopt when the
/// group is too small for the class or its basis is singular on the grid.
std::optional<FittedFunction> fit_local(const DuplicateGroup& group,
                                        FunctionClass cls, double tau_target,
                                        const EncodingConfig& cfg);

/// Minimum-cost L(target | source) found by the greedy global/local search.
ConditionalResult conditional_costs(const DirectedData& data,
                                    const EncodingConfig& cfg,
                                    bool deterministic_only = false);

enum class Decision { XtoY, YtoX, Undecided };

std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view text);
Decision mirror(Decision d);

struct InferConfig {
  EncodingConfig encoding;
  double min_confidence = 0.0;
  bool deterministic_only = false;
};

struct ScoreReport {
  std::size_t n = 0;
  double L_x = 0.0;
  double L_y = 0.0;
  double L_y_given_x = 0.0;
  double L_x_given_y = 0.0;
  double delta_xy = 0.0;
  double delta_yx = 0.0;
  Decision decision = Decision::Undecided;
  double confidence = 0.0;
  double p_value = 1.0;
  CompoundModel model_xy;  // Y given X
  CompoundModel model_yx;  // X given Y

  double total_xy() const { return L_x + L_y_given_x; }
  double total_yx() const { return L_y + L_x_given_y; }
};

/// Hypercompression p-value against the mean-complexity null:
/// 2^(-|L_xy - L_yx| / 2), clamped into (0, 1].
double significance(double L_xy, double L_yx);

ScoreReport infer(const NumericPair& pair, const InferConfig& cfg = {});

/// infer restricted to a single global function per direction.
ScoreReport infer_deterministic(const NumericPair& pair,
                                const InferConfig& cfg = {});

}  // namespace slope
