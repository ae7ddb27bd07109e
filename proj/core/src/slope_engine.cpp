#include "slope/slope_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slope/error.hpp"

namespace slope {

double model_code_len(const CompoundModel& model, std::size_t distinct_x,
                      const EncodingConfig& cfg) {
  double params = function_code_len(model.global_fn, cfg.precision);
  for (const auto& [x, fn] : model.locals) {
    if (!model.local_class || fn.cls != *model.local_class)
      throw InvalidModel("local functions must share one class");
    params += function_code_len(fn, cfg.precision);
  }
  return model_code_len(model.locals.size(), distinct_x, params, cfg);
}

double conditional_total(const CompoundModel& model, double tau,
                         std::size_t distinct_x, const EncodingConfig& cfg) {
  std::vector<std::pair<std::size_t, double>> parts;
  parts.reserve(model.size());
  parts.emplace_back(model.global_fn.n_f, model.global_fn.sigma_hat);
  for (const auto& [x, fn] : model.locals) parts.emplace_back(fn.n_f, fn.sigma_hat);
  return model_code_len(model, distinct_x, cfg) + data_code_len(parts, tau);
}

ConditionalResult fit_global(const DirectedData& data,
                             const EncodingConfig& cfg) {
  const std::size_t distinct_x = count_distinct(data.source);
  std::optional<ConditionalResult> best;
  for (auto cls : kAllClasses) {
    if (data.source.size() < basis_size(cls)) continue;
    FittedFunction fn;
    try {
      fn = fit_ols(cls, data.source, data.target, cfg.precision, data.tau_target);
    } catch (const SingularBasis&) {
      continue;
    }
    const double bits =
        model_code_len(0, distinct_x, function_code_len(fn, cfg.precision), cfg) +
        gaussian_data_code_len(fn.n_f, fn.sigma_hat, data.tau_target);
    if (!best || bits < best->bits) {
      best = ConditionalResult{bits, CompoundModel{std::move(fn), {}, std::nullopt}};
    }
  }
  if (!best) throw TooFewPoints("no function class can be fitted");
  return *std::move(best);
}

std::optional<FittedFunction> fit_local(const DuplicateGroup& group,
                                        FunctionClass cls, double tau_target,
                                        const EncodingConfig& cfg) {
  const auto m = group.ys.size();
  if (m < basis_size(cls)) return std::nullopt;
  const auto grid = local_grid(m, cfg.t);
  try {
    return fit_ols(cls, grid, group.ys, cfg.precision, tau_target);
  } catch (const SingularBasis&) {
    return std::nullopt;
  }
}

ConditionalResult conditional_costs(const DirectedData& data,
                                    const EncodingConfig& cfg,
                                    bool deterministic_only) {
  if (data.source.size() != data.target.size())
    throw InvalidArgument("source and target differ in length");
  if (data.source.size() < 3) throw TooFewPoints("need at least 3 points");

  ConditionalResult best = fit_global(data, cfg);
  if (deterministic_only) return best;

  const auto groups = group_duplicates(data.source, data.target);
  if (groups.empty()) return best;

  const double tau = data.tau_target;
  const std::size_t n = data.source.size();
  const std::size_t distinct_x = count_distinct(data.source);
  const FittedFunction& global = best.model.global_fn;
  const double global_bits = function_code_len(global, cfg.precision);

  std::vector<double> group_sse(groups.size(), 0.0);
  double total_sse = 0.0;
  {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = data.target[i] - global(data.source[i]);
      sq[i] = r * r;
      total_sse += sq[i];
    }
    for (std::size_t g = 0; g < groups.size(); ++g)
      for (auto row : groups[g].rows) group_sse[g] += sq[row];
  }

  const double global_only_bits = best.bits;
  for (auto cls : kAllClasses) {
    double current = global_only_bits;
    double local_params = 0.0;
    double local_data = 0.0;
    std::size_t remaining = n;
    double remaining_sse = total_sse;
    std::map<double, FittedFunction> accepted;

    for (std::size_t g = 0; g < groups.size(); ++g) {
      auto local = fit_local(groups[g], cls, tau, cfg);
      if (!local) continue;
      const auto m = groups[g].ys.size();
      const double local_bits = function_code_len(*local, cfg.precision);

      const std::size_t cand_remaining = remaining - m;
      const double cand_sse = std::max(0.0, remaining_sse - group_sse[g]);
      const double cand_sigma = residual_sigma(cand_sse, cand_remaining, tau);
      const double candidate =
          model_code_len(accepted.size() + 1, distinct_x,
                         global_bits + local_params + local_bits, cfg) +
          gaussian_data_code_len(cand_remaining, cand_sigma, tau) + local_data +
          gaussian_data_code_len(m, local->sigma_hat, tau);

      if (candidate < current) {
        current = candidate;
        local_params += local_bits;
        local_data += gaussian_data_code_len(m, local->sigma_hat, tau);
        remaining = cand_remaining;
        remaining_sse = cand_sse;
        accepted.emplace(groups[g].x_value, *std::move(local));
      }
    }

    if (current < best.bits) {
      CompoundModel model;
      model.global_fn = global;
      model.global_fn.n_f = remaining;
      model.global_fn.sigma_hat = residual_sigma(remaining_sse, remaining, tau);
      model.locals = std::move(accepted);
      model.local_class = cls;
      best = ConditionalResult{current, std::move(model)};
    }
  }
  return best;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::XtoY: return "XtoY";
    case Decision::YtoX: return "YtoX";
    case Decision::Undecided: return "Undecided";
  }
  return "?";
}

std::optional<Decision> parse_decision(std::string_view text) {
  for (auto d : {Decision::XtoY, Decision::YtoX, Decision::Undecided})
    if (to_string(d) == text) return d;
  return std::nullopt;
}

Decision mirror(Decision d) {
  switch (d) {
    case Decision::XtoY: return Decision::YtoX;
    case Decision::YtoX: return Decision::XtoY;
    case Decision::Undecided: return Decision::Undecided;
  }
  return d;
}

double significance(double L_xy, double L_yx) {
  const double k = std::fabs(L_xy - L_yx) / 2.0;
  const double p = std::exp2(-k);
  return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

namespace {

ScoreReport score(const NumericPair& pair, const InferConfig& cfg,
                  bool deterministic_only) {
  const NormalizedPair np = normalize(pair);
  const std::size_t n = np.size();

  ScoreReport r;
  r.n = n;
  r.L_x = marginal_code_len(n, np.tau_x);
  r.L_y = marginal_code_len(n, np.tau_y);
  const double denom = r.L_x + r.L_y;
  if (!(denom > 0.0))
    throw DegenerateInput("both variables are binary; marginal costs vanish");

  auto xy = conditional_costs({np.x, np.y, np.tau_y}, cfg.encoding, deterministic_only);
  auto yx = conditional_costs({np.y, np.x, np.tau_x}, cfg.encoding, deterministic_only);
  r.L_y_given_x = xy.bits;
  r.L_x_given_y = yx.bits;
  r.model_xy = std::move(xy.model);
  r.model_yx = std::move(yx.model);

  r.delta_xy = (r.L_x + r.L_y_given_x) / denom;
  r.delta_yx = (r.L_y + r.L_x_given_y) / denom;
  r.confidence = std::fabs(r.delta_xy - r.delta_yx);
  if (r.confidence > cfg.min_confidence)
    r.decision = r.delta_xy < r.delta_yx ? Decision::XtoY : Decision::YtoX;
  else
    r.decision = Decision::Undecided;
  r.p_value = significance(r.total_xy(), r.total_yx());
  return r;
}

}  // namespace

ScoreReport infer(const NumericPair& pair, const InferConfig& cfg) {
  return score(pair, cfg, cfg.deterministic_only);
}

ScoreReport infer_deterministic(const NumericPair& pair, const InferConfig& cfg) {
  return score(pair, cfg, true);
}

}  // namespace slope
