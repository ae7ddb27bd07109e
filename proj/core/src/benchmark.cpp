#include "slope/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "slope/error.hpp"

namespace slope {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedMeta("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int parse_column(const std::string& tok, std::size_t line_no) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 1)
    throw MalformedMeta("line " + std::to_string(line_no) +
                        ": bad column index '" + tok + "'");
  return v;
}

std::string normalize_id(const std::string& tok) {
  if (!tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "pair%04lu", std::stoul(tok));
    return buf;
  }
  return tok;
}

}  // namespace

std::vector<PairSpec> parse_meta(const std::string& text,
                                 std::vector<std::string>* skipped) {
  std::vector<PairSpec> specs;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() != 6)
      throw MalformedMeta("line " + std::to_string(line_no) +
                          ": expected 6 fields, found " + std::to_string(tok.size()));

    PairSpec spec;
    spec.id = normalize_id(tok[0]);
    spec.cause = {parse_column(tok[1], line_no), parse_column(tok[2], line_no)};
    spec.effect = {parse_column(tok[3], line_no), parse_column(tok[4], line_no)};
    try {
      std::size_t used = 0;
      spec.weight = std::stod(tok[5], &used);
      if (used != tok[5].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw MalformedMeta("line " + std::to_string(line_no) + ": bad weight '" +
                          tok[5] + "'");
    }
    if (!(spec.weight >= 0.0))
      throw MalformedMeta("line " + std::to_string(line_no) + ": negative weight");
    if (spec.cause.width() < 1 || spec.effect.width() < 1)
      throw MalformedMeta("line " + std::to_string(line_no) + ": empty column range");
    const bool overlap = spec.cause.first <= spec.effect.last &&
                         spec.effect.first <= spec.cause.last;
    if (overlap)
      throw MalformedMeta("line " + std::to_string(line_no) +
                          ": cause and effect columns overlap");

    if (spec.cause.width() > 1 || spec.effect.width() > 1) {
      if (skipped) skipped->push_back(spec.id);
      continue;
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<PairSpec> load_meta(const std::filesystem::path& path,
                                std::vector<std::string>* skipped) {
  return parse_meta(read_file(path), skipped);
}

std::vector<PairSpec> discover_truth_files(const std::filesystem::path& dir) {
  std::vector<PairSpec> specs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    auto truth_path = entry.path();
    truth_path.replace_extension(".truth");
    if (!std::filesystem::exists(truth_path)) continue;

    std::string token;
    std::ifstream(truth_path) >> token;
    const auto truth = parse_decision(token);
    if (!truth || *truth == Decision::Undecided)
      throw MalformedMeta(truth_path.string() + ": expected XtoY or YtoX");

    PairSpec spec;
    spec.id = entry.path().stem().string();
    spec.cause = *truth == Decision::XtoY ? ColumnRange{1, 1} : ColumnRange{2, 2};
    spec.effect = *truth == Decision::XtoY ? ColumnRange{2, 2} : ColumnRange{1, 1};
    specs.push_back(std::move(spec));
  }
  std::sort(specs.begin(), specs.end(),
            [](const PairSpec& a, const PairSpec& b) { return a.id < b.id; });
  return specs;
}

double SuiteEntry::score() const {
  if (!report) return 0.0;
  if (report->decision == Decision::Undecided) return 0.5;
  return report->decision == truth ? 1.0 : 0.0;
}

namespace {

SuiteEntry score_one(const std::filesystem::path& dir, const PairSpec& spec,
                     const InferConfig& cfg) {
  SuiteEntry e;
  e.id = spec.id;
  e.weight = spec.weight;
  // The first file column is presented as X.
  const int col_x = std::min(spec.cause.first, spec.effect.first);
  const int col_y = std::max(spec.cause.first, spec.effect.first);
  e.truth = spec.cause.first < spec.effect.first ? Decision::XtoY : Decision::YtoX;
  try {
    const auto pair = load_pair(dir / (spec.id + ".txt"), col_x, col_y);
    e.n = pair.size();
    e.report = infer(pair, cfg);
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

}  // namespace

std::vector<SuiteEntry> run_suite(const std::filesystem::path& dir,
                                  std::span<const PairSpec> specs,
                                  const SuiteConfig& cfg) {
  std::vector<SuiteEntry> results(specs.size());
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, specs.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i)
      results[i] = score_one(dir, specs[i], cfg.infer);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++)
          results[i] = score_one(dir, specs[i], cfg.infer);
      });
    }
  }
  apply_fdr(results, cfg.alpha);
  return results;
}

std::vector<double> bh_adjust(std::span<const double> pvals) {
  for (double p : pvals)
    if (!(p > 0.0 && p <= 1.0))
      throw InvalidP("p-value outside (0, 1]: " + std::to_string(p));
  const std::size_t m = pvals.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvals[a] < pvals[b]; });

  std::vector<double> adjusted(m);
  double running = 1.0;
  for (std::size_t r = m; r-- > 0;) {
    const double candidate =
        pvals[order[r]] * static_cast<double>(m) / static_cast<double>(r + 1);
    running = std::min(running, candidate);
    adjusted[order[r]] = std::clamp(running, pvals[order[r]], 1.0);
  }
  return adjusted;
}

void apply_fdr(std::vector<SuiteEntry>& results, double alpha) {
  std::vector<double> pvals;
  std::vector<SuiteEntry*> live;
  for (auto& e : results) {
    if (e.errored()) continue;
    pvals.push_back(e.report->p_value);
    live.push_back(&e);
  }
  const auto adjusted = bh_adjust(pvals);
  for (std::size_t i = 0; i < live.size(); ++i) {
    live[i]->p_adj = adjusted[i];
    live[i]->significant = adjusted[i] <= alpha;
  }
}

double weighted_accuracy(std::span<const SuiteEntry> results) {
  double weight = 0.0;
  double score = 0.0;
  for (const auto& e : results) {
    if (e.errored()) continue;
    weight += e.weight;
    score += e.weight * e.score();
  }
  if (!(weight > 0.0)) throw EmptySuite("no scored pairs with positive weight");
  return score / weight;
}

namespace {

template <class Less>
std::vector<RatePoint> rate_curve(std::span<const SuiteEntry> results, Less less) {
  std::vector<const SuiteEntry*> ranked;
  for (const auto& e : results)
    if (!e.errored()) ranked.push_back(&e);
  if (ranked.empty()) throw EmptySuite("no scored pairs");
  std::sort(ranked.begin(), ranked.end(), [&](const SuiteEntry* a, const SuiteEntry* b) {
    if (less(*a, *b)) return true;
    if (less(*b, *a)) return false;
    return a->id < b->id;
  });

  std::vector<RatePoint> curve;
  double weight = 0.0;
  double score = 0.0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    weight += ranked[k]->weight;
    score += ranked[k]->weight * ranked[k]->score();
    curve.push_back({k + 1, weight, weight > 0.0 ? score / weight : 0.0});
  }
  return curve;
}

}  // namespace

std::vector<RatePoint> decision_rate_curve(std::span<const SuiteEntry> results) {
  return rate_curve(results, [](const SuiteEntry& a, const SuiteEntry& b) {
    return a.report->confidence > b.report->confidence;
  });
}

std::vector<RatePoint> decision_rate_curve_by_p(std::span<const SuiteEntry> results) {
  return rate_curve(results, [](const SuiteEntry& a, const SuiteEntry& b) {
    return a.report->p_value < b.report->p_value;
  });
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_results_csv(std::ostream& os, std::span<const SuiteEntry> results) {
  os << kResultsHeader << '\n';
  for (const auto& e : results) {
    os << e.id << ',' << e.n << ',';
    if (e.errored()) {
      os << ",,,,,,Errored,,,,,,,,\n";
      continue;
    }
    const auto& r = *e.report;
    os << format_number(r.L_x) << ',' << format_number(r.L_y) << ','
       << format_number(r.L_y_given_x) << ',' << format_number(r.L_x_given_y) << ','
       << format_number(r.delta_xy) << ',' << format_number(r.delta_yx) << ','
       << to_string(r.decision) << ',' << format_number(r.confidence) << ','
       << format_number(r.p_value) << ',' << format_number(e.p_adj) << ','
       << (e.significant ? 1 : 0) << ',' << to_string(r.model_xy.global_fn.cls) << ','
       << to_string(r.model_yx.global_fn.cls) << ',' << r.model_xy.locals.size() << ','
       << r.model_yx.locals.size() << '\n';
  }
}

void write_rate_csv(std::ostream& os, std::span<const RatePoint> curve) {
  os << "k,cum_weight,accuracy\n";
  for (const auto& p : curve)
    os << p.k << ',' << format_number(p.cum_weight) << ','
       << format_number(p.accuracy) << '\n';
}

std::vector<ResultRow> read_results_csv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != kResultsHeader)
    throw MalformedInput("results CSV header mismatch");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 17)
      throw MalformedInput("results CSV row has " + std::to_string(f.size()) + " fields");
    auto num = [](const std::string& s) { return s.empty() ? 0.0 : std::stod(s); };
    ResultRow r;
    r.id = f[0];
    r.n = std::stoul(f[1]);
    r.decision = f[8];
    if (r.decision != "Errored") {
      r.L_x = num(f[2]);
      r.L_y = num(f[3]);
      r.L_y_given_x = num(f[4]);
      r.L_x_given_y = num(f[5]);
      r.delta_xy = num(f[6]);
      r.delta_yx = num(f[7]);
      r.confidence = num(f[9]);
      r.p_value = num(f[10]);
      r.p_adj = num(f[11]);
      r.significant = f[12] == "1";
      r.global_class_xy = f[13];
      r.global_class_yx = f[14];
      r.n_locals_xy = std::stoul(f[15]);
      r.n_locals_yx = std::stoul(f[16]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace slope
