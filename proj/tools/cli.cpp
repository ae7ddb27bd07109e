#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "slope/benchmark.hpp"
#include "slope/error.hpp"
#include "slope/synth_gen.hpp"

namespace slope::cli {
namespace {

namespace fs = std::filesystem;

void add_engine_flags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--t", cfg.t, "Half-width of the local grid")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--precision", cfg.precision, "Encoded parameter digits")
      ->check(CLI::Range(1, 15));
  cmd->add_option("--alpha", cfg.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--min-confidence", cfg.min_confidence,
                  "Confidence at or below which no decision is made")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--deterministic-only", cfg.deterministic_only,
                "Fit a single global function per direction");
}

InferConfig to_infer_config(const CliConfig& cfg) {
  InferConfig ic;
  ic.encoding.t = cfg.t;
  ic.encoding.precision = cfg.precision;
  ic.min_confidence = cfg.min_confidence;
  ic.deterministic_only = cfg.deterministic_only;
  return ic;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("--alpha must lie strictly between 0 and 1");
}

void print_model(std::ostream& out, const char* label, const CompoundModel& m) {
  out << label << ": global " << to_string(m.global_fn.cls) << " (";
  for (std::size_t i = 0; i < m.global_fn.coeffs.size(); ++i)
    out << (i ? ", " : "") << format_number(m.global_fn.coeffs[i]);
  out << ")";
  if (!m.locals.empty())
    out << ", " << m.locals.size() << " local " << to_string(*m.local_class);
  out << '\n';
}

int cmd_infer(const std::string& file, int col_x, int col_y,
              const CliConfig& cfg, std::ostream& out) {
  check_alpha(cfg.alpha);
  const auto pair = load_pair(file, col_x, col_y);
  SuiteEntry entry;
  entry.id = pair.name;
  entry.n = pair.size();
  entry.report = infer(pair, to_infer_config(cfg));
  entry.p_adj = entry.report->p_value;
  entry.significant = entry.p_adj <= cfg.alpha;

  const auto& r = *entry.report;
  out << "pair        " << pair.name << " (n=" << r.n << ")\n"
      << "decision    " << to_string(r.decision) << '\n'
      << "confidence  " << format_number(r.confidence) << '\n'
      << "p-value     " << format_number(r.p_value)
      << (entry.significant ? " (significant)" : " (not significant)") << '\n'
      << "delta X->Y  " << format_number(r.delta_xy) << '\n'
      << "delta Y->X  " << format_number(r.delta_yx) << '\n'
      << "L(X)        " << format_number(r.L_x) << " bits\n"
      << "L(Y)        " << format_number(r.L_y) << " bits\n"
      << "L(Y|X)      " << format_number(r.L_y_given_x) << " bits\n"
      << "L(X|Y)      " << format_number(r.L_x_given_y) << " bits\n";
  print_model(out, "Y|X", r.model_xy);
  print_model(out, "X|Y", r.model_yx);
  out << '\n';
  write_results_csv(out, std::span(&entry, 1));
  return r.decision == Decision::Undecided ? kExitUndecided : kExitDecided;
}

struct GenFlags {
  std::string dist = "u";
  std::string fun = "linear";
  std::string noise = "g";
  std::size_t n = 1000;
  std::size_t k = 40;
  std::size_t count = 1;
  std::string out = ".";
  std::string name;
};

void write_pair(const fs::path& path, const NumericPair& pair) {
  std::ofstream os(path);
  if (!os) throw MalformedInput("cannot write " + path.string());
  char buf[64];
  for (std::size_t i = 0; i < pair.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", pair.x[i], pair.y[i]);
    os << buf;
  }
}

int cmd_gen(const GenFlags& flags, const CliConfig& cfg, std::ostream& out) {
  const auto cause = parse_cause(flags.dist);
  const auto mech = parse_mechanism(flags.fun);
  const auto noise = parse_noise(flags.noise);
  if (!cause) throw InvalidArgument("unknown --dist '" + flags.dist + "'");
  if (!mech) throw InvalidArgument("unknown --fun '" + flags.fun + "'");
  if (!noise) throw InvalidArgument("unknown --noise '" + flags.noise + "'");
  if (flags.count > 1 && !flags.name.empty())
    throw InvalidArgument("--name cannot be combined with --count > 1");

  fs::create_directories(flags.out);
  for (std::size_t i = 0; i < flags.count; ++i) {
    GenSpec spec;
    spec.cause = {*cause, flags.k};
    spec.mechanism = Mechanism::standard(*mech);
    spec.noise = *noise;
    spec.n = flags.n;
    spec.seed = cfg.seed + i;
    const auto gen = gen_pair(spec);
    const std::string stem = flags.name.empty() ? gen.pair.name : flags.name;
    const fs::path dir(flags.out);
    write_pair(dir / (stem + ".txt"), gen.pair);
    std::ofstream(dir / (stem + ".truth")) << to_string(gen.truth) << '\n';
    out << (dir / (stem + ".txt")).string() << '\n';
  }
  return 0;
}

int cmd_batch(const std::string& dir, const std::string& meta,
              const std::string& out_dir, const CliConfig& cfg,
              std::ostream& out, std::ostream& err) {
  check_alpha(cfg.alpha);
  std::vector<PairSpec> specs;
  if (!meta.empty()) {
    std::vector<std::string> skipped;
    specs = load_meta(meta, &skipped);
    for (const auto& id : skipped) err << "skipping multivariate pair " << id << '\n';
  } else {
    specs = discover_truth_files(dir);
  }

  SuiteConfig sc;
  sc.infer = to_infer_config(cfg);
  sc.alpha = cfg.alpha;
  sc.threads = cfg.threads;
  const auto results = run_suite(dir, specs, sc);
  for (const auto& e : results)
    if (e.errored()) err << e.id << ": " << e.error << '\n';

  fs::create_directories(out_dir);
  {
    std::ofstream os(fs::path(out_dir) / "results.csv");
    write_results_csv(os, results);
  }
  const auto curve = decision_rate_curve(results);
  {
    std::ofstream os(fs::path(out_dir) / "decision_rate.csv");
    write_rate_csv(os, curve);
  }

  std::size_t significant = 0, scored = 0;
  for (const auto& e : results) {
    if (e.errored()) continue;
    ++scored;
    significant += e.significant ? 1 : 0;
  }
  out << "pairs scored        " << scored << " of " << results.size() << '\n'
      << "weighted accuracy   " << format_number(weighted_accuracy(results)) << '\n'
      << "significant (BH)    " << significant << " at alpha "
      << format_number(cfg.alpha) << '\n'
      << "results             " << (fs::path(out_dir) / "results.csv").string() << '\n'
      << "decision rate       " << (fs::path(out_dir) / "decision_rate.csv").string()
      << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cause-effect inference for numeric pairs by MDL regression"};
  app.require_subcommand(1);
  CliConfig cfg;

  std::string infer_file;
  int col_x = 1, col_y = 2;
  auto* infer_cmd = app.add_subcommand("infer", "Score one pair file");
  infer_cmd->add_option("file", infer_file, "Pair file")->required();
  infer_cmd->add_option("--col-x", col_x, "1-based column of X")->check(CLI::PositiveNumber);
  infer_cmd->add_option("--col-y", col_y, "1-based column of Y")->check(CLI::PositiveNumber);
  add_engine_flags(infer_cmd, cfg);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write synthetic pairs with truth files");
  gen_cmd->add_option("--dist", gen.dist, "Cause: u, g (sub-Gaussian), b, p, ek, n (Gaussian)");
  gen_cmd->add_option("--fun", gen.fun, "Mechanism: linear, cubic, reciprocal");
  gen_cmd->add_option("--noise", gen.noise, "Noise: u, g, n (non-additive)");
  gen_cmd->add_option("--n", gen.n, "Samples per pair")->check(CLI::Range(3, 100000000));
  gen_cmd->add_option("--k", gen.k, "Distinct values for --dist ek")->check(CLI::Range(2, 100000000));
  gen_cmd->add_option("--count", gen.count, "Number of pairs (seeds seed..seed+count-1)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", cfg.seed, "Seed of the first pair");
  gen_cmd->add_option("--out", gen.out, "Output directory");
  gen_cmd->add_option("--name", gen.name, "File stem (single pair only)");

  std::string batch_dir, meta, batch_out = "slope-out";
  auto* batch_cmd = app.add_subcommand("batch", "Score a directory of pairs");
  batch_cmd->add_option("dir", batch_dir, "Directory of <id>.txt pair files")->required();
  batch_cmd->add_option("--meta", meta, "pairmeta.txt; otherwise <id>.truth sidecars are used");
  batch_cmd->add_option("--out", batch_out, "Output directory for the CSVs");
  batch_cmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_engine_flags(batch_cmd, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*infer_cmd) return cmd_infer(infer_file, col_x, col_y, cfg, out);
    if (*gen_cmd) return cmd_gen(gen, cfg, out);
    if (*batch_cmd) return cmd_batch(batch_dir, meta, batch_out, cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace slope::cli
