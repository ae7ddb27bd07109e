#include "slope/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "slope/error.hpp"

namespace slope {
namespace {

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool skip_line(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

void validate(const NumericPair& pair) {
  if (pair.x.size() != pair.y.size())
    throw MalformedInput("x and y differ in length");
  if (pair.x.size() < 3)
    throw TooFewRows("need at least 3 observations, got " +
                     std::to_string(pair.x.size()));
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(pair.x.begin(), pair.x.end(), finite) ||
      !std::all_of(pair.y.begin(), pair.y.end(), finite))
    throw MalformedInput("non-finite value in pair");
  if (!(pair.weight >= 0.0)) throw MalformedInput("negative weight");
}

NumericPair parse_pair(const std::string& text, int col_x, int col_y,
                       const std::string& name) {
  if (col_x < 1 || col_y < 1)
    throw MalformedInput("column indices are 1-based");
  const auto needed = static_cast<std::size_t>(std::max(col_x, col_y));

  NumericPair pair;
  pair.name = name;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    row.clear();
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      double v = 0.0;
      if (!parse_double(tok, v))
        throw MalformedInput("line " + std::to_string(line_no) +
                             ": non-numeric token '" + tok + "'");
      row.push_back(v);
    }
    if (row.size() < needed)
      throw MalformedInput("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(needed) + " columns, found " +
                           std::to_string(row.size()));
    pair.x.push_back(row[col_x - 1]);
    pair.y.push_back(row[col_y - 1]);
  }
  validate(pair);
  return pair;
}

NumericPair load_pair(const std::filesystem::path& path, int col_x, int col_y) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pair(buf.str(), col_x, col_y, path.stem().string());
}

double resolution(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double tau = 0.0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0 && (tau == 0.0 || gap < tau)) tau = gap;
  }
  return tau > 0.0 ? tau : 1.0;
}

std::size_t count_distinct(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

Normalized normalize(std::span<const double> values) {
  if (values.empty()) throw DegenerateInput("empty sequence");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  if (!(range > 0.0))
    throw DegenerateInput("all values are equal; no resolution exists");

  Normalized out;
  out.values.reserve(values.size());
  for (double v : values) out.values.push_back((v - min) / range);
  // Pin the extremes so the range is exactly [0,1].
  out.values[lo - values.begin()] = 0.0;
  out.values[hi - values.begin()] = 1.0;
  for (double& v : out.values) v = std::clamp(v, 0.0, 1.0);
  out.tau = std::min(resolution(out.values), 1.0);
  return out;
}

NormalizedPair normalize(const NumericPair& pair) {
  validate(pair);
  auto nx = normalize(pair.x);
  auto ny = normalize(pair.y);
  NormalizedPair out;
  out.x = std::move(nx.values);
  out.y = std::move(ny.values);
  out.tau_x = nx.tau;
  out.tau_y = ny.tau;
  out.source = &pair;
  return out;
}

std::vector<DuplicateGroup> group_duplicates(std::span<const double> source,
                                             std::span<const double> target) {
  std::map<double, std::vector<std::size_t>> by_value;
  for (std::size_t i = 0; i < source.size(); ++i)
    by_value[source[i]].push_back(i);

  std::vector<DuplicateGroup> groups;
  for (auto& [value, rows] : by_value) {
    if (rows.size() < 2) continue;
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      return target[a] < target[b];
    });
    DuplicateGroup g;
    g.x_value = value;
    g.rows = rows;
    g.ys.reserve(rows.size());
    for (auto r : rows) g.ys.push_back(target[r]);
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace slope
