#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace slope {

/// Paired observations of two univariate numeric variables.
struct NumericPair {
  std::vector<double> x;
  std::vector<double> y;
  std::string name;
  double weight = 1.0;

  std::size_t size() const { return x.size(); }
};

/// Checks length, minimum size and finiteness. Throws TooFewRows or
/// MalformedInput.
void validate(const NumericPair& pair);

/// A min-max normalized sequence and its resolution (smallest positive gap
/// between distinct values).
struct Normalized {
  std::vector<double> values;
  double tau = 1.0;
};

struct NormalizedPair {
  std::vector<double> x;
  std::vector<double> y;
  double tau_x = 1.0;
  double tau_y = 1.0;
  const NumericPair* source = nullptr;

  std::size_t size() const { return x.size(); }
};

/// Reads whitespace-separated columns `col_x` and `col_y` (1-based). Blank
/// lines and lines starting with '#' are skipped.
NumericPair load_pair(const std::filesystem::path& path, int col_x, int col_y);

/// Same as load_pair but reading from an in-memory text.
NumericPair parse_pair(const std::string& text, int col_x, int col_y,
                       const std::string& name = {});

/// Maps values onto [0,1]. Throws DegenerateInput if fewer than two distinct
/// values are present.
Normalized normalize(std::span<const double> values);

NormalizedPair normalize(const NumericPair& pair);

/// Smallest positive gap between distinct values; 1.0 if there are fewer than
/// two distinct values.
double resolution(std::span<const double> values);

/// Number of distinct values (exact equality).
std::size_t count_distinct(std::span<const double> values);

/// Target values sharing one duplicated source value, sorted ascending.
struct DuplicateGroup {
  double x_value = 0.0;
  std::vector<double> ys;
  std::vector<std::size_t> rows;  // row indices, in the order of `ys`
};

/// One entry per source value occurring at least twice, in ascending order.
std::vector<DuplicateGroup> group_duplicates(std::span<const double> source,
                                             std::span<const double> target);

inline std::vector<DuplicateGroup> group_duplicates(const NormalizedPair& p) {
  return group_duplicates(p.x, p.y);
}

}  // namespace slope
