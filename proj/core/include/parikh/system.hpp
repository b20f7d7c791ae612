#pragma once

// Non-negative Diophantine systems  A x + c = n  over N.

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace parikh {

/// k = 0 is allowed and describes the single point {offset}.
struct DiophantineSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Row-major, rows x cols, entries >= 0.
  std::vector<std::vector<std::int64_t>> a;
  /// Length rows; zero unless the system came from a shifted simple set.
  std::vector<std::int64_t> offset;

  static DiophantineSystem from_rows(std::vector<std::vector<std::int64_t>> rows,
                                     std::vector<std::int64_t> offset = {});

  std::vector<std::int64_t> column(std::size_t j) const;
  bool has_offset() const;

  /// Throws InvariantError on negative entries or a zero column,
  /// DimensionError on ragged input.
  void validate() const;

  /// "t k" line, t rows of k integers, optional "offset: c1 ... ct".
  std::string to_string() const;
};

/// Parses the text format above. Blank lines and '#' comments are skipped.
/// Errors are ParseError carrying the 1-based line number.
DiophantineSystem parse_system(std::istream& in);
DiophantineSystem parse_system(const std::string& text);

}  // namespace parikh
