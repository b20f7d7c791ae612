#include "parikh/system.hpp"

#include <sstream>

#include "parikh/errors.hpp"

namespace parikh {

DiophantineSystem DiophantineSystem::from_rows(std::vector<std::vector<std::int64_t>> rows,
                                               std::vector<std::int64_t> offset) {
  DiophantineSystem s;
  s.rows = rows.size();
  s.cols = rows.empty() ? 0 : rows.front().size();
  s.a = std::move(rows);
  s.offset = offset.empty() ? std::vector<std::int64_t>(s.rows, 0) : std::move(offset);
  s.validate();
  return s;
}

std::vector<std::int64_t> DiophantineSystem::column(std::size_t j) const {
  if (j >= cols) throw DimensionError("DiophantineSystem::column: index out of range");
  std::vector<std::int64_t> c(rows);
  for (std::size_t i = 0; i < rows; ++i) c[i] = a[i][j];
  return c;
}

bool DiophantineSystem::has_offset() const {
  for (auto v : offset) {
    if (v != 0) return true;
  }
  return false;
}

void DiophantineSystem::validate() const {
  if (rows < 1) throw DimensionError("DiophantineSystem: need t >= 1");
  if (a.size() != rows || offset.size() != rows) throw DimensionError("DiophantineSystem: row count mismatch");
  for (const auto& r : a) {
    if (r.size() != cols) throw DimensionError("DiophantineSystem: ragged matrix");
    for (auto v : r) {
      if (v < 0) throw InvariantError("DiophantineSystem: entries must be non-negative");
    }
  }
  for (auto v : offset) {
    if (v < 0) throw InvariantError("DiophantineSystem: offset entries must be non-negative");
  }
  for (std::size_t j = 0; j < cols; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < rows; ++i) nonzero = nonzero || a[i][j] != 0;
    if (!nonzero) throw InvariantError("DiophantineSystem: column " + std::to_string(j + 1) + " is zero");
  }
}

std::string DiophantineSystem::to_string() const {
  std::ostringstream os;
  os << rows << " " << cols << "\n";
  for (const auto& r : a) {
    if (r.empty()) continue;
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << r[j];
    os << "\n";
  }
  if (has_offset()) {
    os << "offset:";
    for (auto v : offset) os << " " << v;
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::int64_t> parse_ints(const std::string& text, int line) {
  std::istringstream is(text);
  std::vector<std::int64_t> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

DiophantineSystem parse_system(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(number, raw);
  }
  if (lines.empty()) throw ParseError(number == 0 ? 1 : number, "empty system file");
  const auto header = parse_ints(lines[0].second, lines[0].first);
  if (header.size() != 2 || header[0] < 1 || header[1] < 1) {
    throw ParseError(lines[0].first, "header must be 't k' with t, k >= 1");
  }
  const auto t = static_cast<std::size_t>(header[0]);
  const auto k = static_cast<std::size_t>(header[1]);
  if (lines.size() < t + 1) throw ParseError(lines.back().first, "expected " + std::to_string(t) + " matrix rows");
  DiophantineSystem s;
  s.rows = t;
  s.cols = k;
  for (std::size_t i = 0; i < t; ++i) {
    const auto& [ln, text] = lines[i + 1];
    auto row = parse_ints(text, ln);
    if (row.size() != k) throw ParseError(ln, "expected " + std::to_string(k) + " entries");
    for (auto v : row) {
      if (v < 0) throw ParseError(ln, "matrix entries must be non-negative");
    }
    s.a.push_back(std::move(row));
  }
  s.offset.assign(t, 0);
  for (std::size_t i = t + 1; i < lines.size(); ++i) {
    const auto& [ln, text] = lines[i];
    const auto colon = text.find(':');
    if (colon == std::string::npos || text.substr(0, colon).find("offset") == std::string::npos ||
        i != t + 1) {
      throw ParseError(ln, "unexpected trailing content");
    }
    auto c = parse_ints(text.substr(colon + 1), ln);
    if (c.size() != t) throw ParseError(ln, "offset needs " + std::to_string(t) + " entries");
    for (auto v : c) {
      if (v < 0) throw ParseError(ln, "offset entries must be non-negative");
    }
    s.offset = std::move(c);
  }
  for (std::size_t j = 0; j < k; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < t; ++i) nonzero = nonzero || s.a[i][j] != 0;
    if (!nonzero) throw InvariantError("DiophantineSystem: column " + std::to_string(j + 1) + " is zero");
  }
  return s;
}

DiophantineSystem parse_system(const std::string& text) {
  std::istringstream is(text);
  return parse_system(is);
}

}  // namespace parikh
