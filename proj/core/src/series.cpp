#include "parikh/series.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "parikh/errors.hpp"

namespace parikh {

namespace {

std::int64_t total(const Monomial& m) { return std::accumulate(m.begin(), m.end(), std::int64_t{0}); }

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += "x" + std::to_string(i + 1);
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

using Truncated = std::map<Monomial, Integer>;

// a * b, keeping total degree <= degree.
Truncated multiply(const Truncated& a, const Truncated& b, std::int64_t degree) {
  Truncated out;
  for (const auto& [ma, ca] : a) {
    const std::int64_t da = total(ma);
    for (const auto& [mb, cb] : b) {
      if (da + total(mb) > degree) continue;
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  }
  return out;
}

}  // namespace

void RationalSeriesExpr::validate() const {
  for (const auto& t : terms) {
    if (t.numerator.size() != vars) throw DimensionError("series term arity mismatch");
    for (auto v : t.numerator) {
      if (v < 0) throw InvariantError("series exponents must be non-negative");
    }
    for (const auto& d : t.denominators) {
      if (d.size() != vars) throw DimensionError("series factor arity mismatch");
      if (std::any_of(d.begin(), d.end(), [](std::int64_t v) { return v < 0; })) {
        throw InvariantError("series exponents must be non-negative");
      }
      if (total(d) == 0) throw InvariantError("denominator monomial must not be 1");
    }
  }
}

std::string RationalSeriesExpr::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    const auto& t = terms[i];
    os << monomial_text(t.numerator);
    if (t.denominators.empty()) continue;
    os << " / ";
    if (t.denominators.size() == 1) {
      os << "(1 - " << monomial_text(t.denominators[0]) << ")";
      continue;
    }
    os << "(";
    for (const auto& d : t.denominators) os << "(1 - " << monomial_text(d) << ")";
    os << ")";
  }
  return os.str();
}

RationalSeriesExpr generating_function(const std::vector<DiophantineSystem>& systems) {
  RationalSeriesExpr e;
  if (systems.empty()) return e;
  e.vars = systems.front().rows;
  for (const auto& s : systems) {
    s.validate();
    if (s.rows != e.vars) throw DimensionError("generating_function: systems must share t");
    SeriesTerm t;
    t.numerator = s.offset.empty() ? Monomial(e.vars, 0) : Monomial(s.offset.begin(), s.offset.end());
    for (std::size_t j = 0; j < s.cols; ++j) t.denominators.push_back(s.column(j));
    e.terms.push_back(std::move(t));
  }
  e.validate();
  return e;
}

std::map<Monomial, Integer> taylor_coefficients(const RationalSeriesExpr& e, std::int64_t degree) {
  if (degree < 0) throw ArgumentError("degree must be non-negative");
  e.validate();
  std::map<Monomial, Integer> out;
  const std::size_t t = e.vars;
  Monomial m(t, 0);
  std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t i, std::int64_t left) {
    if (i == t) {
      out[m] = 0;
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      m[i] = v;
      fill(i + 1, left - v);
    }
    m[i] = 0;
  };
  fill(0, degree);
  for (const auto& term : e.terms) {
    if (total(term.numerator) > degree) continue;
    Truncated acc{{term.numerator, Integer(1)}};
    for (const auto& d : term.denominators) {
      Truncated geometric;
      const std::int64_t step = total(d);
      Monomial power(t, 0);
      for (std::int64_t k = 0; k * step <= degree; ++k) {
        geometric[power] = 1;
        for (std::size_t i = 0; i < t; ++i) power[i] += d[i];
      }
      acc = multiply(acc, geometric, degree);
    }
    for (const auto& [mono, c] : acc) out[mono] += c;
  }
  return out;
}

}  // namespace parikh
