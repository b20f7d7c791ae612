#include "linalg.hpp"

#include "parikh/errors.hpp"

namespace parikh::detail {

RMatrix to_rational(const std::vector<std::vector<std::int64_t>>& m) {
  RMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (auto v : m[i]) out[i].emplace_back(static_cast<long>(v));
  }
  return out;
}

std::vector<std::size_t> rref(RMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols) {
  RMatrix m = to_rational(rows);
  return rref(m, cols).size();
}

std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<std::int64_t>>& vectors,
                                                 std::size_t dim) {
  const std::size_t n = vectors.size();
  // Matrix with the vectors as columns: dim x n.
  RMatrix m(dim, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = Rational(static_cast<long>(vectors[j][i]));
  }
  const auto pivots = rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Integer>> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> z(n);
    z[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = -m[r][f];
    Integer den = 1;
    for (const auto& v : z) den = lcm(den, v.get_den());
    std::vector<Integer> zi(n);
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      zi[i] = Rational(z[i] * Rational(den)).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zi[i].get_mpz_t());
    }
    for (auto& v : zi) v /= g;
    out.push_back(std::move(zi));
  }
  return out;
}

RMatrix inverse(const RMatrix& m) {
  const std::size_t n = m.size();
  RMatrix aug(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug, n);
  if (pivots.size() != n) throw ArgumentError("inverse: singular matrix");
  RMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  }
  return out;
}

}  // namespace parikh::detail
