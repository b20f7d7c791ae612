#include "parikh/exactmath.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "parikh/errors.hpp"

namespace parikh {

namespace {

std::uint64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

// C(x + 1, r + 1) as a univariate polynomial in x.
MultiPoly shifted_binomial(unsigned r) {
  MultiPoly result = MultiPoly::constant(1, 1);
  Integer factorial = 1;
  for (unsigned i = 0; i <= r; ++i) {
    // factor (x + 1 - i)
    MultiPoly factor = MultiPoly::variable(1, 0);
    factor.add_term(Exponent{0}, Rational(1 - static_cast<long>(i)));
    result = result * factor;
    factorial *= (i + 1);
  }
  return result * Rational(Integer(1), factorial);
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& r) { return -floor(-r); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

bool is_canonical(const Rational& r) {
  if (sgn(r.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw ArgumentError("lcm64: arguments must be positive");
  const std::int64_t g = std::gcd(a, b);
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) throw ArgumentError("lcm64: period overflow");
  return out;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw DimensionError("MultiPoly::variable: index out of range");
  MultiPoly p(arity);
  Exponent e(arity, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

MultiPoly MultiPoly::affine(std::span<const Rational> coeffs, const Rational& c) {
  MultiPoly p(coeffs.size());
  p.add_term(Exponent(coeffs.size(), 0), c);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    Exponent e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent(arity_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != arity_) throw DimensionError("MultiPoly::add_term: exponent length != arity");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.arity_ != arity_) throw DimensionError("MultiPoly: arity mismatch in +");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.arity_ != arity_) throw DimensionError("MultiPoly: arity mismatch in -");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity_ != b.arity_) throw DimensionError("MultiPoly: arity mismatch in *");
  MultiPoly out(a.arity_);
  Exponent e(a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

namespace {

template <typename T>
Rational eval_impl(const MultiPoly& p, std::span<const T> x) {
  if (x.size() != p.arity()) throw DimensionError("MultiPoly::eval: point length != arity");
  const std::size_t t = x.size();
  // powers[i][k] = x_i^k, filled lazily up to the degree used.
  std::vector<std::vector<Rational>> powers(t);
  for (std::size_t i = 0; i < t; ++i) powers[i].push_back(Rational(1));
  Rational sum = 0;
  Rational term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < t; ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * Rational(x[i]));
      term *= pw[e[i]];
    }
    sum += term;
  }
  return sum;
}

}  // namespace

Rational MultiPoly::eval(std::span<const Rational> x) const { return eval_impl(*this, x); }

Rational MultiPoly::eval(std::span<const Integer> x) const { return eval_impl(*this, x); }

Rational MultiPoly::eval(std::span<const std::int64_t> x) const {
  std::vector<Integer> big(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) big[i] = Integer(static_cast<long>(x[i]));
  return eval_impl<Integer>(*this, big);
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(arity_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::extend_arity(std::size_t extra) const {
  MultiPoly r(arity_ + extra);
  for (const auto& [e, c] : terms_) {
    Exponent ext = e;
    ext.resize(arity_ + extra, 0);
    r.terms_.emplace(std::move(ext), c);
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in_last() const {
  if (arity_ == 0) throw DimensionError("coefficients_in_last: arity 0");
  const int n = degree_in(arity_ - 1);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(n + 1, 0)), MultiPoly(arity_ - 1));
  for (const auto& [e, c] : terms_) {
    Exponent head(e.begin(), e.end() - 1);
    out[e.back()].add_term(head, c);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    const bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool is_const = total_degree(e) == 0;
    bool wrote = false;
    if (is_const || mag != 1) {
      os << parikh::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

MultiPoly poly_substitute(const MultiPoly& p, std::span<const MultiPoly> subs) {
  if (subs.size() != p.arity()) throw DimensionError("poly_substitute: need one substitute per variable");
  if (subs.empty()) return p;
  const std::size_t out_arity = subs.front().arity();
  for (const auto& s : subs) {
    if (s.arity() != out_arity) throw DimensionError("poly_substitute: substitutes disagree in arity");
  }
  // Cache powers of each substitute; terms share them heavily.
  std::vector<std::vector<MultiPoly>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) powers[i].push_back(MultiPoly::constant(out_arity, 1));
  MultiPoly result(out_arity);
  for (const auto& [e, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(out_arity, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * subs[i]);
      term = term * pw[e[i]];
    }
    result += term;
  }
  return result;
}

MultiPoly power_sum_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, MultiPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  // k^m = sum_i b_i C(k, i); solve the unit-triangular system on k = 0..m.
  std::vector<Integer> b(m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    Integer km;
    mpz_ui_pow_ui(km.get_mpz_t(), k, m);
    Integer acc = 0;
    for (unsigned i = 0; i < k; ++i) acc += b[i] * binomial(k, i);
    b[k] = km - acc;
  }
  // sum_{k<=n} C(k, i) = C(n + 1, i + 1)
  MultiPoly p(1);
  for (unsigned i = 0; i <= m; ++i) {
    if (b[i] == 0) continue;
    p += shifted_binomial(i) * Rational(b[i]);
  }
  std::lock_guard lock(mu);
  return cache.try_emplace(m, std::move(p)).first->second;
}

MultiPoly prefix_sum_polynomial(const MultiPoly& q) {
  if (q.arity() == 0) throw DimensionError("prefix_sum_polynomial: needs a summation variable");
  const std::size_t t = q.arity() - 1;
  const auto coeffs = q.coefficients_in_last();
  MultiPoly result(q.arity());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    // a_j(x_1..x_t) * p_j(x): lift both into t + 1 variables.
    const MultiPoly pj = power_sum_polynomial(static_cast<unsigned>(j));
    MultiPoly lifted_pj(q.arity());
    for (const auto& [e, c] : pj.terms()) {
      Exponent ext(q.arity(), 0);
      ext[t] = e[0];
      lifted_pj.add_term(ext, c);
    }
    result += coeffs[j].extend_arity(1) * lifted_pj;
  }
  return result;
}

}  // namespace parikh
