#include "parikh/quasipoly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "parikh/errors.hpp"

namespace parikh {

std::size_t ResidueHash::operator()(const Residue& r) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : r) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Residue residue_of(std::span<const std::int64_t> x, std::int64_t period) {
  Residue r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = mod_floor(x[i], period);
  return r;
}

namespace {

// Calls f on every tuple in [0, period)^arity in lexicographic order.
template <typename F>
void for_each_residue(std::size_t arity, std::int64_t period, F&& f) {
  Residue r(arity, 0);
  while (true) {
    f(r);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++r[i] < period) break;
      r[i] = 0;
      if (i == 0) return;
    }
    if (arity == 0) return;
  }
}

Residue reduce(const Residue& r, std::int64_t period) {
  Residue out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] % period;
  return out;
}

}  // namespace

QuasiPolynomial::QuasiPolynomial(std::size_t arity, std::int64_t period)
    : arity_(arity), period_(period), zero_(arity) {
  if (period < 1) throw ArgumentError("QuasiPolynomial: period must be >= 1");
}

QuasiPolynomial QuasiPolynomial::from_polynomial(const MultiPoly& p) {
  QuasiPolynomial q(p.arity(), 1);
  q.set_piece(Residue(p.arity(), 0), p);
  return q;
}

const MultiPoly& QuasiPolynomial::piece(const Residue& r) const {
  auto it = pieces_.find(r);
  return it == pieces_.end() ? zero_ : it->second;
}

void QuasiPolynomial::set_piece(const Residue& r, MultiPoly p) {
  if (r.size() != arity_) throw DimensionError("QuasiPolynomial::set_piece: residue length != arity");
  if (p.arity() != arity_) throw DimensionError("QuasiPolynomial::set_piece: polynomial arity mismatch");
  for (auto v : r) {
    if (v < 0 || v >= period_) throw ArgumentError("QuasiPolynomial::set_piece: residue out of range");
  }
  if (p.is_zero()) {
    pieces_.erase(r);
  } else {
    pieces_.insert_or_assign(r, std::move(p));
  }
}

Rational QuasiPolynomial::eval(std::span<const std::int64_t> x) const {
  if (x.size() != arity_) throw DimensionError("qp_eval: point length != arity");
  return piece(residue_of(x, period_)).eval(x);
}

QuasiPolynomial QuasiPolynomial::canonicalize() const {
  for (std::int64_t d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool ok = true;
    for_each_residue(arity_, period_, [&](const Residue& r) {
      if (ok && piece(r) != piece(reduce(r, d))) ok = false;
    });
    if (!ok) continue;
    QuasiPolynomial out(arity_, d);
    for (const auto& [r, p] : pieces_) {
      if (std::all_of(r.begin(), r.end(), [d](auto v) { return v < d; })) out.set_piece(r, p);
    }
    return out;
  }
  return *this;
}

std::string QuasiPolynomial::to_string() const {
  std::ostringstream os;
  os << "period " << period_;
  for (const auto& [r, p] : pieces_) {
    os << "\n  (";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << ") " << p.to_string();
  }
  return os.str();
}

bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b) {
  if (a.arity_ != b.arity_) return false;
  if (a.period_ == b.period_) return a.pieces_ == b.pieces_;
  const std::int64_t k = lcm64(a.period_, b.period_);
  return qp_refit(a, k).pieces_ == qp_refit(b, k).pieces_;
}

QuasiPolynomial qp_add(const QuasiPolynomial& a, const QuasiPolynomial& b) {
  if (a.arity() != b.arity()) throw DimensionError("qp_add: arity mismatch");
  const std::int64_t d = lcm64(a.period(), b.period());
  QuasiPolynomial out(a.arity(), d);
  for_each_residue(a.arity(), d, [&](const Residue& r) {
    out.set_piece(r, a.piece(reduce(r, a.period())) + b.piece(reduce(r, b.period())));
  });
  return out;
}

QuasiPolynomial qp_negate(const QuasiPolynomial& a) {
  QuasiPolynomial out(a.arity(), a.period());
  for (const auto& [r, p] : a.pieces()) out.set_piece(r, -p);
  return out;
}

QuasiPolynomial qp_refit(const QuasiPolynomial& q, std::int64_t k) {
  if (k < 1 || k % q.period() != 0) throw ArgumentError("qp_refit: new period must be a multiple of the old one");
  QuasiPolynomial out(q.arity(), k);
  for_each_residue(q.arity(), k, [&](const Residue& r) { out.set_piece(r, q.piece(reduce(r, q.period()))); });
  return out;
}

namespace {

Integer round_inner(const Rational& v, InnerRounding mode) {
  return mode == InnerRounding::Floor ? floor(v) : ceil(v);
}

}  // namespace

std::int64_t floor_affine_period(std::span<const Rational> b, std::int64_t d) {
  if (d < 1) throw ArgumentError("floor_affine: d must be >= 1");
  Integer g = 1;
  for (const auto& c : b) g = lcm(g, c.get_den());
  if (!g.fits_slong_p()) throw ArgumentError("floor_affine: denominator lcm overflow");
  std::int64_t out = 0;
  if (__builtin_mul_overflow(g.get_si(), d, &out)) throw ArgumentError("floor_affine: period overflow");
  return out;
}

MultiPoly floor_affine_piece(std::span<const Rational> b, const Integer& k, std::int64_t d, InnerRounding mode,
                             const Residue& r) {
  if (r.size() != b.size()) throw DimensionError("floor_affine_piece: residue length != arity");
  // x = r + g*d*y  =>  round(b.x) = round(b.r) + d * (b.(x - r) / d) with the
  // second term an integer, so the floor splits into a constant plus an
  // affine form.
  Rational at_r = 0;
  for (std::size_t i = 0; i < b.size(); ++i) at_r += b[i] * Rational(r[i]);
  Integer head;
  const Integer numer = round_inner(at_r, mode) + k;
  mpz_fdiv_q_ui(head.get_mpz_t(), numer.get_mpz_t(), static_cast<unsigned long>(d));
  std::vector<Rational> slope(b.size());
  Rational constant = Rational(head);
  for (std::size_t i = 0; i < b.size(); ++i) {
    slope[i] = b[i] / Rational(d);
    constant -= slope[i] * Rational(r[i]);
  }
  return MultiPoly::affine(slope, constant);
}

Integer floor_affine_value(std::span<const Rational> b, const Integer& k, std::int64_t d, InnerRounding mode,
                           std::span<const std::int64_t> x) {
  if (x.size() != b.size()) throw DimensionError("floor_affine_value: point length != arity");
  Rational v = 0;
  for (std::size_t i = 0; i < b.size(); ++i) v += b[i] * Rational(x[i]);
  const Integer numer = round_inner(v, mode) + k;
  Integer out;
  mpz_fdiv_q_ui(out.get_mpz_t(), numer.get_mpz_t(), static_cast<unsigned long>(d));
  return out;
}

QuasiPolynomial floor_affine_qp(std::span<const Rational> b, const Integer& k, std::int64_t d, InnerRounding mode) {
  const std::int64_t period = floor_affine_period(b, d);
  QuasiPolynomial out(b.size(), period);
  for_each_residue(b.size(), period, [&](const Residue& r) { out.set_piece(r, floor_affine_piece(b, k, d, mode, r)); });
  return out;
}

LazyQuasiPolynomial::LazyQuasiPolynomial(std::size_t arity, std::int64_t period, Generator gen, Evaluator eval)
    : arity_(arity), period_(period), gen_(std::move(gen)), eval_(std::move(eval)) {
  if (period < 1) throw ArgumentError("LazyQuasiPolynomial: period must be >= 1");
}

LazyQP LazyQuasiPolynomial::zero(std::size_t arity) {
  auto q = std::make_shared<LazyQuasiPolynomial>(
      arity, 1, [arity](const Residue&) { return MultiPoly(arity); },
      [](std::span<const std::int64_t>) { return Rational(0); });
  q->known_zero_ = true;
  return q;
}

LazyQP LazyQuasiPolynomial::constant(std::size_t arity, const Rational& c) {
  if (sgn(c) == 0) return zero(arity);
  return std::make_shared<LazyQuasiPolynomial>(
      arity, 1, [arity, c](const Residue&) { return MultiPoly::constant(arity, c); },
      [c](std::span<const std::int64_t>) { return c; });
}

LazyQP LazyQuasiPolynomial::wrap(QuasiPolynomial q) {
  auto shared = std::make_shared<const QuasiPolynomial>(std::move(q));
  auto lazy = std::make_shared<LazyQuasiPolynomial>(
      shared->arity(), shared->period(), [shared](const Residue& r) { return shared->piece(r); },
      [shared](std::span<const std::int64_t> x) { return shared->eval(x); });
  lazy->known_zero_ = shared->pieces().empty();
  return lazy;
}

const MultiPoly& LazyQuasiPolynomial::at(const Residue& r) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(r); it != memo_.end()) return it->second;
  }
  MultiPoly p = gen_(r);
  std::lock_guard lock(mu_);
  return memo_.try_emplace(r, std::move(p)).first->second;
}

Rational LazyQuasiPolynomial::eval(std::span<const std::int64_t> x) const {
  if (x.size() != arity_) throw DimensionError("LazyQuasiPolynomial::eval: point length != arity");
  if (known_zero_) return 0;
  if (eval_) return eval_(x);
  return at(residue_of(x, period_)).eval(x);
}

std::int64_t LazyQuasiPolynomial::residue_count() const {
  std::int64_t n = 1;
  for (std::size_t i = 0; i < arity_; ++i) {
    if (__builtin_mul_overflow(n, period_, &n)) return std::numeric_limits<std::int64_t>::max();
  }
  return n;
}

QuasiPolynomial LazyQuasiPolynomial::materialize() const {
  QuasiPolynomial out(arity_, period_);
  if (known_zero_) return out;
  for_each_residue(arity_, period_, [&](const Residue& r) { out.set_piece(r, at(r)); });
  return out;
}

LazyQP lazy_sum(std::size_t arity, std::vector<std::pair<int, LazyQP>> terms) {
  std::erase_if(terms, [](const auto& t) { return t.second->known_zero(); });
  if (terms.empty()) return LazyQuasiPolynomial::zero(arity);
  if (terms.size() == 1 && terms.front().first == 1) return terms.front().second;
  std::int64_t period = 1;
  for (const auto& [s, q] : terms) period = lcm64(period, q->period());
  auto shared = std::make_shared<const std::vector<std::pair<int, LazyQP>>>(std::move(terms));
  auto gen = [shared, arity](const Residue& r) {
    MultiPoly sum(arity);
    for (const auto& [s, q] : *shared) {
      const auto& p = q->at(reduce(r, q->period()));
      if (s > 0) {
        sum += p;
      } else {
        sum -= p;
      }
    }
    return sum;
  };
  auto eval = [shared](std::span<const std::int64_t> x) {
    Rational sum = 0;
    for (const auto& [s, q] : *shared) {
      if (s > 0) {
        sum += q->eval(x);
      } else {
        sum -= q->eval(x);
      }
    }
    return sum;
  };
  return std::make_shared<LazyQuasiPolynomial>(arity, period, gen, eval);
}

}  // namespace parikh
