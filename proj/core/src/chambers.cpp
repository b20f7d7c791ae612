#include "parikh/chambers.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "parikh/errors.hpp"

namespace parikh {

namespace {

int sign_of(__int128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

char sign_char(int s) { return s > 0 ? '+' : (s < 0 ? '-' : '0'); }

}  // namespace

std::optional<Hyperplane> Hyperplane::from_coefficients(std::span<const Rational> coefficients) {
  Integer den = 1;
  for (const auto& c : coefficients) den = lcm(den, c.get_den());
  std::vector<Integer> ints(coefficients.size());
  Integer g = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    Rational scaled = coefficients[i] * Rational(den);
    ints[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) return std::nullopt;
  int lead = 0;
  for (const auto& v : ints) {
    if (sgn(v) != 0) {
      lead = sgn(v);
      break;
    }
  }
  Hyperplane h;
  h.normal_.resize(ints.size());
  for (std::size_t i = 0; i < ints.size(); ++i) {
    Integer v = ints[i] / g;
    if (lead < 0) v = -v;
    if (!v.fits_slong_p()) throw ArgumentError("Hyperplane: normal coefficient exceeds 64 bits");
    h.normal_[i] = v.get_si();
  }
  return h;
}

std::optional<Hyperplane> Hyperplane::from_coefficients(std::span<const std::int64_t> coefficients) {
  std::vector<Rational> q(coefficients.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = Rational(static_cast<long>(coefficients[i]));
  return from_coefficients(q);
}

Hyperplane Hyperplane::coordinate(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("Hyperplane::coordinate: index out of range");
  Hyperplane h;
  h.normal_.assign(dim, 0);
  h.normal_[index] = 1;
  return h;
}

bool Hyperplane::sign_definite() const {
  bool pos = false;
  bool neg = false;
  for (auto v : normal_) {
    pos = pos || v > 0;
    neg = neg || v < 0;
  }
  return !(pos && neg);
}

int Hyperplane::sign_at(std::span<const std::int64_t> x) const {
  if (x.size() != normal_.size()) throw DimensionError("sign_vector: point dimension mismatch");
  __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<__int128>(normal_[i]) * x[i];
  return sign_of(acc);
}

int Hyperplane::sign_at(std::span<const Rational> x) const {
  if (x.size() != normal_.size()) throw DimensionError("sign_vector: point dimension mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (normal_[i] != 0) acc += Rational(static_cast<long>(normal_[i])) * x[i];
  }
  return sgn(acc);
}

std::string Hyperplane::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < normal_.size(); ++i) {
    const auto c = normal_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const auto mag = c < 0 ? -c : c;
    if (mag != 1) os << mag << "*";
    os << "x" << (i + 1);
    first = false;
  }
  return os.str();
}

Arrangement::Arrangement(std::size_t dim) : dim_(dim) {
  for (std::size_t i = 0; i < dim; ++i) add(Hyperplane::coordinate(dim, i));
}

bool Arrangement::add(const Hyperplane& h) {
  if (h.dim() != dim_) throw DimensionError("Arrangement::add: hyperplane dimension mismatch");
  auto [it, inserted] = index_.try_emplace(h, planes_.size());
  if (inserted) planes_.push_back(h);
  return inserted;
}

std::optional<std::size_t> Arrangement::index_of(const Hyperplane& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SignVector::all_zero() const {
  return std::all_of(signs.begin(), signs.end(), [](char c) { return c == '0'; });
}

SignVector SignVector::restrict_to(std::span<const std::size_t> indices) const {
  SignVector out;
  out.signs.reserve(indices.size());
  for (auto i : indices) out.signs.push_back(signs[i]);
  return out;
}

SignVector sign_vector(const Arrangement& arr, std::span<const std::int64_t> x) {
  if (x.size() != arr.dim()) throw DimensionError("sign_vector: point dimension mismatch");
  SignVector s;
  s.signs.resize(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) s.signs[i] = sign_char(arr[i].sign_at(x));
  return s;
}

SignVector sign_vector(const Arrangement& arr, std::span<const Rational> x) {
  if (x.size() != arr.dim()) throw DimensionError("sign_vector: point dimension mismatch");
  SignVector s;
  s.signs.resize(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) s.signs[i] = sign_char(arr[i].sign_at(x));
  return s;
}

namespace {

// Row a.x >= b.
struct Inequality {
  std::vector<Rational> a;
  Rational b;
};

// Scales a row so its first nonzero coefficient has magnitude 1, making
// duplicate detection meaningful.
Inequality normalize_row(Inequality row) {
  for (const auto& c : row.a) {
    if (sgn(c) != 0) {
      Rational s = abs(c);
      for (auto& v : row.a) v /= s;
      row.b /= s;
      break;
    }
  }
  return row;
}

bool fourier_motzkin_feasible(std::vector<Inequality> rows, std::size_t dim) {
  for (std::size_t var = 0; var < dim; ++var) {
    std::vector<Inequality> pos, neg, rest;
    for (auto& r : rows) {
      const int s = sgn(r.a[var]);
      (s > 0 ? pos : (s < 0 ? neg : rest)).push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        // p.a[var] > 0 > n.a[var]: combine to cancel var.
        const Rational wp = -n.a[var];
        const Rational wn = p.a[var];
        Inequality c;
        c.a.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) c.a[i] = wp * p.a[i] + wn * n.a[i];
        c.b = wp * p.b + wn * n.b;
        rest.push_back(normalize_row(std::move(c)));
      }
    }
    // Deduplicate keeping the strongest bound per direction.
    std::map<std::vector<Rational>, Rational> best;
    for (auto& r : rest) {
      auto [it, inserted] = best.try_emplace(r.a, r.b);
      if (!inserted && r.b > it->second) it->second = r.b;
    }
    rows.clear();
    for (auto& [a, b] : best) rows.push_back({a, b});
  }
  return std::all_of(rows.begin(), rows.end(), [](const Inequality& r) { return sgn(r.b) <= 0; });
}

}  // namespace

bool is_realizable(const Arrangement& arr, const SignVector& s) {
  if (s.size() != arr.size()) throw DimensionError("is_realizable: sign vector length mismatch");
  const std::size_t t = arr.dim();
  std::vector<Inequality> rows;
  for (std::size_t i = 0; i < t; ++i) {
    Inequality r{std::vector<Rational>(t), Rational(0)};
    r.a[i] = 1;
    rows.push_back(r);
  }
  for (std::size_t h = 0; h < arr.size(); ++h) {
    std::vector<Rational> n(t);
    for (std::size_t i = 0; i < t; ++i) n[i] = Rational(static_cast<long>(arr[h].normal()[i]));
    auto negated = n;
    for (auto& v : negated) v = -v;
    switch (s[h]) {
      case '+':
        rows.push_back({n, Rational(1)});
        break;
      case '-':
        rows.push_back({negated, Rational(1)});
        break;
      case '0':
        rows.push_back({n, Rational(0)});
        rows.push_back({negated, Rational(0)});
        break;
      default:
        throw ArgumentError("is_realizable: sign entries must be '+', '0' or '-'");
    }
  }
  return fourier_motzkin_feasible(std::move(rows), t);
}

namespace {

class TableProvider final : public PieceProvider {
 public:
  TableProvider(std::size_t dim, std::map<SignVector, LazyQP> pieces) : dim_(dim), pieces_(std::move(pieces)) {}

  LazyQP derive(const SignVector& region, std::span<const Rational>) const override {
    auto it = pieces_.find(region);
    return it == pieces_.end() ? LazyQuasiPolynomial::zero(dim_) : it->second;
  }

 private:
  std::size_t dim_;
  std::map<SignVector, LazyQP> pieces_;
};

class SumProvider final : public PieceProvider {
 public:
  SumProvider(const Arrangement& merged, BoxSpline a, BoxSpline b) : a_(std::move(a)), b_(std::move(b)) {
    for (const auto& h : a_.arrangement().planes()) a_index_.push_back(*merged.index_of(h));
    for (const auto& h : b_.arrangement().planes()) b_index_.push_back(*merged.index_of(h));
  }

  LazyQP derive(const SignVector& region, std::span<const Rational> witness) const override {
    auto pa = a_.piece(region.restrict_to(a_index_), witness);
    auto pb = b_.piece(region.restrict_to(b_index_), witness);
    return lazy_sum(a_.dim(), {{1, pa}, {1, pb}});
  }

 private:
  BoxSpline a_;
  BoxSpline b_;
  std::vector<std::size_t> a_index_;
  std::vector<std::size_t> b_index_;
};

}  // namespace

BoxSpline::BoxSpline(Arrangement arr, std::shared_ptr<const PieceProvider> provider, Overrides overrides)
{
  for (const auto& [x, v] : overrides) {
    if (x.size() != arr.dim()) throw DimensionError("BoxSpline: override point dimension mismatch");
    if (sgn(v) < 0) throw InvariantError("BoxSpline: override values must be non-negative");
    if (std::any_of(x.begin(), x.end(), [](auto c) { return c < 0; })) {
      throw InvariantError("BoxSpline: override points must lie in N^t");
    }
  }
  state_ = std::make_shared<State>(std::move(arr), std::move(provider), std::move(overrides));
}

BoxSpline BoxSpline::zero(std::size_t dim) {
  return BoxSpline(Arrangement(dim), std::make_shared<TableProvider>(dim, std::map<SignVector, LazyQP>{}));
}

BoxSpline BoxSpline::from_table(Arrangement arr, const std::map<SignVector, QuasiPolynomial>& pieces,
                                Overrides overrides) {
  std::map<SignVector, LazyQP> lazy;
  for (const auto& [s, q] : pieces) {
    if (q.arity() != arr.dim()) throw DimensionError("BoxSpline::from_table: piece arity mismatch");
    if (!is_realizable(arr, s)) throw InvariantError("BoxSpline::from_table: sign vector " + s.signs + " is empty");
    lazy.emplace(s, LazyQuasiPolynomial::wrap(q));
  }
  const auto dim = arr.dim();
  return BoxSpline(std::move(arr), std::make_shared<TableProvider>(dim, std::move(lazy)), std::move(overrides));
}

LazyQP BoxSpline::piece(const SignVector& region, std::span<const Rational> witness) const {
  {
    std::lock_guard lock(state_->mu);
    if (auto it = state_->cache.find(region.signs); it != state_->cache.end()) return it->second;
  }
  LazyQP p = state_->provider->derive(region, witness);
  std::lock_guard lock(state_->mu);
  return state_->cache.try_emplace(region.signs, std::move(p)).first->second;
}

LazyQP BoxSpline::piece_at(std::span<const std::int64_t> x) const {
  const SignVector s = sign_vector(arrangement(), x);
  {
    std::lock_guard lock(state_->mu);
    if (auto it = state_->cache.find(s.signs); it != state_->cache.end()) return it->second;
  }
  std::vector<Rational> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = Rational(static_cast<long>(x[i]));
  return piece(s, w);
}

std::size_t BoxSpline::cached_regions() const {
  std::lock_guard lock(state_->mu);
  return state_->cache.size();
}

BoxSpline BoxSpline::with_overrides(Overrides overrides) const {
  return BoxSpline(state_->arr, state_->provider, std::move(overrides));
}

Integer bs_eval(const BoxSpline& b, std::span<const std::int64_t> x) {
  if (x.size() != b.dim()) throw DimensionError("bs_eval: point dimension mismatch");
  if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v < 0; })) {
    throw ArgumentError("bs_eval: point must be non-negative");
  }
  if (!b.overrides().empty()) {
    auto it = b.overrides().find(Point(x.begin(), x.end()));
    if (it != b.overrides().end()) return it->second;
  }
  const Rational v = b.piece_at(x)->eval(x);
  if (!is_integer(v) || sgn(v) < 0) {
    std::ostringstream os;
    os << "bs_eval: region piece produced " << to_string(v) << " at (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ")";
    throw ConsistencyError(os.str());
  }
  return v.get_num();
}

BoxSpline bs_add(const BoxSpline& a, const BoxSpline& b) {
  if (a.dim() != b.dim()) throw DimensionError("bs_add: dimension mismatch");
  Arrangement merged = a.arrangement();
  for (const auto& h : b.arrangement().planes()) merged.add(h);
  auto provider = std::make_shared<SumProvider>(merged, a, b);
  BoxSpline::Overrides overrides;
  std::set<Point> points;
  for (const auto& [x, v] : a.overrides()) points.insert(x);
  for (const auto& [x, v] : b.overrides()) points.insert(x);
  for (const auto& x : points) overrides.emplace(x, bs_eval(a, x) + bs_eval(b, x));
  return BoxSpline(std::move(merged), std::move(provider), std::move(overrides));
}

std::vector<RegionEntry> enumerate_regions(const BoxSpline& b, std::int64_t bound) {
  if (bound < 1) throw ArgumentError("enumerate_regions: bound must be >= 1");
  std::map<SignVector, Point> first;
  for_each_box_point(b.dim(), bound, [&](const Point& x) { first.try_emplace(sign_vector(b.arrangement(), x), x); });
  std::vector<RegionEntry> out;
  out.reserve(first.size());
  for (auto& [s, x] : first) out.push_back({s, x, b.piece_at(x)});
  return out;
}

}  // namespace parikh
