#include "parikh/partition.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "parikh/errors.hpp"

namespace parikh {

Rational RayFunctional::eval(std::span<const Rational> x) const {
  if (x.size() != coefficients.size()) throw DimensionError("RayFunctional::eval: length mismatch");
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(coefficients[i]) != 0) v += coefficients[i] * x[i];
  }
  return v;
}

Rational RayFunctional::eval(std::span<const std::int64_t> x) const {
  if (x.size() != coefficients.size()) throw DimensionError("RayFunctional::eval: length mismatch");
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(coefficients[i]) != 0 && x[i] != 0) v += coefficients[i] * Rational(static_cast<long>(x[i]));
  }
  return v;
}

std::optional<RayFunctional> lambda_functional(const Hyperplane& h, std::span<const std::int64_t> a,
                                               std::size_t plane_index) {
  if (a.size() != h.dim()) throw DimensionError("lambda_functional: column length mismatch");
  __int128 gamma = 0;
  for (std::size_t i = 0; i < a.size(); ++i) gamma += static_cast<__int128>(h.normal()[i]) * a[i];
  if (gamma == 0) return std::nullopt;
  const Rational g(Integer(static_cast<long>(gamma)));
  RayFunctional f;
  f.plane = plane_index;
  f.coefficients.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) f.coefficients[i] = Rational(static_cast<long>(h.normal()[i])) / g;
  return f;
}

namespace {

void check_column(std::span<const std::int64_t> a) {
  bool nonzero = false;
  for (auto v : a) {
    if (v < 0) throw InvariantError("ray column must be non-negative");
    nonzero = nonzero || v != 0;
  }
  if (!nonzero) throw InvariantError("ray column must be nonzero");
}

std::vector<RayFunctional> crossing_functionals(const Arrangement& arr, std::span<const std::int64_t> a) {
  std::vector<RayFunctional> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (auto f = lambda_functional(arr[i], a, i)) out.push_back(std::move(*f));
  }
  return out;
}

}  // namespace

Arrangement extend_arrangement(const Arrangement& arr, std::span<const std::int64_t> a) {
  check_column(a);
  if (a.size() != arr.dim()) throw DimensionError("extend_arrangement: column length mismatch");
  Arrangement out = arr;
  const auto fs = crossing_functionals(arr, a);
  std::vector<Rational> diff(arr.dim());
  for (std::size_t p = 0; p < fs.size(); ++p) {
    for (std::size_t q = p + 1; q < fs.size(); ++q) {
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fs[p].coefficients[i] - fs[q].coefficients[i];
      auto h = Hyperplane::from_coefficients(diff);
      if (h && !h->sign_definite()) out.add(*h);
    }
  }
  return out;
}

namespace {

// Closed forms Q_{s,j}(x, M) = sum_{mu=0..M} P_s(x - (j + mu*d)*a) for one
// inner quasi-polynomial P of period d, memoized per (s, j).
class PrefixKernel {
 public:
  PrefixKernel(LazyQP inner, std::vector<std::int64_t> a) : inner_(std::move(inner)), a_(std::move(a)) {}

  const LazyQP& inner() const { return inner_; }
  const std::vector<std::int64_t>& column() const { return a_; }
  std::int64_t period() const { return inner_->period(); }

  const MultiPoly& closed_form(const Residue& s, std::int64_t j) const {
    auto key = std::make_pair(s, j);
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const std::size_t t = a_.size();
    const std::int64_t d = period();
    std::vector<MultiPoly> subs;
    subs.reserve(t);
    std::vector<Rational> coeffs(t + 1);
    for (std::size_t i = 0; i < t; ++i) {
      std::fill(coeffs.begin(), coeffs.end(), Rational(0));
      coeffs[i] = 1;
      coeffs[t] = Rational(static_cast<long>(-d * a_[i]));
      subs.push_back(MultiPoly::affine(coeffs, Rational(static_cast<long>(-j * a_[i]))));
    }
    MultiPoly q = prefix_sum_polynomial(poly_substitute(inner_->at(s), subs));
    std::lock_guard lock(mu_);
    return memo_.try_emplace(std::move(key), std::move(q)).first->second;
  }

 private:
  LazyQP inner_;
  std::vector<std::int64_t> a_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Residue, std::int64_t>, MultiPoly> memo_;
};

Residue shifted_residue(const Residue& r, std::span<const std::int64_t> a, std::int64_t j, std::int64_t d) {
  Residue s(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) s[i] = mod_floor(r[i] - mod_floor(j * a[i], d), d);
  return s;
}

// x -> sum_{lambda=0..T(x)} P(x - lambda*a) with T = floor(c(x)) (Floor) or
// ceil(c(x)) - 1 (Ceiling). Splitting lambda = j + mu*d by its residue j
// turns each class into a closed form evaluated at mu_max = floor((T-j)/d).
LazyQP prefix_sum(std::shared_ptr<const PrefixKernel> kernel, const RayFunctional& c, InnerRounding mode) {
  const std::size_t t = kernel->column().size();
  const std::int64_t d = kernel->period();
  const std::int64_t period = floor_affine_period(c.coefficients, d);
  auto coeffs = std::make_shared<const std::vector<Rational>>(c.coefficients);

  auto gen = [kernel, coeffs, mode, t, d](const Residue& r) {
    MultiPoly sum(t);
    const Residue rd = residue_of(r, d);
    std::vector<MultiPoly> subs;
    for (std::size_t i = 0; i < t; ++i) subs.push_back(MultiPoly::variable(t, i));
    subs.emplace_back(t);
    for (std::int64_t j = 0; j < d; ++j) {
      const Residue s = shifted_residue(rd, kernel->column(), j, d);
      if (kernel->inner()->at(s).is_zero()) continue;
      const Integer k = mode == InnerRounding::Floor ? Integer(static_cast<long>(-j)) : Integer(static_cast<long>(-1 - j));
      subs[t] = floor_affine_piece(*coeffs, k, d, mode, r);
      sum += poly_substitute(kernel->closed_form(s, j), subs);
    }
    return sum;
  };

  auto eval = [kernel, coeffs, mode, t, d](std::span<const std::int64_t> x) {
    Rational cx = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (x[i] != 0 && sgn((*coeffs)[i]) != 0) cx += (*coeffs)[i] * Rational(static_cast<long>(x[i]));
    }
    const Integer top = mode == InnerRounding::Floor ? floor(cx) : Integer(ceil(cx) - 1);
    if (sgn(top) < 0) return Rational(0);
    if (!top.fits_slong_p()) throw ArgumentError("prefix_sum: summation bound exceeds 64 bits");
    const std::int64_t bound = top.get_si();
    const Residue rd = residue_of(x, d);
    std::vector<std::int64_t> xm(x.begin(), x.end());
    xm.push_back(0);
    Rational sum = 0;
    for (std::int64_t j = 0; j < d && j <= bound; ++j) {
      const Residue s = shifted_residue(rd, kernel->column(), j, d);
      if (kernel->inner()->at(s).is_zero()) continue;
      xm[t] = (bound - j) / d;
      sum += kernel->closed_form(s, j).eval(std::span<const std::int64_t>(xm));
    }
    return sum;
  };

  return std::make_shared<LazyQuasiPolynomial>(t, period, gen, eval);
}

RayFunctional zero_functional(std::size_t t) {
  RayFunctional f;
  f.coefficients.assign(t, Rational(0));
  return f;
}

LazyQP interval_sum(const std::shared_ptr<const PrefixKernel>& kernel, const RayFunctional& lower,
                    const RayFunctional& upper, IntervalBounds bounds) {
  const bool upper_closed = bounds == IntervalBounds::Closed || bounds == IntervalBounds::OpenClosed;
  const bool lower_closed = bounds == IntervalBounds::Closed || bounds == IntervalBounds::ClosedOpen;
  const std::size_t t = kernel->column().size();
  std::vector<std::pair<int, LazyQP>> terms;
  terms.emplace_back(1, prefix_sum(kernel, upper, upper_closed ? InnerRounding::Floor : InnerRounding::Ceiling));
  // Subtract everything strictly below lower (closed) or up to lower (open).
  const bool lower_is_zero =
      std::all_of(lower.coefficients.begin(), lower.coefficients.end(), [](const Rational& v) { return sgn(v) == 0; });
  if (!(lower_closed && lower_is_zero)) {
    terms.emplace_back(-1, prefix_sum(kernel, lower, lower_closed ? InnerRounding::Ceiling : InnerRounding::Floor));
  }
  return lazy_sum(t, std::move(terms));
}

}  // namespace

LazyQP sum_over_interval(const LazyQP& p, std::span<const std::int64_t> a, const std::optional<RayFunctional>& lower,
                         const RayFunctional& upper, IntervalBounds bounds) {
  check_column(a);
  if (a.size() != p->arity() || upper.coefficients.size() != a.size()) {
    throw DimensionError("sum_over_interval: dimension mismatch");
  }
  if (p->known_zero()) return LazyQuasiPolynomial::zero(a.size());
  auto kernel = std::make_shared<const PrefixKernel>(p, std::vector<std::int64_t>(a.begin(), a.end()));
  return interval_sum(kernel, lower ? *lower : zero_functional(a.size()), upper, bounds);
}

QuasiPolynomial sum_over_interval(const QuasiPolynomial& p, std::span<const std::int64_t> a,
                                  const std::optional<RayFunctional>& lower, const RayFunctional& upper,
                                  IntervalBounds bounds) {
  return sum_over_interval(LazyQuasiPolynomial::wrap(p), a, lower, upper, bounds)->materialize();
}

namespace {

class RayBaseProvider final : public PieceProvider {
 public:
  explicit RayBaseProvider(std::vector<std::int64_t> a) : a_(std::move(a)) {
    period_ = 1;
    for (auto v : a_) {
      if (v > 0) period_ = lcm64(period_, v);
    }
  }

  LazyQP derive(const SignVector& region, std::span<const Rational>) const override {
    const std::size_t t = a_.size();
    if (region.all_zero()) return LazyQuasiPolynomial::constant(t, 1);
    for (std::size_t i = 0; i < region.size(); ++i) {
      const char want = i < t ? (a_[i] > 0 ? '+' : '0') : '0';
      if (region[i] != want) return LazyQuasiPolynomial::zero(t);
    }
    auto a = a_;
    auto on_lattice = [a](std::span<const std::int64_t> x) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0 && mod_floor(x[i], a[i]) != 0) return false;
      }
      return true;
    };
    return std::make_shared<LazyQuasiPolynomial>(
        t, period_,
        [t, on_lattice](const Residue& r) { return MultiPoly::constant(t, on_lattice(r) ? 1 : 0); },
        [on_lattice](std::span<const std::int64_t> x) { return Rational(on_lattice(x) ? 1 : 0); });
  }

 private:
  std::vector<std::int64_t> a_;
  std::int64_t period_;
};

class RaySumProvider final : public PieceProvider {
 public:
  RaySumProvider(BoxSpline g, std::vector<std::int64_t> a)
      : g_(std::move(g)), a_(std::move(a)), functionals_(crossing_functionals(g_.arrangement(), a_)) {}

  LazyQP derive(const SignVector&, std::span<const Rational> w) const override {
    const std::size_t t = a_.size();
    Rational big_lambda;
    bool have = false;
    for (std::size_t i = 0; i < t; ++i) {
      if (a_[i] == 0) continue;
      Rational v = w[i] / Rational(static_cast<long>(a_[i]));
      if (!have || v < big_lambda) big_lambda = v;
      have = true;
    }
    // Distinct crossing values in [0, Lambda], each with its lowest-index
    // functional as representative.
    std::map<Rational, const RayFunctional*> crossings;
    for (const auto& f : functionals_) {
      Rational v = f.eval(w);
      if (sgn(v) < 0 || v > big_lambda) continue;
      crossings.try_emplace(v, &f);
    }
    std::vector<std::pair<Rational, const RayFunctional*>> cs(crossings.begin(), crossings.end());

    std::vector<std::pair<int, LazyQP>> terms;
    auto add_segment = [&](const Rational& lambda_mid, const RayFunctional& lo, const RayFunctional& hi,
                           IntervalBounds bounds) {
      std::vector<Rational> y(t);
      for (std::size_t i = 0; i < t; ++i) y[i] = w[i] - lambda_mid * Rational(static_cast<long>(a_[i]));
      LazyQP inner = g_.piece(sign_vector(g_.arrangement(), std::span<const Rational>(y)), y);
      if (inner->known_zero()) return;
      terms.emplace_back(1, interval_sum(kernel_for(inner), lo, hi, bounds));
    };

    const RayFunctional zero = zero_functional(t);
    if (sgn(cs.front().first) > 0) add_segment(cs.front().first / 2, zero, *cs.front().second, IntervalBounds::ClosedOpen);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      add_segment(cs[j].first, *cs[j].second, *cs[j].second, IntervalBounds::Closed);
      if (j + 1 < cs.size()) {
        add_segment((cs[j].first + cs[j + 1].first) / 2, *cs[j].second, *cs[j + 1].second, IntervalBounds::Open);
      }
    }
    return lazy_sum(t, std::move(terms));
  }

 private:
  std::shared_ptr<const PrefixKernel> kernel_for(const LazyQP& inner) const {
    std::lock_guard lock(mu_);
    auto& slot = kernels_[inner.get()];
    if (!slot) slot = std::make_shared<const PrefixKernel>(inner, a_);
    return slot;
  }

  BoxSpline g_;
  std::vector<std::int64_t> a_;
  std::vector<RayFunctional> functionals_;
  mutable std::mutex mu_;
  mutable std::map<const LazyQuasiPolynomial*, std::shared_ptr<const PrefixKernel>> kernels_;
};

}  // namespace

BoxSpline ray_base_spline(std::span<const std::int64_t> a) {
  check_column(a);
  const std::size_t t = a.size();
  Arrangement arr(t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      std::vector<std::int64_t> n(t, 0);
      n[i] = a[j];
      n[j] = -a[i];
      if (auto h = Hyperplane::from_coefficients(std::span<const std::int64_t>(n))) arr.add(*h);
    }
  }
  return BoxSpline(std::move(arr), std::make_shared<RayBaseProvider>(std::vector<std::int64_t>(a.begin(), a.end())));
}

BoxSpline ray_sum_spline(const BoxSpline& g, std::span<const std::int64_t> a) {
  if (!g.overrides().empty()) throw ArgumentError("ray_sum_spline: inner spline must not carry overrides");
  Arrangement arr = extend_arrangement(g.arrangement(), a);
  return BoxSpline(std::move(arr), std::make_shared<RaySumProvider>(g, std::vector<std::int64_t>(a.begin(), a.end())));
}

BoxSpline box_spline_of_system(const DiophantineSystem& sys) {
  sys.validate();
  if (sys.cols == 0) {
    const std::size_t t = sys.rows;
    Arrangement arr(t);
    SignVector origin{std::string(arr.size(), '0')};
    return BoxSpline::from_table(std::move(arr), {{origin, QuasiPolynomial::from_polynomial(MultiPoly::constant(t, 1))}});
  }
  BoxSpline s = ray_base_spline(sys.column(sys.cols - 1));
  for (std::size_t j = sys.cols - 1; j-- > 0;) s = ray_sum_spline(s, sys.column(j));
  return s;
}

}  // namespace parikh
