#include "parikh/semilinear.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "linalg.hpp"
#include "parikh/errors.hpp"
#include "parikh/exactmath.hpp"

namespace parikh {

namespace {

bool is_zero_vec(const NVec& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

std::string vec_text(const NVec& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

}  // namespace

void LinearSet::validate() const {
  for (auto v : base) {
    if (v < 0) throw InvariantError("LinearSet: base must be non-negative");
  }
  std::set<NVec> seen;
  for (const auto& p : periods) {
    if (p.size() != base.size()) throw DimensionError("LinearSet: period dimension mismatch");
    if (is_zero_vec(p)) throw InvariantError("LinearSet: zero period");
    for (auto v : p) {
      if (v < 0) throw InvariantError("LinearSet: periods must be non-negative");
    }
    if (!seen.insert(p).second) throw InvariantError("LinearSet: duplicate period");
  }
}

LinearSet LinearSet::normalized() const {
  LinearSet out{base, {}};
  std::set<NVec> ps;
  for (const auto& p : periods) {
    if (!is_zero_vec(p)) ps.insert(p);
  }
  out.periods.assign(ps.begin(), ps.end());
  return out;
}

std::string LinearSet::to_string() const {
  std::ostringstream os;
  os << "base: " << vec_text(base) << " ; periods:";
  for (std::size_t i = 0; i < periods.size(); ++i) os << (i ? " | " : " ") << vec_text(periods[i]);
  return os.str();
}

void SemilinearSet::validate() const {
  for (const auto& c : components) {
    if (c.dim() != dim) throw DimensionError("SemilinearSet: component dimension mismatch");
    c.validate();
  }
}

std::string SemilinearSet::to_string() const {
  std::ostringstream os;
  os << "dim " << dim << "\n";
  for (const auto& c : components) os << c.to_string() << "\n";
  return os.str();
}

std::string SemiSimpleSet::to_string() const { return as_semilinear().to_string(); }

namespace {

bool member_rec(const std::vector<NVec>& periods, std::size_t i, NVec& rem,
                std::set<std::pair<std::size_t, NVec>>& failed) {
  if (is_zero_vec(rem)) return true;
  if (i == periods.size()) return false;
  if (failed.contains({i, rem})) return false;
  const NVec& p = periods[i];
  std::int64_t max_mult = std::numeric_limits<std::int64_t>::max();
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c] > 0) max_mult = std::min(max_mult, rem[c] / p[c]);
  }
  NVec saved = rem;
  for (std::int64_t m = 0; m <= max_mult; ++m) {
    if (member_rec(periods, i + 1, rem, failed)) return true;
    for (std::size_t c = 0; c < p.size(); ++c) rem[c] -= p[c];
  }
  rem = saved;
  failed.insert({i, rem});
  return false;
}

}  // namespace

bool ls_member(const LinearSet& l, std::span<const std::int64_t> v) {
  if (v.size() != l.dim()) throw DimensionError("ls_member: dimension mismatch");
  NVec rem(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rem[i] = v[i] - l.base[i];
    if (rem[i] < 0) return false;
  }
  std::set<std::pair<std::size_t, NVec>> failed;
  return member_rec(l.periods, 0, rem, failed);
}

bool sl_member(const SemilinearSet& s, std::span<const std::int64_t> v) {
  if (v.size() != s.dim) throw DimensionError("sl_member: dimension mismatch");
  return std::any_of(s.components.begin(), s.components.end(), [&](const LinearSet& l) { return ls_member(l, v); });
}

bool is_simple(const LinearSet& l) {
  if (l.periods.empty()) return true;
  return detail::rank(l.periods, l.dim()) == l.periods.size();
}

namespace {

std::int64_t to_i64(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) throw ArgumentError(std::string(what) + ": value exceeds 64 bits");
  return v.get_si();
}

// Splits a linear set into simple sets with the same union. With a relation
// sum_{P} z_i p_i = sum_{N} |z_i| p_i, any representation with m_i >= z_i on
// all of P can be rewritten with smaller P-multiplicities, so some m_i < z_i.
void simplify_into(const LinearSet& input, std::vector<LinearSet>& out, int depth, int cap) {
  LinearSet l = input.normalized();
  if (is_simple(l)) {
    out.push_back(std::move(l));
    return;
  }
  if (depth >= cap) throw DepthExceeded("decompose_semisimple: period elimination exceeded depth cap " + std::to_string(cap));
  const auto kernel = detail::integer_kernel(l.periods, l.dim());
  std::vector<Integer> best;
  Integer best_cost = -1;
  for (const auto& z : kernel) {
    for (int sign : {1, -1}) {
      Integer cost = 0;
      for (const auto& v : z) {
        if (sgn(v) * sign > 0) cost += abs(v);
      }
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = z;
        if (sign < 0) {
          for (auto& v : best) v = -v;
        }
      }
    }
  }
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (sgn(best[i]) <= 0) continue;
    const std::int64_t bound = to_i64(best[i], "decompose_semisimple");
    LinearSet reduced{l.base, {}};
    for (std::size_t j = 0; j < l.periods.size(); ++j) {
      if (j != i) reduced.periods.push_back(l.periods[j]);
    }
    for (std::int64_t c = 0; c < bound; ++c) {
      LinearSet part = reduced;
      for (std::size_t d = 0; d < part.base.size(); ++d) part.base[d] += c * l.periods[i][d];
      simplify_into(part, out, depth + 1, cap);
    }
  }
}

// Affine function of the multiplicity vector m of a simple set.
struct Affine {
  Rational alpha;
  std::vector<Rational> beta;
};

enum class ConstraintKind { Integral, NonNegative };

struct Constraint {
  ConstraintKind kind;
  Affine f;
};

// Subset m0 + G u (u in N^{n'}) of the multiplicity space, G stored as columns.
struct Piece {
  NVec m0;
  std::vector<NVec> cols;
};

// Integer form A + B.u of a constraint restricted to a piece, scaled by the
// positive denominator D.
struct Restricted {
  Integer a;
  std::vector<Integer> b;
  Integer d;
};

Restricted restrict(const Affine& f, const Piece& p) {
  Rational alpha = f.alpha;
  for (std::size_t i = 0; i < p.m0.size(); ++i) {
    if (p.m0[i] != 0) alpha += f.beta[i] * Rational(static_cast<long>(p.m0[i]));
  }
  std::vector<Rational> beta(p.cols.size());
  for (std::size_t j = 0; j < p.cols.size(); ++j) {
    for (std::size_t i = 0; i < p.m0.size(); ++i) {
      if (p.cols[j][i] != 0) beta[j] += f.beta[i] * Rational(static_cast<long>(p.cols[j][i]));
    }
  }
  Integer d = alpha.get_den();
  for (const auto& v : beta) d = lcm(d, v.get_den());
  Restricted r;
  r.d = d;
  r.a = Rational(alpha * Rational(d)).get_num();
  for (const auto& v : beta) r.b.push_back(Rational(v * Rational(d)).get_num());
  return r;
}

Piece fix_var(const Piece& p, std::size_t j, std::int64_t c) {
  Piece out{p.m0, {}};
  for (std::size_t i = 0; i < out.m0.size(); ++i) out.m0[i] += c * p.cols[j][i];
  for (std::size_t k = 0; k < p.cols.size(); ++k) {
    if (k != j) out.cols.push_back(p.cols[k]);
  }
  return out;
}

// u_j = rho + step * u_j'.
Piece stride_var(const Piece& p, std::size_t j, std::int64_t rho, std::int64_t step) {
  Piece out = p;
  for (std::size_t i = 0; i < out.m0.size(); ++i) {
    out.m0[i] += rho * p.cols[j][i];
    out.cols[j][i] = step * p.cols[j][i];
  }
  return out;
}

// Replaces (u_i, u_j) by (d + s, d) when upper_first, else (d, d + 1 + s).
Piece pair_split(const Piece& p, std::size_t i, std::size_t j, bool upper_first) {
  Piece out{p.m0, {}};
  for (std::size_t k = 0; k < p.cols.size(); ++k) {
    if (k != i && k != j) out.cols.push_back(p.cols[k]);
  }
  NVec diag(p.m0.size());
  for (std::size_t r = 0; r < diag.size(); ++r) diag[r] = p.cols[i][r] + p.cols[j][r];
  out.cols.push_back(diag);
  if (upper_first) {
    out.cols.push_back(p.cols[i]);
  } else {
    for (std::size_t r = 0; r < out.m0.size(); ++r) out.m0[r] += p.cols[j][r];
    out.cols.push_back(p.cols[j]);
  }
  return out;
}

class Splitter {
 public:
  Splitter(const std::vector<Constraint>& cs, int cap, std::vector<Piece>& outside)
      : cs_(cs), cap_(cap), outside_(outside) {}

  void run(const Piece& p, std::size_t idx, int depth) {
    if (idx == cs_.size()) return;  // inside the subtrahend
    if (depth > cap_) throw DepthExceeded("decompose_semisimple: case split exceeded depth cap " + std::to_string(cap_));
    const Constraint& c = cs_[idx];
    const Restricted r = restrict(c.f, p);
    if (c.kind == ConstraintKind::Integral) {
      integral(p, r, idx);
    } else {
      nonnegative(p, r, idx, depth);
    }
  }

 private:
  void integral(const Piece& p, const Restricted& r, std::size_t idx) {
    if (r.d == 1) {
      run(p, idx + 1, 0);
      return;
    }
    const std::int64_t d = to_i64(r.d, "decompose_semisimple");
    std::vector<std::size_t> vars;
    std::vector<std::int64_t> steps;
    for (std::size_t j = 0; j < r.b.size(); ++j) {
      const std::int64_t bj = to_i64(mod_floor(r.b[j], r.d), "decompose_semisimple");
      const std::int64_t step = d / std::gcd(d, bj);
      if (step > 1) {
        vars.push_back(j);
        steps.push_back(step);
      }
    }
    std::vector<std::int64_t> rho(vars.size(), 0);
    while (true) {
      Integer total = r.a;
      Piece q = p;
      for (std::size_t v = 0; v < vars.size(); ++v) {
        total += r.b[vars[v]] * Integer(static_cast<long>(rho[v]));
        q = stride_var(q, vars[v], rho[v], steps[v]);
      }
      if (sgn(mod_floor(total, r.d)) == 0) {
        run(q, idx + 1, 0);
      } else {
        outside_.push_back(std::move(q));
      }
      std::size_t v = 0;
      while (v < vars.size() && ++rho[v] == steps[v]) rho[v++] = 0;
      if (v == vars.size()) break;
    }
  }

  void nonnegative(const Piece& p, const Restricted& r, std::size_t idx, int depth) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t j = 0; j < r.b.size(); ++j) {
      if (sgn(r.b[j]) > 0) pos.push_back(j);
      if (sgn(r.b[j]) < 0) neg.push_back(j);
    }
    if (pos.empty() && neg.empty()) {
      if (sgn(r.a) >= 0) {
        run(p, idx + 1, 0);
      } else {
        outside_.push_back(p);
      }
      return;
    }
    if (neg.empty()) {
      if (sgn(r.a) >= 0) {
        run(p, idx + 1, 0);
        return;
      }
      const std::size_t j = *std::max_element(pos.begin(), pos.end(), [&](auto x, auto y) { return r.b[x] < r.b[y]; });
      const std::int64_t bound = to_i64(ceil(Rational(-r.a, r.b[j])), "decompose_semisimple");
      run(stride_var(p, j, bound, 1), idx + 1, 0);
      for (std::int64_t c = 0; c < bound; ++c) run(fix_var(p, j, c), idx, depth + 1);
      return;
    }
    if (pos.empty()) {
      if (sgn(r.a) < 0) {
        outside_.push_back(p);
        return;
      }
      const std::size_t j = *std::min_element(neg.begin(), neg.end(), [&](auto x, auto y) { return r.b[x] < r.b[y]; });
      const std::int64_t bound = to_i64(floor(Rational(r.a, -r.b[j])), "decompose_semisimple");
      outside_.push_back(stride_var(p, j, bound + 1, 1));
      for (std::int64_t c = 0; c <= bound; ++c) run(fix_var(p, j, c), idx, depth + 1);
      return;
    }
    const std::size_t i = pos.front();
    const std::size_t j = neg.front();
    const Integer bi = r.b[i];
    const Integer bj = -r.b[j];
    if (bi != bj) {
      const Integer l = lcm(bi, bj);
      const std::int64_t si = to_i64(l / bi, "decompose_semisimple");
      const std::int64_t sj = to_i64(l / bj, "decompose_semisimple");
      for (std::int64_t a = 0; a < si; ++a) {
        for (std::int64_t b = 0; b < sj; ++b) run(stride_var(stride_var(p, i, a, si), j, b, sj), idx, depth + 1);
      }
      return;
    }
    run(pair_split(p, i, j, true), idx, depth + 1);
    run(pair_split(p, i, j, false), idx, depth + 1);
  }

  const std::vector<Constraint>& cs_;
  int cap_;
  std::vector<Piece>& outside_;
};

// Membership in t = b + Q (Q independent) as affine conditions on the
// multiplicities m of p = c + H m.
std::vector<Constraint> membership_constraints(const LinearSet& p, const LinearSet& t) {
  const std::size_t k = p.dim();
  const std::size_t n = p.periods.size();
  const std::size_t r = t.periods.size();
  // (v - b)_i = delta_i + sum_l H_l[i] m_l
  auto coordinate = [&](std::size_t i) {
    Affine f{Rational(static_cast<long>(p.base[i] - t.base[i])), std::vector<Rational>(n)};
    for (std::size_t l = 0; l < n; ++l) f.beta[l] = Rational(static_cast<long>(p.periods[l][i]));
    return f;
  };
  auto combine = [&](const std::vector<Rational>& y) {
    Affine f{Rational(0), std::vector<Rational>(n)};
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(y[i]) == 0) continue;
      Affine c = coordinate(i);
      f.alpha += y[i] * c.alpha;
      for (std::size_t l = 0; l < n; ++l) f.beta[l] += y[i] * c.beta[l];
    }
    return f;
  };
  auto negate = [](Affine f) {
    f.alpha = -f.alpha;
    for (auto& v : f.beta) v = -v;
    return f;
  };

  std::vector<Constraint> eqs, ints, ges;
  std::vector<std::vector<std::int64_t>> rows(k, std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r; ++j) rows[i][j] = t.periods[j][i];
  }
  for (const auto& y : detail::integer_kernel(rows, r)) {
    std::vector<Rational> yr(y.begin(), y.end());
    Affine f = combine(yr);
    eqs.push_back({ConstraintKind::NonNegative, f});
    eqs.push_back({ConstraintKind::NonNegative, negate(f)});
  }
  if (r > 0) {
    detail::RMatrix pm = detail::to_rational(t.periods);
    const auto sel = detail::rref(pm, k);
    detail::RMatrix s(r, std::vector<Rational>(r));
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t j = 0; j < r; ++j) s[a][j] = Rational(static_cast<long>(t.periods[j][sel[a]]));
    }
    const auto inv = detail::inverse(s);
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Rational> y(k);
      for (std::size_t a = 0; a < r; ++a) y[sel[a]] = inv[j][a];
      Affine f = combine(y);
      ints.push_back({ConstraintKind::Integral, f});
      ges.push_back({ConstraintKind::NonNegative, f});
    }
  }
  std::vector<Constraint> out = std::move(eqs);
  out.insert(out.end(), ints.begin(), ints.end());
  out.insert(out.end(), ges.begin(), ges.end());
  return out;
}

LinearSet piece_set(const LinearSet& p, const Piece& q) {
  LinearSet out{p.base, {}};
  for (std::size_t l = 0; l < q.m0.size(); ++l) {
    for (std::size_t i = 0; i < out.base.size(); ++i) out.base[i] += q.m0[l] * p.periods[l][i];
  }
  for (const auto& col : q.cols) {
    NVec v(p.dim(), 0);
    for (std::size_t l = 0; l < col.size(); ++l) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += col[l] * p.periods[l][i];
    }
    out.periods.push_back(std::move(v));
  }
  return out.normalized();
}

std::vector<LinearSet> difference(const LinearSet& p, const LinearSet& t, int cap) {
  const auto cs = membership_constraints(p, t);
  Piece whole{NVec(p.periods.size(), 0), {}};
  for (std::size_t l = 0; l < p.periods.size(); ++l) {
    NVec e(p.periods.size(), 0);
    e[l] = 1;
    whole.cols.push_back(std::move(e));
  }
  std::vector<Piece> outside;
  Splitter(cs, cap, outside).run(whole, 0, 0);
  std::vector<LinearSet> out;
  out.reserve(outside.size());
  for (const auto& q : outside) out.push_back(piece_set(p, q));
  return out;
}

// Merges disjoint simple sets whose union is again a simple set:
// (b, P) with (b - p, P \ {p}) gives (b - p, P), and the k sets
// (b + j q, Q + {k q}) for j < k give (b, Q + {q}).
void coalesce(std::vector<LinearSet>& sets) {
  std::set<LinearSet> pool(sets.begin(), sets.end());
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<LinearSet> snapshot(pool.begin(), pool.end());
    for (const auto& l : snapshot) {
      if (!pool.count(l)) continue;
      for (std::size_t k = 0; k < l.periods.size(); ++k) {
        const NVec& p = l.periods[k];
        LinearSet small{l.base, l.periods};
        small.periods.erase(small.periods.begin() + static_cast<std::ptrdiff_t>(k));
        bool fits = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
          small.base[i] -= p[i];
          fits = fits && small.base[i] >= 0;
        }
        if (fits && pool.count(small)) {
          pool.erase(l);
          pool.erase(small);
          pool.insert(LinearSet{small.base, l.periods});
          changed = true;
          break;
        }
        std::int64_t g = 0;
        for (auto v : p) g = std::gcd(g, v);
        bool merged = false;
        for (std::int64_t m = 2; m <= g && !merged; ++m) {
          if (g % m != 0) continue;
          NVec q(p.size());
          for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i] / m;
          std::vector<LinearSet> family{l};
          for (std::int64_t j = 1; j < m; ++j) {
            LinearSet next = family.back();
            for (std::size_t i = 0; i < q.size(); ++i) next.base[i] += q[i];
            if (!pool.count(next)) break;
            family.push_back(std::move(next));
          }
          if (static_cast<std::int64_t>(family.size()) != m) continue;
          LinearSet joined{l.base, l.periods};
          joined.periods[k] = q;
          for (const auto& f : family) pool.erase(f);
          pool.insert(joined.normalized());
          merged = true;
        }
        if (merged) {
          changed = true;
          break;
        }
      }
    }
  }
  sets.assign(pool.begin(), pool.end());
}

}  // namespace

SemiSimpleSet decompose_semisimple(const SemilinearSet& s, int depth_cap) {
  s.validate();
  if (depth_cap < 1) throw ArgumentError("decompose_semisimple: depth cap must be >= 1");
  if (s.components.size() == 1 && is_simple(s.components[0])) return SemiSimpleSet{s.dim, s.components};
  std::vector<LinearSet> simple;
  for (const auto& c : s.components) simplify_into(c, simple, 0, depth_cap);
  std::sort(simple.begin(), simple.end(), [](const LinearSet& a, const LinearSet& b) {
    if (a.periods.size() != b.periods.size()) return a.periods.size() > b.periods.size();
    return a < b;
  });
  simple.erase(std::unique(simple.begin(), simple.end()), simple.end());
  std::vector<LinearSet> result;
  for (const auto& c : simple) {
    std::vector<LinearSet> pieces{c};
    for (const auto& t : result) {
      std::vector<LinearSet> next;
      for (const auto& p : pieces) {
        auto d = difference(p, t, depth_cap);
        next.insert(next.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
      }
      coalesce(next);
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    result.insert(result.end(), pieces.begin(), pieces.end());
    coalesce(result);
  }
  std::sort(result.begin(), result.end());
  return SemiSimpleSet{s.dim, std::move(result)};
}

SemilinearSet sl_empty(std::size_t dim) { return SemilinearSet{dim, {}}; }

SemilinearSet sl_unit(std::size_t dim) { return SemilinearSet{dim, {LinearSet{NVec(dim, 0), {}}}}; }

SemilinearSet sl_union(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim != b.dim) throw DimensionError("sl_union: dimension mismatch");
  SemilinearSet out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  return sl_simplify(out);
}

SemilinearSet sl_sum(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim != b.dim) throw DimensionError("sl_sum: dimension mismatch");
  SemilinearSet out{a.dim, {}};
  for (const auto& x : a.components) {
    for (const auto& y : b.components) {
      LinearSet z{x.base, x.periods};
      for (std::size_t i = 0; i < z.base.size(); ++i) z.base[i] += y.base[i];
      z.periods.insert(z.periods.end(), y.periods.begin(), y.periods.end());
      out.components.push_back(z.normalized());
    }
  }
  return sl_simplify(out);
}

SemilinearSet sl_star(const SemilinearSet& a) {
  SemilinearSet out = sl_unit(a.dim);
  for (const auto& c : a.components) {
    SemilinearSet star{a.dim, {}};
    if (is_zero_vec(c.base)) {
      star.components.push_back(c.normalized());
    } else {
      star.components.push_back(LinearSet{NVec(a.dim, 0), {}});
      LinearSet loop = c;
      loop.periods.push_back(c.base);
      star.components.push_back(loop.normalized());
    }
    out = sl_sum(out, star);
  }
  return out;
}

namespace {

// Drops periods that are N-combinations of the remaining ones.
LinearSet prune_periods(LinearSet l) {
  l = l.normalized();
  for (std::size_t i = l.periods.size(); i-- > 0;) {
    LinearSet rest{NVec(l.dim(), 0), {}};
    for (std::size_t j = 0; j < l.periods.size(); ++j) {
      if (j != i) rest.periods.push_back(l.periods[j]);
    }
    if (ls_member(rest, l.periods[i])) l.periods.erase(l.periods.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return l;
}

bool subsumed(const LinearSet& small, const LinearSet& big) {
  if (!ls_member(big, small.base)) return false;
  LinearSet cone{NVec(big.dim(), 0), big.periods};
  return std::all_of(small.periods.begin(), small.periods.end(), [&](const NVec& p) { return ls_member(cone, p); });
}

}  // namespace

namespace {

// (b, P) and (b - p, P \ {p}) with p in P together form (b - p, P).
bool absorb(LinearSet& big, const LinearSet& small) {
  if (small.periods.size() + 1 != big.periods.size()) return false;
  for (std::size_t k = 0; k < big.periods.size(); ++k) {
    const NVec& p = big.periods[k];
    bool shifted = true;
    for (std::size_t i = 0; i < p.size() && shifted; ++i) shifted = small.base[i] + p[i] == big.base[i];
    if (!shifted) continue;
    std::vector<NVec> rest = big.periods;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    if (rest != small.periods) continue;
    big.base = small.base;
    return true;
  }
  return false;
}

}  // namespace

SemilinearSet sl_simplify(const SemilinearSet& a) {
  std::vector<LinearSet> cs;
  for (const auto& c : a.components) cs.push_back(prune_periods(c));
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<bool> drop(cs.size(), false);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < cs.size() && !drop[i]; ++j) {
        if (i != j && !drop[j] && subsumed(cs[i], cs[j])) drop[i] = true;
      }
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < cs.size() && !drop[i]; ++j) {
        if (i != j && !drop[j] && absorb(cs[i], cs[j])) {
          drop[j] = true;
          changed = true;
        }
      }
    }
    std::vector<LinearSet> kept;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!drop[i]) kept.push_back(std::move(cs[i]));
    }
    cs = std::move(kept);
  }
  return SemilinearSet{a.dim, std::move(cs)};
}

namespace {

NVec parse_vec(const std::string& text, std::size_t dim, std::size_t line) {
  std::istringstream is(text);
  NVec out;
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
    if (v < 0) throw ParseError(line, "entries must be non-negative");
    out.push_back(v);
  }
  if (out.size() != dim) throw ParseError(line, "expected " + std::to_string(dim) + " entries");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

SemilinearSet parse_semilinear(std::istream& in) {
  std::string raw;
  std::size_t number = 0;
  SemilinearSet out;
  bool have_dim = false;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (!have_dim) {
      std::istringstream is(line);
      std::string word;
      long long k = -1;
      if (!(is >> word >> k) || word != "dim" || k < 1) throw ParseError(number, "expected 'dim k' with k >= 1");
      std::string extra;
      if (is >> extra) throw ParseError(number, "unexpected text after 'dim k'");
      out.dim = static_cast<std::size_t>(k);
      have_dim = true;
      continue;
    }
    if (line.rfind("base:", 0) != 0) throw ParseError(number, "component lines start with 'base:'");
    const auto semi = line.find(';');
    LinearSet l;
    l.base = parse_vec(line.substr(5, semi == std::string::npos ? std::string::npos : semi - 5), out.dim, number);
    if (semi != std::string::npos) {
      std::string rest = trim(line.substr(semi + 1));
      if (rest.rfind("periods:", 0) != 0) throw ParseError(number, "expected 'periods:' after ';'");
      rest = trim(rest.substr(8));
      if (!rest.empty()) {
        std::size_t start = 0;
        while (true) {
          const auto bar = rest.find('|', start);
          l.periods.push_back(parse_vec(rest.substr(start, bar == std::string::npos ? std::string::npos : bar - start),
                                        out.dim, number));
          if (bar == std::string::npos) break;
          start = bar + 1;
        }
      }
    }
    try {
      l.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, e.what());
    }
    out.components.push_back(std::move(l));
  }
  if (!have_dim) throw ParseError(number == 0 ? 1 : number, "missing 'dim k' header");
  return out;
}

SemilinearSet parse_semilinear(const std::string& text) {
  std::istringstream is(text);
  return parse_semilinear(is);
}

}  // namespace parikh
