#include "parikh/oracle.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "parikh/errors.hpp"

namespace parikh::oracle {

Integer count_system_brute(const DiophantineSystem& sys, const std::vector<std::int64_t>& n) {
  if (n.size() != sys.rows) throw DimensionError("count_system_brute: point length mismatch");
  std::vector<std::int64_t> rest(n);
  for (std::size_t i = 0; i < sys.rows; ++i) {
    if (!sys.offset.empty()) rest[i] -= sys.offset[i];
    if (rest[i] < 0) return 0;
  }
  Integer count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == sys.cols) {
      if (std::all_of(rest.begin(), rest.end(), [](std::int64_t v) { return v == 0; })) ++count;
      return;
    }
    std::int64_t bound = -1;
    for (std::size_t i = 0; i < sys.rows; ++i) {
      if (sys.a[i][j] > 0) {
        const std::int64_t b = rest[i] / sys.a[i][j];
        bound = bound < 0 ? b : std::min(bound, b);
      }
    }
    if (bound < 0) throw InvariantError("count_system_brute: zero column");
    for (std::int64_t x = 0; x <= bound; ++x) {
      go(j + 1);
      for (std::size_t i = 0; i < sys.rows; ++i) rest[i] -= sys.a[i][j];
    }
    for (std::size_t i = 0; i < sys.rows; ++i) rest[i] += (bound + 1) * sys.a[i][j];
  };
  go(0);
  return count;
}

bool derives(const Grammar& g, const Word& w) {
  const std::size_t n = g.nonterminals.size();
  if (n == 0) return false;
  std::vector<bool> nullable(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (nullable[p.lhs]) continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return !s.terminal && nullable[s.id]; })) {
        nullable[p.lhs] = true;
        changed = true;
      }
    }
  }
  // item = (production, dot, origin)
  using Item = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::vector<std::set<Item>> chart(w.size() + 1);
  std::vector<std::vector<Item>> queue(w.size() + 1);
  auto add = [&](std::size_t k, Item it) {
    if (chart[k].insert(it).second) queue[k].push_back(it);
  };
  for (std::size_t p = 0; p < g.productions.size(); ++p) {
    if (g.productions[p].lhs == g.start) add(0, {p, 0, 0});
  }
  for (std::size_t k = 0; k <= w.size(); ++k) {
    for (std::size_t q = 0; q < queue[k].size(); ++q) {
      const auto [p, dot, origin] = queue[k][q];
      const auto& rhs = g.productions[p].rhs;
      if (dot == rhs.size()) {
        const int lhs = g.productions[p].lhs;
        const std::vector<Item> waiting(chart[origin].begin(), chart[origin].end());
        for (const auto& [p2, d2, o2] : waiting) {
          const auto& r2 = g.productions[p2].rhs;
          if (d2 < r2.size() && !r2[d2].terminal && r2[d2].id == lhs) add(k, {p2, d2 + 1, o2});
        }
        continue;
      }
      const Symbol s = rhs[dot];
      if (s.terminal) {
        if (k < w.size() && w[k] == s.id) add(k + 1, {p, dot + 1, origin});
        continue;
      }
      for (std::size_t p2 = 0; p2 < g.productions.size(); ++p2) {
        if (g.productions[p2].lhs == s.id) add(k, {p2, 0, k});
      }
      if (nullable[s.id]) add(k, {p, dot + 1, origin});
    }
  }
  for (const auto& [p, dot, origin] : chart[w.size()]) {
    if (origin == 0 && g.productions[p].lhs == g.start && dot == g.productions[p].rhs.size()) return true;
  }
  return false;
}

namespace {

// Calls f on u_1^l1 ... u_k^lk for every tuple allowed by `keep`, which sees
// the letter counts of the prefix built so far.
void for_each_candidate(const BoundedLanguage& bl, std::int64_t maxlen,
                        const std::function<bool(const std::vector<std::int64_t>&)>& keep,
                        const std::function<void(const Word&)>& f) {
  const std::size_t k = bl.words.size();
  const std::size_t t = bl.letters();
  Word w;
  std::vector<std::int64_t> counts(t, 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == k) {
      f(w);
      return;
    }
    const std::size_t mark = w.size();
    while (true) {
      go(i + 1);
      const Word& u = bl.words[i];
      if (static_cast<std::int64_t>(w.size() + u.size()) > maxlen) break;
      w.insert(w.end(), u.begin(), u.end());
      for (int a : u) ++counts[a];
      if (!keep(counts)) break;
    }
    for (std::size_t p = mark; p < w.size(); ++p) --counts[w[p]];
    w.resize(mark);
  };
  go(0);
}

}  // namespace

std::set<Word> enumerate_language(const BoundedLanguage& bl, std::int64_t maxlen) {
  if (maxlen < 0) throw ArgumentError("maxlen must be non-negative");
  std::set<Word> out;
  for (const auto& u : bl.words) {
    if (u.empty()) throw ArgumentError("bounding words must be nonempty");
  }
  for_each_candidate(bl, maxlen, [](const std::vector<std::int64_t>&) { return true; }, [&](const Word& w) {
    if (!out.count(w) && derives(bl.grammar, w)) out.insert(w);
  });
  return out;
}

std::map<std::vector<std::int64_t>, Integer> census_parikh(const BoundedLanguage& bl,
                                                           const std::vector<std::int64_t>& box) {
  const std::size_t t = bl.letters();
  if (box.size() != t) throw DimensionError("census_parikh: box length mismatch");
  std::int64_t maxlen = 0;
  for (auto b : box) {
    if (b < 0) throw ArgumentError("box bounds must be non-negative");
    maxlen += b;
  }
  std::map<std::vector<std::int64_t>, Integer> out;
  std::vector<std::int64_t> v(t, 0);
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == t) {
      out[v] = 0;
      return;
    }
    for (v[i] = 0; v[i] <= box[i]; ++v[i]) fill(i + 1);
    v[i] = 0;
  };
  fill(0);
  for (const auto& u : bl.words) {
    if (u.empty()) throw ArgumentError("bounding words must be nonempty");
  }
  auto within = [&](const std::vector<std::int64_t>& c) {
    for (std::size_t i = 0; i < t; ++i) {
      if (c[i] > box[i]) return false;
    }
    return true;
  };
  std::set<Word> seen;
  for_each_candidate(bl, maxlen, within, [&](const Word& w) {
    if (!seen.insert(w).second) return;
    std::vector<std::int64_t> c(t, 0);
    for (int a : w) ++c[a];
    if (within(c) && derives(bl.grammar, w)) ++out[c];
  });
  return out;
}

Integer count_representations_brute(const LinearSet& l, const std::vector<std::int64_t>& v) {
  if (v.size() != l.base.size()) throw DimensionError("count_representations_brute: dimension mismatch");
  std::vector<std::int64_t> rest(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rest[i] = v[i] - l.base[i];
    if (rest[i] < 0) return 0;
  }
  Integer count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == l.periods.size()) {
      if (std::all_of(rest.begin(), rest.end(), [](std::int64_t x) { return x == 0; })) ++count;
      return;
    }
    const auto& p = l.periods[j];
    std::int64_t bound = -1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0) bound = bound < 0 ? rest[i] / p[i] : std::min(bound, rest[i] / p[i]);
    }
    if (bound < 0) throw InvariantError("count_representations_brute: zero period");
    for (std::int64_t m = 0; m <= bound; ++m) {
      go(j + 1);
      for (std::size_t i = 0; i < p.size(); ++i) rest[i] -= p[i];
    }
    for (std::size_t i = 0; i < p.size(); ++i) rest[i] += (bound + 1) * p[i];
  };
  go(0);
  return count;
}

}  // namespace parikh::oracle
