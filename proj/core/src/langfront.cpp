#include "parikh/langfront.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "linalg.hpp"
#include "parikh/errors.hpp"
#include "parikh/partition.hpp"

namespace parikh {

Word Morphism::apply(const Word& blocks) const {
  Word out;
  for (int b : blocks) {
    if (b < 0 || static_cast<std::size_t>(b) >= images.size()) throw ArgumentError("Morphism::apply: letter out of range");
    out.insert(out.end(), images[b].begin(), images[b].end());
  }
  return out;
}

bool Dfa::accepts(const Word& w) const {
  int q = start;
  for (int a : w) {
    if (a < 0 || static_cast<std::size_t>(a) >= letters) return false;
    q = delta[q][a];
    if (q < 0) return false;
  }
  return accepting[q];
}

NVec parikh_vector(const Word& w, std::size_t letters) {
  NVec v(letters, 0);
  for (int a : w) {
    if (a < 0 || static_cast<std::size_t>(a) >= letters) throw DimensionError("parikh_vector: letter out of range");
    ++v[a];
  }
  return v;
}

// ---------------------------------------------------------------------------
// Parikh images

namespace {

SemilinearSet letter_set(std::size_t dim, int a) {
  LinearSet l{NVec(dim, 0), {}};
  l.base[a] = 1;
  return {dim, {l}};
}

// Tarjan; components come out callees first.
std::vector<std::vector<int>> strongly_connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

}  // namespace

SemilinearSet parikh_image(const Grammar& g0) {
  const Grammar g = g0.reduced();
  const std::size_t dim = g.terminals.size();
  if (g.empty()) return sl_empty(dim);
  const std::size_t n = g.nonterminals.size();

  std::vector<std::vector<int>> adj(n);
  std::vector<std::vector<const Production*>> by_lhs(n);
  for (const auto& p : g.productions) {
    by_lhs[p.lhs].push_back(&p);
    for (const auto& s : p.rhs) {
      if (!s.terminal) adj[p.lhs].push_back(s.id);
    }
  }

  std::vector<SemilinearSet> value(n, sl_empty(dim));
  std::vector<int> slot(n, -1);
  for (const auto& comp : strongly_connected(adj)) {
    const std::size_t c = comp.size();
    for (std::size_t i = 0; i < c; ++i) slot[comp[i]] = static_cast<int>(i);
    auto in_comp = [&](const Symbol& s) { return !s.terminal && std::find(comp.begin(), comp.end(), s.id) != comp.end(); };

    auto symbol_value = [&](const Symbol& s, const std::vector<SemilinearSet>& x) -> SemilinearSet {
      if (s.terminal) return letter_set(dim, s.id);
      return in_comp(s) ? x[slot[s.id]] : value[s.id];
    };
    // Sum over the right-hand side, leaving out position `skip`.
    auto rhs_value = [&](const Production& p, std::size_t skip, const std::vector<SemilinearSet>& x) {
      SemilinearSet acc = sl_unit(dim);
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        if (i == skip) continue;
        acc = sl_sum(acc, symbol_value(p.rhs[i], x));
        if (acc.components.empty()) break;
      }
      return acc;
    };
    auto apply = [&](const std::vector<SemilinearSet>& x) {
      std::vector<SemilinearSet> y(c, sl_empty(dim));
      for (std::size_t i = 0; i < c; ++i) {
        for (const Production* p : by_lhs[comp[i]]) y[i] = sl_union(y[i], rhs_value(*p, p->rhs.size(), x));
      }
      return y;
    };

    bool recursive = c > 1;
    for (const Production* p : by_lhs[comp[0]]) {
      for (const auto& s : p->rhs) recursive = recursive || (!s.terminal && s.id == comp[0]);
    }

    std::vector<SemilinearSet> x = apply(std::vector<SemilinearSet>(c, sl_empty(dim)));
    if (recursive) {
      for (std::size_t round = 0; round < c; ++round) {
        std::vector<std::vector<SemilinearSet>> m(c, std::vector<SemilinearSet>(c, sl_empty(dim)));
        for (std::size_t i = 0; i < c; ++i) {
          for (const Production* p : by_lhs[comp[i]]) {
            for (std::size_t pos = 0; pos < p->rhs.size(); ++pos) {
              if (!in_comp(p->rhs[pos])) continue;
              auto& cell = m[i][slot[p->rhs[pos].id]];
              cell = sl_union(cell, rhs_value(*p, pos, x));
            }
          }
        }
        for (std::size_t k = 0; k < c; ++k) {
          const SemilinearSet loop = sl_star(m[k][k]);
          auto next = m;
          for (std::size_t i = 0; i < c; ++i) {
            if (m[i][k].components.empty()) continue;
            const SemilinearSet left = sl_sum(m[i][k], loop);
            for (std::size_t j = 0; j < c; ++j) {
              if (m[k][j].components.empty()) continue;
              next[i][j] = sl_union(next[i][j], sl_sum(left, m[k][j]));
            }
          }
          m = std::move(next);
        }
        for (std::size_t i = 0; i < c; ++i) m[i][i] = sl_union(m[i][i], sl_unit(dim));
        const auto fx = apply(x);
        std::vector<SemilinearSet> y(c, sl_empty(dim));
        for (std::size_t i = 0; i < c; ++i) {
          for (std::size_t j = 0; j < c; ++j) {
            if (!m[i][j].components.empty() && !fx[j].components.empty()) y[i] = sl_union(y[i], sl_sum(m[i][j], fx[j]));
          }
          y[i] = sl_simplify(y[i]);
        }
        x = std::move(y);
      }
    }
    for (std::size_t i = 0; i < c; ++i) value[comp[i]] = sl_simplify(x[i]);
  }
  return value[g.start];
}

// ---------------------------------------------------------------------------
// Automata and product grammars

namespace {

// Nondeterministic transducer; out < 0 emits nothing.
struct LabeledNfa {
  int states = 0;
  int start = 0;
  std::vector<bool> final;
  struct Edge {
    int from, symbol, to, out;
  };
  std::vector<Edge> edges;
};

// Grammar for the outputs of accepting runs of `a` over words of L(g).
Grammar product_grammar(const Grammar& g, const LabeledNfa& a, std::vector<std::string> out_terminals) {
  Grammar out;
  out.terminals = std::move(out_terminals);
  out.nonterminals = {"S'"};
  out.start = 0;
  if (g.empty() || a.states == 0) return out;
  const Grammar b = binarize(g.reduced());
  const std::size_t n = b.nonterminals.size();
  const std::size_t s = static_cast<std::size_t>(a.states);
  auto key = [&](std::size_t p, std::size_t nt, std::size_t q) { return (nt * s + p) * s + q; };

  struct Unit {
    int lhs, rhs;
  };
  struct Binary {
    int lhs, left, right;
  };
  std::vector<int> eps_rules;
  std::vector<std::pair<int, int>> term_rules;
  std::vector<Unit> unit_rules;
  std::vector<Binary> binary_rules;
  for (const auto& p : b.productions) {
    if (p.rhs.empty()) {
      eps_rules.push_back(p.lhs);
    } else if (p.rhs.size() == 1 && p.rhs[0].terminal) {
      term_rules.emplace_back(p.lhs, p.rhs[0].id);
    } else if (p.rhs.size() == 1) {
      unit_rules.push_back({p.lhs, p.rhs[0].id});
    } else {
      binary_rules.push_back({p.lhs, p.rhs[0].id, p.rhs[1].id});
    }
  }
  std::vector<std::vector<const LabeledNfa::Edge*>> by_symbol(b.terminals.size());
  for (const auto& e : a.edges) by_symbol.at(e.symbol).push_back(&e);

  std::vector<char> prod(n * s * s, 0);
  for (int A : eps_rules) {
    for (std::size_t p = 0; p < s; ++p) prod[key(p, A, p)] = 1;
  }
  for (auto [A, sym] : term_rules) {
    for (const auto* e : by_symbol[sym]) prod[key(e->from, A, e->to)] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto mark = [&](std::size_t k) {
      if (!prod[k]) {
        prod[k] = 1;
        changed = true;
      }
    };
    for (const auto& u : unit_rules) {
      for (std::size_t p = 0; p < s; ++p) {
        for (std::size_t q = 0; q < s; ++q) {
          if (prod[key(p, u.rhs, q)]) mark(key(p, u.lhs, q));
        }
      }
    }
    for (const auto& r : binary_rules) {
      for (std::size_t p = 0; p < s; ++p) {
        for (std::size_t m = 0; m < s; ++m) {
          if (!prod[key(p, r.left, m)]) continue;
          for (std::size_t q = 0; q < s; ++q) {
            if (prod[key(m, r.right, q)]) mark(key(p, r.lhs, q));
          }
        }
      }
    }
  }

  std::vector<std::vector<const Unit*>> units_of(n);
  std::vector<std::vector<const Binary*>> binaries_of(n);
  for (const auto& u : unit_rules) units_of[u.lhs].push_back(&u);
  for (const auto& r : binary_rules) binaries_of[r.lhs].push_back(&r);

  std::map<std::size_t, int> id;
  std::deque<std::tuple<std::size_t, std::size_t, std::size_t>> work;
  auto reach = [&](std::size_t p, std::size_t nt, std::size_t q) {
    const auto k = key(p, nt, q);
    auto [it, inserted] = id.try_emplace(k, static_cast<int>(out.nonterminals.size()));
    if (inserted) {
      out.nonterminals.push_back("[" + std::to_string(p) + "," + b.nonterminals[nt] + "," + std::to_string(q) + "]");
      work.emplace_back(p, nt, q);
    }
    return it->second;
  };
  for (std::size_t f = 0; f < s; ++f) {
    if (a.final[f] && prod[key(a.start, b.start, f)]) {
      out.productions.push_back({0, {Symbol::n(reach(a.start, b.start, f))}});
    }
  }
  while (!work.empty()) {
    const auto [p, nt, q] = work.front();
    work.pop_front();
    const int lhs = id.at(key(p, nt, q));
    if (p == q && std::find(eps_rules.begin(), eps_rules.end(), static_cast<int>(nt)) != eps_rules.end()) {
      out.productions.push_back({lhs, {}});
    }
    for (auto [A, sym] : term_rules) {
      if (A != static_cast<int>(nt)) continue;
      for (const auto* e : by_symbol[sym]) {
        if (static_cast<std::size_t>(e->from) != p || static_cast<std::size_t>(e->to) != q) continue;
        Production pr{lhs, {}};
        if (e->out >= 0) pr.rhs.push_back(Symbol::t(e->out));
        out.productions.push_back(std::move(pr));
      }
    }
    for (const auto* u : units_of[nt]) {
      if (prod[key(p, u->rhs, q)]) out.productions.push_back({lhs, {Symbol::n(reach(p, u->rhs, q))}});
    }
    for (const auto* r : binaries_of[nt]) {
      for (std::size_t m = 0; m < s; ++m) {
        if (prod[key(p, r->left, m)] && prod[key(m, r->right, q)]) {
          const int left = reach(p, r->left, m);
          const int right = reach(m, r->right, q);
          out.productions.push_back({lhs, {Symbol::n(left), Symbol::n(right)}});
        }
      }
    }
  }
  return out.reduced();
}

// NFA of u_1* ... u_k* over the base alphabet. State j in [0, k] is the
// boundary after a copy of u_j (0 = nothing read yet); the remaining states
// sit inside a copy. All boundaries accept.
struct BlockNfa {
  std::size_t k = 0;
  std::vector<std::pair<std::size_t, std::size_t>> inside;  // (block, offset)
  std::map<std::pair<std::size_t, std::size_t>, int> inside_id;
  // trans[state][letter] -> successor states
  std::vector<std::vector<std::vector<int>>> trans;

  int states() const { return static_cast<int>(k + 1 + inside.size()); }
  bool boundary(int q) const { return q <= static_cast<int>(k); }
  // Position in the run order: boundaries (j, 0), inner states (i, o).
  std::pair<std::size_t, std::size_t> order_key(int q) const {
    return boundary(q) ? std::make_pair(static_cast<std::size_t>(q), std::size_t{0}) : inside[q - k - 1];
  }
};

BlockNfa block_nfa(const Morphism& m) {
  BlockNfa a;
  a.k = m.size();
  for (std::size_t i = 0; i < a.k; ++i) {
    if (m.images[i].empty()) throw ArgumentError("bounding words must be nonempty");
    for (int letter : m.images[i]) {
      if (letter < 0 || static_cast<std::size_t>(letter) >= m.alphabet) throw DimensionError("bounding word letter out of range");
    }
    for (std::size_t o = 1; o < m.images[i].size(); ++o) {
      a.inside_id[{i + 1, o}] = static_cast<int>(a.k + 1 + a.inside.size());
      a.inside.emplace_back(i + 1, o);
    }
  }
  a.trans.assign(a.states(), std::vector<std::vector<int>>(m.alphabet));
  for (std::size_t j = 0; j <= a.k; ++j) {
    for (std::size_t i = std::max<std::size_t>(j, 1); i <= a.k; ++i) {
      const Word& u = m.images[i - 1];
      a.trans[j][u[0]].push_back(u.size() == 1 ? static_cast<int>(i) : a.inside_id.at({i, 1}));
    }
  }
  for (std::size_t idx = 0; idx < a.inside.size(); ++idx) {
    const auto [i, o] = a.inside[idx];
    const Word& u = m.images[i - 1];
    const int next = o + 1 == u.size() ? static_cast<int>(i) : a.inside_id.at({i, o + 1});
    a.trans[a.k + 1 + idx][u[o]].push_back(next);
  }
  for (auto& row : a.trans) {
    for (auto& succ : row) {
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
  }
  return a;
}

void check_morphism(const Grammar& g, const Morphism& m) {
  if (g.terminals.size() != m.alphabet) throw DimensionError("morphism alphabet differs from the grammar's terminals");
  if (m.images.empty()) throw ArgumentError("need at least one bounding word");
}

std::vector<std::string> block_names(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= k; ++i) names.push_back("a" + std::to_string(i));
  return names;
}

std::optional<Word> shortest_word(const Grammar& g) {
  if (g.empty()) return std::nullopt;
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> best(g.nonterminals.size(), inf);
  std::vector<const Production*> rule(g.nonterminals.size(), nullptr);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : g.productions) {
      std::int64_t cost = 0;
      bool finite = true;
      for (const auto& s : p.rhs) {
        if (s.terminal) {
          ++cost;
        } else if (best[s.id] == inf) {
          finite = false;
          break;
        } else {
          cost += best[s.id];
        }
      }
      if (finite && cost < best[p.lhs]) {
        best[p.lhs] = cost;
        rule[p.lhs] = &p;
        changed = true;
      }
    }
  }
  Word w;
  std::function<void(int)> expand = [&](int a) {
    for (const auto& s : rule[a]->rhs) {
      if (s.terminal) {
        w.push_back(s.id);
      } else {
        expand(s.id);
      }
    }
  };
  expand(g.start);
  return w;
}

}  // namespace

Dfa block_skeleton(std::size_t k) {
  Dfa d;
  d.letters = k;
  d.start = 0;
  d.accepting.assign(k + 1, true);
  d.delta.assign(k + 1, std::vector<int>(k, -1));
  for (std::size_t j = 0; j <= k; ++j) {
    for (std::size_t i = std::max<std::size_t>(j, 1); i <= k; ++i) d.delta[j][i - 1] = static_cast<int>(i);
  }
  return d;
}

// Reads block letters while following the run they spell in the block NFA,
// and tracks the set of NFA states reachable by runs on the same base word
// that are lexicographically smaller. The word is kept iff no smaller run
// ends on a boundary.
Dfa cross_section(const Morphism& m) {
  const BlockNfa a = block_nfa(m);
  const std::size_t k = a.k;
  using State = std::pair<std::size_t, std::vector<int>>;
  std::map<State, int> id;
  std::vector<State> states;
  Dfa d;
  d.letters = k;
  d.start = 0;
  auto intern = [&](State st) {
    auto [it, inserted] = id.try_emplace(st, static_cast<int>(states.size()));
    if (inserted) {
      states.push_back(std::move(st));
      d.delta.emplace_back(k, -1);
    }
    return it->second;
  };
  intern({0, {}});
  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    const std::size_t j = states[idx].first;
    for (std::size_t i = std::max<std::size_t>(j, 1); i <= k; ++i) {
      std::vector<int> smaller = states[idx].second;
      int cur = static_cast<int>(j);
      const Word& u = m.images[i - 1];
      for (std::size_t o = 0; o < u.size(); ++o) {
        const int next = o + 1 == u.size() ? static_cast<int>(i) : a.inside_id.at({i, o + 1});
        std::set<int> nxt;
        for (int q : smaller) nxt.insert(a.trans[q][u[o]].begin(), a.trans[q][u[o]].end());
        for (int q : a.trans[cur][u[o]]) {
          if (a.order_key(q) < a.order_key(next)) nxt.insert(q);
        }
        smaller.assign(nxt.begin(), nxt.end());
        cur = next;
      }
      const int target = intern({i, std::move(smaller)});
      d.delta[idx][i - 1] = target;
    }
  }
  d.accepting.resize(states.size());
  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    const auto& sm = states[idx].second;
    d.accepting[idx] = std::none_of(sm.begin(), sm.end(), [&](int q) { return a.boundary(q); });
  }
  return d;
}

Grammar inverse_morphism_intersect(const Grammar& g, const Morphism& m, const Dfa& r) {
  check_morphism(g, m);
  if (r.letters != m.size()) throw DimensionError("automaton alphabet differs from the number of bounding words");
  LabeledNfa t;
  const int ds = static_cast<int>(r.size());
  std::map<std::tuple<int, int, std::size_t>, int> inner;
  t.states = ds;
  for (int q = 0; q < ds; ++q) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t o = 1; o < m.images[i].size(); ++o) inner[{q, static_cast<int>(i), o}] = t.states++;
    }
  }
  t.start = r.start;
  t.final.assign(t.states, false);
  for (int q = 0; q < ds; ++q) t.final[q] = r.accepting[q];
  for (int q = 0; q < ds; ++q) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const int target = r.delta[q][i];
      if (target < 0) continue;
      const Word& u = m.images[i];
      int from = q;
      for (std::size_t o = 0; o < u.size(); ++o) {
        const bool last = o + 1 == u.size();
        const int to = last ? target : inner.at({q, static_cast<int>(i), o + 1});
        t.edges.push_back({from, u[o], to, last ? static_cast<int>(i) : -1});
        from = to;
      }
    }
  }
  return product_grammar(g, t, block_names(m.size()));
}

Grammar inverse_morphism_intersect(const Grammar& g, const Morphism& m) {
  return inverse_morphism_intersect(g, m, block_skeleton(m.size()));
}

std::optional<Word> containment_witness(const Grammar& g, const Morphism& m) {
  check_morphism(g, m);
  const BlockNfa a = block_nfa(m);
  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<int>> delta;
  auto intern = [&](std::vector<int> st) {
    auto [it, inserted] = id.try_emplace(st, static_cast<int>(sets.size()));
    if (inserted) {
      sets.push_back(std::move(st));
      delta.emplace_back(m.alphabet, -1);
    }
    return it->second;
  };
  intern({0});
  for (std::size_t idx = 0; idx < sets.size(); ++idx) {
    for (std::size_t letter = 0; letter < m.alphabet; ++letter) {
      std::set<int> nxt;
      for (int q : sets[idx]) nxt.insert(a.trans[q][letter].begin(), a.trans[q][letter].end());
      const int target = intern(std::vector<int>(nxt.begin(), nxt.end()));
      delta[idx][letter] = target;
    }
  }
  LabeledNfa t;
  t.states = static_cast<int>(sets.size());
  t.start = 0;
  t.final.resize(sets.size());
  for (std::size_t idx = 0; idx < sets.size(); ++idx) {
    t.final[idx] = std::none_of(sets[idx].begin(), sets[idx].end(), [&](int q) { return a.boundary(q); });
    for (std::size_t letter = 0; letter < m.alphabet; ++letter) {
      t.edges.push_back({static_cast<int>(idx), static_cast<int>(letter), delta[idx][letter], static_cast<int>(letter)});
    }
  }
  return shortest_word(product_grammar(g, t, g.terminals));
}

Morphism block_morphism(const BoundedLanguage& bl) {
  Morphism m{bl.letters(), bl.words};
  for (const auto& w : m.images) {
    if (w.empty()) throw ArgumentError("bounding words must be nonempty");
  }
  return m;
}

SemiSimpleSet index_set(const BoundedLanguage& bl, int depth_cap) {
  const Morphism m = block_morphism(bl);
  const Grammar pre = inverse_morphism_intersect(bl.grammar, m, cross_section(m));
  return decompose_semisimple(parikh_image(pre), depth_cap);
}

std::vector<DiophantineSystem> diophantine_systems(const SemiSimpleSet& b, const Morphism& m) {
  if (b.dim != m.size()) throw DimensionError("index set dimension differs from the number of bounding words");
  const std::size_t t = m.alphabet;
  std::vector<NVec> psi;
  for (const auto& u : m.images) psi.push_back(parikh_vector(u, t));
  auto image = [&](const NVec& x) {
    NVec v(t, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t r = 0; r < t; ++r) v[r] += x[i] * psi[i][r];
    }
    return v;
  };
  std::vector<DiophantineSystem> out;
  for (const auto& l : b.components) {
    std::vector<std::vector<std::int64_t>> rows(t);
    for (const auto& p : l.periods) {
      const NVec col = image(p);
      if (std::all_of(col.begin(), col.end(), [](std::int64_t v) { return v == 0; })) {
        throw InvariantError("period maps to the zero vector");
      }
      for (std::size_t r = 0; r < t; ++r) rows[r].push_back(col[r]);
    }
    DiophantineSystem s = DiophantineSystem::from_rows(rows);
    s.offset = image(l.base);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counting functions

CountingFunction CountingFunction::from_systems(std::size_t dim, const std::vector<DiophantineSystem>& systems) {
  CountingFunction f(dim);
  for (const auto& s : systems) {
    if (s.rows != dim) throw DimensionError("system row count differs from the counting dimension");
    NVec offset = s.offset.empty() ? NVec(dim, 0) : s.offset;
    f.add(std::move(offset), s, box_spline_of_system(s));
  }
  return f;
}

void CountingFunction::add(NVec offset, DiophantineSystem system, BoxSpline spline) {
  if (offset.size() != dim_ || spline.dim() != dim_) throw DimensionError("CountingFunction::add: dimension mismatch");
  summands_.push_back({std::move(offset), std::move(system), std::move(spline)});
}

Integer CountingFunction::eval(std::span<const std::int64_t> v) const {
  if (v.size() != dim_) throw DimensionError("CountingFunction::eval: dimension mismatch");
  Integer total = 0;
  Point w(dim_);
  for (const auto& s : summands_) {
    bool inside = true;
    for (std::size_t i = 0; i < dim_ && inside; ++i) {
      w[i] = v[i] - s.offset[i];
      inside = w[i] >= 0;
    }
    if (inside) total += bs_eval(s.spline, w);
  }
  return total;
}

CountingFunction parikh_counting_function(const BoundedLanguage& bl, int depth_cap) {
  const Morphism m = block_morphism(bl);
  if (auto w = containment_witness(bl.grammar, m)) {
    throw InvariantError("language is not bounded by the given words; it contains " + bl.grammar.spell(*w));
  }
  return CountingFunction::from_systems(bl.letters(), diophantine_systems(index_set(bl, depth_cap), m));
}

namespace {

// Substitutes x = sum_i s_i * basis[i] into p.
MultiPoly restrict_to_span(const MultiPoly& p, const std::vector<std::vector<Rational>>& basis) {
  const std::size_t t = p.arity();
  const std::size_t d = basis.size();
  std::vector<MultiPoly> subs;
  std::vector<Rational> coeffs(d);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t i = 0; i < d; ++i) coeffs[i] = basis[i][j];
    subs.push_back(MultiPoly::affine(coeffs, Rational(0)));
  }
  return poly_substitute(p, subs);
}

std::vector<std::vector<Rational>> span_basis(const std::vector<Point>& pts, std::size_t t) {
  auto m = detail::to_rational(pts);
  detail::rref(m, t);
  std::vector<std::vector<Rational>> basis;
  for (auto& row : m) {
    if (std::any_of(row.begin(), row.end(), [](const Rational& v) { return sgn(v) != 0; })) basis.push_back(row);
  }
  return basis;
}

}  // namespace

SlenderVerdict decide_parikh_slender(const CountingFunction& f, std::int64_t radius) {
  if (radius < 0) throw ArgumentError("radius must be non-negative");
  const std::size_t t = f.dim();
  for (const auto& s : f.summands()) {
    std::map<SignVector, std::vector<Point>> regions;
    for_each_box_point(t, radius, [&](const Point& x) { regions[sign_vector(s.spline.arrangement(), x)].push_back(x); });
    for (const auto& [sv, pts] : regions) {
      const auto basis = span_basis(pts, t);
      if (basis.empty()) continue;
      const LazyQP piece = s.spline.piece_at(pts.front());
      if (piece->known_zero()) continue;
      std::set<Residue> seen;
      for (const auto& x : pts) {
        Residue r = residue_of(x, piece->period());
        if (!seen.insert(r).second) continue;
        if (!restrict_to_span(piece->at(r), basis).is_constant()) return {false, std::nullopt};
      }
    }
  }
  Integer best = 0;
  for_each_box_point(t, radius, [&](const Point& x) {
    const Integer v = f.eval(x);
    if (v > best) best = v;
  });
  return {true, best};
}

namespace {

LazyQP shifted(const LazyQP& q, const NVec& c) {
  const std::size_t t = q->arity();
  if (std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; })) return q;
  const std::int64_t d = q->period();
  return std::make_shared<LazyQuasiPolynomial>(t, d, [q, c, t, d](const Residue& r) {
    Residue rs(t);
    std::vector<MultiPoly> subs;
    std::vector<Rational> coeffs(t);
    for (std::size_t i = 0; i < t; ++i) {
      rs[i] = mod_floor(r[i] - c[i], d);
      std::fill(coeffs.begin(), coeffs.end(), Rational(0));
      coeffs[i] = 1;
      subs.push_back(MultiPoly::affine(coeffs, Rational(static_cast<long>(-c[i]))));
    }
    return poly_substitute(q->at(rs), subs);
  });
}

class ShiftedSumProvider final : public PieceProvider {
 public:
  struct Part {
    BoxSpline spline;
    NVec offset;
    std::vector<std::size_t> planes;
  };
  ShiftedSumProvider(std::size_t dim, std::vector<Part> parts) : dim_(dim), parts_(std::move(parts)) {}

  LazyQP derive(const SignVector& region, std::span<const Rational> witness) const override {
    std::vector<std::pair<int, LazyQP>> terms;
    for (const auto& p : parts_) {
      const LazyQP q = p.spline.piece(region.restrict_to(p.planes), witness);
      if (!q->known_zero()) terms.emplace_back(1, shifted(q, p.offset));
    }
    return lazy_sum(dim_, std::move(terms));
  }

 private:
  std::size_t dim_;
  std::vector<Part> parts_;
};

}  // namespace

NormalizedCounting normalize_counting_function(const CountingFunction& f, std::int64_t radius) {
  if (radius < 0) throw ArgumentError("radius must be non-negative");
  const std::size_t t = f.dim();
  Arrangement arr(t);
  for (const auto& s : f.summands()) {
    for (const auto& h : s.spline.arrangement().planes()) arr.add(h);
  }
  std::vector<ShiftedSumProvider::Part> parts;
  for (const auto& s : f.summands()) {
    std::vector<std::size_t> planes;
    for (const auto& h : s.spline.arrangement().planes()) planes.push_back(*arr.index_of(h));
    parts.push_back({s.spline, s.offset, std::move(planes)});
  }
  BoxSpline base(arr, std::make_shared<ShiftedSumProvider>(t, std::move(parts)));
  BoxSpline::Overrides overrides;
  bool boundary_hit = false;
  for_each_box_point(t, radius, [&](const Point& x) {
    const Integer want = f.eval(x);
    const Rational got = base.piece_at(x)->eval(x);
    if (got != Rational(want)) {
      overrides.emplace(x, want);
      boundary_hit = boundary_hit || std::find(x.begin(), x.end(), radius) != x.end();
    }
  });
  return {base.with_overrides(std::move(overrides)), boundary_hit};
}

}  // namespace parikh
