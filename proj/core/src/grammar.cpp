#include "parikh/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "parikh/errors.hpp"

namespace parikh {

bool Grammar::empty() const {
  std::vector<bool> productive(nonterminals.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : productions) {
      if (productive[p.lhs]) continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return s.terminal || productive[s.id]; })) {
        productive[p.lhs] = true;
        changed = true;
      }
    }
  }
  return nonterminals.empty() || !productive[start];
}

Grammar Grammar::reduced() const {
  const std::size_t n = nonterminals.size();
  std::vector<bool> productive(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : productions) {
      if (productive[p.lhs]) continue;
      if (std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return s.terminal || productive[s.id]; })) {
        productive[p.lhs] = true;
        changed = true;
      }
    }
  }
  Grammar out;
  out.terminals = terminals;
  if (n == 0 || !productive[start]) {
    out.nonterminals = {n == 0 ? std::string("S") : nonterminals[start]};
    out.start = 0;
    return out;
  }
  auto usable = [&](const Production& p) {
    return std::all_of(p.rhs.begin(), p.rhs.end(), [&](const Symbol& s) { return s.terminal || productive[s.id]; });
  };
  std::vector<bool> reachable(n, false);
  std::vector<int> stack{start};
  reachable[start] = true;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (const auto& p : productions) {
      if (p.lhs != a || !usable(p)) continue;
      for (const auto& s : p.rhs) {
        if (!s.terminal && !reachable[s.id]) {
          reachable[s.id] = true;
          stack.push_back(s.id);
        }
      }
    }
  }
  std::vector<int> remap(n, -1);
  remap[start] = 0;
  out.nonterminals.push_back(nonterminals[start]);
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) != start && reachable[i]) {
      remap[i] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back(nonterminals[i]);
    }
  }
  out.start = 0;
  std::set<Production> seen;
  for (const auto& p : productions) {
    if (!reachable[p.lhs] || !usable(p)) continue;
    Production q{remap[p.lhs], p.rhs};
    for (auto& s : q.rhs) {
      if (!s.terminal) s.id = remap[s.id];
    }
    if (seen.insert(q).second) out.productions.push_back(std::move(q));
  }
  return out;
}

std::string Grammar::spell(const Word& w) const {
  if (w.empty()) return "eps";
  std::string out;
  for (int a : w) out += terminals.at(a);
  return out;
}

std::string Grammar::to_string() const {
  std::ostringstream os;
  std::vector<int> order(nonterminals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_partition(order.begin(), order.end(), [&](int a) { return a == start; });
  for (int a : order) {
    std::vector<std::string> alts;
    for (const auto& p : productions) {
      if (p.lhs != a) continue;
      if (p.rhs.empty()) {
        alts.push_back("eps");
        continue;
      }
      std::string alt;
      for (std::size_t i = 0; i < p.rhs.size(); ++i) {
        if (i) alt += " ";
        alt += p.rhs[i].terminal ? terminals[p.rhs[i].id] : nonterminals[p.rhs[i].id];
      }
      alts.push_back(alt);
    }
    if (alts.empty()) continue;
    os << nonterminals[a] << " ->";
    for (std::size_t i = 0; i < alts.size(); ++i) os << (i ? " | " : " ") << alts[i];
    os << "\n";
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_nonterminal_token(const std::string& tok) {
  if (tok.empty() || !std::isupper(static_cast<unsigned char>(tok[0]))) return false;
  return std::all_of(tok.begin(), tok.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; });
}

bool is_terminal_token(const std::string& tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

struct RawRule {
  std::size_t line;
  std::string lhs;
  std::vector<std::vector<std::string>> alternatives;
};

}  // namespace

GrammarFile parse_grammar(std::istream& in) {
  std::vector<RawRule> rules;
  std::vector<std::string> bound_words;
  std::size_t bounds_line = 0;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (bounds_line != 0) throw ParseError(number, "the bounds line must be the last line");
    if (line.rfind("bounds:", 0) == 0) {
      bounds_line = number;
      std::string rest = line.substr(7);
      std::size_t start = 0;
      while (true) {
        const auto comma = rest.find(',', start);
        const std::string w = trim(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (w.empty() || !is_terminal_token(w) || w == "eps") {
          throw ParseError(number, "bounding words must be nonempty lowercase words");
        }
        bound_words.push_back(w);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      continue;
    }
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(number, "expected 'A -> ...'");
    RawRule rule{number, trim(line.substr(0, arrow)), {}};
    if (!is_nonterminal_token(rule.lhs)) throw ParseError(number, "left-hand side '" + rule.lhs + "' is not a nonterminal");
    std::string rhs = line.substr(arrow + 2);
    std::size_t start = 0;
    while (true) {
      const auto bar = rhs.find('|', start);
      std::istringstream alt(rhs.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
      std::vector<std::string> toks;
      std::string tok;
      while (alt >> tok) toks.push_back(tok);
      if (toks.empty()) throw ParseError(number, "empty alternative (write 'eps')");
      for (const auto& t : toks) {
        if (t == "eps") {
          if (toks.size() != 1) throw ParseError(number, "'eps' must stand alone");
        } else if (!is_nonterminal_token(t) && !is_terminal_token(t)) {
          throw ParseError(number, "bad token '" + t + "'");
        }
      }
      if (toks.size() == 1 && toks[0] == "eps") toks.clear();
      rule.alternatives.push_back(std::move(toks));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    rules.push_back(std::move(rule));
  }
  if (rules.empty()) throw ParseError(number == 0 ? 1 : number, "no productions");

  std::set<char> letters;
  for (const auto& r : rules) {
    for (const auto& alt : r.alternatives) {
      for (const auto& t : alt) {
        if (is_terminal_token(t)) letters.insert(t.begin(), t.end());
      }
    }
  }
  for (const auto& w : bound_words) letters.insert(w.begin(), w.end());

  GrammarFile out;
  Grammar& g = out.grammar;
  std::map<char, int> term_id;
  for (char c : letters) {
    term_id[c] = static_cast<int>(g.terminals.size());
    g.terminals.emplace_back(1, c);
  }
  std::map<std::string, int> nt_id;
  auto nonterminal = [&](const std::string& name) {
    auto [it, inserted] = nt_id.try_emplace(name, static_cast<int>(g.nonterminals.size()));
    if (inserted) g.nonterminals.push_back(name);
    return it->second;
  };
  nonterminal(rules.front().lhs);
  g.start = 0;
  for (const auto& r : rules) {
    const int lhs = nonterminal(r.lhs);
    for (const auto& alt : r.alternatives) {
      Production p{lhs, {}};
      for (const auto& t : alt) {
        if (is_nonterminal_token(t)) {
          p.rhs.push_back(Symbol::n(nonterminal(t)));
        } else {
          for (char c : t) p.rhs.push_back(Symbol::t(term_id[c]));
        }
      }
      g.productions.push_back(std::move(p));
    }
  }
  for (const auto& w : bound_words) {
    Word word;
    for (char c : w) word.push_back(term_id[c]);
    out.bounds.push_back(std::move(word));
  }
  return out;
}

GrammarFile parse_grammar(const std::string& text) {
  std::istringstream is(text);
  return parse_grammar(is);
}

Grammar binarize(const Grammar& g) {
  Grammar out;
  out.terminals = g.terminals;
  out.nonterminals = g.nonterminals;
  out.start = g.start;
  std::vector<int> term_nt(g.terminals.size(), -1);
  auto terminal_nt = [&](int a) {
    if (term_nt[a] < 0) {
      term_nt[a] = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back("<" + g.terminals[a] + ">");
      out.productions.push_back({term_nt[a], {Symbol::t(a)}});
    }
    return term_nt[a];
  };
  for (const auto& p : g.productions) {
    if (p.rhs.size() == 1 && p.rhs[0].terminal) {
      out.productions.push_back(p);
      continue;
    }
    std::vector<Symbol> syms;
    for (const auto& s : p.rhs) syms.push_back(s.terminal ? Symbol::n(terminal_nt(s.id)) : s);
    int lhs = p.lhs;
    while (syms.size() > 2) {
      const int fresh = static_cast<int>(out.nonterminals.size());
      out.nonterminals.push_back("<" + std::to_string(fresh) + ">");
      out.productions.push_back({lhs, {syms[0], Symbol::n(fresh)}});
      syms.erase(syms.begin());
      lhs = fresh;
    }
    out.productions.push_back({lhs, syms});
  }
  return out;
}

}  // namespace parikh
