#pragma once

// Context-free grammars with indexed terminals. Terminal i is coordinate i
// of Parikh vectors.

#include <compare>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace parikh {

struct Symbol {
  bool terminal = false;
  int id = 0;

  static Symbol t(int id) { return {true, id}; }
  static Symbol n(int id) { return {false, id}; }
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct Production {
  int lhs = 0;
  std::vector<Symbol> rhs;

  friend auto operator<=>(const Production&, const Production&) = default;
};

using Word = std::vector<int>;

struct Grammar {
  std::vector<std::string> terminals;
  std::vector<std::string> nonterminals;
  int start = 0;
  std::vector<Production> productions;

  /// True when the start symbol derives no terminal word.
  bool empty() const;
  /// Drops unproductive and unreachable nonterminals. An empty language
  /// reduces to a lone start symbol without productions.
  Grammar reduced() const;
  /// "S -> a S b | eps" lines, start symbol first.
  std::string to_string() const;
  /// Terminal names joined without separators ("eps" for the empty word).
  std::string spell(const Word& w) const;
};

/// A parsed grammar file: the grammar plus the words of its "bounds:" line,
/// spelled over the grammar's terminal indices.
struct GrammarFile {
  Grammar grammar;
  std::vector<Word> bounds;
};

/// One rule per line ("S -> a S b | eps"); uppercase-initial tokens are
/// nonterminals, lowercase letters are terminals, "eps" is the empty word.
/// The first left-hand side is the start symbol. An optional final line
/// "bounds: u1, u2, ..." lists the bounding words. Terminals are the sorted
/// set of letters used anywhere in the file. Errors are ParseError.
GrammarFile parse_grammar(std::istream& in);
GrammarFile parse_grammar(const std::string& text);

/// Equivalent grammar whose right-hand sides are empty, a single terminal
/// (only in rules A -> a), one nonterminal, or two nonterminals.
Grammar binarize(const Grammar& g);

}  // namespace parikh
