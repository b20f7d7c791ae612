#pragma once

// Brute-force reference implementations. Everything here is exhaustive
// enumeration over explicit bounds and shares no algorithmic code with the
// constructions it is used to check.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "parikh/exactmath.hpp"
#include "parikh/grammar.hpp"
#include "parikh/langfront.hpp"
#include "parikh/semilinear.hpp"
#include "parikh/system.hpp"

namespace parikh::oracle {

/// #{x in N^k : A x + offset = n}.
Integer count_system_brute(const DiophantineSystem& sys, const std::vector<std::int64_t>& n);

/// Earley recognizer.
bool derives(const Grammar& g, const Word& w);

/// Words of L of length <= maxlen, found among u_1^l1 ... u_k^lk.
std::set<Word> enumerate_language(const BoundedLanguage& bl, std::int64_t maxlen);

/// v -> number of words of L with Parikh vector v, for every v <= box.
std::map<std::vector<std::int64_t>, Integer> census_parikh(const BoundedLanguage& bl,
                                                           const std::vector<std::int64_t>& box);

/// #{m in N^n : base + sum m_i periods_i = v}.
Integer count_representations_brute(const LinearSet& l, const std::vector<std::int64_t>& v);

}  // namespace parikh::oracle
