#pragma once
#include <optional>
#include <string>
#include <vector>

#include "sba/algebra.hpp"

namespace sba {

// One step of a walk: an arrow traversed forwards (direct) or backwards.
struct Letter {
  int arrow = -1;
  bool inverse = false;
  bool operator==(const Letter&) const = default;
};

// A walk in the quiver. Empty walks (trivial words) carry a vertex and a
// sign t = +1/-1; the two trivial words at a vertex are each other's inverses.
struct Word {
  std::vector<Letter> letters;
  int vertex = -1;  // used when letters is empty
  int sign = 1;     // used when letters is empty
  bool trivial() const { return letters.empty(); }
  int size() const { return (int)letters.size(); }
  bool operator==(const Word&) const = default;
};

Word trivial_word(int vertex, int sign);
Word letters_word(std::vector<Letter> letters);

int letter_src(const Algebra& A, const Letter& l);
int letter_dst(const Algebra& A, const Letter& l);
int letter_sigma(const Algebra& A, const Letter& l);
int letter_eps(const Algebra& A, const Letter& l);

int word_src(const Algebra& A, const Word& w);
int word_dst(const Algebra& A, const Word& w);
int word_sigma(const Algebra& A, const Word& w);
int word_eps(const Algebra& A, const Word& w);

Word inverse(Word w);

// A word is a valid string when consecutive letters chain through shared
// vertices, no letter is immediately undone by its inverse, and no run of
// equally directed letters spells a declared relation (read forwards for
// direct runs, backwards for inverse runs).
bool is_valid_string(const Algebra& A, const Word& w);
bool is_valid_string(const Algebra& A, const Word& w, std::string* why);

// Deterministic total order: by length, then letterwise by (arrow index,
// direct before inverse); trivial words by (vertex, +1 before -1).
bool word_less(const Word& a, const Word& b);

// The smaller of w and its inverse.
Word canonical(const Word& w);
bool is_canonical(const Word& w);

// Concatenation of strings, when defined:
//   nonempty * nonempty: juxtaposition, defined when the result is valid;
//   1_(v,t) * C: defined when v is the source of C and t = sigma(C);
//   C * 1_(v,t): defined when v is the target of C and t = -eps(C);
//   1_(v,t) * 1_(v',t'): defined when v = v' and t = t'.
std::optional<Word> concat(const Algebra& A, const Word& a, const Word& b);

// All valid strings of length at most max_len, one canonical representative
// per inverse pair, sorted by word_less. Includes the trivial strings.
std::vector<Word> enumerate_strings(const Algebra& A, int max_len);

// A band: a nontrivial valid string that closes up, whose square is again
// valid, that uses both directions, and that is not a proper power.
bool is_band(const Algebra& A, const Word& w);

// Text form: space-separated letters "a" / "a-", or "1(<vertex>,+1)".
std::string format_word(const Algebra& A, const Word& w);
Word parse_word(const Algebra& A, const std::string& text);

}  // namespace sba
