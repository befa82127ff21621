#include "sba/strings.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sba/errors.hpp"

namespace sba {

Word trivial_word(int vertex, int sign) {
  Word w;
  w.vertex = vertex;
  w.sign = sign;
  return w;
}

Word letters_word(std::vector<Letter> letters) {
  Word w;
  w.letters = std::move(letters);
  return w;
}

int letter_src(const Algebra& A, const Letter& l) {
  const Arrow& a = A.pres.arrows[l.arrow];
  return l.inverse ? a.dst : a.src;
}

int letter_dst(const Algebra& A, const Letter& l) {
  const Arrow& a = A.pres.arrows[l.arrow];
  return l.inverse ? a.src : a.dst;
}

int letter_sigma(const Algebra& A, const Letter& l) {
  return l.inverse ? A.signs.eps[l.arrow] : A.signs.sigma[l.arrow];
}

int letter_eps(const Algebra& A, const Letter& l) {
  return l.inverse ? A.signs.sigma[l.arrow] : A.signs.eps[l.arrow];
}

int word_src(const Algebra& A, const Word& w) {
  return w.trivial() ? w.vertex : letter_src(A, w.letters.front());
}

int word_dst(const Algebra& A, const Word& w) {
  return w.trivial() ? w.vertex : letter_dst(A, w.letters.back());
}

int word_sigma(const Algebra& A, const Word& w) {
  return w.trivial() ? w.sign : letter_sigma(A, w.letters.front());
}

int word_eps(const Algebra& A, const Word& w) {
  return w.trivial() ? -w.sign : letter_eps(A, w.letters.back());
}

Word inverse(Word w) {
  if (w.trivial()) {
    w.sign = -w.sign;
    return w;
  }
  std::reverse(w.letters.begin(), w.letters.end());
  for (Letter& l : w.letters) l.inverse = !l.inverse;
  return w;
}

namespace {

// The path spelled by a run of equally directed letters: direct runs read
// forwards, inverse runs read backwards.
Path run_path(const std::vector<Letter>& letters, size_t begin, size_t end) {
  Path p;
  if (letters[begin].inverse)
    for (size_t i = end; i-- > begin;) p.push_back(letters[i].arrow);
  else
    for (size_t i = begin; i < end; ++i) p.push_back(letters[i].arrow);
  return p;
}

struct RelationTable {
  std::set<Path> rho_plus_set;
  size_t max_len = 1;
  explicit RelationTable(const Algebra& A) {
    for (const Path& r : A.rho_plus) {
      rho_plus_set.insert(r);
      max_len = std::max(max_len, r.size());
    }
  }
  bool contains_window(const Path& p) const {
    for (size_t len = 2; len <= std::min(max_len, p.size()); ++len)
      for (size_t i = 0; i + len <= p.size(); ++i)
        if (rho_plus_set.count(Path(p.begin() + i, p.begin() + i + len))) return true;
    return false;
  }
};

}  // namespace

bool is_valid_string(const Algebra& A, const Word& w) { return is_valid_string(A, w, nullptr); }

bool is_valid_string(const Algebra& A, const Word& w, std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.trivial()) {
    if (w.vertex < 0 || w.vertex >= A.num_vertices()) return reject("trivial word at unknown vertex");
    if (w.sign != 1 && w.sign != -1) return reject("trivial word sign must be +1 or -1");
    return true;
  }
  for (const Letter& l : w.letters)
    if (l.arrow < 0 || l.arrow >= A.num_arrows()) return reject("letter uses an unknown arrow");
  for (size_t i = 0; i + 1 < w.letters.size(); ++i) {
    if (letter_dst(A, w.letters[i]) != letter_src(A, w.letters[i + 1]))
      return reject("letters " + std::to_string(i) + " and " + std::to_string(i + 1) +
                    " do not chain through a common vertex");
    if (w.letters[i].arrow == w.letters[i + 1].arrow &&
        w.letters[i].inverse != w.letters[i + 1].inverse)
      return reject("letter " + std::to_string(i + 1) + " undoes its predecessor");
  }
  RelationTable rt(A);
  size_t run_start = 0;
  for (size_t i = 1; i <= w.letters.size(); ++i) {
    if (i == w.letters.size() || w.letters[i].inverse != w.letters[run_start].inverse) {
      if (rt.contains_window(run_path(w.letters, run_start, i)))
        return reject("a run of the word spells a declared relation");
      run_start = i;
    }
  }
  return true;
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.trivial()) {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    return a.sign > b.sign;  // +1 before -1
  }
  for (int i = 0; i < a.size(); ++i) {
    const Letter &x = a.letters[i], &y = b.letters[i];
    if (x.arrow != y.arrow) return x.arrow < y.arrow;
    if (x.inverse != y.inverse) return !x.inverse;
  }
  return false;
}

Word canonical(const Word& w) {
  Word rev = inverse(w);
  return word_less(rev, w) ? rev : w;
}

bool is_canonical(const Word& w) { return w == canonical(w); }

std::optional<Word> concat(const Algebra& A, const Word& a, const Word& b) {
  if (a.trivial() && b.trivial()) {
    if (a.vertex == b.vertex && a.sign == b.sign) return a;
    return std::nullopt;
  }
  if (a.trivial()) {
    if (a.vertex == word_src(A, b) && a.sign == word_sigma(A, b)) return b;
    return std::nullopt;
  }
  if (b.trivial()) {
    if (b.vertex == word_dst(A, a) && b.sign == -word_eps(A, a)) return a;
    return std::nullopt;
  }
  Word joined;
  joined.letters = a.letters;
  joined.letters.insert(joined.letters.end(), b.letters.begin(), b.letters.end());
  if (!is_valid_string(A, joined)) return std::nullopt;
  return joined;
}

std::vector<Word> enumerate_strings(const Algebra& A, int max_len) {
  RelationTable rt(A);

  // Right extension of a valid word stays valid iff the new letter chains,
  // does not undo the previous one, and no relation window ends at it.
  auto extends = [&](const Word& w, const Letter& l) {
    if (!w.trivial()) {
      const Letter& last = w.letters.back();
      if (letter_dst(A, last) != letter_src(A, l)) return false;
      if (last.arrow == l.arrow && last.inverse != l.inverse) return false;
    }
    size_t run_start = w.letters.size();
    while (run_start > 0 && w.letters[run_start - 1].inverse == l.inverse) --run_start;
    std::vector<Letter> run(w.letters.begin() + run_start, w.letters.end());
    run.push_back(l);
    Path p = run_path(run, 0, run.size());
    for (size_t len = 2; len <= std::min(rt.max_len, p.size()); ++len) {
      Path window = l.inverse ? Path(p.begin(), p.begin() + len)
                              : Path(p.end() - len, p.end());
      if (rt.rho_plus_set.count(window)) return false;
    }
    return true;
  };

  std::set<Word, bool (*)(const Word&, const Word&)> found(word_less);
  for (int v = 0; v < A.num_vertices(); ++v) found.insert(trivial_word(v, 1));

  std::vector<Word> frontier;
  for (int a = 0; a < A.num_arrows(); ++a)
    for (bool inv : {false, true}) frontier.push_back(letters_word({{a, inv}}));
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (Word& w : frontier) {
      found.insert(canonical(w));
      if (len == max_len) continue;
      for (int a = 0; a < A.num_arrows(); ++a)
        for (bool inv : {false, true}) {
          Letter l{a, inv};
          if (!extends(w, l)) continue;
          Word ext = w;
          ext.letters.push_back(l);
          next.push_back(std::move(ext));
        }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

bool is_band(const Algebra& A, const Word& w) {
  if (w.trivial() || !is_valid_string(A, w)) return false;
  if (word_src(A, w) != word_dst(A, w)) return false;
  bool has_direct = false, has_inverse = false;
  for (const Letter& l : w.letters) (l.inverse ? has_inverse : has_direct) = true;
  if (!has_direct || !has_inverse) return false;
  if (!concat(A, w, w)) return false;
  const int n = w.size();
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = d; i < n && periodic; ++i) periodic = w.letters[i] == w.letters[i - d];
    if (periodic) return false;
  }
  return true;
}

std::string format_word(const Algebra& A, const Word& w) {
  if (w.trivial())
    return "1(" + A.pres.vertices[w.vertex] + "," + (w.sign > 0 ? "+1" : "-1") + ")";
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += A.pres.arrows[w.letters[i].arrow].name;
    if (w.letters[i].inverse) out += '-';
  }
  return out;
}

Word parse_word(const Algebra& A, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  if (tokens.empty()) throw InputError("empty string literal");

  if (tokens.size() == 1 && tokens[0].rfind("1(", 0) == 0) {
    const std::string& s = tokens[0];
    if (s.back() != ')') throw InputError("malformed trivial word '" + s + "'");
    std::string body = s.substr(2, s.size() - 3);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw InputError("malformed trivial word '" + s + "'");
    std::string vname = body.substr(0, comma), signtext = body.substr(comma + 1);
    int v = A.pres.vertex_index(vname);
    if (v < 0) throw InputError("unknown vertex '" + vname + "' in trivial word");
    int sign;
    if (signtext == "+1" || signtext == "1")
      sign = 1;
    else if (signtext == "-1")
      sign = -1;
    else
      throw InputError("trivial word sign must be +1 or -1, got '" + signtext + "'");
    return trivial_word(v, sign);
  }

  std::vector<Letter> letters;
  for (const std::string& tok : tokens) {
    bool inv = !tok.empty() && tok.back() == '-';
    std::string name = inv ? tok.substr(0, tok.size() - 1) : tok;
    int a = A.pres.arrow_index(name);
    if (a < 0) throw InputError("unknown arrow '" + name + "' in string literal");
    letters.push_back({a, inv});
  }
  Word w = letters_word(std::move(letters));
  std::string why;
  if (!is_valid_string(A, w, &why))
    throw InputError("'" + text + "' is not a valid string: " + why);
  return w;
}

}  // namespace sba
