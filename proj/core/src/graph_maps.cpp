#include "sba/graph_maps.hpp"

#include <algorithm>
#include <map>

#include "sba/errors.hpp"
#include "sba/sparse.hpp"

namespace sba {

namespace {

// Vertex of coordinate k of M(c), 0 <= k <= |letters|.
int coord_vertex(const Algebra& A, const Word& c, int k) {
  return k == 0 ? word_src(A, c) : letter_dst(A, c.letters[k - 1]);
}

// The factorization of c with split indices (i, j); trivial parts get the
// one sign compatible with concatenation.
Triple make_triple(const Algebra& A, const Word& c, int i, int j) {
  const int n = (int)c.letters.size();
  Triple t;
  t.i = i;
  t.j = j;
  t.d = i == 0 ? trivial_word(word_src(A, c), word_sigma(A, c))
               : letters_word({c.letters.begin(), c.letters.begin() + i});
  if (i == j) {
    int sign = i == 0 ? word_sigma(A, c) : -letter_eps(A, c.letters[i - 1]);
    t.e = trivial_word(coord_vertex(A, c, i), sign);
  } else {
    t.e = letters_word({c.letters.begin() + i, c.letters.begin() + j});
  }
  t.f = j == n ? trivial_word(word_dst(A, c), -word_eps(A, c))
               : letters_word({c.letters.begin() + j, c.letters.end()});
  return t;
}

std::vector<Triple> splits(const Algebra& A, const Word& c, bool quotient_side) {
  if (!is_valid_string(A, c)) throw InputError("not a valid string: " + format_word(A, c));
  const int n = (int)c.letters.size();
  std::vector<Triple> out;
  for (int i = 0; i <= n; ++i) {
    // Entering boundary letter c_i: inverse keeps the complement of a
    // quotient window closed, direct keeps a submodule window closed.
    if (i > 0 && c.letters[i - 1].inverse != quotient_side) continue;
    for (int j = i; j <= n; ++j) {
      if (j < n && c.letters[j].inverse == quotient_side) continue;
      out.push_back(make_triple(A, c, i, j));
    }
  }
  return out;
}

int letter_count(const Triple& t) { return t.j - t.i; }

}  // namespace

std::vector<Triple> factor_strings(const Algebra& A, const Word& c) { return splits(A, c, true); }

std::vector<Triple> substrings(const Algebra& A, const Word& c) { return splits(A, c, false); }

std::vector<AdmissiblePair> admissible_pairs(const Algebra& A, const Word& c1, const Word& c2) {
  std::vector<AdmissiblePair> out;
  std::vector<Triple> fac = factor_strings(A, c1);
  std::vector<Triple> sub = substrings(A, c2);
  for (const Triple& s : fac)
    for (const Triple& t : sub) {
      if (s.e == t.e)
        out.push_back({s, t, true});
      else if (s.e == inverse(t.e))
        out.push_back({s, t, false});
    }
  std::stable_sort(out.begin(), out.end(), [](const AdmissiblePair& a, const AdmissiblePair& b) {
    if (a.src.i != b.src.i) return a.src.i < b.src.i;
    int ea = letter_count(a.src), eb = letter_count(b.src);
    if (ea != eb) return ea < eb;
    return a.oriented > b.oriented;
  });
  return out;
}

AdmissiblePair transform_left(const Algebra& A, const Word& c1, const Word& /*c2*/,
                              const AdmissiblePair& a) {
  if (a.oriented) return a;
  const int n = (int)c1.letters.size();
  AdmissiblePair out;
  out.src = make_triple(A, inverse(c1), n - a.src.j, n - a.src.i);
  out.dst = a.dst;
  out.oriented = true;
  if (!(out.src.e == out.dst.e))
    throw InternalError("left transform failed to orient the pair");
  return out;
}

AdmissiblePair transform_right(const Algebra& A, const Word& /*c1*/, const Word& c2,
                               const AdmissiblePair& a) {
  if (a.oriented) return a;
  const int n = (int)c2.letters.size();
  AdmissiblePair out;
  out.src = a.src;
  out.dst = make_triple(A, inverse(c2), n - a.dst.j, n - a.dst.i);
  out.oriented = true;
  if (!(out.src.e == out.dst.e))
    throw InternalError("right transform failed to orient the pair");
  return out;
}

namespace {

bool left_sided(const AdmissiblePair& a) { return a.oriented && a.src.i == 0 && a.dst.i == 0; }

bool right_sided(const AdmissiblePair& a, int n1, int n2) {
  return a.oriented && a.src.j == n1 && a.dst.j == n2;
}

}  // namespace

PairClass classify_pair(const Algebra& A, const Word& c1, const Word& c2,
                        const AdmissiblePair& a) {
  const int n1 = (int)c1.letters.size(), n2 = (int)c2.letters.size();
  PairClass cls;
  cls.oriented = a.oriented;
  cls.left_sided = left_sided(a);
  cls.right_sided = right_sided(a, n1, n2);
  cls.one_sided = cls.left_sided || cls.right_sided;
  if (a.oriented) {
    cls.weakly_one_sided = cls.one_sided;
  } else {
    AdmissiblePair ar = transform_right(A, c1, c2, a);
    cls.weakly_one_sided = left_sided(ar) || right_sided(ar, n1, n2);
  }
  cls.two_sided = !cls.weakly_one_sided;
  return cls;
}

GraphMap graph_map(const Algebra& A, const Word& c1, const Word& c2, const AdmissiblePair& a) {
  ExplicitModule m1 = string_module(A, c1);
  ExplicitModule m2 = string_module(A, c2);
  Mat mat(m2.dim(), m1.dim(), A.field);
  const int len = letter_count(a.src);
  for (int k = 0; k <= len; ++k) {
    int row = a.oriented ? a.dst.i + k : a.dst.i + letter_count(a.dst) - k;
    mat.at(row, a.src.i + k) = A.field.one();
  }
  if (!is_module_hom(m1, m2, mat))
    throw InternalError("graph map is not a homomorphism: window (" + std::to_string(a.src.i) +
                        "," + std::to_string(a.src.j) + ") -> (" + std::to_string(a.dst.i) + "," +
                        std::to_string(a.dst.j) + ") between " + format_word(A, c1) + " and " +
                        format_word(A, c2));
  GraphMap g;
  g.c1 = c1;
  g.c2 = c2;
  g.pair = a;
  g.cls = classify_pair(A, c1, c2, a);
  g.mat = std::move(mat);
  return g;
}

std::vector<GraphMap> hom_basis_graph(const Algebra& A, const Word& c1, const Word& c2) {
  std::vector<GraphMap> out;
  for (const AdmissiblePair& a : admissible_pairs(A, c1, c2)) {
    GraphMap g = graph_map(A, c1, c2, a);
    bool dup = false;
    for (const GraphMap& h : out) dup = dup || h.mat.equals(g.mat);
    if (!dup) out.push_back(std::move(g));
  }
  return out;
}

std::optional<GraphMap> compose_graph(const Algebra& A, const GraphMap& f, const GraphMap& g) {
  if (!(f.c2 == g.c1)) throw InputError("compose_graph: middle strings differ");
  Mat prod = g.mat.mul(f.mat);
  if (prod.is_zero()) return std::nullopt;
  for (GraphMap& h : hom_basis_graph(A, f.c1, g.c2))
    if (h.mat.equals(prod)) return std::move(h);
  throw InternalError("composite of graph maps is neither zero nor a graph map");
}

std::vector<Mat> hom_linear(const ExplicitModule& m, const ExplicitModule& n) {
  if (m.alg != n.alg) throw InputError("hom_linear: modules over different algebras");
  const Algebra& A = *m.alg;
  const Field& f = A.field;
  const int vars = n.dim() * m.dim();
  auto var = [&](int row, int col) { return row * m.dim() + col; };
  SparseSolver solver(vars, f);
  for (int r = 0; r < n.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      if (n.vertex_of[r] != m.vertex_of[c]) solver.add_equation({{var(r, c), f.one()}});
  for (int a = 0; a < A.num_arrows(); ++a) {
    std::vector<std::vector<std::pair<int, Scalar>>> m_by_from(m.dim());
    std::vector<std::vector<std::pair<int, Scalar>>> n_by_to(n.dim());
    for (const Triplet& t : m.action[a]) m_by_from[t.from].push_back({t.to, t.value});
    for (const Triplet& t : n.action[a]) n_by_to[t.to].push_back({t.from, t.value});
    // Entry (r, c) of F * act_m - act_n * F must vanish.
    for (int r = 0; r < n.dim(); ++r)
      for (int c = 0; c < m.dim(); ++c) {
        std::vector<std::pair<int, Scalar>> terms;
        for (const auto& [to, val] : m_by_from[c]) terms.push_back({var(r, to), val});
        for (const auto& [from, val] : n_by_to[r]) terms.push_back({var(from, c), f.neg(val)});
        if (!terms.empty()) solver.add_equation(std::move(terms));
      }
  }
  std::vector<Mat> basis;
  for (const std::vector<Scalar>& v : solver.solve())
    basis.push_back(Mat::unflatten(v, n.dim(), m.dim(), f));
  return basis;
}

}  // namespace sba
