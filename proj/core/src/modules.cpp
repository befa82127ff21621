#include "sba/modules.hpp"

#include <algorithm>
#include <map>

#include "sba/errors.hpp"

namespace sba {

Mat ExplicitModule::action_dense(int arrow) const {
  Mat m(dim(), dim(), alg->field);
  for (const Triplet& t : action[arrow])
    m.at(t.to, t.from) = alg->field.add(m.at(t.to, t.from), t.value);
  return m;
}

Mat ExplicitModule::path_action(const Path& p) const {
  Mat m = Mat::identity(dim(), alg->field);
  for (int a : p) m = action_dense(a).mul(m);  // right action composes left to right
  return m;
}

std::vector<int> ExplicitModule::coords_at(int vertex) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (vertex_of[i] == vertex) out.push_back(i);
  return out;
}

void verify_module(const ExplicitModule& m) {
  const Algebra& A = *m.alg;
  if ((int)m.action.size() != A.num_arrows())
    throw InternalError("module is missing arrow actions");
  for (int a = 0; a < A.num_arrows(); ++a)
    for (const Triplet& t : m.action[a]) {
      if (t.from < 0 || t.from >= m.dim() || t.to < 0 || t.to >= m.dim())
        throw InternalError("module action triplet out of range");
      if (m.vertex_of[t.from] != A.pres.arrows[a].src ||
          m.vertex_of[t.to] != A.pres.arrows[a].dst)
        throw InternalError("module action violates the vertex grading");
    }
  for (const Path& r : A.pres.zero_relations)
    if (!m.path_action(r).is_zero())
      throw InternalError("module action does not annihilate a zero relation");
  for (const auto& cr : A.pres.comm_relations)
    if (!m.path_action(cr[0]).equals(m.path_action(cr[1])))
      throw InternalError("module action breaks a commutativity relation");
}

ExplicitModule string_module(const Algebra& A, const Word& w) {
  std::string why;
  if (!is_valid_string(A, w, &why))
    throw InputError("not a valid string: " + why);
  ExplicitModule m;
  m.alg = &A;
  m.provenance = "M(" + format_word(A, w) + ")";
  m.action.resize(A.num_arrows());
  if (w.trivial()) {
    m.vertex_of = {w.vertex};
  } else {
    m.vertex_of.resize(w.size() + 1);
    m.vertex_of[0] = letter_src(A, w.letters[0]);
    for (int i = 0; i < w.size(); ++i) m.vertex_of[i + 1] = letter_dst(A, w.letters[i]);
    for (int i = 0; i < w.size(); ++i) {
      const Letter& l = w.letters[i];
      if (l.inverse)
        m.action[l.arrow].push_back({i, i + 1, A.field.one()});
      else
        m.action[l.arrow].push_back({i + 1, i, A.field.one()});
    }
  }
  verify_module(m);
  return m;
}

ExplicitModule simple_module(const Algebra& A, int vertex) {
  ExplicitModule m = string_module(A, trivial_word(vertex, 1));
  m.provenance = "S(" + A.pres.vertices[vertex] + ")";
  return m;
}

namespace {

ExplicitModule build_projective(const Algebra& A, int vertex) {
  ExplicitModule m;
  m.alg = &A;
  m.provenance = "P(" + A.pres.vertices[vertex] + ")";
  m.action.resize(A.num_arrows());
  std::vector<int> classes;  // global basis indices
  std::vector<int> local(A.dim(), -1);
  for (int i = 0; i < A.dim(); ++i)
    if (A.basis[i].src == vertex) {
      local[i] = (int)classes.size();
      classes.push_back(i);
      m.vertex_of.push_back(A.index.end_vertex(i));
    }
  for (int a = 0; a < A.num_arrows(); ++a)
    for (size_t c = 0; c < classes.size(); ++c) {
      int t = A.index.right_mult(classes[c], a);
      if (t >= 0) m.action[a].push_back({local[t], (int)c, A.field.one()});
    }
  verify_module(m);
  return m;
}

}  // namespace

const ExplicitModule& projective_module(const Algebra& A, int vertex) {
  if (!A.caches) throw InternalError("algebra caches not initialized");
  auto& slots = A.caches->projectives;
  if (slots.empty()) slots.resize(A.num_vertices());
  if (!slots[vertex]) slots[vertex] = build_projective(A, vertex);
  return *slots[vertex];
}

ExplicitModule band_module(const Algebra& A, const Word& b, const Scalar& lambda, int n) {
  if (!is_band(A, b)) throw InputError("band module needs a band word");
  if (A.field.is_zero(lambda)) throw InputError("band eigenvalue must be nonzero");
  if (n < 1) throw InputError("band multiplicity must be positive");
  const Field& F = A.field;
  const int m = b.size();
  ExplicitModule mod;
  mod.alg = &A;
  mod.provenance = "B(" + format_word(A, b) + "," + F.to_string(lambda) + "," +
                   std::to_string(n) + ")";
  mod.action.resize(A.num_arrows());
  mod.vertex_of.resize((size_t)m * n);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < n; ++k) mod.vertex_of[(size_t)j * n + k] = letter_src(A, b.letters[j]);

  // Letter j identifies group j with group j+1 (mod m); the identification is
  // the identity except at the seam (last letter), which twists by the Jordan
  // block with eigenvalue lambda.
  for (int j = 0; j < m; ++j) {
    const Letter& l = b.letters[j];
    int src_group = j, dst_group = (j + 1) % m;
    bool seam = (j == m - 1);
    // The arrow maps the group where the arrow's source vertex lives.
    int from_group = l.inverse ? dst_group : src_group;
    int to_group = l.inverse ? src_group : dst_group;
    for (int k = 0; k < n; ++k) {
      mod.action[l.arrow].push_back(
          {to_group * n + k, from_group * n + k, seam ? lambda : F.one()});
      if (seam && k > 0)
        mod.action[l.arrow].push_back({to_group * n + (k - 1), from_group * n + k, F.one()});
    }
  }
  verify_module(mod);
  return mod;
}

std::vector<int> sum_offsets(const std::vector<const ExplicitModule*>& parts) {
  std::vector<int> offsets;
  int total = 0;
  for (const ExplicitModule* p : parts) {
    offsets.push_back(total);
    total += p->dim();
  }
  offsets.push_back(total);
  return offsets;
}

ExplicitModule direct_sum(const Algebra& A, const std::vector<const ExplicitModule*>& parts) {
  ExplicitModule m;
  m.alg = &A;
  m.action.resize(A.num_arrows());
  std::vector<int> offsets = sum_offsets(parts);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i]->alg != &A) throw InternalError("direct sum over mismatched algebras");
    if (i) m.provenance += " (+) ";
    m.provenance += parts[i]->provenance;
    m.vertex_of.insert(m.vertex_of.end(), parts[i]->vertex_of.begin(),
                       parts[i]->vertex_of.end());
    for (int a = 0; a < A.num_arrows(); ++a)
      for (const Triplet& t : parts[i]->action[a])
        m.action[a].push_back({t.to + offsets[i], t.from + offsets[i], t.value});
  }
  verify_module(m);
  return m;
}

bool is_module_hom(const ExplicitModule& m, const ExplicitModule& n, const Mat& F) {
  const Algebra& A = *m.alg;
  if (F.rows() != n.dim() || F.cols() != m.dim()) return false;
  for (int r = 0; r < F.rows(); ++r)
    for (int c = 0; c < F.cols(); ++c)
      if (!A.field.is_zero(F.at(r, c)) && n.vertex_of[r] != m.vertex_of[c]) return false;
  for (int a = 0; a < A.num_arrows(); ++a)
    if (!F.mul(m.action_dense(a)).equals(n.action_dense(a).mul(F))) return false;
  return true;
}

std::vector<int> top_basis(const ExplicitModule& m) {
  const Algebra& A = *m.alg;
  const Field& F = A.field;
  std::vector<int> out;
  for (int v = 0; v < A.num_vertices(); ++v) {
    std::vector<int> coords = m.coords_at(v);
    if (coords.empty()) continue;
    std::vector<std::vector<Scalar>> ambient;
    for (int c : coords) {
      std::vector<Scalar> e(m.dim(), F.zero());
      e[c] = F.one();
      ambient.push_back(std::move(e));
    }
    std::vector<std::vector<Scalar>> sub;
    for (int a = 0; a < A.num_arrows(); ++a) {
      if (A.pres.arrows[a].dst != v) continue;
      Mat act = m.action_dense(a);
      for (int j = 0; j < m.dim(); ++j) {
        std::vector<Scalar> col(m.dim(), F.zero());
        bool nonzero = false;
        for (int r = 0; r < m.dim(); ++r) {
          col[r] = act.at(r, j);
          nonzero |= !F.is_zero(col[r]);
        }
        if (nonzero) sub.push_back(std::move(col));
      }
    }
    for (int idx : quotient_basis(ambient, sub, F)) out.push_back(coords[idx]);
  }
  return out;
}

namespace {

// Walks the unique relation-avoiding continuation from `start` at `vertex`.
Path maximal_arm(const Algebra& A, int vertex, int start_arrow) {
  Path arm{start_arrow};
  int cls = A.index.right_mult(A.index.find_plain(vertex, {}), start_arrow);
  if (cls < 0 || A.basis[cls].merged()) return arm;  // full relation already
  while (true) {
    int next = -1, next_class = -1;
    for (int a = 0; a < A.num_arrows(); ++a) {
      int t = A.index.right_mult(cls, a);
      if (t < 0 || A.basis[t].merged()) continue;
      if (next >= 0) throw InternalError("two relation-avoiding continuations on a serial arm");
      next = a;
      next_class = t;
    }
    if (next < 0) break;
    arm.push_back(next);
    cls = next_class;
  }
  return arm;
}

Word direct_word(const Path& p) {
  std::vector<Letter> ls;
  for (int a : p) ls.push_back({a, false});
  return letters_word(std::move(ls));
}

Word inverse_word(const Path& p) { return inverse(direct_word(p)); }

Word join_words(Word a, const Word& b) {
  a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
  return a;
}

}  // namespace

ProjectiveShape classify_projective(const Algebra& A, int vertex) {
  const ExplicitModule& P = projective_module(A, vertex);
  const Field& F = A.field;

  // Local coordinates of P are the basis classes from `vertex` in basis order.
  std::vector<int> classes;
  for (int i = 0; i < A.dim(); ++i)
    if (A.basis[i].src == vertex) classes.push_back(i);
  std::map<Path, int> local_of_path;
  int local_merged = -1;
  for (size_t c = 0; c < classes.size(); ++c) {
    if (A.basis[classes[c]].merged())
      local_merged = (int)c;
    else
      local_of_path[A.basis[classes[c]].arrows] = (int)c;
  }

  ProjectiveShape shape;
  for (int k = 0; k < (int)A.pres.comm_relations.size(); ++k)
    if (A.pres.path_src(A.pres.comm_relations[k][0]) == vertex) {
      shape.nonserial = true;
      shape.comm_index = k;
      break;
    }

  if (shape.nonserial) {
    const Path& p = A.pres.comm_relations[shape.comm_index][0];
    const Path& q = A.pres.comm_relations[shape.comm_index][1];
    if ((int)(p.size() + q.size()) != P.dim())
      throw InternalError("projective-injective dimension mismatch");
    Path p_tail(p.begin() + 1, p.end()), q_tail(q.begin() + 1, q.end());
    Path p_head(p.begin(), p.end() - 1), q_head(q.begin(), q.end() - 1);
    shape.radical_word = join_words(direct_word(p_tail), inverse_word(q_tail));
    shape.soc_factor_word = join_words(inverse_word(p_head), direct_word(q_head));

    // Radical inclusion: string coordinates are the proper prefixes of p,
    // then the merged class, then the proper prefixes of q in shrinking order.
    ExplicitModule R = string_module(A, shape.radical_word);
    Mat incl(P.dim(), R.dim(), F);
    for (int t = 1; t < (int)p.size(); ++t)
      incl.at(local_of_path.at(Path(p.begin(), p.begin() + t)), t - 1) = F.one();
    incl.at(local_merged, (int)p.size() - 1) = F.one();
    for (int t = 1; t < (int)q.size(); ++t)
      incl.at(local_of_path.at(Path(q.begin(), q.begin() + t)),
              (int)p.size() - 1 + ((int)q.size() - t)) = F.one();
    if (!is_module_hom(R, P, incl) || rank(incl) != R.dim())
      throw InternalError("radical inclusion certificate failed");

    // Socle quotient: kills the merged class, keeps every other class.
    ExplicitModule Q = string_module(A, shape.soc_factor_word);
    Mat proj(Q.dim(), P.dim(), F);
    proj.at((int)p.size() - 1, local_of_path.at(Path{})) = F.one();
    for (int t = 1; t < (int)p.size(); ++t)
      proj.at((int)p.size() - 1 - t, local_of_path.at(Path(p.begin(), p.begin() + t))) =
          F.one();
    for (int t = 1; t < (int)q.size(); ++t)
      proj.at((int)p.size() - 1 + t, local_of_path.at(Path(q.begin(), q.begin() + t))) =
          F.one();
    if (!is_module_hom(P, Q, proj) || rank(proj) != P.dim() - 1)
      throw InternalError("socle quotient certificate failed");
    return shape;
  }

  std::vector<Path> arms;
  for (int a = 0; a < A.num_arrows(); ++a)
    if (A.pres.arrows[a].src == vertex) arms.push_back(maximal_arm(A, vertex, a));
  if (arms.empty())
    shape.string_word = trivial_word(vertex, 1);
  else if (arms.size() == 1)
    shape.string_word = direct_word(arms[0]);
  else
    shape.string_word = join_words(inverse_word(arms[0]), direct_word(arms[1]));

  ExplicitModule S = string_module(A, shape.string_word);
  if (S.dim() != P.dim())
    throw InternalError("serial projective dimension mismatch");
  Mat iso(P.dim(), S.dim(), F);
  const Path& u = arms.empty() ? Path{} : arms[0];
  int mid = arms.size() == 2 ? (int)u.size() : 0;
  for (int c = 0; c < S.dim(); ++c) {
    Path cls;
    if (c < mid)
      cls = Path(u.begin(), u.begin() + (mid - c));
    else if (c > mid)
      cls = Path(arms.back().begin(), arms.back().begin() + (c - mid));
    iso.at(local_of_path.at(cls), c) = F.one();
  }
  if (!is_module_hom(S, P, iso) || rank(iso) != P.dim())
    throw InternalError("serial projective certificate failed");
  return shape;
}

}  // namespace sba
