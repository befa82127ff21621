#include "sba/ext.hpp"

#include <string>
#include <utility>

#include "sba/errors.hpp"

namespace sba {

namespace {

// Images in m of every coordinate of one projective summand, walked outward
// from the generator coordinate; doubles as a relation-compliance check.
std::vector<std::vector<Scalar>> cover_columns(const Field& f, const ExplicitModule& m,
                                               const ExplicitModule& p, int gen,
                                               const std::vector<Scalar>& gen_image) {
  std::vector<std::vector<Scalar>> col(p.dim());
  std::vector<char> have(p.dim(), 0);
  col[gen] = gen_image;
  have[gen] = 1;
  std::vector<int> queue = {gen};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int c = queue[qi];
    for (int ar = 0; ar < (int)p.action.size(); ++ar) {
      const Mat am = m.action_dense(ar);
      for (const Triplet& t : p.action[ar]) {
        if (t.from != c) continue;
        std::vector<Scalar> img = am.apply(col[c]);
        Scalar scale = f.inv(t.value);
        for (Scalar& x : img) x = f.mul(x, scale);
        if (have[t.to]) {
          for (size_t r = 0; r < img.size(); ++r)
            if (!f.eq(img[r], col[t.to][r]))
              throw InternalError("cover columns disagree on a merged class");
        } else {
          col[t.to] = std::move(img);
          have[t.to] = 1;
          queue.push_back(t.to);
        }
      }
    }
  }
  for (char h : have)
    if (!h) throw InternalError("projective summand not generated by its top");
  return col;
}

const Triple* find_split(const std::vector<Triple>& ts, int i, int j) {
  for (const Triple& t : ts)
    if (t.i == i && t.j == j) return &t;
  return nullptr;
}

Word cat3(const Algebra& A, const Word& x, const Word& y, const Word& z, const std::string& what) {
  auto xy = concat(A, x, y);
  if (xy) {
    auto xyz = concat(A, *xy, z);
    if (xyz) return *xyz;
  }
  throw InputError("overlap word " + what + " is not a string");
}

}  // namespace

ProjectiveCover projective_cover(const Algebra& A, const ExplicitModule& m) {
  std::vector<int> tops = top_basis(m);
  std::vector<const ExplicitModule*> parts;
  std::vector<int> verts;
  for (int t : tops) {
    verts.push_back(m.vertex_of[t]);
    parts.push_back(&projective_module(A, m.vertex_of[t]));
  }
  ProjectiveCover pc;
  pc.top_vertices = verts;
  pc.p0 = direct_sum(A, parts);
  std::vector<int> off = sum_offsets(parts);
  pc.epi = Mat(m.dim(), pc.p0.dim(), A.field);
  std::vector<int> gens;
  for (size_t k = 0; k < parts.size(); ++k) {
    std::vector<int> ptop = top_basis(*parts[k]);
    if (ptop.size() != 1) throw InternalError("indecomposable projective with non-simple top");
    gens.push_back(off[k] + ptop[0]);
    std::vector<Scalar> e(m.dim(), A.field.zero());
    e[tops[k]] = A.field.one();
    std::vector<std::vector<Scalar>> cols = cover_columns(A.field, m, *parts[k], ptop[0], e);
    for (int c = 0; c < (int)cols.size(); ++c)
      for (int r = 0; r < m.dim(); ++r) pc.epi.at(r, off[k] + c) = cols[c][r];
  }
  if (!is_module_hom(pc.p0, m, pc.epi)) throw InternalError("cover map is not a homomorphism");
  if (rank(pc.epi) != m.dim()) throw InternalError("cover map is not surjective");
  for (const std::vector<Scalar>& v : nullspace_basis(pc.epi))
    for (int g : gens)
      if (!A.field.is_zero(v[g])) throw InternalError("cover kernel meets a generator coordinate");
  return pc;
}

Syzygy syzygy(const Algebra& A, const ExplicitModule& m) {
  Syzygy s;
  s.cover = projective_cover(A, m);
  const ExplicitModule& P = s.cover.p0;

  // Homogeneous kernel basis: the cover respects the grading, so the kernel
  // splits over vertices and each block is an ordinary nullspace.
  std::vector<std::vector<Scalar>> kcols;
  std::vector<int> kverts;
  for (int v = 0; v < A.num_vertices(); ++v) {
    std::vector<int> pcols = P.coords_at(v);
    std::vector<int> mrows = m.coords_at(v);
    Mat block((int)mrows.size(), (int)pcols.size(), A.field);
    for (int r = 0; r < block.rows(); ++r)
      for (int c = 0; c < block.cols(); ++c) block.at(r, c) = s.cover.epi.at(mrows[r], pcols[c]);
    for (const std::vector<Scalar>& vec : nullspace_basis(block)) {
      std::vector<Scalar> full(P.dim(), A.field.zero());
      for (int c = 0; c < (int)pcols.size(); ++c) full[pcols[c]] = vec[c];
      kcols.push_back(std::move(full));
      kverts.push_back(v);
    }
  }

  s.omega.alg = &A;
  s.omega.vertex_of = kverts;
  s.omega.provenance = "syzygy of " + m.provenance;
  s.incl = Mat(P.dim(), (int)kcols.size(), A.field);
  for (int c = 0; c < (int)kcols.size(); ++c)
    for (int r = 0; r < P.dim(); ++r) s.incl.at(r, c) = kcols[c][r];

  s.omega.action.assign(A.num_arrows(), {});
  for (int ar = 0; ar < A.num_arrows(); ++ar) {
    Mat moved = P.action_dense(ar).mul(s.incl);
    for (int c = 0; c < moved.cols(); ++c) {
      std::vector<Scalar> target(P.dim());
      for (int r = 0; r < P.dim(); ++r) target[r] = moved.at(r, c);
      auto coef = in_span(kcols, target, A.field);
      if (!coef) throw InternalError("cover kernel is not arrow-invariant");
      for (int r = 0; r < (int)coef->size(); ++r)
        if (!A.field.is_zero((*coef)[r])) s.omega.action[ar].push_back({r, c, (*coef)[r]});
    }
  }
  verify_module(s.omega);
  return s;
}

Ext1Space ext1(const Algebra& A, const ExplicitModule& m, const ExplicitModule& n) {
  Syzygy syz = syzygy(A, m);
  Ext1Space out;
  if (syz.omega.dim() == 0) return out;
  std::vector<Mat> hom = hom_linear(syz.omega, n);
  std::vector<std::vector<Scalar>> ambient;
  for (const Mat& h : hom) ambient.push_back(h.flatten());
  std::vector<std::vector<Scalar>> restricted;
  for (const Mat& g : hom_linear(syz.cover.p0, n)) restricted.push_back(g.mul(syz.incl).flatten());
  for (int idx : quotient_basis(ambient, restricted, A.field)) out.representatives.push_back(hom[idx]);
  out.dimension = (int)out.representatives.size();
  return out;
}

bool verify_exact(const ShortExactSequence& s) {
  if (s.middle.dim() != s.left.dim() + s.right.dim()) return false;
  if (rank(s.inj) != s.left.dim()) return false;
  if (rank(s.surj) != s.right.dim()) return false;
  if (!s.surj.mul(s.inj).is_zero()) return false;
  if (!is_module_hom(s.left, s.middle, s.inj)) return false;
  if (!is_module_hom(s.middle, s.right, s.surj)) return false;
  return true;
}

ShortExactSequence overlap_extension(const Algebra& A, const Word& d1, const Word& e,
                                     const Word& f1, const Word& d2, const Word& f2) {
  Word c1 = cat3(A, d1, e, f1, "D1 E F1");
  Word c2 = cat3(A, d2, e, f2, "D2 E F2");
  Word h1 = cat3(A, d1, e, f2, "D1 E F2");
  Word h2 = cat3(A, d2, e, f1, "D2 E F1");
  int i1 = d1.size(), j1 = i1 + e.size();
  int i2 = d2.size(), j2 = i2 + e.size();

  std::vector<Triple> fc1 = factor_strings(A, c1);
  std::vector<Triple> sc2 = substrings(A, c2);
  const Triple* src = find_split(fc1, i1, j1);
  if (!src) throw InputError("(D1, E, F1) is not a quotient window");
  const Triple* dst = find_split(sc2, i2, j2);
  if (!dst) throw InputError("(D2, E, F2) is not a submodule window");
  if (!(src->e == dst->e)) throw InternalError("overlap windows carry different words");
  AdmissiblePair pair{*src, *dst, true};
  PairClass cls = classify_pair(A, c1, c2, pair);
  if (!cls.two_sided) throw InputError("overlap pair is weakly one-sided");

  std::vector<Triple> fh1 = factor_strings(A, h1);
  std::vector<Triple> fh2 = factor_strings(A, h2);
  std::vector<Triple> sh1 = substrings(A, h1);
  std::vector<Triple> sh2 = substrings(A, h2);
  auto need = [](const Triple* t, const char* what) -> const Triple& {
    if (!t) throw InternalError(std::string("missing overlap frame window: ") + what);
    return *t;
  };
  GraphMap u1 = graph_map(
      A, c1, h1, {need(find_split(fc1, 0, j1), "u1 src"), need(find_split(sh1, 0, j1), "u1 dst"), true});
  GraphMap u2 = graph_map(A, c1, h2,
                          {need(find_split(fc1, i1, c1.size()), "u2 src"),
                           need(find_split(sh2, i2, h2.size()), "u2 dst"), true});
  GraphMap w1 = graph_map(A, h1, c2,
                          {need(find_split(fh1, i1, h1.size()), "w1 src"),
                           need(find_split(sc2, i2, c2.size()), "w1 dst"), true});
  GraphMap w2 = graph_map(
      A, h2, c2, {need(find_split(fh2, 0, j2), "w2 src"), need(find_split(sc2, 0, j2), "w2 dst"), true});
  GraphMap fa = graph_map(A, c1, c2, pair);
  if (!w1.mat.mul(u1.mat).equals(fa.mat) || !w2.mat.mul(u2.mat).equals(fa.mat))
    throw InternalError("overlap frame does not compose to the pair's map");

  ShortExactSequence s;
  s.left = string_module(A, c1);
  s.right = string_module(A, c2);
  ExplicitModule mh1 = string_module(A, h1);
  ExplicitModule mh2 = string_module(A, h2);
  int dh1 = mh1.dim();
  s.middle = direct_sum(A, {&mh1, &mh2});
  s.inj = Mat(s.middle.dim(), s.left.dim(), A.field);
  for (int r = 0; r < u1.mat.rows(); ++r)
    for (int c = 0; c < u1.mat.cols(); ++c) s.inj.at(r, c) = u1.mat.at(r, c);
  for (int r = 0; r < u2.mat.rows(); ++r)
    for (int c = 0; c < u2.mat.cols(); ++c) s.inj.at(dh1 + r, c) = u2.mat.at(r, c);
  s.surj = Mat(s.right.dim(), s.middle.dim(), A.field);
  for (int r = 0; r < w1.mat.rows(); ++r)
    for (int c = 0; c < w1.mat.cols(); ++c) s.surj.at(r, c) = w1.mat.at(r, c);
  for (int r = 0; r < w2.mat.rows(); ++r)
    for (int c = 0; c < w2.mat.cols(); ++c) s.surj.at(r, dh1 + c) = A.field.neg(w2.mat.at(r, c));
  if (!verify_exact(s)) throw InternalError("overlap sequence failed the exactness check");
  return s;
}

std::optional<ShortExactSequence> nondirect_middle_ext_witness(const Algebra& A,
                                                               const AdmissiblePair& a) {
  Word c1 = cat3(A, a.src.d, a.src.e, a.src.f, "D1 E1 F1");
  Word c2 = cat3(A, a.dst.d, a.dst.e, a.dst.f, "D2 E2 F2");
  PairClass cls = classify_pair(A, c1, c2, a);
  if (!cls.two_sided) throw InputError("pair is weakly one-sided");
  bool has_direct = false, has_inverse = false;
  for (const Letter& l : a.src.e.letters) (l.inverse ? has_inverse : has_direct) = true;
  if (!has_direct || !has_inverse) throw InputError("window word does not mix directions");
  AdmissiblePair o = a;
  if (!a.oriented) o = transform_right(A, c1, c2, a);
  try {
    return overlap_extension(A, o.src.d, o.src.e, o.src.f, o.dst.d, o.dst.f);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

std::vector<OverlapWitness> overlap_survey(const Algebra& A, const Word& c1, const Word& c2) {
  std::vector<OverlapWitness> out;
  for (const AdmissiblePair& a : admissible_pairs(A, c1, c2)) {
    if (!classify_pair(A, c1, c2, a).two_sided) continue;
    OverlapWitness w;
    w.pair = a;
    bool has_direct = false, has_inverse = false;
    for (const Letter& l : a.src.e.letters) (l.inverse ? has_inverse : has_direct) = true;
    w.mixed = has_direct && has_inverse;
    if (w.mixed) {
      w.ses = nondirect_middle_ext_witness(A, a);
    } else {
      // an unmixed window admits the direct construction; a non-oriented
      // pair has two oriented presentations and either may concatenate
      std::vector<AdmissiblePair> forms;
      if (a.oriented) {
        forms.push_back(a);
      } else {
        forms.push_back(transform_right(A, c1, c2, a));
        forms.push_back(transform_left(A, c1, c2, a));
      }
      for (const AdmissiblePair& o : forms) {
        try {
          w.ses = overlap_extension(A, o.src.d, o.src.e, o.src.f, o.dst.d, o.dst.f);
          break;
        } catch (const InputError&) {
        }
      }
    }
    w.built = w.ses.has_value();
    if (w.built) {
      w.exact = verify_exact(*w.ses);
      w.ext_dim = ext1(A, w.ses->right, w.ses->left).dimension;
      std::vector<const ExplicitModule*> ends = {&w.ses->left, &w.ses->right};
      ExplicitModule lr = direct_sum(A, ends);
      w.nonsplit = hom_linear(w.ses->middle, w.ses->middle).size() != hom_linear(lr, lr).size();
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace sba
