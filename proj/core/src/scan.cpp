#include "sba/scan.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <utility>

#include "sba/algebra.hpp"
#include "sba/digest.hpp"
#include "sba/errors.hpp"
#include "sba/ext.hpp"
#include "sba/graph_maps.hpp"
#include "sba/modules.hpp"
#include "sba/stable.hpp"
#include "sba/strings.hpp"

namespace sba {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t Rng::next() {
  state_ += kGolden;
  return mix(state_);
}

uint64_t Rng::below(uint64_t n) { return next() % n; }

Rng Rng::split(uint64_t index) const { return Rng(mix(state_ ^ (kGolden * (index + 1)))); }

namespace {

// One generation attempt; *within_budget reports the relation-count check.
Presentation build_draft(Rng& rng, const GenLimits& lim, bool* within_budget) {
  Presentation p;
  int nv = 1 + (int)rng.below((uint64_t)lim.max_vertices);
  for (int v = 0; v < nv; ++v) p.vertices.push_back(std::to_string(v + 1));

  int na_target = 1 + (int)rng.below((uint64_t)lim.max_arrows);
  std::vector<int> out_deg(nv, 0), in_deg(nv, 0);

  // an optional commutativity square: two parallel length-2 paths e1 l1 and
  // e2 l2, placed first, whose products are forced to survive and to be
  // maximal on both sides, so the merged class is the socle of the
  // projective at the source
  std::array<int, 4> square = {-1, -1, -1, -1};  // e1 l1 e2 l2
  if (nv >= 3 && na_target >= 4 && rng.coin()) {
    int u = (int)rng.below((uint64_t)nv);
    int w = (int)rng.below((uint64_t)(nv - 1));
    if (w >= u) ++w;
    std::vector<int> mids;
    for (int v = 0; v < nv; ++v)
      if (v != u && v != w) mids.push_back(v);
    int v1 = mids[rng.below(mids.size())];
    int v2 = mids[rng.below(mids.size())];
    square = {0, 1, 2, 3};
    p.arrows.push_back({"a1", u, v1});
    p.arrows.push_back({"a2", v1, w});
    p.arrows.push_back({"a3", u, v2});
    p.arrows.push_back({"a4", v2, w});
    out_deg[u] = 2;
    in_deg[w] = 2;
    for (int v : {v1, v2}) {
      ++out_deg[v];
      ++in_deg[v];
    }
  }

  for (int k = (int)p.arrows.size(); k < na_target; ++k) {
    std::vector<int> srcs, dsts;
    for (int v = 0; v < nv; ++v) {
      if (out_deg[v] < 2) srcs.push_back(v);
      if (in_deg[v] < 2) dsts.push_back(v);
    }
    if (srcs.empty() || dsts.empty()) break;
    int s = srcs[rng.below(srcs.size())];
    int d = dsts[rng.below(dsts.size())];
    p.arrows.push_back({"a" + std::to_string(p.arrows.size() + 1), s, d});
    ++out_deg[s];
    ++in_deg[d];
  }
  const int na = (int)p.arrows.size();
  auto in_square_as_start = [&](int a) { return a == square[1] || a == square[3]; };
  auto in_square_as_cont = [&](int a) { return a == square[0] || a == square[2]; };
  auto forced_pair = [&](int e, int l) {
    return (e == square[0] && l == square[1]) || (e == square[2] && l == square[3]);
  };

  // surviving length-2 products: a partial matching per vertex, everything
  // else becomes a zero relation
  std::vector<int> next(na, -1);
  for (int v = 0; v < nv; ++v) {
    std::vector<int> in, out;
    for (int a = 0; a < na; ++a) {
      if (p.arrows[a].dst == v) in.push_back(a);
      if (p.arrows[a].src == v) out.push_back(a);
    }
    if (in.empty() || out.empty()) continue;
    std::vector<std::vector<std::pair<int, int>>> options;
    options.push_back({});
    for (int e : in)
      for (int l : out) options.push_back({{e, l}});
    if (in.size() == 2 && out.size() == 2) {
      options.push_back({{in[0], out[0]}, {in[1], out[1]}});
      options.push_back({{in[0], out[1]}, {in[1], out[0]}});
    }
    // drop matchings that break the square: its products must be kept, and
    // nothing may extend the square's paths on either side
    std::vector<const std::vector<std::pair<int, int>>*> legal;
    for (const auto& opt : options) {
      bool ok = true;
      for (const auto& [e, l] : opt)
        if (!forced_pair(e, l) &&
            (in_square_as_start(e) || in_square_as_cont(l) || in_square_as_cont(e) ||
             in_square_as_start(l)))
          ok = false;
      for (int k = 0; k < 4; k += 2) {
        int fe = square[k], fl = square[k + 1];
        if (fe < 0 || p.arrows[fe].dst != v) continue;
        bool contained = false;
        for (const auto& [e, l] : opt) contained = contained || (e == fe && l == fl);
        ok = ok && contained;
      }
      if (ok) legal.push_back(&opt);
    }
    const auto& pick = *legal[rng.below(legal.size())];
    for (const auto& [e, l] : pick) next[e] = l;
    for (int e : in)
      for (int l : out) {
        bool kept = false;
        for (const auto& [pe, pl] : pick) kept = kept || (pe == e && pl == l);
        if (!kept) p.zero_relations.push_back({e, l});
      }
  }

  // finite dimension: no cyclic thread of surviving products may remain
  while (true) {
    std::vector<int> color(na, 0);
    std::vector<int> cyc;
    for (int a0 = 0; a0 < na && cyc.empty(); ++a0) {
      if (color[a0]) continue;
      std::vector<int> stack;
      int a = a0;
      while (a != -1 && color[a] == 0) {
        color[a] = 1;
        stack.push_back(a);
        a = next[a];
      }
      if (a != -1 && color[a] == 1)
        cyc.assign(std::find(stack.begin(), stack.end(), a), stack.end());
      for (int s : stack) color[s] = 2;
    }
    if (cyc.empty()) break;
    int cut = cyc[rng.below(cyc.size())];
    p.zero_relations.push_back({cut, next[cut]});
    next[cut] = -1;
  }

  // optional commutativity relation between parallel surviving paths that
  // are maximal on both sides (the merged class must not extend)
  if (rng.coin()) {
    std::vector<int> prev(na, -1);
    for (int a = 0; a < na; ++a)
      if (next[a] != -1) prev[next[a]] = a;
    std::vector<std::array<int, 4>> cands;
    for (int e1 = 0; e1 < na; ++e1)
      for (int e2 = e1 + 1; e2 < na; ++e2) {
        int l1 = next[e1], l2 = next[e2];
        if (l1 < 0 || l2 < 0 || l1 == l2) continue;
        if (p.arrows[e1].src != p.arrows[e2].src) continue;
        if (p.arrows[l1].dst != p.arrows[l2].dst) continue;
        if (e1 == l1 || e1 == l2 || e2 == l1 || e2 == l2) continue;
        if (next[l1] != -1 || next[l2] != -1) continue;
        if (prev[e1] != -1 || prev[e2] != -1) continue;
        cands.push_back({e1, l1, e2, l2});
      }
    if (!cands.empty()) {
      const auto& c = cands[rng.below(cands.size())];
      p.comm_relations.push_back({Path{c[0], c[1]}, Path{c[2], c[3]}});
    }
  }

  *within_budget =
      (int)(p.zero_relations.size() + p.comm_relations.size()) <= lim.max_relations;
  return p;
}

}  // namespace

Presentation generate_random_sb(Rng& rng, const GenLimits& lim) {
  if (lim.max_vertices < 1 || lim.max_arrows < 1 || lim.max_relations < 0)
    throw InputError("generation limits must be positive");
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool within_budget = false;
    Presentation p = build_draft(rng, lim, &within_budget);
    if (!within_budget) continue;
    if (!validate_special_biserial(p).ok) continue;
    try {
      Algebra::make(p, Field::rationals());  // signs and a finite basis must exist
    } catch (const std::exception&) {
      continue;
    }
    return p;
  }
  throw InputError("random presentation generation failed: limits unsatisfiable within 64 drafts");
}

namespace {

PairClass left_form(const Algebra& A, const GraphMap& g) {
  if (g.pair.oriented) return g.cls;
  return classify_pair(A, inverse(g.c1), g.c2, transform_left(A, g.c1, g.c2, g.pair));
}

PairClass right_form(const Algebra& A, const GraphMap& g) {
  if (g.pair.oriented) return g.cls;
  return classify_pair(A, g.c1, inverse(g.c2), transform_right(A, g.c1, g.c2, g.pair));
}

struct Sides {
  bool left = false;
  bool right = false;
};

Sides sides_of(const PairClass& c) { return {c.left_sided, c.right_sided}; }
Sides swap_sides(Sides s) { return {s.right, s.left}; }

// Some presentation of the shared middle string shows f and g one-sided on
// a common side; the composed map then has nonzero stable class.
bool sides_match(const Algebra& A, const GraphMap& f, const GraphMap& g) {
  Sides f_plain = f.pair.oriented ? sides_of(f.cls) : sides_of(left_form(A, f));
  Sides f_flip = f.pair.oriented ? swap_sides(sides_of(f.cls)) : sides_of(right_form(A, f));
  Sides g_plain = g.pair.oriented ? sides_of(g.cls) : sides_of(right_form(A, g));
  Sides g_flip = g.pair.oriented ? swap_sides(sides_of(g.cls)) : sides_of(left_form(A, g));
  return (f_plain.left && g_plain.left) || (f_plain.right && g_plain.right) ||
         (f_flip.left && g_flip.left) || (f_flip.right && g_flip.right);
}

std::vector<std::vector<Scalar>> flats_of(const std::vector<Mat>& mats) {
  std::vector<std::vector<Scalar>> out;
  for (const Mat& m : mats) out.push_back(m.flatten());
  return out;
}

// Re-verify the module-level invariants on a scanned instance; returns one
// reason string per violation.
std::vector<std::string> run_invariants(const Algebra& A, const std::vector<Word>& picked,
                                        bool ext_vanishes) {
  std::vector<std::string> bad;
  std::vector<ExplicitModule> mods;
  for (const Word& w : picked) mods.push_back(string_module(A, w));

  for (size_t i = 0; i < picked.size(); ++i)
    for (size_t j = 0; j < picked.size(); ++j) {
      std::string pair_name =
          "(" + format_word(A, picked[i]) + ", " + format_word(A, picked[j]) + ")";
      std::vector<GraphMap> maps = hom_basis_graph(A, picked[i], picked[j]);
      std::vector<Mat> lin = hom_linear(mods[i], mods[j]);
      if (maps.size() != lin.size()) {
        bad.push_back("basis agreement: " + std::to_string(maps.size()) + " graph maps vs dim " +
                      std::to_string(lin.size()) + " for " + pair_name);
        continue;
      }
      RowSpace rs(A.field);
      for (const GraphMap& g : maps)
        if (!rs.add(g.mat.flatten())) {
          bad.push_back("basis agreement: dependent graph maps for " + pair_name);
          break;
        }
    }

  for (size_t i = 0; i < picked.size(); ++i)
    for (size_t j = 0; j < picked.size(); ++j) {
      TwoSidedVanishingReport r = two_sided_vanishing_check(A, picked[i], picked[j]);
      if (!r.ok())
        bad.push_back("two-sided vanishing: " + std::to_string(r.violations.size()) +
                      " violations for (" + format_word(A, picked[i]) + ", " +
                      format_word(A, picked[j]) + ")");
    }

  if (ext_vanishes) {
    std::vector<SurvivingMap> surv = surviving_graph_basis(A, picked);
    for (const SurvivingMap& f : surv)
      if (!f.map.cls.weakly_one_sided || f.map.cls.two_sided)
        bad.push_back("stable multiplicativity: a survivor is not weakly one-sided");
    for (const SurvivingMap& f : surv)
      for (const SurvivingMap& g : surv) {
        if (g.src != f.dst || !sides_match(A, f.map, g.map)) continue;
        Mat comp = g.map.mat.mul(f.map.mat);
        bool nonzero_class = !comp.is_zero();
        if (nonzero_class) {
          auto span = flats_of(proj_trivial_subspace(A, mods[f.src], mods[g.dst]).basis);
          nonzero_class = !in_span(span, comp.flatten(), A.field).has_value();
        }
        if (!nonzero_class)
          bad.push_back(
              "stable multiplicativity: matching-side composite has zero stable class");
      }
  }
  return bad;
}

const char* verdict_name(int kind) {
  switch (kind) {
    case TheoremVerdict::GENTLE_CONFIRMED:
      return "GENTLE_CONFIRMED";
    case TheoremVerdict::EXT_NONZERO:
      return "EXT_NONZERO";
    default:
      return "INCONCLUSIVE";
  }
}

std::string payload(int trial, const std::string& reason, const std::string& text,
                    const std::vector<std::string>& summands) {
  std::string s = "trial " + std::to_string(trial) + ": " + reason + "\n" + text;
  if (!s.empty() && s.back() != '\n') s += '\n';
  s += "summands:";
  for (const std::string& w : summands) s += " \"" + w + "\"";
  s += '\n';
  return s;
}

}  // namespace

ScanReport theorem_scan(const ScanConfig& cfg) {
  if (cfg.trials < 0 || cfg.max_string_len < 1 || cfg.max_summands < 1)
    throw InputError("scan config values must be positive");
  Field field = cfg.field_prime ? Field::prime(cfg.field_prime) : Field::rationals();

  ScanReport rep;
  rep.config = cfg;
  Rng root(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = root.split((uint64_t)t);
    TrialRecord rec;
    rec.index = t;
    std::string pres_text;
    try {
      Presentation p = generate_random_sb(rng, cfg.limits);
      pres_text = canonical_text(p);
      rec.digest = sha256_hex(pres_text);
      Algebra A = Algebra::make(p, field);

      std::vector<Word> pool;
      for (const Word& w : enumerate_strings(A, cfg.max_string_len))
        if (!is_projective_string(A, w) && !is_band(A, w)) pool.push_back(w);
      if (pool.empty()) {
        rec.verdict = "NO_STRINGS";
        ++rep.no_strings;
        rep.trials.push_back(std::move(rec));
        continue;
      }
      int count = 1 + (int)rng.below((uint64_t)cfg.max_summands);
      std::vector<Word> picked;
      for (int k = 0; k < count; ++k) {
        Word w = pool[rng.below(pool.size())];
        if (std::find(picked.begin(), picked.end(), w) == picked.end())
          picked.push_back(std::move(w));
      }
      for (const Word& w : picked) rec.summands.push_back(format_word(A, w));

      TheoremVerdict v = check_main_theorem(A, picked);
      rec.verdict = verdict_name(v.kind);
      rec.detail = v.detail;
      rec.ext_dim = v.kind == TheoremVerdict::EXT_NONZERO ? v.ext_dim : 0;
      if (v.kind == TheoremVerdict::GENTLE_CONFIRMED) ++rep.gentle_confirmed;
      if (v.kind == TheoremVerdict::EXT_NONZERO) ++rep.ext_nonzero;
      if (v.kind == TheoremVerdict::INCONCLUSIVE) {
        ++rep.inconclusive;
        rec.counterexample = true;
        rep.counterexamples.push_back(payload(t, v.detail, pres_text, rec.summands));
      }

      for (const std::string& reason :
           run_invariants(A, picked, v.kind != TheoremVerdict::EXT_NONZERO)) {
        rec.counterexample = true;
        rep.counterexamples.push_back(payload(t, reason, pres_text, rec.summands));
      }
    } catch (const InternalError& e) {
      rec.verdict = "ERROR";
      rec.detail = e.what();
      rec.counterexample = true;
      ++rep.errors;
      rep.counterexamples.push_back(
          payload(t, std::string("internal error: ") + e.what(), pres_text, rec.summands));
    } catch (const std::exception& e) {
      rec.verdict = "ERROR";
      rec.detail = e.what();
      ++rep.errors;
    }
    rep.trials.push_back(std::move(rec));
  }
  return rep;
}

std::string ScanReport::to_text() const {
  std::ostringstream os;
  os << "theorem-scan report v1\n";
  os << "config: seed=" << config.seed << " trials=" << config.trials
     << " max-vertices=" << config.limits.max_vertices
     << " max-arrows=" << config.limits.max_arrows
     << " max-relations=" << config.limits.max_relations
     << " max-string-len=" << config.max_string_len << " max-summands=" << config.max_summands
     << " field=";
  if (config.field_prime == 0)
    os << "rational";
  else
    os << "fp:" << config.field_prime;
  os << "\n";
  for (const TrialRecord& t : trials) {
    os << "trial " << t.index << ": digest=" << (t.digest.empty() ? "-" : t.digest)
       << " summands=[";
    for (size_t i = 0; i < t.summands.size(); ++i)
      os << (i ? "," : "") << '"' << t.summands[i] << '"';
    os << "] verdict=" << t.verdict << " ext=" << t.ext_dim;
    if (t.verdict == "INCONCLUSIVE" || t.verdict == "ERROR") os << " detail=\"" << t.detail << '"';
    os << "\n";
  }
  for (const std::string& c : counterexamples) os << "counterexample " << c;
  os << "summary: trials=" << trials.size() << " gentle=" << gentle_confirmed
     << " ext-nonzero=" << ext_nonzero << " inconclusive=" << inconclusive
     << " no-strings=" << no_strings << " errors=" << errors
     << " counterexamples=" << counterexamples.size() << "\n";
  return os.str();
}

}  // namespace sba
