#include "sba/json_io.hpp"

#include <json.hpp>

#include "sba/graph_maps.hpp"
#include "sba/strings.hpp"

namespace sba {

namespace {

using jdoc = nlohmann::ordered_json;

jdoc j_mat(const Field& f, const Mat& m) {
  jdoc rows = jdoc::array();
  for (int r = 0; r < m.rows(); ++r) {
    jdoc row = jdoc::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(f.to_string(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

jdoc j_check(const CheckReport& r) { return {{"ok", r.ok}, {"witness", r.witness}}; }

jdoc j_class(const PairClass& c) {
  return {{"oriented", c.oriented},         {"left_sided", c.left_sided},
          {"right_sided", c.right_sided},   {"one_sided", c.one_sided},
          {"weakly_one_sided", c.weakly_one_sided}, {"two_sided", c.two_sided}};
}

jdoc j_window(const Algebra& A, const Triple& t) {
  return {{"d", format_word(A, t.d)}, {"e", format_word(A, t.e)}, {"f", format_word(A, t.f)}};
}

std::string dump(const jdoc& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string json_validate(const Presentation& p, const CheckReport& sb, const CheckReport& ge) {
  jdoc j{{"schema", "sba/validate/v1"},
         {"vertices", p.vertices.size()},
         {"arrows", p.arrows.size()},
         {"zero_relations", p.zero_relations.size()},
         {"comm_relations", p.comm_relations.size()},
         {"special_biserial", j_check(sb)},
         {"gentle", j_check(ge)}};
  return dump(j);
}

std::string json_signs(const Presentation& p, const SignAssignment& signs) {
  jdoc arrows = jdoc::array();
  for (size_t a = 0; a < p.arrows.size(); ++a)
    arrows.push_back({{"name", p.arrows[a].name},
                      {"src", p.vertices[p.arrows[a].src]},
                      {"dst", p.vertices[p.arrows[a].dst]},
                      {"sigma", signs.sigma[a]},
                      {"eps", signs.eps[a]}});
  return dump(jdoc{{"schema", "sba/signs/v1"}, {"arrows", std::move(arrows)}});
}

std::string json_strings(const Algebra& A, int max_len, const std::vector<Word>& ws) {
  jdoc list = jdoc::array();
  for (const Word& w : ws) list.push_back(format_word(A, w));
  return dump(jdoc{{"schema", "sba/strings/v1"},
                   {"max_len", max_len},
                   {"count", ws.size()},
                   {"strings", std::move(list)}});
}

std::string json_module(const Algebra& A, const ExplicitModule& m, bool dump_actions) {
  jdoc by_vertex = jdoc::object();
  for (int v = 0; v < A.num_vertices(); ++v)
    by_vertex[A.pres.vertices[v]] = m.coords_at(v).size();
  jdoc j{{"schema", "sba/module/v1"},
         {"module", m.provenance},
         {"dimension", m.dim()},
         {"dim_by_vertex", std::move(by_vertex)}};
  if (dump_actions) {
    jdoc actions = jdoc::object();
    for (int a = 0; a < A.num_arrows(); ++a)
      actions[A.pres.arrows[a].name] = j_mat(A.field, m.action_dense(a));
    j["actions"] = std::move(actions);
  }
  return dump(j);
}

std::string json_hom(const Algebra& A, const Word& c1, const Word& c2,
                     const std::vector<GraphMap>& maps, int linear_dim, bool independent,
                     bool dump_maps) {
  bool agreement = independent && (int)maps.size() == linear_dim;
  jdoc j{{"schema", "sba/hom/v1"},
         {"from", format_word(A, c1)},
         {"to", format_word(A, c2)},
         {"graph_maps", maps.size()},
         {"linear_dim", linear_dim},
         {"independent", independent},
         {"agreement", agreement}};
  if (dump_maps) {
    jdoc list = jdoc::array();
    for (const GraphMap& g : maps)
      list.push_back({{"src_window", j_window(A, g.pair.src)},
                      {"dst_window", j_window(A, g.pair.dst)},
                      {"oriented", g.pair.oriented},
                      {"class", j_class(g.cls)},
                      {"matrix", j_mat(A.field, g.mat)}});
    j["maps"] = std::move(list);
  }
  return dump(j);
}

std::string json_stable_hom(const Algebra& A, const Word& c1, const Word& c2,
                            const StableHom& s) {
  return dump(jdoc{{"schema", "sba/stable-hom/v1"},
                   {"from", format_word(A, c1)},
                   {"to", format_word(A, c2)},
                   {"hom", s.hom.size()},
                   {"proj_trivial", s.trivial.basis.size()},
                   {"stable", s.dimension}});
}

std::string json_ext1(const Algebra& A, const Word& c1, const Word& c2, const Ext1Space& e,
                      bool dump_reps) {
  jdoc j{{"schema", "sba/ext1/v1"},
         {"from", format_word(A, c1)},
         {"to", format_word(A, c2)},
         {"dimension", e.dimension}};
  if (dump_reps) {
    jdoc reps = jdoc::array();
    for (const Mat& r : e.representatives) reps.push_back(j_mat(A.field, r));
    j["representatives"] = std::move(reps);
  }
  return dump(j);
}

std::string json_stable_end(const Algebra& A, const std::vector<Word>& ws, const StableHom& s,
                            const StructureConstantAlgebra& alg, const TheoremVerdict& v) {
  jdoc summands = jdoc::array();
  for (const Word& w : ws) summands.push_back(format_word(A, w));
  int identities = 0, survivors = 0;
  for (const StableBasisElem& b : alg.basis) {
    if (b.kind == StableBasisElem::IDENTITY) ++identities;
    if (b.kind == StableBasisElem::SURVIVOR) ++survivors;
  }
  const char* kind = v.kind == TheoremVerdict::GENTLE_CONFIRMED ? "GENTLE_CONFIRMED"
                     : v.kind == TheoremVerdict::EXT_NONZERO    ? "EXT_NONZERO"
                                                                : "INCONCLUSIVE";
  jdoc j{{"schema", "sba/stable-end/v1"},
         {"summands", std::move(summands)},
         {"end", s.hom.size()},
         {"proj_trivial", s.trivial.basis.size()},
         {"stable", s.dimension},
         {"basis",
          {{"size", alg.dim()},
           {"identities", identities},
           {"survivors", survivors},
           {"generic", alg.generic}}},
         {"verdict", kind},
         {"detail", v.detail}};
  if (v.kind == TheoremVerdict::EXT_NONZERO) {
    j["ext"] = {{"src", v.ext_src}, {"dst", v.ext_dst}, {"dimension", v.ext_dim}};
  }
  if (v.extracted.has_value()) {
    j["extracted"] = {{"vertices", v.extracted->pres.vertices.size()},
                      {"arrows", v.extracted->pres.arrows.size()},
                      {"zero_relations", v.extracted->pres.zero_relations.size()},
                      {"comm_relations", v.extracted->pres.comm_relations.size()},
                      {"path_classes", v.extracted->path_class_count},
                      {"text", canonical_text(v.extracted->pres)}};
  }
  return dump(j);
}

std::string json_gentle(const CheckReport& ge) {
  return dump(jdoc{{"schema", "sba/gentle-check/v1"}, {"gentle", j_check(ge)}});
}

std::string json_overlap(const Algebra& A, const Word& c1, const Word& c2,
                         const std::vector<OverlapWitness>& ws) {
  jdoc list = jdoc::array();
  int built = 0;
  bool all_pass = true;
  for (const OverlapWitness& w : ws) {
    jdoc e{{"window", format_word(A, w.pair.src.e)}, {"mixed", w.mixed}, {"built", w.built}};
    if (w.built) {
      ++built;
      e["exact"] = w.exact;
      e["nonsplit"] = w.nonsplit;
      e["ext1"] = w.ext_dim;
      e["left_dim"] = w.ses->left.dim();
      e["middle_dim"] = w.ses->middle.dim();
      e["right_dim"] = w.ses->right.dim();
      all_pass = all_pass && w.exact && w.nonsplit && w.ext_dim >= 1;
    }
    list.push_back(std::move(e));
  }
  return dump(jdoc{{"schema", "sba/overlap-ext/v1"},
                   {"from", format_word(A, c1)},
                   {"to", format_word(A, c2)},
                   {"two_sided_pairs", ws.size()},
                   {"built", built},
                   {"all_pass", all_pass},
                   {"witnesses", std::move(list)}});
}

std::string json_scan(const ScanReport& r) {
  jdoc trials = jdoc::array();
  for (const TrialRecord& t : r.trials) {
    jdoc e{{"index", t.index},
           {"digest", t.digest},
           {"summands", t.summands},
           {"verdict", t.verdict},
           {"ext", t.ext_dim},
           {"counterexample", t.counterexample}};
    if (!t.detail.empty()) e["detail"] = t.detail;
    trials.push_back(std::move(e));
  }
  jdoc j{{"schema", "sba/scan-report/v1"},
         {"config",
          {{"seed", r.config.seed},
           {"trials", r.config.trials},
           {"max_vertices", r.config.limits.max_vertices},
           {"max_arrows", r.config.limits.max_arrows},
           {"max_relations", r.config.limits.max_relations},
           {"max_string_len", r.config.max_string_len},
           {"max_summands", r.config.max_summands},
           {"field", r.config.field_prime == 0 ? std::string("rational")
                                               : "fp:" + std::to_string(r.config.field_prime)}}},
         {"trials", std::move(trials)},
         {"summary",
          {{"gentle_confirmed", r.gentle_confirmed},
           {"ext_nonzero", r.ext_nonzero},
           {"inconclusive", r.inconclusive},
           {"no_strings", r.no_strings},
           {"errors", r.errors},
           {"counterexamples", r.counterexamples.size()}}},
         {"counterexamples", r.counterexamples}};
  return dump(j);
}

}  // namespace sba
