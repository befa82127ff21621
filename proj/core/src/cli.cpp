#include "sba/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sba/algebra.hpp"
#include "sba/errors.hpp"
#include "sba/ext.hpp"
#include "sba/graph_maps.hpp"
#include "sba/json_io.hpp"
#include "sba/modules.hpp"
#include "sba/presentation.hpp"
#include "sba/scan.hpp"
#include "sba/stable.hpp"
#include "sba/strings.hpp"

namespace sba::cli {

namespace {

struct Globals {
  std::string field_spec = "rational";
  std::string format = "text";
  std::uint64_t seed = 42;
  bool dump = false;

  bool json() const { return format == "json"; }
};

Field parse_field(const std::string& spec) {
  if (spec == "rational") return Field::rationals();
  if (spec.rfind("fp:", 0) == 0) {
    long long p = 0;
    try {
      size_t used = 0;
      p = std::stoll(spec.substr(3), &used);
      if (used != spec.size() - 3) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw InputError("field '" + spec + "' is not rational or fp:<prime>");
    }
    return Field::prime(p);
  }
  throw InputError("field '" + spec + "' is not rational or fp:<prime>");
}

Algebra make_algebra(const std::string& file, const Globals& g) {
  return Algebra::make(load_presentation(file), parse_field(g.field_spec));
}

// Input literals are accepted in any of a string's four spellings and
// reduced to the canonical representative the hom machinery expects.
Word input_string(const Algebra& A, const std::string& text) {
  Word w = parse_word(A, text);
  std::string why;
  if (!is_valid_string(A, w, &why)) throw InputError("'" + text + "' is not a string: " + why);
  return canonical(w);
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string check_line(const CheckReport& r) {
  if (r.ok) return "PASS";
  if (r.witness.empty()) return "FAIL";
  return "FAIL (" + r.witness + ")";
}

std::string sign_str(int s) { return s > 0 ? "+1" : "-1"; }

void print_matrix(std::ostream& out, const Field& f, const Mat& m) {
  for (int r = 0; r < m.rows(); ++r) {
    out << "  [";
    for (int c = 0; c < m.cols(); ++c) out << (c ? " " : "") << f.to_string(m.at(r, c));
    out << "]\n";
  }
}

int cmd_validate(const Globals& g, const std::string& file, std::ostream& out) {
  Presentation p = load_presentation(file);
  CheckReport sb = validate_special_biserial(p);
  CheckReport ge = validate_gentle(p);
  if (g.json()) {
    out << json_validate(p, sb, ge);
  } else {
    out << "vertices: " << p.vertices.size() << "\n";
    out << "arrows: " << p.arrows.size() << "\n";
    out << "zero relations: " << p.zero_relations.size() << "\n";
    out << "comm relations: " << p.comm_relations.size() << "\n";
    out << "special-biserial: " << check_line(sb) << "\n";
    out << "gentle: " << check_line(ge) << "\n";
  }
  return sb.ok ? 0 : 1;
}

int cmd_signs(const Globals& g, const std::string& file, std::ostream& out) {
  Presentation p = load_presentation(file);
  SignAssignment signs = compute_signs(p);
  if (g.json()) {
    out << json_signs(p, signs);
  } else {
    for (size_t a = 0; a < p.arrows.size(); ++a)
      out << "arrow " << p.arrows[a].name << ": " << p.vertices[p.arrows[a].src] << " -> "
          << p.vertices[p.arrows[a].dst] << " sigma=" << sign_str(signs.sigma[a])
          << " eps=" << sign_str(signs.eps[a]) << "\n";
  }
  return 0;
}

int cmd_strings(const Globals& g, const std::string& file, int max_len, std::ostream& out) {
  if (max_len < 0) throw InputError("--max-len must be non-negative");
  Algebra A = make_algebra(file, g);
  std::vector<Word> ws = enumerate_strings(A, max_len);
  if (g.json()) {
    out << json_strings(A, max_len, ws);
  } else {
    for (const Word& w : ws) out << format_word(A, w) << "\n";
    out << "total: " << ws.size() << "\n";
  }
  return 0;
}

int cmd_module(const Globals& g, const std::string& file, const std::string& str_text,
               const std::string& band_text, const std::string& lambda_text, int mult,
               std::ostream& out) {
  Algebra A = make_algebra(file, g);
  std::optional<ExplicitModule> m;
  if (!str_text.empty()) {
    m = string_module(A, input_string(A, str_text));
  } else if (!band_text.empty()) {
    if (mult < 1) throw InputError("--mult must be at least 1");
    Word b = parse_word(A, band_text);
    std::string why;
    if (!is_valid_string(A, b, &why))
      throw InputError("'" + band_text + "' is not a string: " + why);
    m = band_module(A, b, A.field.parse(lambda_text), mult);
  } else {
    throw InputError("module needs --string or --band");
  }
  if (g.json()) {
    out << json_module(A, *m, g.dump);
  } else {
    out << "module: " << m->provenance << "\n";
    out << "dimension: " << m->dim() << "\n";
    for (int v = 0; v < A.num_vertices(); ++v)
      out << "vertex " << A.pres.vertices[v] << ": " << m->coords_at(v).size() << "\n";
    if (g.dump) {
      for (int a = 0; a < A.num_arrows(); ++a) {
        out << "action " << A.pres.arrows[a].name << ":\n";
        print_matrix(out, A.field, m->action_dense(a));
      }
    }
  }
  return 0;
}

int cmd_hom(const Globals& g, const std::string& file, const std::string& from,
            const std::string& to, std::ostream& out) {
  Algebra A = make_algebra(file, g);
  Word c1 = input_string(A, from), c2 = input_string(A, to);
  std::vector<GraphMap> maps = hom_basis_graph(A, c1, c2);
  ExplicitModule m1 = string_module(A, c1), m2 = string_module(A, c2);
  std::vector<Mat> lin = hom_linear(m1, m2);
  RowSpace span(A.field);
  bool independent = true;
  for (const GraphMap& gm : maps) independent = span.add(gm.mat.flatten()) && independent;
  bool agreement = independent && maps.size() == lin.size();
  if (g.json()) {
    out << json_hom(A, c1, c2, maps, (int)lin.size(), independent, g.dump);
  } else {
    out << "from: " << format_word(A, c1) << "\n";
    out << "to: " << format_word(A, c2) << "\n";
    out << "graph maps: " << maps.size() << "\n";
    out << "linear dim: " << lin.size() << "\n";
    out << "independent: " << (independent ? "yes" : "no") << "\n";
    out << "agreement: " << pass_fail(agreement) << "\n";
    if (g.dump) {
      for (size_t i = 0; i < maps.size(); ++i) {
        out << "map " << i + 1 << ": window " << format_word(A, maps[i].pair.src.e) << "\n";
        print_matrix(out, A.field, maps[i].mat);
      }
    }
  }
  return agreement ? 0 : 1;
}

int cmd_stable_hom(const Globals& g, const std::string& file, const std::string& from,
                   const std::string& to, std::ostream& out) {
  Algebra A = make_algebra(file, g);
  Word c1 = input_string(A, from), c2 = input_string(A, to);
  StableHom s = stable_hom(A, string_module(A, c1), string_module(A, c2));
  if (g.json()) {
    out << json_stable_hom(A, c1, c2, s);
  } else {
    out << "from: " << format_word(A, c1) << "\n";
    out << "to: " << format_word(A, c2) << "\n";
    out << "hom: " << s.hom.size() << "\n";
    out << "proj-trivial: " << s.trivial.basis.size() << "\n";
    out << "stable: " << s.dimension << "\n";
  }
  return 0;
}

int cmd_ext1(const Globals& g, const std::string& file, const std::string& from,
             const std::string& to, std::ostream& out) {
  Algebra A = make_algebra(file, g);
  Word c1 = input_string(A, from), c2 = input_string(A, to);
  Ext1Space e = ext1(A, string_module(A, c1), string_module(A, c2));
  if (g.json()) {
    out << json_ext1(A, c1, c2, e, g.dump);
  } else {
    out << "from: " << format_word(A, c1) << "\n";
    out << "to: " << format_word(A, c2) << "\n";
    out << "ext1: " << e.dimension << "\n";
    if (g.dump) {
      for (size_t i = 0; i < e.representatives.size(); ++i) {
        out << "representative " << i + 1 << ":\n";
        print_matrix(out, A.field, e.representatives[i]);
      }
    }
  }
  return 0;
}

int cmd_stable_end(const Globals& g, const std::string& file,
                   const std::vector<std::string>& texts, std::ostream& out) {
  Algebra A = make_algebra(file, g);
  std::vector<Word> ws;
  for (const std::string& t : texts) ws.push_back(input_string(A, t));
  std::vector<ExplicitModule> parts;
  parts.reserve(ws.size());
  for (const Word& w : ws) parts.push_back(string_module(A, w));
  std::vector<const ExplicitModule*> ptrs;
  for (const ExplicitModule& p : parts) ptrs.push_back(&p);
  ExplicitModule M = direct_sum(A, ptrs);
  StableHom s = stable_hom(A, M, M);
  StructureConstantAlgebra alg = stable_endo_algebra(A, ws);
  TheoremVerdict v = check_main_theorem(A, ws);
  if (g.json()) {
    out << json_stable_end(A, ws, s, alg, v);
  } else {
    out << "summands: " << ws.size() << "\n";
    for (const Word& w : ws) out << "  M(" << format_word(A, w) << ")\n";
    out << "end: " << s.hom.size() << "\n";
    out << "proj-trivial: " << s.trivial.basis.size() << "\n";
    out << "stable: " << s.dimension << "\n";
    int identities = 0, survivors = 0;
    for (const StableBasisElem& b : alg.basis) {
      if (b.kind == StableBasisElem::IDENTITY) ++identities;
      if (b.kind == StableBasisElem::SURVIVOR) ++survivors;
    }
    out << "basis: identities=" << identities << " survivors=" << survivors
        << " generic=" << (alg.generic ? "yes" : "no") << "\n";
    const char* kind = v.kind == TheoremVerdict::GENTLE_CONFIRMED ? "GENTLE_CONFIRMED"
                       : v.kind == TheoremVerdict::EXT_NONZERO    ? "EXT_NONZERO"
                                                                  : "INCONCLUSIVE";
    out << "verdict: " << kind << "\n";
    out << "detail: " << v.detail << "\n";
    if (v.kind == TheoremVerdict::EXT_NONZERO)
      out << "ext: src=" << v.ext_src << " dst=" << v.ext_dst << " dim=" << v.ext_dim << "\n";
    if (v.extracted.has_value()) {
      out << "extracted presentation:\n";
      out << canonical_text(v.extracted->pres);
    }
  }
  return v.kind == TheoremVerdict::INCONCLUSIVE ? 1 : 0;
}

int cmd_gentle(const Globals& g, const std::string& file, std::ostream& out) {
  Presentation p = load_presentation(file);
  CheckReport ge = validate_gentle(p);
  if (g.json()) {
    out << json_gentle(ge);
  } else {
    out << "gentle: " << check_line(ge) << "\n";
  }
  return ge.ok ? 0 : 1;
}

int cmd_overlap(const Globals& g, const std::string& file, const std::string& from,
                const std::string& to, std::ostream& out) {
  Algebra A = make_algebra(file, g);
  Word c1 = input_string(A, from), c2 = input_string(A, to);
  std::vector<OverlapWitness> ws = overlap_survey(A, c1, c2);
  bool all_pass = true;
  for (const OverlapWitness& w : ws)
    if (w.built) all_pass = all_pass && w.exact && w.nonsplit && w.ext_dim >= 1;
  if (g.json()) {
    out << json_overlap(A, c1, c2, ws);
  } else {
    out << "from: " << format_word(A, c1) << "\n";
    out << "to: " << format_word(A, c2) << "\n";
    out << "two-sided pairs: " << ws.size() << "\n";
    for (size_t i = 0; i < ws.size(); ++i) {
      const OverlapWitness& w = ws[i];
      out << "pair " << i + 1 << ": window=" << format_word(A, w.pair.src.e)
          << " mixed=" << (w.mixed ? "yes" : "no") << " built=" << (w.built ? "yes" : "no");
      if (w.built)
        out << " exact=" << (w.exact ? "yes" : "no")
            << " nonsplit=" << (w.nonsplit ? "yes" : "no") << " ext1=" << w.ext_dim
            << " dims=" << w.ses->left.dim() << "/" << w.ses->middle.dim() << "/"
            << w.ses->right.dim();
      out << "\n";
    }
    out << "result: " << pass_fail(all_pass) << "\n";
  }
  return all_pass ? 0 : 1;
}

int cmd_scan(const Globals& g, const ScanConfig& cfg, std::ostream& out) {
  ScanReport rep = theorem_scan(cfg);
  if (g.json()) {
    out << json_scan(rep);
  } else {
    out << rep.to_text();
  }
  return rep.clean() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"special biserial algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--field", g.field_spec, "arithmetic: rational or fp:<prime>")
      ->check(
          [](const std::string& s) -> std::string {
            try {
              parse_field(s);
              return "";
            } catch (const std::exception& e) {
              return e.what();
            }
          },
          "FIELD")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "root seed for randomized subcommands")
      ->capture_default_str();
  app.add_flag("--dump-module", g.dump, "include matrices in the output");

  int code = 0;

  std::string va_file;
  CLI::App* va = app.add_subcommand("validate", "check the special-biserial conditions");
  va->add_option("file", va_file, "presentation file")->required();
  va->callback([&] { code = cmd_validate(g, va_file, out); });

  std::string sg_file;
  CLI::App* sg = app.add_subcommand("signs", "assign admissible sigma and eps signs");
  sg->add_option("file", sg_file, "presentation file")->required();
  sg->callback([&] { code = cmd_signs(g, sg_file, out); });

  std::string st_file;
  int st_max = 6;
  CLI::App* st = app.add_subcommand("strings", "enumerate canonical strings");
  st->add_option("file", st_file, "presentation file")->required();
  st->add_option("--max-len", st_max, "maximum word length")->capture_default_str();
  st->callback([&] { code = cmd_strings(g, st_file, st_max, out); });

  std::string mo_file, mo_string, mo_band, mo_lambda = "1";
  int mo_mult = 1;
  CLI::App* mo = app.add_subcommand("module", "build a string or band module");
  mo->add_option("file", mo_file, "presentation file")->required();
  CLI::Option* mo_s = mo->add_option("--string", mo_string, "string word");
  CLI::Option* mo_b = mo->add_option("--band", mo_band, "band word");
  mo_s->excludes(mo_b);
  mo_b->excludes(mo_s);
  mo->add_option("--lambda", mo_lambda, "band parameter (nonzero scalar)")
      ->capture_default_str();
  mo->add_option("--mult", mo_mult, "band Jordan-block multiplicity")->capture_default_str();
  mo->callback([&] { code = cmd_module(g, mo_file, mo_string, mo_band, mo_lambda, mo_mult, out); });

  std::string ho_file, ho_from, ho_to;
  CLI::App* ho = app.add_subcommand("hom", "graph-map basis versus linear hom computation");
  ho->add_option("file", ho_file, "presentation file")->required();
  ho->add_option("--from", ho_from, "source string")->required();
  ho->add_option("--to", ho_to, "target string")->required();
  ho->callback([&] { code = cmd_hom(g, ho_file, ho_from, ho_to, out); });

  std::string sh_file, sh_from, sh_to;
  CLI::App* sh = app.add_subcommand("stable-hom", "hom modulo maps through projectives");
  sh->add_option("file", sh_file, "presentation file")->required();
  sh->add_option("--from", sh_from, "source string")->required();
  sh->add_option("--to", sh_to, "target string")->required();
  sh->callback([&] { code = cmd_stable_hom(g, sh_file, sh_from, sh_to, out); });

  std::string ex_file, ex_from, ex_to;
  CLI::App* ex = app.add_subcommand("ext1", "dimension of the first extension group");
  ex->add_option("file", ex_file, "presentation file")->required();
  ex->add_option("--from", ex_from, "source string")->required();
  ex->add_option("--to", ex_to, "target string")->required();
  ex->callback([&] { code = cmd_ext1(g, ex_file, ex_from, ex_to, out); });

  std::string se_file;
  std::vector<std::string> se_strings;
  CLI::App* se = app.add_subcommand("stable-end", "stable endomorphism algebra of a direct sum");
  se->add_option("file", se_file, "presentation file")->required();
  se->add_option("--string", se_strings, "summand string (repeatable)")->required();
  se->callback([&] { code = cmd_stable_end(g, se_file, se_strings, out); });

  std::string ge_file;
  CLI::App* ge = app.add_subcommand("gentle-check", "check the gentle conditions");
  ge->add_option("file", ge_file, "presentation file")->required();
  ge->callback([&] { code = cmd_gentle(g, ge_file, out); });

  std::string ov_file, ov_from, ov_to;
  CLI::App* ov = app.add_subcommand("overlap-ext", "short exact sequences from overlaps");
  ov->add_option("file", ov_file, "presentation file")->required();
  ov->add_option("--from", ov_from, "source string")->required();
  ov->add_option("--to", ov_to, "target string")->required();
  ov->callback([&] { code = cmd_overlap(g, ov_file, ov_from, ov_to, out); });

  ScanConfig cfg;
  CLI::App* sc = app.add_subcommand("theorem-scan", "randomized search for counterexamples");
  sc->add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  sc->add_option("--max-vertices", cfg.limits.max_vertices, "vertex budget")
      ->capture_default_str();
  sc->add_option("--max-arrows", cfg.limits.max_arrows, "arrow budget")->capture_default_str();
  sc->add_option("--max-relations", cfg.limits.max_relations, "relation budget")
      ->capture_default_str();
  sc->add_option("--max-len", cfg.max_string_len, "string length bound")->capture_default_str();
  sc->add_option("--max-summands", cfg.max_summands, "summand count bound")
      ->capture_default_str();
  sc->callback([&] {
    cfg.seed = g.seed;
    Field f = parse_field(g.field_spec);
    cfg.field_prime = f.p();
    code = cmd_scan(g, cfg, out);
  });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("sba");
  for (const std::string& a : args) argv_store.push_back(a);
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace sba::cli
