#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "sba/algebra.hpp"
#include "sba/errors.hpp"
#include "sba/ext.hpp"
#include "sba/scan.hpp"
#include "sba/stable.hpp"
#include "sba/strings.hpp"

using namespace sba;

namespace {

Algebra file_algebra(const std::string& path) {
  return Algebra::make(load_presentation(path), Field::rationals());
}

// built witnesses must be exact, non-split, and certify ext1 >= 1
void check_survey_invariant(const std::vector<OverlapWitness>& ws) {
  for (const OverlapWitness& w : ws) {
    if (!w.built) continue;
    CHECK(w.ses.has_value());
    CHECK(w.exact);
    CHECK(w.nonsplit);
    CHECK(w.ext_dim >= 1);
  }
}

}  // namespace

TEST_CASE("splitmix streams are deterministic and order-independent") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng root(7);
  Rng s3 = root.split(3);
  Rng s1 = root.split(1);
  Rng s3_again = root.split(3);
  CHECK(s3.next() == s3_again.next());
  CHECK(s1.next() != s3.next());

  Rng c(1), d(2);
  CHECK(c.next() != d.next());

  Rng e(5);
  std::set<uint64_t> below;
  for (int i = 0; i < 200; ++i) {
    uint64_t v = e.below(10);
    CHECK(v < 10);
    below.insert(v);
  }
  CHECK(below.size() == 10);
}

TEST_CASE("random presentations are valid and reproducible") {
  GenLimits limits;
  Rng root(42);

  int comm = 0;
  for (int i = 0; i < 60; ++i) {
    Rng rng = root.split(i);
    Presentation p = generate_random_sb(rng, limits);
    CHECK(validate_special_biserial(p).ok);
    CHECK_NOTHROW(Algebra::make(p, Field::rationals()));
    if (!p.comm_relations.empty()) ++comm;

    Rng replay = root.split(i);
    Presentation q = generate_random_sb(replay, limits);
    CHECK(canonical_text(p) == canonical_text(q));
  }
  CHECK(comm > 0);
}

TEST_CASE("generation limits are enforced") {
  Rng rng(1);
  GenLimits bad;
  bad.max_vertices = 0;
  CHECK_THROWS_WITH_AS(generate_random_sb(rng, bad), "generation limits must be positive",
                       InputError);

  // one vertex forces loops, and without relations loops never terminate
  GenLimits loops;
  loops.max_vertices = 1;
  loops.max_arrows = 2;
  loops.max_relations = 0;
  CHECK_THROWS_WITH_AS(generate_random_sb(rng, loops),
                       "random presentation generation failed: limits unsatisfiable "
                       "within 64 drafts",
                       InputError);
}

TEST_CASE("theorem scan is clean and byte-stable on a small config") {
  ScanConfig cfg;
  cfg.seed = 42;
  cfg.trials = 12;
  cfg.max_string_len = 6;

  ScanReport rep = theorem_scan(cfg);
  CHECK(rep.trials.size() == 12);
  CHECK(rep.gentle_confirmed == 4);
  CHECK(rep.ext_nonzero == 8);
  CHECK(rep.inconclusive == 0);
  CHECK(rep.no_strings == 0);
  CHECK(rep.errors == 0);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.clean());
  for (const TrialRecord& t : rep.trials) {
    CHECK(t.digest.size() == 64);
    CHECK(!t.summands.empty());
  }

  ScanReport again = theorem_scan(cfg);
  CHECK(rep.to_text() == again.to_text());
}

TEST_CASE("theorem scan edge configs") {
  ScanConfig empty;
  empty.trials = 0;
  ScanReport rep = theorem_scan(empty);
  CHECK(rep.trials.empty());
  CHECK(rep.clean());
  CHECK(rep.to_text() == theorem_scan(empty).to_text());

  ScanConfig bad;
  bad.trials = -1;
  CHECK_THROWS_WITH_AS(theorem_scan(bad), "scan config values must be positive", InputError);

  ScanConfig prime;
  prime.trials = 4;
  prime.max_string_len = 5;
  prime.field_prime = 7;
  ScanReport fp = theorem_scan(prime);
  CHECK(fp.clean());
  CHECK(fp.to_text().find("field=fp:7") != std::string::npos);
}

TEST_CASE("overlap surveys on pinned examples") {
  SUBCASE("linear quiver: the unique overlap builds a non-split sequence") {
    Algebra A = file_algebra("data/a3.sba");
    Word b = parse_word(A, "b"), a = parse_word(A, "a");
    std::vector<OverlapWitness> ws = overlap_survey(A, b, a);
    REQUIRE(ws.size() == 1);
    CHECK(!ws[0].mixed);
    CHECK(ws[0].built);
    CHECK(ws[0].exact);
    CHECK(ws[0].nonsplit);
    CHECK(ws[0].ext_dim == 1);
    REQUIRE(ws[0].ses.has_value());
    CHECK(ws[0].ses->left.dim() + ws[0].ses->right.dim() == ws[0].ses->middle.dim());
    CHECK(verify_exact(*ws[0].ses));
    check_survey_invariant(ws);
  }

  SUBCASE("merged projective middle defeats the string construction") {
    // ext1(M(a- c), M(b d-)) = 1, but the extension's middle is not a string
    // module, so neither concatenation forms a string: nothing builds.
    Algebra A = file_algebra("data/commsquare.sba");
    Word c1 = parse_word(A, "b d-"), c2 = parse_word(A, "a- c");
    std::vector<OverlapWitness> ws = overlap_survey(A, c1, c2);
    CHECK(ws.size() == 2);
    for (const OverlapWitness& w : ws) {
      CHECK(!w.mixed);
      CHECK(!w.built);
    }
    CHECK(overlap_survey(A, c2, c1).empty());
  }

  SUBCASE("self-extensions vanish, so no overlap can build") {
    Algebra A = file_algebra("data/ex1.sba");
    Word m = parse_word(A, "x- y x- y");
    CHECK(ext1(A, string_module(A, m), string_module(A, m)).dimension == 0);
    std::vector<OverlapWitness> ws = overlap_survey(A, m, m);
    CHECK(ws.size() == 6);
    for (const OverlapWitness& w : ws) CHECK(!w.built);
  }

  SUBCASE("survey invariant across random instances") {
    GenLimits limits;
    Rng root(11);
    int built = 0;
    for (int i = 0; i < 8; ++i) {
      Rng rng = root.split(i);
      Algebra A = Algebra::make(generate_random_sb(rng, limits), Field::rationals());
      std::vector<Word> pool;
      for (const Word& w : enumerate_strings(A, 4))
        if (!is_projective_string(A, w) && !is_band(A, w)) pool.push_back(w);
      if (pool.size() > 6) pool.resize(6);
      for (const Word& c1 : pool)
        for (const Word& c2 : pool) {
          std::vector<OverlapWitness> ws = overlap_survey(A, c1, c2);
          check_survey_invariant(ws);
          for (const OverlapWitness& w : ws)
            if (w.built) ++built;
        }
    }
    CHECK(built > 0);
  }
}
