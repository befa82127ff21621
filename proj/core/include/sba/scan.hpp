#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sba/presentation.hpp"

namespace sba {

// SplitMix64: the state advances by the golden-ratio increment and each
// output is the finalizer mix of the new state. split(i) seeds stream i
// with the finalizer output of state xor (i+1) * increment, so serial and
// parallel trial orders see identical randomness.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  uint64_t below(uint64_t n);  // next() mod n, n >= 1
  bool coin() { return next() & 1u; }
  Rng split(uint64_t index) const;

 private:
  uint64_t state_;
};

struct GenLimits {
  int max_vertices = 5;
  int max_arrows = 8;
  int max_relations = 16;
};

// Random special-biserial presentation: a quiver with per-vertex in/out
// degree at most two; at every vertex the surviving length-2 products form
// a random partial matching between entering and leaving arrows and every
// other composable product becomes a zero relation; cyclic threads of
// surviving products are broken by further zero relations; a commutativity
// relation between two parallel surviving length-2 paths is injected by
// coin flip when the shape admits one. Drafts that exceed the relation
// budget or fail validation are retried on fresh randomness; throws
// InputError when no draft validates within the retry bound.
Presentation generate_random_sb(Rng& rng, const GenLimits& limits);

struct ScanConfig {
  uint64_t seed = 42;
  int trials = 200;
  GenLimits limits;
  int max_string_len = 8;
  int max_summands = 3;
  long long field_prime = 0;  // 0 selects the rationals
};

struct TrialRecord {
  int index = 0;
  std::string digest;                 // sha256 of the canonical presentation text
  std::vector<std::string> summands;  // chosen string words, formatted
  std::string verdict;  // GENTLE_CONFIRMED / EXT_NONZERO / INCONCLUSIVE / NO_STRINGS / ERROR
  std::string detail;
  int ext_dim = 0;  // first nonzero ext dimension, 0 when every pair vanishes
  bool counterexample = false;
};

struct ScanReport {
  ScanConfig config;
  std::vector<TrialRecord> trials;
  int gentle_confirmed = 0;
  int ext_nonzero = 0;
  int inconclusive = 0;
  int no_strings = 0;
  int errors = 0;
  std::vector<std::string> counterexamples;  // rendered payloads, one per defect

  bool clean() const { return counterexamples.empty() && inconclusive == 0; }
  // Deterministic rendering: identical configs produce identical bytes.
  std::string to_text() const;
};

// Per trial: generate a presentation, pick a random set of canonical
// non-projective strings, run the main-theorem check, then re-verify the
// basis-agreement, stable-multiplicativity, and two-sided-vanishing
// invariants on the same instance. Trial-level errors are recorded, never
// thrown. Counterexamples collect INCONCLUSIVE verdicts, invariant
// violations, and internal-error witnesses.
ScanReport theorem_scan(const ScanConfig& cfg);

}  // namespace sba
