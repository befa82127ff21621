#pragma once
#include <string>
#include <vector>

#include "sba/algebra.hpp"
#include "sba/ext.hpp"
#include "sba/modules.hpp"
#include "sba/presentation.hpp"
#include "sba/scan.hpp"
#include "sba/stable.hpp"

namespace sba {

// JSON documents for the command-line surface. Every document carries a
// versioned "schema" field; scalars are rendered as exact strings ("-3/2"),
// matrices as row-major arrays of such strings; key order is fixed, so equal
// inputs produce identical bytes.

std::string json_validate(const Presentation& p, const CheckReport& sb, const CheckReport& ge);
std::string json_signs(const Presentation& p, const SignAssignment& signs);
std::string json_strings(const Algebra& A, int max_len, const std::vector<Word>& ws);
std::string json_module(const Algebra& A, const ExplicitModule& m, bool dump_actions);
std::string json_hom(const Algebra& A, const Word& c1, const Word& c2,
                     const std::vector<GraphMap>& maps, int linear_dim, bool independent,
                     bool dump_maps);
std::string json_stable_hom(const Algebra& A, const Word& c1, const Word& c2, const StableHom& s);
std::string json_ext1(const Algebra& A, const Word& c1, const Word& c2, const Ext1Space& e,
                      bool dump_reps);
std::string json_stable_end(const Algebra& A, const std::vector<Word>& ws, const StableHom& s,
                            const StructureConstantAlgebra& alg, const TheoremVerdict& v);
std::string json_gentle(const CheckReport& ge);
std::string json_overlap(const Algebra& A, const Word& c1, const Word& c2,
                         const std::vector<OverlapWitness>& ws);
std::string json_scan(const ScanReport& r);

}  // namespace sba
