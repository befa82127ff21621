#pragma once
#include <utility>
#include <vector>

#include "sba/field.hpp"

namespace sba {

// Nullspace of a sparse homogeneous system. Designed for systems where almost
// every equation relates at most two variables: those are eliminated by a
// ratio-carrying union-find, and only the residue goes through dense reduction.
class SparseSolver {
 public:
  SparseSolver(int num_vars, Field f);

  // One homogeneous equation sum coeff_i * x_{var_i} = 0. Repeated vars allowed.
  void add_equation(std::vector<std::pair<int, Scalar>> terms);

  // Basis of the solution space, deterministic for a given insertion order.
  std::vector<std::vector<Scalar>> solve();

 private:
  int find(int v);                 // root of v, compressing paths
  Scalar ratio_to_root(int v);     // x_v = ratio_to_root(v) * x_root
  void set_zero(int root);
  void unite(int a, const Scalar& ca, int b, const Scalar& cb);  // ca x_a + cb x_b = 0

  Field field_;
  std::vector<int> parent_;
  std::vector<Scalar> ratio_;     // x_v = ratio_[v] * x_parent[v]
  std::vector<char> zero_;        // valid at roots
  std::vector<std::vector<std::pair<int, Scalar>>> pending_;
};

}  // namespace sba
