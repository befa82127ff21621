#include "sba/sparse.hpp"

#include <algorithm>
#include <map>

#include "sba/matrix.hpp"

namespace sba {

SparseSolver::SparseSolver(int num_vars, Field f)
    : field_(f), parent_(num_vars), ratio_(num_vars, f.one()), zero_(num_vars, 0) {
  for (int i = 0; i < num_vars; ++i) parent_[i] = i;
}

int SparseSolver::find(int v) {
  if (parent_[v] == v) return v;
  int root = find(parent_[v]);
  ratio_[v] = field_.mul(ratio_[v], ratio_[parent_[v]]);
  parent_[v] = root;
  return root;
}

Scalar SparseSolver::ratio_to_root(int v) {
  find(v);
  return parent_[v] == v ? field_.one() : ratio_[v];
}

void SparseSolver::set_zero(int root) { zero_[root] = 1; }

void SparseSolver::unite(int a, const Scalar& ca, int b, const Scalar& cb) {
  // ca x_a + cb x_b = 0 with a, b roots: attach a below b with x_a = (-cb/ca) x_b.
  parent_[a] = b;
  ratio_[a] = field_.neg(field_.div(cb, ca));
  if (zero_[a]) zero_[b] = 1;
}

void SparseSolver::add_equation(std::vector<std::pair<int, Scalar>> terms) {
  pending_.push_back(std::move(terms));
}

std::vector<std::vector<Scalar>> SparseSolver::solve() {
  const int n = (int)parent_.size();
  std::vector<std::vector<std::pair<int, Scalar>>> eqs = std::move(pending_);
  pending_.clear();

  // Presolve to a fixpoint: rewrite every equation over live roots, eliminate
  // 1-term (forces zero) and 2-term (merges classes) equations as they appear.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<std::pair<int, Scalar>>> next;
    for (auto& eq : eqs) {
      std::map<int, Scalar> by_root;
      for (auto& [v, c] : eq) {
        int r = find(v);
        if (zero_[r]) continue;
        Scalar adj = field_.mul(c, ratio_to_root(v));
        auto it = by_root.find(r);
        if (it == by_root.end())
          by_root.emplace(r, adj);
        else
          it->second = field_.add(it->second, adj);
      }
      std::vector<std::pair<int, Scalar>> live;
      for (auto& [r, c] : by_root)
        if (!field_.is_zero(c)) live.emplace_back(r, c);
      if (live.empty()) continue;
      if (live.size() == 1) {
        set_zero(live[0].first);
        changed = true;
      } else if (live.size() == 2) {
        unite(live[0].first, live[0].second, live[1].first, live[1].second);
        changed = true;
      } else {
        next.push_back(std::move(live));
      }
    }
    eqs = std::move(next);
  }

  // Dense stage over the roots still pinned by >= 3-term equations.
  std::vector<int> dense_vars;
  {
    std::vector<char> seen(n, 0);
    for (auto& eq : eqs)
      for (auto& [r, c] : eq)
        if (!seen[r]) {
          seen[r] = 1;
          dense_vars.push_back(r);
        }
    std::sort(dense_vars.begin(), dense_vars.end());
  }
  std::vector<int> dense_index(n, -1);
  for (size_t i = 0; i < dense_vars.size(); ++i) dense_index[dense_vars[i]] = (int)i;

  Mat dense((int)eqs.size(), (int)dense_vars.size(), field_);
  for (size_t e = 0; e < eqs.size(); ++e)
    for (auto& [r, c] : eqs[e])
      dense.at((int)e, dense_index[r]) = field_.add(dense.at((int)e, dense_index[r]), c);
  std::vector<std::vector<Scalar>> dense_null = nullspace_basis(std::move(dense));

  // Expand: each live root not touched by the dense stage is a free parameter;
  // dense nullspace vectors supply the rest.
  std::vector<std::vector<Scalar>> basis;
  std::vector<std::vector<int>> members(n);
  for (int v = 0; v < n; ++v) members[find(v)].push_back(v);

  auto expand = [&](int root, const Scalar& value, std::vector<Scalar>& out) {
    for (int v : members[root]) out[v] = field_.mul(ratio_to_root(v), value);
  };

  for (int r = 0; r < n; ++r) {
    if (parent_[r] != r || zero_[r] || dense_index[r] >= 0) continue;
    std::vector<Scalar> out(n, field_.zero());
    expand(r, field_.one(), out);
    basis.push_back(std::move(out));
  }
  for (auto& nv : dense_null) {
    std::vector<Scalar> out(n, field_.zero());
    for (size_t i = 0; i < dense_vars.size(); ++i)
      if (!field_.is_zero(nv[i])) expand(dense_vars[i], nv[i], out);
    basis.push_back(std::move(out));
  }
  return basis;
}

}  // namespace sba
