#include "coxaut/cone.hpp"

#include <algorithm>

namespace coxaut {

namespace {

// Phase one of the simplex method on  G lambda = gamma, lambda >= 0, with one
// artificial variable per row. Bland's rule guarantees termination.
bool feasible(const CoxeterSystem& sys, std::vector<std::vector<Scalar>> rows) {
  const std::size_t m = rows.size();
  if (m == 0) return true;
  const std::size_t k = rows.front().size() - 1;  // last column is the right-hand side
  const std::size_t width = k + m + 1;
  const Scalar zero(sys.field());
  std::vector<std::vector<Scalar>> t(m, std::vector<Scalar>(width, zero));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = rows[i][k].sign() < 0;
    for (std::size_t j = 0; j < k; ++j) t[i][j] = flip ? -rows[i][j] : rows[i][j];
    t[i][k + i] = Scalar(sys.field(), 1);
    t[i][width - 1] = flip ? -rows[i][k] : rows[i][k];
  }
  std::vector<Scalar> cost(width, zero);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= k && j < k + m) continue;
    for (std::size_t i = 0; i < m; ++i) {
      if (!t[i][j].is_zero()) cost[j] -= t[i][j];
    }
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = k + i;

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Scalar best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Scalar ratio = t[i][width - 1] / t[i][enter];
      if (leave == m) {
        leave = i;
        best = std::move(ratio);
        continue;
      }
      const int c = (ratio - best).sign();
      if (c < 0 || (c == 0 && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == m) throw Error(ErrorKind::Internal, "unbounded phase-one objective");
    const Scalar inv = t[leave][enter].inverse();
    for (auto& x : t[leave]) {
      if (!x.is_zero()) x *= inv;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Scalar f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[leave][j].is_zero()) t[i][j] -= f * t[leave][j];
      }
    }
    if (!cost[enter].is_zero()) {
      const Scalar f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[leave][j].is_zero()) cost[j] -= f * t[leave][j];
      }
    }
    basis[leave] = enter;
  }
  // The phase-one optimum is -cost[rhs]; feasibility means it is zero.
  return cost[width - 1].is_zero();
}

}  // namespace

bool cone_member(const CoxeterSystem& sys, const RootVector& gamma, std::span<const RootVector> gens) {
  const int n = sys.rank();
  std::vector<bool> live(n, false);
  bool gamma_zero = true;
  for (const auto& g : gens) {
    if (g == gamma) return true;
    for (int i = 0; i < n; ++i) {
      if (!g[i].is_zero()) live[i] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (gamma[i].is_zero()) continue;
    gamma_zero = false;
    if (!live[i]) return false;
  }
  if (gamma_zero) return true;
  if (gens.empty()) return false;
  std::vector<std::vector<Scalar>> rows;
  for (int i = 0; i < n; ++i) {
    if (!live[i]) continue;
    std::vector<Scalar> row;
    row.reserve(gens.size() + 1);
    for (const auto& g : gens) row.push_back(g[i]);
    row.push_back(gamma[i]);
    rows.push_back(std::move(row));
  }
  return feasible(sys, std::move(rows));
}

bool cone_member(const CoxeterSystem& sys, RootId gamma, std::span<const RootId> gens) {
  if (std::find(gens.begin(), gens.end(), gamma) != gens.end()) return true;
  std::vector<RootVector> vecs;
  vecs.reserve(gens.size());
  for (RootId g : gens) vecs.push_back(sys.root(g));
  return cone_member(sys, sys.root(gamma), vecs);
}

}  // namespace coxaut
