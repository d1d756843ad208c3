#include "coxaut/small_roots.hpp"

#include <algorithm>
#include <deque>

namespace coxaut {

const char* to_string(GroupType t) {
  switch (t) {
    case GroupType::Finite:
      return "finite";
    case GroupType::Affine:
      return "affine";
    case GroupType::Indefinite:
      return "indefinite";
  }
  return "?";
}

namespace {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

ScalarMatrix gram_block(const CoxeterSystem& sys, const std::vector<int>& nodes) {
  ScalarMatrix g(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int t : nodes) g[i].push_back(sys.gram(nodes[i], t));
  }
  return g;
}

// Symmetric positive definiteness: elimination without pivoting succeeds
// with positive pivots exactly when all leading minors are positive.
bool positive_definite(ScalarMatrix g) {
  const std::size_t n = g.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (g[k][k].sign() <= 0) return false;
    const Scalar inv = g[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (g[i][k].is_zero()) continue;
      const Scalar f = g[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return true;
}

int determinant_sign(ScalarMatrix g) {
  const std::size_t n = g.size();
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && g[p][k].is_zero()) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(g[p], g[k]);
      sign = -sign;
    }
    sign *= g[k][k].sign();
    const Scalar inv = g[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (g[i][k].is_zero()) continue;
      const Scalar f = g[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return sign;
}

GroupType classify_irreducible(const CoxeterSystem& sys, GeneratorSet I) {
  const std::vector<int> nodes = I.members();
  if (positive_definite(gram_block(sys, nodes))) return GroupType::Finite;
  if (determinant_sign(gram_block(sys, nodes)) != 0) return GroupType::Indefinite;
  for (int s : nodes) {
    GeneratorSet J = I;
    J.erase(s);
    if (!positive_definite(gram_block(sys, J.members()))) return GroupType::Indefinite;
  }
  return GroupType::Affine;
}

}  // namespace

std::vector<GeneratorSet> components(const CoxeterSystem& sys, GeneratorSet I) {
  std::vector<GeneratorSet> out;
  GeneratorSet left = I;
  while (!left.empty()) {
    const int start = left.members().front();
    GeneratorSet comp = GeneratorSet::of({start});
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      for (int t : left.members()) {
        if (comp.contains(t) || sys.matrix()(s, t) == 2) continue;
        comp.insert(t);
        stack.push_back(t);
      }
    }
    out.push_back(comp);
    left = GeneratorSet(left.bits() & ~comp.bits());
  }
  return out;
}

GroupType classify_type(const CoxeterSystem& sys, GeneratorSet I) {
  if (I.empty()) throw Error(ErrorKind::EmptySubset, "cannot classify the empty parabolic");
  const auto comps = components(sys, I);
  if (comps.size() == 1) return classify_irreducible(sys, I);
  for (GeneratorSet c : comps) {
    if (classify_irreducible(sys, c) != GroupType::Finite) return GroupType::Indefinite;
  }
  return GroupType::Finite;
}

bool is_spherical(const CoxeterSystem& sys, GeneratorSet I) {
  if (I.empty()) return true;
  return positive_definite(gram_block(sys, I.members()));
}

std::vector<RootId> parabolic_positive_roots(const CoxeterSystem& sys, GeneratorSet I) {
  if (!is_spherical(sys, I)) return {};
  std::vector<RootId> roots;
  std::unordered_map<RootId, bool> seen;
  for (int s : I.members()) {
    roots.push_back(sys.simple_root(s));
    seen[sys.simple_root(s)] = true;
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (int s : I.members()) {
      SignedRoot r = sys.reflect(s, {roots[i], false});
      if (r.negative || seen.count(r.id)) continue;
      seen[r.id] = true;
      roots.push_back(r.id);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int coxeter_number(const CoxeterSystem& sys, GeneratorSet I) {
  const auto roots = parabolic_positive_roots(sys, I);
  if (roots.empty() || I.empty()) throw Error(ErrorKind::Internal, "Coxeter number of an infinite parabolic");
  return static_cast<int>(2 * roots.size()) / I.size();
}

int depth(const CoxeterSystem& sys, RootId beta) {
  int d = 1;
  while (beta >= static_cast<RootId>(sys.rank())) {
    int s = 0;
    while (s < sys.rank() && sys.pairing_sign(s, beta) <= 0) ++s;
    if (s == sys.rank()) throw Error(ErrorKind::Internal, "no depth-decreasing reflection");
    beta = sys.reflect(s, {beta, false}).id;
    ++d;
  }
  return d;
}

bool dominates(const CoxeterSystem& sys, RootId alpha, RootId beta) {
  if (alpha == beta) return true;
  if (sys.form(alpha, beta).compare(1) < 0) return false;
  return depth(sys, alpha) < depth(sys, beta);
}

std::optional<int> SmallRootTable::find(RootId r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SmallRootTable build_small_roots(const CoxeterSystem& sys, int n) {
  if (n < 0) throw Error(ErrorKind::Internal, "negative small-root level");
  SmallRootTable table(sys, n);
  const int rank = sys.rank();
  std::vector<std::vector<RootId>> dominated;  // by root id, until the end
  auto add_node = [&](RootId r, int dp, std::vector<RootId> dom) {
    SmallRootNode node;
    node.root = r;
    node.depth = dp;
    node.theta.assign(rank, kExit);
    table.index_.emplace(r, static_cast<int>(table.nodes_.size()));
    table.nodes_.push_back(std::move(node));
    dominated.push_back(std::move(dom));
  };
  for (int s = 0; s < rank; ++s) add_node(sys.simple_root(s), 1, {});

  std::vector<std::pair<int, int>> deferred;  // (node, s) with a depth-decreasing step
  for (std::size_t i = 0; i < table.nodes_.size(); ++i) {
    const RootId beta = table.nodes_[i].root;
    for (int s = 0; s < rank; ++s) {
      if (beta == sys.simple_root(s)) {
        table.nodes_[i].theta[s] = kNegative;
        continue;
      }
      const int sign = sys.pairing_sign(s, beta);
      if (sign == 0) {
        table.nodes_[i].theta[s] = static_cast<int>(i);
        continue;
      }
      if (sign > 0) {
        deferred.emplace_back(static_cast<int>(i), s);
        continue;
      }
      const RootId image = sys.reflect(s, {beta, false}).id;
      if (auto hit = table.find(image)) {
        table.nodes_[i].theta[s] = *hit;
        continue;
      }
      std::vector<RootId> dom;
      dom.reserve(dominated[i].size() + 1);
      for (RootId g : dominated[i]) dom.push_back(sys.reflect(s, {g, false}).id);
      if (sys.pairing_at_most_minus_one(s, beta)) dom.push_back(sys.simple_root(s));
      if (static_cast<int>(dom.size()) > n) continue;  // theta stays kExit
      table.nodes_[i].theta[s] = static_cast<int>(table.nodes_.size());
      add_node(image, table.nodes_[i].depth + 1, std::move(dom));
    }
  }
  for (auto [i, s] : deferred) {
    const RootId image = sys.reflect(s, {table.nodes_[i].root, false}).id;
    auto hit = table.find(image);
    if (!hit) throw Error(ErrorKind::Internal, "small roots not closed under depth-decreasing steps");
    table.nodes_[i].theta[s] = *hit;
  }
  for (std::size_t i = 0; i < table.nodes_.size(); ++i) {
    SmallRootNode& node = table.nodes_[i];
    for (RootId g : dominated[i]) {
      auto hit = table.find(g);
      if (!hit) throw Error(ErrorKind::Internal, "dominated root is not small");
      node.dominated.push_back(*hit);
    }
    std::sort(node.dominated.begin(), node.dominated.end());
    node.dp_inf = static_cast<int>(node.dominated.size());
    node.support = sys.support(node.root);
  }
  std::unordered_map<std::uint64_t, bool> spherical_cache;
  for (auto& node : table.nodes_) {
    auto [it, fresh] = spherical_cache.try_emplace(node.support.bits(), false);
    if (fresh) it->second = is_spherical(sys, node.support);
    node.spherical = it->second;
  }
  return table;
}

std::vector<int> small_inversion_set(const SmallRootTable& table, const Element& w) {
  std::vector<int> out;
  for (RootId r : w.inversions()) {
    if (auto hit = table.find(r)) out.push_back(*hit);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SphericalAnalysis spherical_analysis(const SmallRootTable& table) {
  SphericalAnalysis out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.node(static_cast<int>(i)).spherical) out.spherical.push_back(static_cast<int>(i));
  }
  out.sigma_equals_spherical = out.spherical.size() == table.size();
  return out;
}

AffineStructure affine_structure(const CoxeterSystem& sys) {
  if (classify_type(sys) != GroupType::Affine) {
    throw Error(ErrorKind::NotAffine, "group '" + sys.name() + "' is not of affine type");
  }
  const int n = sys.rank();
  // Fix delta_0 = 1 and solve the remaining rows; the block without node 0
  // is positive definite, hence invertible.
  ScalarMatrix a(n - 1);
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) a[i - 1].push_back(sys.gram(i, j));
    a[i - 1].push_back(-sys.gram(i, 0));
  }
  for (int k = 0; k < n - 1; ++k) {
    int p = k;
    while (a[p][k].is_zero()) ++p;
    std::swap(a[p], a[k]);
    const Scalar inv = a[k][k].inverse();
    for (auto& x : a[k]) x *= inv;
    for (int i = 0; i < n - 1; ++i) {
      if (i == k || a[i][k].is_zero()) continue;
      const Scalar f = a[i][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  AffineStructure aff;
  aff.delta.push_back(Scalar(sys.field(), 1));
  for (int i = 0; i < n - 1; ++i) aff.delta.push_back(a[i][n - 1]);
  aff.finite_rank = n - 1;
  for (int s = 0; s < n; ++s) {
    GeneratorSet J = sys.generators();
    J.erase(s);
    aff.coxeter_number = std::max(aff.coxeter_number, coxeter_number(sys, J));
  }
  return aff;
}

bool affine_dominance_oracle(const CoxeterSystem& sys, const AffineStructure& aff, RootId beta, RootId beta_prime) {
  if (beta == beta_prime) return true;
  const RootVector& a = sys.root(beta);
  const RootVector& b = sys.root(beta_prime);
  // delta_0 = 1, so the multiple is read off coordinate 0.
  const Scalar k = b[0] - a[0];
  if (k.sign() < 0) return false;
  for (int i = 0; i < sys.rank(); ++i) {
    if (b[i] - a[i] != k * aff.delta[i]) return false;
  }
  return true;
}

}  // namespace coxaut
