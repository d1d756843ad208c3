#pragma once

// n-small roots and the dominance order.
//
// A positive root beta dominates alpha when every inversion set containing
// beta also contains alpha. Sigma_n collects the roots dominating at most n
// others; it is finite and closed under depth-decreasing reflections, which
// is what makes the canonical automata finite.

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxaut/coxeter.hpp"

namespace coxaut {

enum class GroupType { Finite, Affine, Indefinite };
const char* to_string(GroupType t);

/// Type of the standard parabolic subgroup on I.
GroupType classify_type(const CoxeterSystem& sys, GeneratorSet I);
inline GroupType classify_type(const CoxeterSystem& sys) { return classify_type(sys, sys.generators()); }

/// Connected components of the Coxeter graph restricted to I.
std::vector<GeneratorSet> components(const CoxeterSystem& sys, GeneratorSet I);

/// Positive roots of a finite parabolic W_I (empty if W_I is infinite).
std::vector<RootId> parabolic_positive_roots(const CoxeterSystem& sys, GeneratorSet I);

/// Coxeter number of an irreducible finite system.
int coxeter_number(const CoxeterSystem& sys, GeneratorSet I);

/// Minimal length of an element sending beta negative.
int depth(const CoxeterSystem& sys, RootId beta);

/// alpha ⪯ beta: alpha = beta, or B(alpha,beta) >= 1 and dp(alpha) < dp(beta).
bool dominates(const CoxeterSystem& sys, RootId alpha, RootId beta);

inline constexpr int kExit = -1;
inline constexpr int kNegative = -2;

struct SmallRootNode {
  RootId root = 0;
  int depth = 1;
  std::vector<int> dominated;  // node ids, sorted
  int dp_inf = 0;
  GeneratorSet support;
  bool spherical = false;
  std::vector<int> theta;  // node id, kExit or kNegative, per generator
};

class SmallRootTable {
 public:
  SmallRootTable(const CoxeterSystem& sys, int level) : sys_(&sys), level_(level) {}

  const CoxeterSystem& system() const { return *sys_; }
  int level() const { return level_; }
  std::size_t size() const { return nodes_.size(); }
  const SmallRootNode& node(int id) const { return nodes_[id]; }
  const std::vector<SmallRootNode>& nodes() const { return nodes_; }
  std::optional<int> find(RootId r) const;

 private:
  friend SmallRootTable build_small_roots(const CoxeterSystem&, int);
  const CoxeterSystem* sys_;
  int level_;
  std::vector<SmallRootNode> nodes_;
  std::unordered_map<RootId, int> index_;
};

/// Sigma_n with dominance bookkeeping. Simple roots are nodes 0 .. rank-1.
SmallRootTable build_small_roots(const CoxeterSystem& sys, int n);

/// Sigma_n(w) as sorted node ids.
std::vector<int> small_inversion_set(const SmallRootTable& table, const Element& w);

struct SphericalAnalysis {
  std::vector<int> spherical;  // node ids
  bool sigma_equals_spherical = false;
};
SphericalAnalysis spherical_analysis(const SmallRootTable& table);

/// Whether W_I is finite.
bool is_spherical(const CoxeterSystem& sys, GeneratorSet I);

struct AffineStructure {
  RootVector delta;  // radical of the form, positive coordinates
  int finite_rank = 0;
  int coxeter_number = 0;
};
AffineStructure affine_structure(const CoxeterSystem& sys);

/// beta' - beta is a nonnegative multiple of delta.
bool affine_dominance_oracle(const CoxeterSystem& sys, const AffineStructure& aff, RootId beta, RootId beta_prime);

}  // namespace coxaut
