#pragma once

// Joins in the right weak order, Garside shadows and the projection pi_B.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "coxaut/coxeter.hpp"
#include "coxaut/small_roots.hpp"

namespace coxaut {

struct NotFoundWithinCap {
  int cap = 0;
  // Set when the search proved that no upper bound exists at all.
  bool certified_unbounded = false;
};

using JoinResult = std::variant<Element, NotFoundWithinCap>;

/// u ∨ v. The search climbs from u one root at a time, staying inside
/// cone(N(u) ∪ N(v)), which contains N(u ∨ v) whenever the join exists.
JoinResult join(const CoxeterSystem& sys, const Element& u, const Element& v, int cap);

enum class ShadowOrigin { Explicit, ClosureOfS, Low, ParabolicImage, Intersection };
const char* to_string(ShadowOrigin o);

class Shadow {
 public:
  Shadow() = default;
  Shadow(std::vector<Element> elements, ShadowOrigin origin);

  /// Sorted by (length, word), no duplicates.
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  ShadowOrigin origin() const { return origin_; }
  bool contains(const Element& w) const { return index_.count(w) != 0; }
  /// Position of w in elements(), or -1.
  int index_of(const Element& w) const;
  std::size_t max_length() const { return elements_.empty() ? 0 : elements_.back().length(); }

 private:
  std::vector<Element> elements_;
  std::unordered_map<Element, int, ElementHash> index_;
  ShadowOrigin origin_ = ShadowOrigin::Explicit;
};

/// Longest prefix of w lying in B. Throws ShadowViolation if not unique.
Element project(const Shadow& B, const Element& w);

enum class Verdict { Shadow, NotShadow, IndeterminateAtCap };
const char* to_string(Verdict v);

struct ShadowVerdict {
  Verdict verdict = Verdict::Shadow;
  std::string reason;
  std::vector<Element> witness;
  int cap = 0;
};

/// Checks S ∪ {e} ⊆ B, suffix closure and pairwise join closure. A cap of 0
/// means 2·(max length in B) + 8.
ShadowVerdict verify_shadow(const CoxeterSystem& sys, const Shadow& B, int cap = 0);

struct ClosureOptions {
  int cap = 0;  // 0: 2·(current max length) + 8
  std::size_t budget = 20000;
};

struct ClosureResult {
  Shadow shadow;
  bool cap_stable = true;
  int cap_used = 0;
  std::size_t uncertified_pairs = 0;
};

/// Smallest Garside shadow containing X.
ClosureResult garside_closure(const CoxeterSystem& sys, const std::vector<Element>& X, const ClosureOptions& opts = {});
/// The smallest Garside shadow S~ = Gar(S).
ClosureResult smallest_shadow(const CoxeterSystem& sys, const ClosureOptions& opts = {});

/// Whether N(w) is spanned inside the root system by Sigma_n(w).
bool is_low(const SmallRootTable& table, const Element& w);
/// L_n, by suffix-closed breadth-first search.
Shadow low_elements(const SmallRootTable& table, std::size_t budget = 200000);

/// {p_I(b) : b in B}.
Shadow parabolic_image(const CoxeterSystem& sys, const Shadow& B, GeneratorSet I);
/// B ∩ W_I.
Shadow intersect_parabolic(const Shadow& B, GeneratorSet I);

struct ParabolicClosureCheck {
  bool equal = false;  // Gar(B) ∩ W_I == B
  bool cap_stable = true;
  Shadow restricted;   // Gar(B) ∩ W_I
};
/// For B ⊆ W_I, compares the closure of B in W, cut back to W_I, with B.
/// Reports only; whether equality always holds is not known.
ParabolicClosureCheck check_parabolic_closure(const CoxeterSystem& sys, const Shadow& B, GeneratorSet I,
                                              const ClosureOptions& opts = {});

}  // namespace coxaut
