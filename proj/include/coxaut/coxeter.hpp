#pragma once

// Coxeter systems, their Tits representation, roots and group elements.
//
// Group elements are stored as a reduced word together with the left
// inversion set N(w) = Phi+ ∩ w(Phi-). Roots are interned per system: a
// RootId indexes a positive root in the system's pool, so inversion sets are
// sorted vectors of integers and reflection results are cached.

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxaut/scalar.hpp"

namespace coxaut {

inline constexpr int kInfinity = 0;

using Word = std::vector<int>;
using RootId = std::uint32_t;
using RootVector = std::vector<Scalar>;

/// Subset of the generating set, as a bitmask (rank <= 64).
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint64_t bits) : bits_(bits) {}
  static GeneratorSet all(int rank) {
    return GeneratorSet(rank >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank) - 1);
  }
  static GeneratorSet of(std::initializer_list<int> gens) {
    GeneratorSet g;
    for (int s : gens) g.insert(s);
    return g;
  }

  bool contains(int s) const { return (bits_ >> s) & 1U; }
  void insert(int s) { bits_ |= std::uint64_t{1} << s; }
  void erase(int s) { bits_ &= ~(std::uint64_t{1} << s); }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool subset_of(GeneratorSet o) const { return (bits_ & ~o.bits_) == 0; }
  std::uint64_t bits() const { return bits_; }
  std::vector<int> members() const;

  friend GeneratorSet operator|(GeneratorSet a, GeneratorSet b) { return GeneratorSet(a.bits_ | b.bits_); }
  friend GeneratorSet operator&(GeneratorSet a, GeneratorSet b) { return GeneratorSet(a.bits_ & b.bits_); }
  friend bool operator==(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

class CoxeterMatrix {
 public:
  explicit CoxeterMatrix(int rank = 0);

  int rank() const { return rank_; }
  /// m(s,t); 1 on the diagonal, kInfinity (0) for an infinite label.
  int operator()(int s, int t) const { return entries_[s * rank_ + t]; }
  bool is_infinite(int s, int t) const { return (*this)(s, t) == kInfinity; }
  /// Sets m(s,t) and m(t,s).
  void set(int s, int t, int m);

  /// Builds from a full table and validates it (symmetry, diagonal, labels).
  static CoxeterMatrix from_table(const std::vector<std::vector<int>>& table);

  std::vector<int> finite_labels() const;
  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_;
  std::vector<int> entries_;
};

struct SignedRoot {
  RootId id = 0;
  bool negative = false;
  friend bool operator==(const SignedRoot&, const SignedRoot&) = default;
};

class RootPool;

class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix, std::string name = "");
  CoxeterSystem(CoxeterSystem&&) noexcept;
  CoxeterSystem& operator=(CoxeterSystem&&) noexcept;
  ~CoxeterSystem();

  int rank() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  const FieldContext& field() const { return *field_; }
  const std::string& name() const { return name_; }
  /// B(alpha_s, alpha_t): 1 on the diagonal, -cos(pi/m), and -1 for m = inf.
  const Scalar& gram(int s, int t) const { return gram_[s * rank() + t]; }
  GeneratorSet generators() const { return GeneratorSet::all(rank()); }

  // Root pool. Simple roots have ids 0 .. rank-1.
  RootId simple_root(int s) const { return static_cast<RootId>(s); }
  RootId intern(const RootVector& v) const;
  std::optional<RootId> find(const RootVector& v) const;
  const RootVector& root(RootId id) const;
  std::size_t root_count() const;

  /// s(beta) for signed roots.
  SignedRoot reflect(int s, SignedRoot beta) const;
  /// B(alpha_s, beta).
  Scalar pairing(int s, RootId beta) const;
  /// Sign of B(alpha_s, beta), cached.
  int pairing_sign(int s, RootId beta) const;
  /// Whether B(alpha_s, beta) <= -1, cached.
  bool pairing_at_most_minus_one(int s, RootId beta) const;
  /// B(alpha, beta) for pooled roots.
  Scalar form(RootId a, RootId b) const;
  /// Whether B(alpha, beta) <= -1, cached. Two roots of a finite inversion
  /// set never satisfy this.
  bool form_at_most_minus_one(RootId a, RootId b) const;
  GeneratorSet support(RootId id) const;

  // Vector-level operations, independent of the pool.
  Scalar form(const RootVector& a, const RootVector& b) const;
  RootVector reflect_vector(int s, const RootVector& v) const;
  RootVector simple_vector(int s) const;
  RootVector zero_vector() const;

 private:
  CoxeterMatrix matrix_;
  std::string name_;
  const FieldContext* field_;
  std::vector<Scalar> gram_;
  std::unique_ptr<RootPool> pool_;
};

/// Parses `type <preset>`, a bare preset name, or a `rank n` block followed
/// by `m i j value` lines (1-based, `inf` allowed, unspecified entries 2).
CoxeterSystem parse_coxeter_system(std::string_view spec);
/// Coxeter matrix of a named preset: A3, B3, D4, E6, F4, H3, I2(m), I2(inf),
/// affine:C2 or ~C2, triangle(p,q,r).
CoxeterMatrix preset_matrix(std::string_view name);

/// Sign and root of a signed vector: +1 if all coordinates >= 0 and one > 0,
/// -1 for the negation, 0 otherwise.
int root_vector_sign(const RootVector& v);

class Element {
 public:
  Element() = default;

  const Word& word() const { return word_; }
  /// Left inversion set, sorted by root id.
  const std::vector<RootId>& inversions() const { return inv_; }
  /// Inversion sequence: entry j is r_1...r_{j-1}(alpha_{r_j}) for word r.
  const std::vector<RootId>& inversion_sequence() const { return seq_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }
  bool has_left_descent(int s) const;
  GeneratorSet left_descents() const;
  bool contains_root(RootId r) const;

  friend bool operator==(const Element& a, const Element& b) { return a.inv_ == b.inv_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  /// Orders by (length, word); used for sorted shadow listings.
  static bool shortlex_less(const Element& a, const Element& b);

 private:
  friend Element mult_left(const CoxeterSystem&, int, const Element&);
  friend Element mult_right(const CoxeterSystem&, const Element&, int);

  Word word_;
  int rank_ = 0;
  std::vector<RootId> seq_;
  std::vector<RootId> inv_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

Element mult_left(const CoxeterSystem& sys, int s, const Element& w);
Element mult_right(const CoxeterSystem& sys, const Element& w, int s);
/// The group element of an arbitrary word.
Element element_from_word(const CoxeterSystem& sys, const Word& word);
/// w(beta) for a signed root.
SignedRoot apply(const CoxeterSystem& sys, const Element& w, SignedRoot beta);

bool is_reduced_word(const CoxeterSystem& sys, const Word& word);
/// u <=_R w, i.e. N(u) ⊆ N(w).
bool weak_leq(const Element& u, const Element& w);
/// All p with p <=_R w.
std::vector<Element> prefixes(const CoxeterSystem& sys, const Element& w);
/// All suffixes of w (including e and w).
std::vector<Element> suffixes(const CoxeterSystem& sys, const Element& w);

struct CosetSplit {
  Element parabolic;       // w_I in W_I
  Element representative;  // w^I in X_I
};
/// w = w_I w^I with the product reduced.
CosetSplit coset_split(const CoxeterSystem& sys, const Element& w, GeneratorSet I);

/// All elements of length <= radius, ordered by (length, discovery).
std::vector<Element> ball(const CoxeterSystem& sys, int radius);

std::string word_to_string(const Word& w);
/// Parses "e" or 1-based letters separated by spaces or dots.
Word parse_word(std::string_view text, int rank);

}  // namespace coxaut
