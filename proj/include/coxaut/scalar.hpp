#pragma once

// Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).
//
// Every entry of the bilinear form of a Coxeter matrix, -cos(pi/m), lives in
// Q(c) with c = 2cos(pi/N) and N the lcm of the finite labels. Elements are
// stored as rational coefficient vectors in the power basis 1, c, ..., c^(d-1)
// reduced modulo the minimal polynomial of c, which makes the representation
// canonical. Signs are decided by evaluating at a certified rational interval
// around c.

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "coxaut/error.hpp"

namespace coxaut {

struct RationalInterval {
  mpq_class lo;
  mpq_class hi;
};

class FieldContext {
 public:
  /// Context for the labels given; labels 2 and 3 contribute nothing beyond
  /// the rationals, so {2} and the empty set both give N = 1.
  static const FieldContext& make(std::span<const int> finite_labels);
  /// Context with conductor exactly N (N >= 1).
  static const FieldContext& for_conductor(int N);

  int conductor() const { return N_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  bool is_rational() const { return degree() == 1; }

  /// Monic minimal polynomial of c, coefficients from the constant term up.
  const std::vector<mpz_class>& minpoly() const { return minpoly_; }

  /// Value of the generator 2cos(pi/N) as a double.
  double generator_value() const { return c_double_; }

  /// Rational enclosure of the generator at ladder level k; the width is at
  /// most 2^-(50 * 2^k). Levels are computed lazily.
  RationalInterval ladder(int level) const;
  static constexpr int kMaxLadderLevel = 10;

  /// c^k reduced, as coefficient vector.
  const std::vector<mpq_class>& power_reduction(int k) const;

  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

 private:
  explicit FieldContext(int N);

  int N_;
  std::vector<mpz_class> minpoly_;
  double c_double_;
  mutable std::mutex ladder_mutex_;
  mutable std::vector<RationalInterval> ladder_;
};

/// Minimal polynomial of 2cos(pi/N) as computed from its numerical
/// conjugates and verified against 2*T_N(x/2)+2. Exposed for tests.
std::vector<mpz_class> minimal_polynomial_of_cos(int N);

/// Coefficients of 2*T_k(x/2), the monic Chebyshev-type polynomial with
/// 2cos(k t) = D_k(2cos t).
std::vector<mpz_class> chebyshev_d(int k);

class Scalar {
 public:
  Scalar() = default;  // zero in the rational context
  explicit Scalar(const FieldContext& ctx);
  Scalar(const FieldContext& ctx, const mpq_class& q);
  Scalar(const FieldContext& ctx, long num, long den = 1);

  static Scalar generator(const FieldContext& ctx);
  /// cos(pi/m) for m dividing N (m = 1, 2 always allowed).
  static Scalar cos_pi_over(const FieldContext& ctx, int m);
  static Scalar from_coefficients(const FieldContext& ctx, std::vector<mpq_class> coeffs);

  const FieldContext& context() const;
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  int sign() const;
  double to_double() const;
  /// Exact rendering as a polynomial in c, e.g. "1/2 + c" (c = 2cos(pi/N)).
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

  /// Compare against a small rational without building a Scalar.
  int compare(long num, long den = 1) const;

  std::size_t hash() const;

 private:
  void align(const Scalar& o);
  int sign_by_ladder() const;

  const FieldContext* ctx_ = nullptr;
  std::vector<mpq_class> coeffs_;  // length = degree, trailing zeros kept
};

}  // namespace coxaut
