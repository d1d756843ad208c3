#include "coxaut/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

namespace coxaut {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLabel: return "invalid-label";
    case ErrorKind::DivisionByZero: return "div-by-zero";
    case ErrorKind::OutOfField: return "out-of-field";
    case ErrorKind::InvalidMatrix: return "invalid-matrix";
    case ErrorKind::UnknownPreset: return "unknown-preset";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::NotPositiveRoot: return "not-positive-root";
    case ErrorKind::EmptySubset: return "empty-subset";
    case ErrorKind::NotAffine: return "not-affine";
    case ErrorKind::ShadowViolation: return "shadow-violation";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::UnsupportedRank: return "unsupported-rank";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

namespace {

using ZPoly = std::vector<mpz_class>;

void trim(ZPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Remainder of a by a monic divisor.
ZPoly remainder_monic(ZPoly a, const ZPoly& monic) {
  const std::size_t d = monic.size() - 1;
  for (std::size_t k = a.size(); k-- > d;) {
    if (a[k] == 0) continue;
    mpz_class t = a[k];
    for (std::size_t j = 0; j <= d; ++j) a[k - d + j] -= t * monic[j];
  }
  a.resize(std::min(a.size(), d));
  if (a.empty()) a.push_back(0);
  trim(a);
  return a;
}

mpq_class eval(const ZPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

int sgn(const mpq_class& q) { return ::sgn(q); }

mpq_class pow2(int e) {
  mpq_class r = 1;
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -e);
  }
  return r;
}

}  // namespace

std::vector<mpz_class> chebyshev_d(int k) {
  // D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1}
  ZPoly prev{2};
  if (k == 0) return prev;
  ZPoly cur{0, 1};
  for (int j = 1; j < k; ++j) {
    ZPoly next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<mpz_class> minimal_polynomial_of_cos(int N) {
  if (N < 1) throw Error(ErrorKind::InvalidLabel, "conductor must be positive");
  std::vector<long double> roots;
  if (N == 1) {
    roots.push_back(-2.0L);
  } else {
    for (int k = 1; k < N; ++k) {
      if (std::gcd(k, 2 * N) == 1) {
        roots.push_back(2.0L * std::cos(std::numbers::pi_v<long double> * k / N));
      }
    }
  }
  std::vector<long double> prod{1.0L};
  for (long double r : roots) {
    std::vector<long double> next(prod.size() + 1, 0.0L);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] += prod[i];
      next[i] -= r * prod[i];
    }
    prod = std::move(next);
  }
  ZPoly minpoly;
  for (long double c : prod) {
    long double r = std::round(c);
    if (std::fabs(c - r) > 1e-3L) {
      throw Error(ErrorKind::Internal, "minimal polynomial rounding failed for N=" + std::to_string(N));
    }
    minpoly.emplace_back(static_cast<long>(r));
  }
  ZPoly target = chebyshev_d(N);
  target[0] += 2;
  ZPoly rem = remainder_monic(target, minpoly);
  if (!(rem.size() == 1 && rem[0] == 0)) {
    throw Error(ErrorKind::Internal, "minimal polynomial verification failed for N=" + std::to_string(N));
  }
  return minpoly;
}

FieldContext::FieldContext(int N) : N_(N) {
  minpoly_ = minimal_polynomial_of_cos(N);
  c_double_ = N == 1 ? -2.0 : 2.0 * std::cos(std::numbers::pi / N);
}

const FieldContext& FieldContext::for_conductor(int N) {
  static std::mutex registry_mutex;
  static std::map<int, std::unique_ptr<FieldContext>> registry;
  std::lock_guard lock(registry_mutex);
  auto it = registry.find(N);
  if (it == registry.end()) {
    it = registry.emplace(N, std::unique_ptr<FieldContext>(new FieldContext(N))).first;
  }
  return *it->second;
}

const FieldContext& FieldContext::make(std::span<const int> finite_labels) {
  int N = 1;
  for (int m : finite_labels) {
    if (m < 2) throw Error(ErrorKind::InvalidLabel, "label " + std::to_string(m) + " < 2");
    if (m > 2) N = std::lcm(N, m);
  }
  return for_conductor(N);
}

RationalInterval FieldContext::ladder(int level) const {
  if (level < 0 || level > kMaxLadderLevel) {
    throw Error(ErrorKind::Internal, "ladder level out of range");
  }
  std::lock_guard lock(ladder_mutex_);
  if (ladder_.empty()) {
    if (degree() == 1) {
      mpq_class c(-minpoly_[0]);
      ladder_.push_back({c, c});
    } else {
      mpq_class mid(c_double_);
      mpq_class eps = pow2(-50);
      RationalInterval iv{mid - eps, mid + eps};
      if (sgn(eval(minpoly_, iv.lo)) * sgn(eval(minpoly_, iv.hi)) >= 0) {
        throw Error(ErrorKind::Internal, "initial enclosure of 2cos(pi/N) not certified");
      }
      ladder_.push_back(iv);
    }
  }
  while (static_cast<int>(ladder_.size()) <= level) {
    RationalInterval iv = ladder_.back();
    if (degree() == 1) {
      ladder_.push_back(iv);
      continue;
    }
    const int bits = 50 << ladder_.size();
    const mpq_class target = pow2(-bits);
    int slo = sgn(eval(minpoly_, iv.lo));
    while (iv.hi - iv.lo > target) {
      mpq_class mid = (iv.lo + iv.hi) / 2;
      int sm = sgn(eval(minpoly_, mid));
      if (sm == 0) {
        iv.lo = iv.hi = mid;
        break;
      }
      if (sm == slo) {
        iv.lo = mid;
      } else {
        iv.hi = mid;
      }
    }
    ladder_.push_back(iv);
  }
  return ladder_[level];
}

const std::vector<mpq_class>& FieldContext::power_reduction(int k) const {
  // Only used for small k; computed on demand and cached per context.
  static std::mutex m;
  static std::map<std::pair<const FieldContext*, int>, std::vector<mpq_class>> cache;
  std::lock_guard lock(m);
  auto key = std::make_pair(this, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int d = degree();
  std::vector<mpq_class> v(std::max(k + 1, d), 0);
  v[k] = 1;
  for (int j = static_cast<int>(v.size()) - 1; j >= d; --j) {
    if (v[j] == 0) continue;
    mpq_class t = v[j];
    for (int i = 0; i <= d; ++i) v[j - d + i] -= t * minpoly_[i];
  }
  v.resize(d);
  return cache.emplace(key, std::move(v)).first->second;
}

namespace {
const FieldContext& rational_context() {
  static const FieldContext& q = FieldContext::for_conductor(1);
  return q;
}
}  // namespace

Scalar::Scalar(const FieldContext& ctx) : ctx_(&ctx), coeffs_(ctx.degree(), 0) {}

Scalar::Scalar(const FieldContext& ctx, const mpq_class& q) : Scalar(ctx) { coeffs_[0] = q; }

Scalar::Scalar(const FieldContext& ctx, long num, long den) : Scalar(ctx) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  coeffs_[0] = mpq_class(num, den);
  coeffs_[0].canonicalize();
}

const FieldContext& Scalar::context() const { return ctx_ ? *ctx_ : rational_context(); }

Scalar Scalar::generator(const FieldContext& ctx) {
  if (ctx.degree() == 1) return Scalar(ctx, mpq_class(-ctx.minpoly()[0]));
  Scalar s(ctx);
  s.coeffs_[1] = 1;
  return s;
}

Scalar Scalar::from_coefficients(const FieldContext& ctx, std::vector<mpq_class> coeffs) {
  // Reduce an arbitrary-degree polynomial in c modulo the minimal polynomial.
  const int d = ctx.degree();
  const auto& mp = ctx.minpoly();
  if (static_cast<int>(coeffs.size()) < d) coeffs.resize(d, 0);
  for (int j = static_cast<int>(coeffs.size()) - 1; j >= d; --j) {
    if (coeffs[j] == 0) continue;
    mpq_class t = coeffs[j];
    for (int i = 0; i <= d; ++i) coeffs[j - d + i] -= t * mp[i];
  }
  coeffs.resize(d);
  Scalar s;
  s.ctx_ = &ctx;
  s.coeffs_ = std::move(coeffs);
  return s;
}

Scalar Scalar::cos_pi_over(const FieldContext& ctx, int m) {
  if (m == 1) return Scalar(ctx, -1);
  if (m == 2) return Scalar(ctx, 0);
  if (m == 3) return Scalar(ctx, 1, 2);
  if (m < 1 || ctx.conductor() % m != 0) {
    throw Error(ErrorKind::OutOfField,
                "cos(pi/" + std::to_string(m) + ") not in Q(2cos(pi/" + std::to_string(ctx.conductor()) + "))");
  }
  // cos(pi/m) = D_{N/m}(c) / 2 with c = 2cos(pi/N)
  ZPoly d = chebyshev_d(ctx.conductor() / m);
  if (ctx.degree() == 1) {
    mpq_class c(-ctx.minpoly()[0]);
    return Scalar(ctx, eval(d, c) / 2);
  }
  std::vector<mpq_class> coeffs;
  coeffs.reserve(d.size());
  for (const auto& z : d) coeffs.emplace_back(mpq_class(z) / 2);
  return from_coefficients(ctx, std::move(coeffs));
}

void Scalar::align(const Scalar& o) {
  if (ctx_ == o.ctx_) return;
  const FieldContext& mine = context();
  const FieldContext& theirs = o.context();
  if (&mine == &theirs) {
    ctx_ = &mine;
    if (coeffs_.empty()) coeffs_.assign(mine.degree(), 0);
    return;
  }
  if (mine.is_rational()) {
    mpq_class q = coeffs_.empty() ? mpq_class(0) : coeffs_[0];
    ctx_ = &theirs;
    coeffs_.assign(theirs.degree(), 0);
    coeffs_[0] = q;
    return;
  }
  if (theirs.is_rational()) return;
  throw Error(ErrorKind::Internal, "mixing scalars from different fields");
}

bool Scalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& q) { return q == 0; });
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& q : r.coeffs_) q = -q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  align(o);
  if (coeffs_.empty()) coeffs_.assign(context().degree(), 0);
  if (o.context().is_rational() && !context().is_rational()) {
    if (!o.coeffs_.empty()) coeffs_[0] += o.coeffs_[0];
    return *this;
  }
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  align(o);
  if (coeffs_.empty()) coeffs_.assign(context().degree(), 0);
  if (o.context().is_rational() && !context().is_rational()) {
    if (!o.coeffs_.empty()) coeffs_[0] -= o.coeffs_[0];
    return *this;
  }
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  const FieldContext& ca = a.context();
  const FieldContext& cb = b.context();
  if (ca.is_rational() || cb.is_rational()) {
    const Scalar& r = ca.is_rational() ? a : b;
    const Scalar& other = ca.is_rational() ? b : a;
    Scalar out = other;
    if (out.coeffs_.empty()) out.coeffs_.assign(out.context().degree(), 0);
    mpq_class q = r.coeffs_.empty() ? mpq_class(0) : r.coeffs_[0];
    for (auto& c : out.coeffs_) c *= q;
    return out;
  }
  if (&ca != &cb) throw Error(ErrorKind::Internal, "mixing scalars from different fields");
  const int d = ca.degree();
  std::vector<mpq_class> prod(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Scalar::from_coefficients(ca, std::move(prod));
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const FieldContext& ctx = context();
  const int d = ctx.degree();
  if (d == 1) return Scalar(ctx, 1 / coeffs_[0]);
  // Solve M a = e_0 where column j of M is this * c^j.
  std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d + 1, 0));
  for (int j = 0; j < d; ++j) {
    Scalar e(ctx);
    e.coeffs_[j] = 1;
    Scalar col = *this * e;
    for (int i = 0; i < d; ++i) M[i][j] = col.coeffs_[i];
  }
  M[0][d] = 1;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r) {
      if (M[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw Error(ErrorKind::Internal, "singular multiplication matrix");
    std::swap(M[piv], M[col]);
    mpq_class p = M[col][col];
    for (int k = col; k <= d; ++k) M[col][k] /= p;
    for (int r = 0; r < d; ++r) {
      if (r == col || M[r][col] == 0) continue;
      mpq_class f = M[r][col];
      for (int k = col; k <= d; ++k) M[r][k] -= f * M[col][k];
    }
  }
  Scalar inv(ctx);
  for (int i = 0; i < d; ++i) inv.coeffs_[i] = M[i][d];
  return inv;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  *this = *this * o.inverse();
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

int Scalar::sign() const {
  if (is_zero()) return 0;
  const FieldContext& ctx = context();
  if (ctx.is_rational()) return sgn(coeffs_[0]);
  // Floating filter with a rigorous error bound, then the interval ladder.
  const double c = ctx.generator_value();
  double value = 0.0;
  double magnitude = 0.0;
  double power = 1.0;
  bool finite = true;
  for (const auto& q : coeffs_) {
    double a = q.get_d();
    if (!std::isfinite(a)) finite = false;
    value += a * power;
    magnitude += std::fabs(a) * power;
    power *= c;
  }
  if (finite && std::isfinite(value) && std::isfinite(magnitude) && magnitude > 1e-280) {
    const double bound = magnitude * (3.0 * coeffs_.size() + 8.0) * 2.3e-16;
    if (value > bound) return 1;
    if (value < -bound) return -1;
  }
  return sign_by_ladder();
}

int Scalar::sign_by_ladder() const {
  const FieldContext& ctx = context();
  for (int level = 0; level <= FieldContext::kMaxLadderLevel; ++level) {
    RationalInterval iv = ctx.ladder(level);
    // c > 0 whenever the degree exceeds one, so powers are monotone.
    mpq_class lo = 0, hi = 0;
    mpq_class plo = 1, phi = 1;
    for (const auto& a : coeffs_) {
      if (a >= 0) {
        lo += a * plo;
        hi += a * phi;
      } else {
        lo += a * phi;
        hi += a * plo;
      }
      plo *= iv.lo;
      phi *= iv.hi;
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  throw Error(ErrorKind::Internal, "sign undecided at maximal ladder precision for nonzero element");
}

int Scalar::compare(long num, long den) const {
  Scalar d = *this;
  if (d.coeffs_.empty()) d.coeffs_.assign(context().degree(), 0);
  d.coeffs_[0] -= mpq_class(num, den);
  return d.sign();
}

double Scalar::to_double() const {
  if (context().is_rational()) return coeffs_.empty() ? 0.0 : coeffs_[0].get_d();
  // Horner in exact rationals at a 100-bit enclosure of the generator, so
  // the only rounding is the final conversion.
  const mpq_class c = context().ladder(1).lo;
  mpq_class value = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * c + *it;
  return value.get_d();
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpq_class& q = coeffs_[i];
    if (q == 0) continue;
    mpq_class mag = abs(q);
    if (first) {
      if (q < 0) os << "-";
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "c";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::size_t Scalar::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& q : coeffs_) {
    std::size_t hn = mpz_get_si(q.get_num_mpz_t()) * 1000003ULL + mpz_get_si(q.get_den_mpz_t());
    h ^= hn + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace coxaut
