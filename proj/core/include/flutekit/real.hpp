#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

namespace flutekit {

using Precision = mpfr_prec_t;

inline constexpr Precision kMinPrecision = 64;
inline constexpr Precision kDefaultPrecision = 256;

// Working precision is thread-local: every freshly produced Real carries the
// precision that is active on the calling thread.  Values of any precision
// may be mixed freely as operands.
Precision working_precision();
void set_working_precision(Precision bits);

// RAII guard that raises (or lowers) the working precision for a scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(Precision bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Precision saved_;
};

// Radix-2 floating-point value of configurable mantissa width, backed by
// MPFR.  Every elementary operation and transcendental function is
// correctly rounded (round-to-nearest) at the working precision, so each
// step contributes at most 1/2 ulp of relative error.
class Real {
 public:
  Real();  // zero at working precision
  Real(double v);       // NOLINT: implicit by design, exact
  Real(long v);         // NOLINT: implicit, exact
  Real(int v) : Real(static_cast<long>(v)) {}
  Real(unsigned long v);  // NOLINT
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Value of `other` re-rounded to `bits` of mantissa.
  Real(const Real& other, Precision bits);

  static Real from_string(const std::string& decimal);

  Precision precision() const { return mpfr_get_prec(m_); }
  double to_double() const { return mpfr_get_d(m_, MPFR_RNDN); }
  std::string str(int significant_digits = 0) const;

  bool is_nan() const { return mpfr_nan_p(m_) != 0; }
  bool is_inf() const { return mpfr_inf_p(m_) != 0; }
  bool is_finite() const { return mpfr_number_p(m_) != 0; }
  bool is_zero() const { return mpfr_zero_p(m_) != 0; }
  int sign() const { return mpfr_sgn(m_); }

  // Binary exponent e with |x| in [2^(e-1), 2^e); only valid for finite
  // nonzero values.
  mpfr_exp_t exponent() const { return mpfr_get_exp(m_); }

  mpfr_srcptr raw() const { return m_; }
  mpfr_ptr raw() { return m_; }

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.m_, b.m_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_lessgreater_p(a.m_, b.m_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.m_, b.m_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.m_, b.m_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.m_, b.m_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.m_, b.m_) != 0; }

 private:
  mpfr_t m_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real hypot(const Real& x, const Real& y);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real coth(const Real& x);
Real asinh(const Real& x);
Real acosh(const Real& x);
Real atanh(const Real& x);
Real pow(const Real& x, const Real& y);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

// x * 2^e, exact.
Real ldexp2(const Real& x, long e);

// Re-round to the given mantissa width.
inline Real round_to(const Real& x, Precision bits) { return Real(x, bits); }

// One unit in the last place of x at precision `bits` (uses |x|'s binary
// exponent); x must be finite and nonzero.
Real ulp_of(const Real& x, Precision bits);

// |a - b| measured in ulps of the larger magnitude at precision `bits`.
double ulp_distance(const Real& a, const Real& b, Precision bits);

// Helper for kernels that want guard bits: raises the working precision on
// construction, and finish() rounds a result back to the outer precision.
class Guarded {
 public:
  explicit Guarded(Precision extra_bits = 64);
  Real finish(const Real& v) const { return Real(v, outer_); }
  Precision outer() const { return outer_; }

 private:
  Precision outer_;
  PrecisionScope scope_;
};

// Numerically stable log-domain kernels (all arguments > 0):
//   log_coth(x) = log(coth x) = log1p(2 / expm1(2x))
//   log_sinh(x) = log(sinh x), evaluated without forming e^x for large x.
Real log_coth(const Real& x);
Real log_sinh(const Real& x);

}  // namespace flutekit
