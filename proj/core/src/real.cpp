#include "flutekit/real.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>

#include "flutekit/errors.hpp"

namespace flutekit {

namespace {

std::once_flag g_mpfr_init_flag;

void widen_exponent_range() {
  // Lengths like e^n produce intermediates with enormous binary exponents;
  // run MPFR at its full exponent range so only the mantissa width is a
  // user-visible knob.
  mpfr_set_emin(mpfr_get_emin_min());
  mpfr_set_emax(mpfr_get_emax_max());
}

thread_local Precision t_working_precision = 0;

Precision& working_precision_slot() {
  if (t_working_precision == 0) {
    std::call_once(g_mpfr_init_flag, widen_exponent_range);
    t_working_precision = kDefaultPrecision;
  }
  return t_working_precision;
}

}  // namespace

Precision working_precision() { return working_precision_slot(); }

void set_working_precision(Precision bits) {
  if (bits < kMinPrecision) {
    throw InputError("working precision must be at least " + std::to_string(kMinPrecision) +
                     " bits, got " + std::to_string(bits));
  }
  if (bits > (Precision{1} << 24)) {
    throw InputError("working precision unreasonably large: " + std::to_string(bits));
  }
  working_precision_slot() = bits;
}

PrecisionScope::PrecisionScope(Precision bits) : saved_(working_precision()) {
  set_working_precision(bits);
}

PrecisionScope::~PrecisionScope() { working_precision_slot() = saved_; }

Guarded::Guarded(Precision extra_bits) : outer_(working_precision()), scope_(outer_ + extra_bits) {}

Real::Real() {
  mpfr_init2(m_, working_precision());
  mpfr_set_zero(m_, 1);
}

Real::Real(double v) {
  mpfr_init2(m_, working_precision());
  mpfr_set_d(m_, v, MPFR_RNDN);
}

Real::Real(long v) {
  mpfr_init2(m_, working_precision());
  mpfr_set_si(m_, v, MPFR_RNDN);
}

Real::Real(unsigned long v) {
  mpfr_init2(m_, working_precision());
  mpfr_set_ui(m_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(m_, mpfr_get_prec(other.m_));
  mpfr_set(m_, other.m_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(m_, MPFR_PREC_MIN);
  mpfr_swap(m_, other.m_);
}

Real::Real(const Real& other, Precision bits) {
  mpfr_init2(m_, bits);
  mpfr_set(m_, other.m_, MPFR_RNDN);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(m_, mpfr_get_prec(other.m_));
    mpfr_set(m_, other.m_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(m_, other.m_);
  return *this;
}

Real::~Real() { mpfr_clear(m_); }

Real Real::from_string(const std::string& decimal) {
  Real r;
  if (mpfr_set_str(r.m_, decimal.c_str(), 10, MPFR_RNDN) != 0 && !r.is_finite()) {
    throw InputError("cannot parse real literal: " + decimal);
  }
  return r;
}

std::string Real::str(int significant_digits) const {
  if (significant_digits <= 0) {
    significant_digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 3;
  }
  char* out = nullptr;
  mpfr_asprintf(&out, "%.*Rg", significant_digits, m_);
  std::string s(out);
  mpfr_free_str(out);
  return s;
}

Real Real::operator-() const {
  Real r;
  mpfr_neg(r.m_, m_, MPFR_RNDN);
  return r;
}

#define FLUTEKIT_COMPOUND(op, fn)                  \
  Real& Real::operator op(const Real& rhs) {      \
    fn(m_, m_, rhs.m_, MPFR_RNDN);                \
    return *this;                                 \
  }
FLUTEKIT_COMPOUND(+=, mpfr_add)
FLUTEKIT_COMPOUND(-=, mpfr_sub)
FLUTEKIT_COMPOUND(*=, mpfr_mul)
FLUTEKIT_COMPOUND(/=, mpfr_div)
#undef FLUTEKIT_COMPOUND

#define FLUTEKIT_BINOP(op, fn)                    \
  Real operator op(const Real& a, const Real& b) {\
    Real r;                                       \
    fn(r.m_, a.m_, b.m_, MPFR_RNDN);              \
    return r;                                     \
  }
FLUTEKIT_BINOP(+, mpfr_add)
FLUTEKIT_BINOP(-, mpfr_sub)
FLUTEKIT_BINOP(*, mpfr_mul)
FLUTEKIT_BINOP(/, mpfr_div)
#undef FLUTEKIT_BINOP

#define FLUTEKIT_UNARY(name, fn)  \
  Real name(const Real& x) {      \
    Real r;                       \
    fn(r.raw(), x.raw(), MPFR_RNDN); \
    return r;                     \
  }
FLUTEKIT_UNARY(abs, mpfr_abs)
FLUTEKIT_UNARY(sqrt, mpfr_sqrt)
FLUTEKIT_UNARY(exp, mpfr_exp)
FLUTEKIT_UNARY(expm1, mpfr_expm1)
FLUTEKIT_UNARY(log, mpfr_log)
FLUTEKIT_UNARY(log1p, mpfr_log1p)
FLUTEKIT_UNARY(sinh, mpfr_sinh)
FLUTEKIT_UNARY(cosh, mpfr_cosh)
FLUTEKIT_UNARY(tanh, mpfr_tanh)
FLUTEKIT_UNARY(coth, mpfr_coth)
FLUTEKIT_UNARY(asinh, mpfr_asinh)
FLUTEKIT_UNARY(acosh, mpfr_acosh)
FLUTEKIT_UNARY(atanh, mpfr_atanh)
#undef FLUTEKIT_UNARY

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real ldexp2(const Real& x, long e) {
  Real r(x);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

Real ulp_of(const Real& x, Precision bits) {
  if (!x.is_finite() || x.is_zero()) {
    throw DomainError("ulp_of requires a finite nonzero value");
  }
  Real one(1.0);
  return ldexp2(one, static_cast<long>(x.exponent()) - static_cast<long>(bits));
}

double ulp_distance(const Real& a, const Real& b, Precision bits) {
  Real diff = abs(a - b);
  if (diff.is_zero()) return 0.0;
  const Real& ref = (abs(a) >= abs(b)) ? a : b;
  if (ref.is_zero()) return std::numeric_limits<double>::infinity();
  return (diff / ulp_of(ref, bits)).to_double();
}

Real log_coth(const Real& x) {
  if (!(x > Real(0.0))) throw DomainError("log_coth requires x > 0");
  Guarded g;
  // coth x = 1 + 2/(e^{2x} - 1); the log1p/expm1 form has full relative
  // accuracy both as x -> 0 (value ~ log(1/x)) and x -> inf (value ~ 2e^{-2x}).
  Real t = expm1(ldexp2(x, 1));
  if (t.is_inf()) {
    // e^{2x} overflows the exponent range; the true value underflows to 0.
    throw PrecisionError("log_coth underflows the exponent range for x = " + x.str(8) +
                         "; the orthogeodesic is indistinguishable from zero");
  }
  return g.finish(log1p(Real(2.0) / t));
}

Real log_sinh(const Real& x) {
  if (!(x > Real(0.0))) throw DomainError("log_sinh requires x > 0");
  Guarded g;
  if (x > Real(1.0)) {
    // log sinh x = x - log 2 + log1p(-e^{-2x})
    Real r = x - log(Real(2.0)) + log1p(-exp(ldexp2(-x, 1)));
    return g.finish(r);
  }
  return g.finish(log(sinh(x)));
}

}  // namespace flutekit
