#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace belyi {

// Arbitrary-precision binary float. Thin RAII wrapper around mpfr_t with
// explicit precision everywhere; all operations round to nearest-even.
//
// Precision convention: the result of a binary operation carries
// max(prec(a), prec(b)) bits. Compound assignment keeps the precision of the
// left operand. Nothing in this class changes precision implicitly; use
// round_to() to move a value to a different working precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(const mpz_class& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }
  static Real from_double(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  // Parses a decimal string (as produced by to_decimal()).
  static Real from_decimal(const std::string& s, mpfr_prec_t prec);

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  Real round_to(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Nearest integer (ties to even).
  mpz_class to_mpz_nearest() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }

  // Exponent such that |x| < 2^exponent2 (0 for x == 0). Used for coarse
  // magnitude tests without leaving the integer domain.
  long exponent2() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  // Scientific-notation decimal string with the given number of significant
  // digits. Round-trips through from_decimal() exactly when digits is at
  // least ceil(prec * log10(2)) + 2.
  std::string to_decimal(size_t digits) const;

  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

#define BELYI_REAL_BINOP(op, fn)                            \
  friend Real operator op(const Real& a, const Real& b) {   \
    Real r(std::max(a.prec(), b.prec()));                   \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                        \
    return r;                                               \
  }                                                         \
  Real& operator op##=(const Real& b) {                     \
    fn(v_, v_, b.v_, MPFR_RNDN);                            \
    return *this;                                           \
  }
  BELYI_REAL_BINOP(+, mpfr_add)
  BELYI_REAL_BINOP(-, mpfr_sub)
  BELYI_REAL_BINOP(*, mpfr_mul)
  BELYI_REAL_BINOP(/, mpfr_div)
#undef BELYI_REAL_BINOP

  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator!=(const Real& a, const Real& b) { return !mpfr_equal_p(a.v_, b.v_); }

  // this += a * b, one rounding (fused multiply-add).
  void add_mul(const Real& a, const Real& b) { mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN); }
  // this -= a * b, one rounding.
  void sub_mul(const Real& a, const Real& b) {
    mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
    mpfr_neg(v_, v_, MPFR_RNDN);
  }
  // this *= 2^e (exact).
  void mul_2si(long e) { mpfr_mul_2si(v_, v_, e, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

inline Real abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real cos(const Real& a) {
  Real r(a.prec());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real sin(const Real& a) {
  Real r(a.prec());
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
// 2^e as a Real.
inline Real pow2(long e, mpfr_prec_t prec) {
  Real r(1L, prec);
  r.mul_2si(e);
  return r;
}

}  // namespace belyi
