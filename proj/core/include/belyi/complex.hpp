#pragma once

#include "belyi/real.hpp"

namespace belyi {

// Complex number with Real components. The environment ships GMP and MPFR
// but no MPC, so the handful of complex operations the pipeline needs are
// implemented here directly.
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(long re, mpfr_prec_t prec) : re_(re, prec), im_(0L, prec) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(0L, re_.prec()) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }

  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
  Complex round_to(mpfr_prec_t prec) const {
    return Complex(re_.round_to(prec), im_.round_to(prec));
  }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  Complex conj() const { return Complex(re_, -im_); }

  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }
  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    Real re = a.re_ * b.re_;
    re.sub_mul(a.im_, b.im_);
    Real im = a.re_ * b.im_;
    im.add_mul(a.im_, b.re_);
    return Complex(std::move(re), std::move(im));
  }
  friend Complex operator*(const Complex& a, const Real& b) {
    return Complex(a.re_ * b, a.im_ * b);
  }
  friend Complex operator/(const Complex& a, const Complex& b);

  Complex& operator+=(const Complex& b) {
    re_ += b.re_;
    im_ += b.im_;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re_ -= b.re_;
    im_ -= b.im_;
    return *this;
  }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }

  // this += a * b without temporaries; the workhorse of polynomial products.
  void add_mul(const Complex& a, const Complex& b) {
    re_.add_mul(a.re_, b.re_);
    re_.sub_mul(a.im_, b.im_);
    im_.add_mul(a.re_, b.im_);
    im_.add_mul(a.im_, b.re_);
  }
  void sub_mul(const Complex& a, const Complex& b) {
    re_.sub_mul(a.re_, b.re_);
    re_.add_mul(a.im_, b.im_);
    im_.sub_mul(a.re_, b.im_);
    im_.sub_mul(a.im_, b.re_);
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_, im_;
};

inline Real abs(const Complex& a) { return hypot(a.re(), a.im()); }
// |a|^2, cheaper than abs() when only comparisons are needed.
inline Real norm2(const Complex& a) {
  Real r = a.re() * a.re();
  r.add_mul(a.im(), a.im());
  return r;
}
// e^(i*theta) at the precision of theta.
inline Complex unit_circle(const Real& theta) { return Complex(cos(theta), sin(theta)); }

}  // namespace belyi
