#include "belyi/complex.hpp"

namespace belyi {

Complex operator/(const Complex& a, const Complex& b) {
  // a * conj(b) / |b|^2. MPFR's exponent range makes the naive form safe.
  Real d = norm2(b);
  Real re = a.re() * b.re();
  re.add_mul(a.im(), b.im());
  Real im = a.im() * b.re();
  im.sub_mul(a.re(), b.im());
  return Complex(re / d, im / d);
}

}  // namespace belyi
