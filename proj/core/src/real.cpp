#include "belyi/real.hpp"

#include <cstdio>
#include <vector>

#include "belyi/errors.hpp"

namespace belyi {

std::string Real::to_decimal(size_t digits) const {
  if (digits < 2) digits = 2;
  std::vector<char> buf(digits + 48);
  // %Re prints one digit before the point, so significant digits = n + 1.
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits - 1), v_);
  return std::string(buf.data());
}

Real Real::from_decimal(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0')
    throw InputError("invalid decimal number: '" + s + "'");
  return r;
}

}  // namespace belyi
