#include "belyi/lattice.hpp"

#include <algorithm>

#include "belyi/errors.hpp"

namespace belyi {

namespace {

mpz_class dot_z(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

void row_submul(std::vector<mpz_class>& r, const mpz_class& q,
                const std::vector<mpz_class>& s) {
  for (size_t i = 0; i < r.size(); ++i)
    mpz_submul(r[i].get_mpz_t(), q.get_mpz_t(), s[i].get_mpz_t());
}

long max_entry_bits(const ZMat& b) {
  size_t bits = 1;
  for (const auto& row : b)
    for (const auto& e : row)
      if (e != 0) bits = std::max(bits, mpz_sizeinbase(e.get_mpz_t(), 2));
  return static_cast<long>(bits);
}

// Floating-point pre-pass: exact unimodular row operations steered by an
// MPFR Gram-Schmidt. Drift is harmless; the exact pass that follows is the
// authority. Swap updates use the standard O(n) mu/B recurrences.
void fp_prepass(ZMat& b, ZMat& u, double delta_d) {
  const size_t n = b.size();
  if (n < 2) return;
  const size_t m = b[0].size();
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(std::min<long>(max_entry_bits(b) + 128, 1L << 22));

  std::vector<std::vector<Real>> mu(n);
  std::vector<Real> B(n, Real(prec));
  {
    std::vector<std::vector<Real>> bs(n, std::vector<Real>(m, Real(prec)));
    for (size_t i = 0; i < n; ++i) {
      mu[i].assign(i, Real(prec));
      for (size_t c = 0; c < m; ++c) bs[i][c] = Real(b[i][c], prec);
      for (size_t j = 0; j < i; ++j) {
        Real d(0L, prec);
        for (size_t c = 0; c < m; ++c) d.add_mul(Real(b[i][c], prec), bs[j][c]);
        if (B[j].is_zero()) return;
        mu[i][j] = d / B[j];
        for (size_t c = 0; c < m; ++c) bs[i][c].sub_mul(mu[i][j], bs[j][c]);
      }
      Real nn(0L, prec);
      for (size_t c = 0; c < m; ++c) nn.add_mul(bs[i][c], bs[i][c]);
      B[i] = nn;
      if (B[i].is_zero()) return;
    }
  }
  const Real delta = Real::from_double(delta_d, prec);

  long guard = static_cast<long>(16 * n * n + 64);
  size_t k = 1;
  while (k < n && guard-- > 0) {
    for (size_t j = k; j-- > 0;) {
      mpz_class q = mu[k][j].to_mpz_nearest();
      if (q != 0) {
        row_submul(b[k], q, b[j]);
        row_submul(u[k], q, u[j]);
        Real qr(q, prec);
        for (size_t i = 0; i < j; ++i) mu[k][i] -= qr * mu[j][i];
        mu[k][j] -= qr;
      }
    }
    Real rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (B[k] < rhs) {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      for (size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      Real nu = mu[k][k - 1];
      Real Bp = B[k];
      Bp.add_mul(nu * nu, B[k - 1]);
      if (Bp.is_zero()) return;
      Real mu_new = nu * B[k - 1] / Bp;
      B[k] = B[k - 1] * B[k] / Bp;
      B[k - 1] = Bp;
      mu[k][k - 1] = mu_new;
      for (size_t i = k + 1; i < n; ++i) {
        Real t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - nu * t;
        mu[i][k - 1] = t + mu_new * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
}

// Exact integer-arithmetic LLL on Gram determinants d_i and scaled
// Gram-Schmidt coefficients lambda_{i,j} = d_j * mu_{i,j}; every division
// below is exact by construction.
class IntegralLLL {
 public:
  IntegralLLL(ZMat& b, ZMat& u, const mpq_class& delta)
      : b_(b), u_(u), n_(b.size()), dp_(delta.get_num()), dq_(delta.get_den()) {
    d_.assign(n_, mpz_class(0));
    lam_.assign(n_, std::vector<mpz_class>(n_, mpz_class(0)));
  }

  void run() {
    if (n_ == 0) return;
    d_[0] = dot_z(b_[0], b_[0]);
    if (d_[0] == 0) throw InputError("lll_reduce: dependent (or zero) rows");
    kmax_ = 0;
    size_t k = 1;
    while (k < n_) {
      if (k > kmax_) {
        kmax_ = k;
        gso_row(k);
      }
      redi(k, k - 1);
      mpz_class lhs = d_[k] * dd(static_cast<long>(k) - 2) + lam_[k][k - 1] * lam_[k][k - 1];
      lhs *= dq_;
      mpz_class rhs = dp_ * d_[k - 1] * d_[k - 1];
      if (lhs < rhs) {
        swapi(k);
        if (k > 1) --k;
      } else {
        for (size_t l = k - 1; l-- > 0;) redi(k, l);
        ++k;
      }
    }
  }

 private:
  const mpz_class& dd(long i) const { return i < 0 ? one_ : d_[static_cast<size_t>(i)]; }

  void gso_row(size_t k) {
    for (size_t j = 0; j <= k; ++j) {
      mpz_class t = dot_z(b_[k], b_[j]);
      for (size_t i = 0; i < j; ++i) {
        t = d_[i] * t - lam_[k][i] * lam_[j][i];
        if (i > 0) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), d_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lam_[k][j] = t;
      } else {
        if (t == 0) throw InputError("lll_reduce: dependent rows");
        d_[k] = t;
      }
    }
  }

  void redi(size_t k, size_t l) {
    mpz_class two_lam = 2 * lam_[k][l];
    if (mpz_cmpabs(two_lam.get_mpz_t(), d_[l].get_mpz_t()) > 0) {
      mpz_class q, den = 2 * d_[l];
      two_lam += d_[l];
      mpz_fdiv_q(q.get_mpz_t(), two_lam.get_mpz_t(), den.get_mpz_t());
      row_submul(b_[k], q, b_[l]);
      row_submul(u_[k], q, u_[l]);
      lam_[k][l] -= q * d_[l];
      for (size_t i = 0; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
    }
  }

  void swapi(size_t k) {
    std::swap(b_[k], b_[k - 1]);
    std::swap(u_[k], u_[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    mpz_class lamv = lam_[k][k - 1];
    mpz_class Bn = d_[k] * dd(static_cast<long>(k) - 2) + lamv * lamv;
    mpz_divexact(Bn.get_mpz_t(), Bn.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (size_t i = k + 1; i <= kmax_; ++i) {
      mpz_class t = lam_[i][k];
      lam_[i][k] = d_[k] * lam_[i][k - 1] - lamv * t;
      mpz_divexact(lam_[i][k].get_mpz_t(), lam_[i][k].get_mpz_t(), d_[k - 1].get_mpz_t());
      lam_[i][k - 1] = Bn * t + lamv * lam_[i][k];
      mpz_divexact(lam_[i][k - 1].get_mpz_t(), lam_[i][k - 1].get_mpz_t(), d_[k].get_mpz_t());
    }
    d_[k - 1] = Bn;
  }

  ZMat& b_;
  ZMat& u_;
  size_t n_, kmax_ = 0;
  mpz_class dp_, dq_;
  std::vector<mpz_class> d_;
  ZMat lam_;
  const mpz_class one_ = 1;
};

}  // namespace

LLLResult lll_reduce(const ZMat& basis, const mpq_class& delta) {
  const size_t n = basis.size();
  LLLResult out;
  out.basis = basis;
  out.transform.assign(n, std::vector<mpz_class>(n, mpz_class(0)));
  for (size_t i = 0; i < n; ++i) out.transform[i][i] = 1;
  if (n == 0) return out;
  const size_t m = basis[0].size();
  for (const auto& row : basis)
    if (row.size() != m) throw InputError("lll_reduce: ragged rows");
  if (delta <= mpq_class(1, 4) || delta > 1)
    throw InputError("lll_reduce: delta must lie in (1/4, 1]");

  fp_prepass(out.basis, out.transform, delta.get_d());
  IntegralLLL(out.basis, out.transform, delta).run();
  return out;
}

bool lll_check_reduced(const ZMat& b, const mpq_class& delta) {
  const size_t n = b.size();
  if (n == 0) return true;
  const size_t m = b[0].size();
  std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(m));
  std::vector<std::vector<mpq_class>> mu(n);
  std::vector<mpq_class> B(n);
  for (size_t i = 0; i < n; ++i) {
    mu[i].assign(i, mpq_class(0));
    for (size_t c = 0; c < m; ++c) bs[i][c] = mpq_class(b[i][c]);
    for (size_t j = 0; j < i; ++j) {
      mpq_class d(0);
      for (size_t c = 0; c < m; ++c) d += mpq_class(b[i][c]) * bs[j][c];
      mu[i][j] = d / B[j];
      for (size_t c = 0; c < m; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
    }
    mpq_class nn(0);
    for (size_t c = 0; c < m; ++c) nn += bs[i][c] * bs[i][c];
    if (nn == 0) return false;
    B[i] = nn;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j)
      if (cmp(abs(mu[i][j] * 2), 1) > 0) return false;
  for (size_t k = 1; k < n; ++k)
    if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) return false;
  return true;
}

std::optional<std::vector<mpz_class>> integer_relation(const std::vector<Complex>& vals,
                                                       mpfr_prec_t prec,
                                                       long* certified_bits,
                                                       const mpq_class& delta) {
  const size_t n = vals.size();
  if (n < 2) return std::nullopt;
  const long shift = static_cast<long>(prec) - 16;
  if (shift < 48) throw InputError("integer_relation: precision too small");

  ZMat rows(n, std::vector<mpz_class>(n + 2, mpz_class(0)));
  Real vmax(1L, prec);
  for (size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    Real re = vals[i].re().round_to(prec);
    Real im = vals[i].im().round_to(prec);
    re.mul_2si(shift);
    im.mul_2si(shift);
    rows[i][n] = re.to_mpz_nearest();
    rows[i][n + 1] = im.to_mpz_nearest();
    Real a = abs(vals[i].round_to(prec));
    if (a > vmax) vmax = a;
  }

  LLLResult red = lll_reduce(rows, delta);
  const Real margin = pow2(-(static_cast<long>(prec) / 2), prec);
  const Real one(1L, prec);

  std::optional<std::vector<mpz_class>> best;
  mpz_class best_height;
  long best_bits = 0;
  for (const auto& row : red.basis) {
    std::vector<mpz_class> c(row.begin(), row.begin() + static_cast<long>(n));
    mpz_class height = 0;
    for (const auto& ci : c)
      if (mpz_cmpabs(ci.get_mpz_t(), height.get_mpz_t()) > 0)
        height = ci < 0 ? mpz_class(-ci) : ci;
    if (height == 0) continue;
    Complex s(prec);
    for (size_t i = 0; i < n; ++i)
      s.add_mul(Complex(Real(c[i], prec)), vals[i].round_to(prec));
    Real rel = abs(s) / ((one + vmax) * (one + Real(height, prec)));
    if (rel < margin) {
      long bits = rel.is_zero() ? static_cast<long>(prec) : -rel.exponent2();
      if (!best || height < best_height) {
        best = std::move(c);
        best_height = height;
        best_bits = bits;
      }
    }
  }
  if (best && certified_bits) *certified_bits = best_bits;
  return best;
}

namespace {

std::vector<Complex> power_list(const Complex& alpha, int count, mpfr_prec_t prec) {
  std::vector<Complex> vals;
  vals.reserve(static_cast<size_t>(count));
  Complex a = alpha.round_to(prec);
  Complex p(Real(1L, prec));
  for (int i = 0; i < count; ++i) {
    vals.push_back(p);
    p = p * a;
  }
  return vals;
}

std::optional<ZPoly> algdep_once(const Complex& alpha, int degree, mpfr_prec_t prec,
                                 long* bits, const mpq_class& delta) {
  auto rel = integer_relation(power_list(alpha, degree + 1, prec), prec, bits, delta);
  if (!rel) return std::nullopt;
  ZPoly poly = *rel;
  zpoly_trim(poly);
  if (zpoly_degree(poly) < 1) return std::nullopt;
  poly = zpoly_primitive(poly);
  if (poly.back() < 0)
    for (auto& c : poly) c = -c;
  return poly;
}

}  // namespace

std::optional<AlgdepResult> algdep(const Complex& alpha, int max_degree, mpfr_prec_t prec,
                                   const mpq_class& delta) {
  if (max_degree < 1) throw InputError("algdep: max_degree must be >= 1");
  for (int d = 1; d <= max_degree; ++d) {
    long bits = 0;
    auto p1 = algdep_once(alpha, d, prec, &bits, delta);
    if (!p1) continue;
    // Stability cross-check: a genuine relation reappears identically at
    // three-quarter precision; numerical coincidences do not.
    auto p2 = algdep_once(alpha, d, static_cast<mpfr_prec_t>(3 * static_cast<long>(prec) / 4),
                          nullptr, delta);
    if (!p2 || *p1 != *p2) continue;
    if (!zpoly_squarefree(*p1)) continue;
    return AlgdepResult{std::move(*p1), bits};
  }
  return std::nullopt;
}

std::optional<FieldMembership> field_membership(const Complex& beta, const Complex& alpha,
                                                int field_degree, mpfr_prec_t prec,
                                                const mpq_class& delta) {
  if (field_degree < 1) throw InputError("field_membership: degree must be >= 1");
  std::vector<Complex> vals = power_list(alpha, field_degree, prec);
  vals.push_back(beta.round_to(prec));
  long bits = 0;
  auto rel = integer_relation(vals, prec, &bits, delta);
  if (!rel) return std::nullopt;
  const mpz_class& cm = (*rel)[static_cast<size_t>(field_degree)];
  if (cm == 0) return std::nullopt;
  FieldMembership out;
  out.certified_bits = bits;
  out.coords.reserve(static_cast<size_t>(field_degree));
  for (int i = 0; i < field_degree; ++i) {
    mpq_class q(-(*rel)[static_cast<size_t>(i)], cm);
    q.canonicalize();
    out.coords.push_back(q);
  }
  return out;
}

}  // namespace belyi
