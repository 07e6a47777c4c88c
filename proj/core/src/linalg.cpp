#include "belyi/linalg.hpp"

#include "belyi/errors.hpp"

namespace belyi {

std::vector<Complex> lu_solve(const CMatrix& A0, const std::vector<Complex>& b0,
                              mpfr_prec_t prec, std::vector<Real>* pivots) {
  if (pivots) pivots->clear();
  const size_t n = A0.rows();
  if (A0.cols() != n || b0.size() != n)
    throw InputError("lu_solve: dimension mismatch");

  CMatrix A(n, n, prec);
  std::vector<Complex> b(n, Complex(prec));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) A.at(i, j) = A0.at(i, j).round_to(prec);
    b[i] = b0[i].round_to(prec);
  }
  std::vector<size_t> row(n);
  for (size_t i = 0; i < n; ++i) row[i] = i;

  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    Real best = norm2(A.at(row[k], k));
    for (size_t i = k + 1; i < n; ++i) {
      Real cand = norm2(A.at(row[i], k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best.is_zero()) throw SolveError("lu_solve: singular matrix");
    std::swap(row[k], row[piv]);
    if (pivots) pivots->push_back(sqrt(best));

    const Complex& pivot = A.at(row[k], k);
    for (size_t i = k + 1; i < n; ++i) {
      Complex m = A.at(row[i], k) / pivot;
      if (m.is_zero()) continue;
      for (size_t j = k + 1; j < n; ++j) A.at(row[i], j).sub_mul(m, A.at(row[k], j));
      b[row[i]].sub_mul(m, b[row[k]]);
    }
  }

  std::vector<Complex> x(n, Complex(prec));
  for (size_t k = n; k-- > 0;) {
    Complex s = b[row[k]];
    for (size_t j = k + 1; j < n; ++j) s.sub_mul(A.at(row[k], j), x[j]);
    x[k] = s / A.at(row[k], k);
  }
  return x;
}

std::vector<Complex> qr_least_squares(const CMatrix& A0, const std::vector<Complex>& b0,
                                      mpfr_prec_t prec, std::vector<Real>* rdiag) {
  const size_t m = A0.rows(), n = A0.cols();
  if (m < n || b0.size() != m) throw InputError("qr_least_squares: dimension mismatch");

  CMatrix A(m, n, prec);
  std::vector<Complex> b(m, Complex(prec));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) A.at(i, j) = A0.at(i, j).round_to(prec);
    b[i] = b0[i].round_to(prec);
  }

  std::vector<Complex> v(m, Complex(prec));
  for (size_t k = 0; k < n; ++k) {
    // Householder reflection clearing column k below the diagonal.
    Real nrm2(0L, prec);
    for (size_t i = k; i < m; ++i) nrm2 += norm2(A.at(i, k));
    if (nrm2.is_zero()) throw SolveError("qr_least_squares: rank-deficient column");
    Real alpha = sqrt(nrm2);

    // v = x + phase(x_k) * alpha * e_k, where phase(0) = 1.
    for (size_t i = k; i < m; ++i) v[i] = A.at(i, k);
    Real xk_abs = abs(v[k]);
    Complex phase = xk_abs.is_zero() ? Complex(1L, prec) : v[k] * Complex(Real(1L, prec) / xk_abs);
    v[k] += phase * alpha;

    Real vnorm2(0L, prec);
    for (size_t i = k; i < m; ++i) vnorm2 += norm2(v[i]);
    if (vnorm2.is_zero()) continue;

    auto reflect = [&](auto&& get, auto&& set) {
      Complex dot(prec);  // v* . column
      for (size_t i = k; i < m; ++i) dot.add_mul(v[i].conj(), get(i));
      Complex scale = dot * (Real(2L, prec) / vnorm2);
      for (size_t i = k; i < m; ++i) {
        Complex c = get(i);
        c.sub_mul(scale, v[i]);
        set(i, c);
      }
    };
    for (size_t j = k; j < n; ++j)
      reflect([&](size_t i) { return A.at(i, j); },
              [&](size_t i, const Complex& c) { A.at(i, j) = c; });
    reflect([&](size_t i) { return b[i]; }, [&](size_t i, const Complex& c) { b[i] = c; });
  }

  if (rdiag) {
    rdiag->clear();
    for (size_t k = 0; k < n; ++k) rdiag->push_back(abs(A.at(k, k)));
  }

  std::vector<Complex> x(n, Complex(prec));
  for (size_t k = n; k-- > 0;) {
    Complex s = b[k];
    for (size_t j = k + 1; j < n; ++j) s.sub_mul(A.at(k, j), x[j]);
    if (norm2(A.at(k, k)).is_zero())
      throw SolveError("qr_least_squares: zero diagonal in R");
    x[k] = s / A.at(k, k);
  }
  return x;
}

}  // namespace belyi
