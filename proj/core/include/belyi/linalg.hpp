#pragma once

#include <vector>

#include "belyi/poly.hpp"

namespace belyi {

// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(size_t rows, size_t cols, mpfr_prec_t prec)
      : rows_(rows), cols_(cols), a_(rows * cols, Complex(prec)) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Complex& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Complex& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

 private:
  size_t rows_, cols_;
  std::vector<Complex> a_;
};

// Solves the square system A x = b by LU decomposition with partial
// pivoting. Throws SolveError if a pivot vanishes. When pivots is non-null
// it receives the pivot magnitudes in elimination order.
std::vector<Complex> lu_solve(const CMatrix& A, const std::vector<Complex>& b,
                              mpfr_prec_t prec, std::vector<Real>* pivots = nullptr);

// Least-squares solution of an overdetermined system (rows >= cols) by
// Householder QR. Rank-deficient trailing columns trigger SolveError.
// When rdiag is non-null it receives |R_kk| for condition/rank estimates.
std::vector<Complex> qr_least_squares(const CMatrix& A, const std::vector<Complex>& b,
                                      mpfr_prec_t prec,
                                      std::vector<Real>* rdiag = nullptr);

}  // namespace belyi
