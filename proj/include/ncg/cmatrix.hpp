#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ncg/error.hpp"

namespace ncg {

using Complex = std::complex<double>;

/// Absolute/relative tolerance pair used throughout the library.
struct Tolerance {
  double abs_eps = 1e-10;
  double rel_eps = 1e-8;
};

/// Dense complex matrix, row-major storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(Complex s);

  CMatrix adjoint() const;    // conjugate transpose
  CMatrix transpose() const;  // transpose without conjugation
  CMatrix conjugate() const;  // entrywise conjugate

  Complex trace() const;
  double max_abs() const;     // entrywise max modulus
  bool all_finite() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(double s, CMatrix a);
std::vector<Complex> operator*(const CMatrix& a, const std::vector<Complex>& v);

/// Kronecker product with row-major index convention
/// (A otimes B)[(i,k),(j,l)] = A(i,j) B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix commutator(const CMatrix& a, const CMatrix& b);      // ab - ba
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);  // ab + ba

double max_abs_diff(const CMatrix& a, const CMatrix& b);
double hermiticity_residual(const CMatrix& m);       // |M - M*|_max
double anti_hermiticity_residual(const CMatrix& m);  // |M + M*|_max
double skew_residual(const CMatrix& m);              // |M + M^T|_max
double unitarity_residual(const CMatrix& m);         // |M M* - I|_max

}  // namespace ncg
