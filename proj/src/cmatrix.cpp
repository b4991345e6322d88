#include "ncg/cmatrix.hpp"

#include <algorithm>
#include <cmath>

namespace ncg {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    raise(ErrorCode::DimensionMismatch, std::string("shape mismatch in ") + op);
  }
}

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conjugate() const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = std::conj(data_[i]);
  return r;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::all_finite() const {
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

CMatrix operator+(CMatrix a, const CMatrix& b) {
  a += b;
  return a;
}

CMatrix operator-(CMatrix a, const CMatrix& b) {
  a -= b;
  return a;
}

CMatrix operator-(CMatrix a) {
  a *= Complex(-1.0, 0.0);
  return a;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) raise(ErrorCode::DimensionMismatch, "matmul shape mismatch");
  CMatrix r(a.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a(i, p);
      if (aip == Complex(0.0, 0.0)) continue;
      const Complex* brow = &b.data()[p * m];
      Complex* rrow = &r.data()[i * m];
      for (std::size_t j = 0; j < m; ++j) rrow[j] += aip * brow[j];
    }
  }
  return r;
}

CMatrix operator*(Complex s, CMatrix a) {
  a *= s;
  return a;
}

CMatrix operator*(double s, CMatrix a) {
  a *= Complex(s, 0.0);
  return a;
}

std::vector<Complex> operator*(const CMatrix& a, const std::vector<Complex>& v) {
  if (a.cols() != v.size()) raise(ErrorCode::DimensionMismatch, "matvec shape mismatch");
  std::vector<Complex> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    const Complex* arow = &a.data()[i * a.cols()];
    for (std::size_t j = 0; j < a.cols(); ++j) s += arow[j] * v[j];
    r[i] = s;
  }
  return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double hermiticity_residual(const CMatrix& m) {
  if (!m.square()) raise(ErrorCode::NotSquare, "hermiticity_residual");
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

double anti_hermiticity_residual(const CMatrix& m) {
  if (!m.square()) raise(ErrorCode::NotSquare, "anti_hermiticity_residual");
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r = std::max(r, std::abs(m(i, j) + std::conj(m(j, i))));
  return r;
}

double skew_residual(const CMatrix& m) {
  if (!m.square()) raise(ErrorCode::NotSquare, "skew_residual");
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j) + m(j, i)));
  return r;
}

double unitarity_residual(const CMatrix& m) {
  if (!m.square()) raise(ErrorCode::NotSquare, "unitarity_residual");
  return max_abs_diff(m * m.adjoint(), CMatrix::identity(m.rows()));
}

}  // namespace ncg
