#include "ncg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncg {

namespace {

// Reduce Hermitian A to real symmetric tridiagonal form by unitary similarity.
// On return d holds the diagonal, e the (real, nonnegative) subdiagonal
// e[0..n-2], and q the accumulated unitary with A = q T q*.
void tridiagonalize_hermitian(CMatrix a, std::vector<double>& d, std::vector<double>& e,
                              CMatrix& q) {
  const std::size_t n = a.rows();
  q = CMatrix::identity(n);
  d.assign(n, 0.0);
  e.assign(n > 1 ? n - 1 : 0, 0.0);

  std::vector<Complex> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;

    const Complex x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const Complex alpha = (ax0 == 0.0) ? Complex(-xnorm, 0.0) : -(x0 / ax0) * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // Two-sided update of the trailing block: A <- H A H with H = I - beta v v*.
    // p = beta A v; w = p - (beta/2)(v*p) v; A -= w v* + v w*.
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      p[i] = beta * s;
    }
    Complex kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) kappa += std::conj(v[i]) * p[i];
    kappa *= beta / 2.0;
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) -= p[i] * std::conj(v[j]) + v[i] * std::conj(p[j]);

    // Column k reduces exactly to (alpha, 0, ..., 0).
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }

    // Accumulate q <- q H.
    for (std::size_t r = 0; r < n; ++r) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += q(r, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= s * std::conj(v[j]);
    }
  }

  // Diagonal phase similarity making the subdiagonal real nonnegative:
  // s_0 = 1, s_{k+1} = u_k s_k / |u_k|, columns of q scaled by s_k.
  std::vector<Complex> s(n, Complex(1.0, 0.0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex u = a(k + 1, k);
    const double au = std::abs(u);
    if (au > 0.0) {
      s[k + 1] = u * s[k] / au;
      e[k] = au;
    } else {
      s[k + 1] = s[k];
      e[k] = 0.0;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = a(k, k).real();
    if (s[k] != Complex(1.0, 0.0)) {
      for (std::size_t r = 0; r < n; ++r) q(r, k) *= s[k];
    }
  }
}

double sign_like(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix,
// rotations accumulated into the complex columns of q.
void tql_implicit(std::vector<double>& d, const std::vector<double>& sub, CMatrix& q) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = sub[i];

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) raise(ErrorCode::NumericalFailure, "QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
        double si = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = si * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          si = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * si + 2.0 * c * b;
          p = si * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t row = 0; row < q.rows(); ++row) {
            const Complex t = q(row, i + 1);
            q(row, i + 1) = si * q(row, i) + c * t;
            q(row, i) = c * q(row, i) - si * t;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void check_square_finite(const CMatrix& m, const char* who) {
  if (!m.square()) raise(ErrorCode::NotSquare, who);
  if (!m.all_finite()) raise(ErrorCode::NumericalFailure, std::string(who) + ": non-finite input");
}

}  // namespace

EigResult eig_hermitian_full(const CMatrix& m, Tolerance tol) {
  check_square_finite(m, "eig_hermitian");
  if (hermiticity_residual(m) > tol.abs_eps)
    raise(ErrorCode::NotHermitian, "Hermiticity deviation exceeds tolerance");

  std::vector<double> d, e;
  CMatrix q;
  tridiagonalize_hermitian(m, d, e, q);
  tql_implicit(d, e, q);

  const std::size_t n = d.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigResult out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[idx[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = q(i, idx[j]);
  }
  return out;
}

std::vector<double> eig_hermitian(const CMatrix& m, Tolerance tol) {
  return eig_hermitian_full(m, tol).values;
}

Complex determinant(const CMatrix& m) {
  check_square_finite(m, "determinant");
  CMatrix a = m;
  const std::size_t n = a.rows();
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    const Complex inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) * inv;
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

Complex pfaffian_skew(const CMatrix& m, Tolerance tol) {
  check_square_finite(m, "pfaffian_skew");
  const std::size_t n = m.rows();
  if (n % 2 != 0) raise(ErrorCode::OddDimension, "Pfaffian needs even dimension");
  if (skew_residual(m) > tol.abs_eps)
    raise(ErrorCode::NotSkewSymmetric, "skew-symmetry deviation exceeds tolerance");

  CMatrix a = m;
  Complex pf = 1.0;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    // Pivot the largest entry of column k below the diagonal into row k+1;
    // each row/column interchange flips the sign of the Pfaffian.
    std::size_t kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        kp = i;
      }
    }
    if (kp != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(kp, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, kp));
      pf = -pf;
    }
    const Complex piv = a(k, k + 1);
    if (piv == Complex(0.0, 0.0)) return 0.0;
    pf *= piv;
    if (k + 2 < n) {
      // Gauss elimination step on the trailing block, keeping it skew.
      std::vector<Complex> tau(n), col(n);
      for (std::size_t i = k + 2; i < n; ++i) {
        tau[i] = a(k, i) / piv;
        col[i] = a(i, k + 1);
      }
      for (std::size_t i = k + 2; i < n; ++i)
        for (std::size_t j = k + 2; j < n; ++j)
          a(i, j) += tau[i] * col[j] - col[i] * tau[j];
    }
  }
  if (!std::isfinite(pf.real()) || !std::isfinite(pf.imag()))
    raise(ErrorCode::NumericalFailure, "Pfaffian overflow");
  return pf;
}

CMatrix unitary_exp(const CMatrix& a, Tolerance tol) {
  check_square_finite(a, "unitary_exp");
  if (anti_hermiticity_residual(a) > tol.abs_eps)
    raise(ErrorCode::NotAntiHermitian, "anti-Hermiticity deviation exceeds tolerance");

  // A = iH with H Hermitian; exp(A) = Q exp(i lambda) Q*.
  const std::size_t n = a.rows();
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (Complex(0.0, -1.0) * a(i, j) + std::conj(Complex(0.0, -1.0) * a(j, i)));

  const EigResult eig = eig_hermitian_full(h, tol);
  CMatrix phases(n, n);
  for (std::size_t i = 0; i < n; ++i) phases(i, i) = std::exp(Complex(0.0, eig.values[i]));
  CMatrix result = eig.vectors * phases * eig.vectors.adjoint();
  if (unitarity_residual(result) > 1e-10)
    raise(ErrorCode::NumericalFailure, "unitary_exp lost unitarity");
  return result;
}

}  // namespace ncg
