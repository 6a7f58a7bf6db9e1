#include "qhe/density_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qhe {

Mat4 Mat4::identity() {
  Mat4 r;
  for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
  return r;
}

Mat4 Mat4::ketbra(int i, int j) {
  Mat4 r;
  r(i, j) = 1.0;
  return r;
}

Mat4 Mat4::dagger() const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx Mat4::trace() const { return m[0] + m[5] + m[10] + m[15]; }

Mat4 Mat4::operator+(const Mat4& o) const {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r.m[k] = m[k] + o.m[k];
  return r;
}

Mat4 Mat4::operator-(const Mat4& o) const {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r.m[k] = m[k] - o.m[k];
  return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat4 Mat4::operator*(cplx s) const {
  Mat4 r;
  for (int k = 0; k < 16; ++k) r.m[k] = m[k] * s;
  return r;
}

Mat4& Mat4::operator+=(const Mat4& o) {
  for (int k = 0; k < 16; ++k) m[k] += o.m[k];
  return *this;
}

Mat4 operator*(cplx s, const Mat4& a) { return a * s; }

double DensityMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(rho(i, j) - std::conj(rho(j, i))));
  return d;
}

double DensityMatrix::trace_defect() const { return std::abs(rho.trace() - cplx(1.0)); }

double DensityMatrix::min_eigenvalue() const {
  Mat4 h;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
  return hermitian_eigenvalues(h)[0];
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
  double d = 0.0;
  for (int k = 0; k < 16; ++k) d = std::max(d, std::abs(rho.m[k] - other.rho.m[k]));
  return d;
}

DensityMatrix DensityMatrix::maximally_mixed() {
  DensityMatrix s;
  for (int i = 0; i < 4; ++i) s(i, i) = 0.25;
  return s;
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& h) {
  // Real symmetric embedding; each eigenvalue of h appears twice.
  double a[8][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double re = h(i, j).real(), im = h(i, j).imag();
      a[i][j] = re;
      a[i + 4][j + 4] = re;
      a[i][j + 4] = -im;
      a[i + 4][j] = im;
    }
  // cyclic Jacobi
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < 8; ++p)
      for (int q = p + 1; q < 8; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 8; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 8; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, 8> ev;
  for (int i = 0; i < 8; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  // pairs (2k, 2k+1) are the doubled spectrum
  return {ev[0], ev[2], ev[4], ev[6]};
}

}  // namespace qhe
