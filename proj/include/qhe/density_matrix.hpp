#pragma once

#include <array>
#include <complex>

namespace qhe {

using cplx = std::complex<double>;

// Indices of the four levels in every 4x4 matrix in this project.
enum Level : int { lvl_g = 0, lvl_0 = 1, lvl_1 = 2, lvl_2 = 3 };

// 4x4 complex matrix in the (g, 0, 1, 2) basis, row-major.
struct Mat4 {
  std::array<cplx, 16> m{};

  cplx& operator()(int i, int j) { return m[4 * i + j]; }
  const cplx& operator()(int i, int j) const { return m[4 * i + j]; }

  static Mat4 zero() { return Mat4{}; }
  static Mat4 identity();
  // |i><j|
  static Mat4 ketbra(int i, int j);

  Mat4 dagger() const;
  cplx trace() const;
  Mat4 operator+(const Mat4& o) const;
  Mat4 operator-(const Mat4& o) const;
  Mat4 operator*(const Mat4& o) const;
  Mat4 operator*(cplx s) const;
  Mat4& operator+=(const Mat4& o);
};

Mat4 operator*(cplx s, const Mat4& a);

// Density matrix of the engine.  Physical states are Hermitian, unit trace,
// positive semi-definite; the checks below quantify any defect.
struct DensityMatrix {
  Mat4 rho;

  cplx& operator()(int i, int j) { return rho(i, j); }
  const cplx& operator()(int i, int j) const { return rho(i, j); }

  double hermiticity_defect() const;       // max |rho_ij - conj(rho_ji)|
  double trace_defect() const;             // |tr(rho) - 1|
  double min_eigenvalue() const;           // smallest eigenvalue of (rho+rho^dag)/2
  double max_abs_diff(const DensityMatrix& other) const;

  static DensityMatrix maximally_mixed();
};

// Eigenvalues of a Hermitian 4x4 (ascending), via Jacobi sweeps on the real
// symmetric 8x8 embedding [[Re, -Im], [Im, Re]].
std::array<double, 4> hermitian_eigenvalues(const Mat4& h);

}  // namespace qhe
