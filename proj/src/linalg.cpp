#include "qhe/linalg.hpp"

#include <cmath>
#include <limits>

namespace qhe {

namespace {

// LU factorization with partial pivoting; returns false when a pivot is zero.
bool lu_factor(std::vector<double>& a, std::vector<int>& piv, int n) {
  piv.resize(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int col = 0; col < n; ++col) {
    int best = col;
    double bestabs = std::abs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + col]);
      if (v > bestabs) {
        bestabs = v;
        best = r;
      }
    }
    if (bestabs == 0.0) return false;
    if (best != col) {
      for (int k = 0; k < n; ++k) std::swap(a[best * n + k], a[col * n + k]);
      std::swap(piv[best], piv[col]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] * inv;
      a[r * n + col] = f;
      for (int k = col + 1; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
    }
  }
  return true;
}

void lu_backsolve(const std::vector<double>& lu, const std::vector<int>& piv,
                  const std::vector<double>& b, std::vector<double>& x, int n) {
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) x[i] -= lu[i * n + k] * x[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) x[i] -= lu[i * n + k] * x[k];
    x[i] /= lu[i * n + i];
  }
}

double norm1(const std::vector<double>& a, int n) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(a[i * n + j]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

bool lu_solve(std::vector<double>& a, std::vector<double>& b, int n) {
  std::vector<int> piv;
  if (!lu_factor(a, piv, n)) return false;
  std::vector<double> x;
  lu_backsolve(a, piv, b, x, n);
  b = x;
  return true;
}

double condition_1norm(const std::vector<double>& a, int n) {
  const double na = norm1(a, n);
  std::vector<double> lu = a;
  std::vector<int> piv;
  if (!lu_factor(lu, piv, n)) return std::numeric_limits<double>::infinity();
  std::vector<double> inv(n * n), e(n, 0.0), col;
  for (int j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    lu_backsolve(lu, piv, e, col, n);
    for (int i = 0; i < n; ++i) inv[i * n + j] = col[i];
  }
  return na * norm1(inv, n);
}

std::vector<double> least_squares(const std::vector<double>& design,
                                  const std::vector<double>& y, int rows, int cols) {
  std::vector<double> ata(cols * cols, 0.0), aty(cols, 0.0);
  for (int i = 0; i < cols; ++i) {
    for (int j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int r = 0; r < rows; ++r) s += design[r * cols + i] * design[r * cols + j];
      ata[i * cols + j] = s;
    }
    double s = 0.0;
    for (int r = 0; r < rows; ++r) s += design[r * cols + i] * y[r];
    aty[i] = s;
  }
  lu_solve(ata, aty, cols);
  return aty;
}

}  // namespace qhe
