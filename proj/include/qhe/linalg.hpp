#pragma once

#include <vector>

namespace qhe {

// Dense n x n solve by LU with partial pivoting.  a is row-major and is
// destroyed; b is replaced by the solution.  Returns false on exact
// singularity.
bool lu_solve(std::vector<double>& a, std::vector<double>& b, int n);

// 1-norm condition estimate ||A||_1 * ||A^-1||_1 (explicit inverse; the
// systems here are at most 16x16).  Returns infinity when singular.
double condition_1norm(const std::vector<double>& a, int n);

// Least squares fit of y ~ sum_k coeff[k] * basis[k](x) via normal equations.
// basis is a column-major design matrix (rows = samples, cols = terms).
std::vector<double> least_squares(const std::vector<double>& design,
                                  const std::vector<double>& y, int rows, int cols);

}  // namespace qhe
