#pragma once

#include <cstddef>
#include <vector>

namespace divlab::detail {

// Minimizes ||A c - y|| for the row-major matrix a (rows = y.size(), cols
// columns). Throws conditioning_error when rows < cols, the matrix is rank
// deficient, or the R-diagonal spread exceeds 1e12.
std::vector<double> least_squares(const std::vector<double>& a, std::size_t cols,
                                  const std::vector<double>& y);

// Least squares against {1, L, L^2, ..., L^degree} at abscissae L.
std::vector<double> fit_polynomial(const std::vector<double>& L,
                                   const std::vector<double>& y, int degree);

double eval_polynomial(const std::vector<double>& coeffs, double L);

}  // namespace divlab::detail
