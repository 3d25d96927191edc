#include "fit_internal.hpp"

#include <Eigen/Dense>
#include <stdexcept>

#include "divlab/common.hpp"

namespace divlab::detail {

std::vector<double> least_squares(const std::vector<double>& a, std::size_t cols,
                                  const std::vector<double>& y) {
    if (cols == 0 || a.size() != cols * y.size())
        throw std::invalid_argument("least_squares: matrix shape mismatch");
    if (y.size() < cols)
        throw conditioning_error("least_squares: fewer rows than unknowns");

    Eigen::MatrixXd A(static_cast<Eigen::Index>(y.size()),
                      static_cast<Eigen::Index>(cols));
    Eigen::VectorXd b(static_cast<Eigen::Index>(y.size()));
    for (std::size_t r = 0; r < y.size(); ++r) {
        b(static_cast<Eigen::Index>(r)) = y[r];
        for (std::size_t c = 0; c < cols; ++c)
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                a[r * cols + c];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < static_cast<Eigen::Index>(cols))
        throw conditioning_error("least_squares: rank-deficient design matrix");
    Eigen::VectorXd diag = qr.matrixQR().diagonal().cwiseAbs();
    double dmax = diag.maxCoeff();
    double dmin = diag.minCoeff();
    if (dmin <= 0.0 || dmax / dmin > 1e12)
        throw conditioning_error("least_squares: design matrix badly conditioned");

    Eigen::VectorXd c = qr.solve(b);
    return std::vector<double>(c.data(), c.data() + cols);
}

std::vector<double> fit_polynomial(const std::vector<double>& L,
                                   const std::vector<double>& y, int degree) {
    if (degree < 0) throw std::invalid_argument("fit_polynomial: degree >= 0");
    std::size_t cols = static_cast<std::size_t>(degree) + 1;
    std::vector<double> a;
    a.reserve(L.size() * cols);
    for (double x : L) {
        double p = 1.0;
        for (std::size_t c = 0; c < cols; ++c) {
            a.push_back(p);
            p *= x;
        }
    }
    return least_squares(a, cols, y);
}

double eval_polynomial(const std::vector<double>& coeffs, double L) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * L + coeffs[i];
    return v;
}

}  // namespace divlab::detail
