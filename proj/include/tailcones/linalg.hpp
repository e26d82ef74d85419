#ifndef TAILCONES_LINALG_HPP
#define TAILCONES_LINALG_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tailcones {

// Dense lower-triangular Cholesky of a d x d row-major matrix.
// Returns the 1-based index of the first failing leading minor, or 0 on
// success with the factor written to `lower`.
inline int cholesky(const std::vector<double>& a, int d, std::vector<double>& lower) {
    lower.assign(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i * d + j];
            for (int k = 0; k < j; ++k) s -= lower[i * d + k] * lower[j * d + k];
            if (i == j) {
                if (!(s > 0.0)) return i + 1;
                lower[i * d + i] = std::sqrt(s);
            } else {
                lower[i * d + j] = s / lower[j * d + j];
            }
        }
    }
    return 0;
}

// Solves A x = b for symmetric positive definite A via Cholesky.
inline std::vector<double> spd_solve(const std::vector<double>& a, int d,
                                     const std::vector<double>& b) {
    std::vector<double> l;
    if (int m = cholesky(a, d, l); m != 0)
        throw std::invalid_argument("spd_solve: matrix not positive definite (leading minor " +
                                    std::to_string(m) + ")");
    std::vector<double> y(d), x(d);
    for (int i = 0; i < d; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= l[i * d + k] * y[k];
        y[i] = s / l[i * d + i];
    }
    for (int i = d - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < d; ++k) s -= l[k * d + i] * x[k];
        x[i] = s / l[i * d + i];
    }
    return x;
}

// 1^T A^{-1} 1 for symmetric positive definite A.
inline double ones_quadratic_inverse(const std::vector<double>& a, int d) {
    std::vector<double> ones(d, 1.0);
    auto x = spd_solve(a, d, ones);
    double s = 0;
    for (double v : x) s += v;
    return s;
}

}  // namespace tailcones

#endif
