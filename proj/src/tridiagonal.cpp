#include "rmlmc/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace rmlmc {

std::vector<double> solve_tridiagonal(const TridiagonalSystem& system) {
    const std::size_t n = system.size();
    if (n == 0) throw std::invalid_argument("solve_tridiagonal: empty system");
    if (system.rhs.size() != n || (n > 1 && (system.sub.size() != n - 1 || system.sup.size() != n - 1)))
        throw std::invalid_argument("solve_tridiagonal: inconsistent band lengths");

    std::vector<double> c(n, 0.0), d(n, 0.0);
    if (system.diag[0] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot at row 0");
    c[0] = n > 1 ? system.sup[0] / system.diag[0] : 0.0;
    d[0] = system.rhs[0] / system.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        double pivot = system.diag[i] - system.sub[i - 1] * c[i - 1];
        if (pivot == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
        if (i + 1 < n) c[i] = system.sup[i] / pivot;
        d[i] = (system.rhs[i] - system.sub[i - 1] * d[i - 1]) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

}  // namespace rmlmc
