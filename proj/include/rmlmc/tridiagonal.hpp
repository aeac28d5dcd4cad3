#ifndef RMLMC_TRIDIAGONAL_HPP
#define RMLMC_TRIDIAGONAL_HPP

#include <vector>

namespace rmlmc {

// Symmetric tridiagonal system A x = rhs; sub[k] couples rows k and k+1
// (sub and sup have length n-1).
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;
    std::vector<double> rhs;

    std::size_t size() const { return diag.size(); }
};

// Thomas elimination, O(n). Throws on a vanishing pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& system);

}  // namespace rmlmc

#endif
