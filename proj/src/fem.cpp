#include "rmlmc/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace rmlmc {

namespace {

// 2-point Gauss-Legendre abscissa on the reference interval [-1,1].
constexpr double kGauss2 = 0.5773502691896257645;

}  // namespace

TridiagonalSystem assemble(const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u) {
    if (u.size() != field.dimension()) throw std::invalid_argument("assemble: latent dimension mismatch");
    for (double uj : u)
        if (!(uj >= -1.0 && uj <= 1.0)) throw std::invalid_argument("assemble: latent point outside [-1,1]^J");

    const int n = mesh.interior_nodes;
    const double h = mesh.width;

    // Integral of the coefficient over each element [k h, (k+1) h], k = 0..n.
    std::vector<double> elem(n + 1);
    for (int k = 0; k <= n; ++k) {
        double mid = (k + 0.5) * h;
        double half = 0.5 * h;
        double xa = mid - half * kGauss2;
        double xb = mid + half * kGauss2;
        elem[k] = half * (evaluate_coefficient(field, u, xa) + evaluate_coefficient(field, u, xb));
    }

    TridiagonalSystem sys;
    sys.diag.resize(n);
    sys.rhs.resize(n);
    sys.sub.resize(n > 1 ? n - 1 : 0);
    sys.sup.resize(n > 1 ? n - 1 : 0);
    const double inv_h2 = 1.0 / (h * h);
    for (int i = 0; i < n; ++i) {
        sys.diag[i] = inv_h2 * (elem[i] + elem[i + 1]);
        sys.rhs[i] = 100.0 * mesh.node(i) * h;
        if (i + 1 < n) {
            double off = -inv_h2 * elem[i + 1];
            sys.sub[i] = off;
            sys.sup[i] = off;
        }
    }
    return sys;
}

double evaluate_solution(const MeshLevel& mesh, std::span<const double> nodal, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("evaluate_solution: x outside [0,1]");
    if (nodal.size() != static_cast<std::size_t>(mesh.interior_nodes))
        throw std::invalid_argument("evaluate_solution: nodal size mismatch");

    const int n = mesh.interior_nodes;
    const double h = mesh.width;
    int k = static_cast<int>(x / h);  // element index, x in [k h, (k+1) h]
    if (k > n) k = n;
    double left = (k == 0) ? 0.0 : nodal[k - 1];
    double right = (k == n) ? 0.0 : nodal[k];
    double t = x / h - k;
    return left + (right - left) * t;
}

std::vector<double> forward_map(const MeshLevel& mesh, const DiffusionField& field, std::span<const double> u,
                                std::span<const double> points) {
    for (double p : points)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("forward_map: observation point outside [0,1]");
    TridiagonalSystem sys = assemble(mesh, field, u);
    std::vector<double> nodal = solve_tridiagonal(sys);
    std::vector<double> g(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) g[i] = evaluate_solution(mesh, nodal, points[i]);
    return g;
}

std::vector<double> observation_points(int m) {
    if (m < 1) throw std::invalid_argument("observation_points: m must be >= 1");
    std::vector<double> pts(m);
    for (int i = 0; i < m; ++i) pts[i] = 0.01 + 0.02 * i;
    return pts;
}

}  // namespace rmlmc
