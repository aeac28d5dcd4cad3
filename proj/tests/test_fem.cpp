#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmlmc/fem.hpp"
#include "rmlmc/rng.hpp"
#include "support/stats.hpp"

using namespace rmlmc;

namespace {

// Analytic solution of -u_bar v'' = 100 x with zero boundary values.
double analytic_constant_coeff(double u_bar, double x) { return 100.0 / (6.0 * u_bar) * (x - x * x * x); }

DiffusionField default_field() { return DiffusionField(0.15, {0.1, 0.025}); }

}  // namespace

TEST_CASE("build_mesh widths and node counts") {
    MeshLevel m0 = build_mesh(0, 3);
    CHECK(m0.width == 0.125);
    CHECK(m0.interior_nodes == 7);

    MeshLevel m1 = build_mesh(1, 3);
    CHECK(m1.width == 0.0625);
    CHECK(m1.interior_nodes == 15);

    MeshLevel m10 = build_mesh(10, 3);
    CHECK(m10.width == std::ldexp(1.0, -13));
    CHECK(m10.interior_nodes == 8191);

    // width * (interior_nodes + 1) = 1 exactly in dyadic arithmetic
    for (int l = 0; l <= 10; ++l) {
        MeshLevel m = build_mesh(l, 3);
        CHECK(m.width * (m.interior_nodes + 1) == 1.0);
    }

    CHECK_THROWS(build_mesh(-1, 3));
    CHECK_THROWS(build_mesh(0, -1));
    CHECK_THROWS(build_mesh(28, 3));  // memory guard
}

TEST_CASE("evaluate_coefficient values and ellipticity") {
    DiffusionField field = default_field();
    std::vector<double> zero{0.0, 0.0};
    CHECK(evaluate_coefficient(field, zero, 0.3) == doctest::Approx(0.15));

    std::vector<double> e1{1.0, 0.0};
    CHECK(evaluate_coefficient(field, e1, 0.5) == doctest::Approx(0.25));

    std::vector<double> mixed{0.6, -0.4};
    CHECK(evaluate_coefficient(field, mixed, 0.0) == doctest::Approx(0.14));

    // uniform ellipticity: always >= mean - sum(scales)
    const double floor = field.mean - field.scales[0] - field.scales[1];
    RngStream rng = derive_stream(5, 0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> u{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        for (int k = 0; k <= 50; ++k) {
            double x = k / 50.0;
            CHECK(evaluate_coefficient(field, u, x) >= floor - 1e-14);
        }
    }

    CHECK_THROWS(DiffusionField(0.1, {0.1, 0.025}));  // ellipticity violated
}

TEST_CASE("assemble: constant-coefficient stencil, symmetry, exact load") {
    DiffusionField constant(0.15, {0.0, 0.0});
    MeshLevel mesh = build_mesh(0, 3);
    std::vector<double> u{0.0, 0.0};
    TridiagonalSystem sys = assemble(mesh, constant, u);

    const double h = mesh.width;
    for (int i = 0; i < mesh.interior_nodes; ++i)
        CHECK(sys.diag[i] == doctest::Approx(2.0 * 0.15 / h).epsilon(1e-13));
    for (int i = 0; i + 1 < mesh.interior_nodes; ++i) {
        CHECK(sys.sub[i] == doctest::Approx(-0.15 / h).epsilon(1e-13));
        CHECK(sys.sub[i] == sys.sup[i]);
    }

    // f_i = 100 x_i h; node x = 0.5 is the fourth interior node
    CHECK(sys.rhs[3] == doctest::Approx(100.0 * 0.5 * h));

    // symmetric also with a varying coefficient
    DiffusionField field = default_field();
    std::vector<double> up{0.3, -0.7};
    TridiagonalSystem sys2 = assemble(build_mesh(2, 3), field, up);
    for (std::size_t k = 0; k < sys2.sub.size(); ++k) CHECK(sys2.sub[k] == sys2.sup[k]);

    std::vector<double> bad{1.5, 0.0};
    CHECK_THROWS(assemble(mesh, field, bad));
}

TEST_CASE("solve_tridiagonal: hand case, dense oracle, zero pivot") {
    TridiagonalSystem tiny;
    tiny.diag = {2.0, 2.0};
    tiny.sub = {-1.0};
    tiny.sup = {-1.0};
    tiny.rhs = {1.0, 1.0};
    auto x = solve_tridiagonal(tiny);
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(1.0));

    RngStream rng = derive_stream(17, 0);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform() * 63);
        TridiagonalSystem sys;
        sys.diag.resize(n);
        sys.rhs.resize(n);
        sys.sub.resize(n - 1);
        sys.sup.resize(n - 1);
        for (int i = 0; i < n - 1; ++i) {
            sys.sub[i] = 2.0 * rng.uniform() - 1.0;
            sys.sup[i] = 2.0 * rng.uniform() - 1.0;
        }
        for (int i = 0; i < n; ++i) {
            sys.rhs[i] = 2.0 * rng.uniform() - 1.0;
            double row = (i > 0 ? std::fabs(sys.sub[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(sys.sup[i]) : 0.0);
            sys.diag[i] = row + 1.0 + rng.uniform();  // strictly diagonally dominant
        }
        std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            dense[i][i] = sys.diag[i];
            if (i + 1 < n) {
                dense[i + 1][i] = sys.sub[i];
                dense[i][i + 1] = sys.sup[i];
            }
        }
        auto fast = solve_tridiagonal(sys);
        auto oracle = teststat::dense_solve(dense, sys.rhs);
        for (int i = 0; i < n; ++i) CHECK(fast[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    }

    TridiagonalSystem singular;
    singular.diag = {0.0, 1.0};
    singular.sub = {0.0};
    singular.sup = {0.0};
    singular.rhs = {1.0, 1.0};
    CHECK_THROWS(solve_tridiagonal(singular));
}

TEST_CASE("constant coefficient solution matches the analytic cubic") {
    DiffusionField constant(0.15, {0.0, 0.0});
    std::vector<double> u{0.0, 0.0};
    for (int level : {0, 2, 5}) {
        MeshLevel mesh = build_mesh(level, 3);
        auto nodal = solve_tridiagonal(assemble(mesh, constant, u));
        double max_err = 0.0;
        for (int i = 0; i < mesh.interior_nodes; ++i)
            max_err = std::max(max_err, std::fabs(nodal[i] - analytic_constant_coeff(0.15, mesh.node(i))));
        // nodal superconvergence for the constant-coefficient problem: the
        // O(h^2) bound holds with lots of room
        CHECK(max_err <= mesh.width * mesh.width);
    }

    // interpolation error away from nodes decays as h^2
    std::vector<double> log_h, log_err;
    for (int level = 0; level <= 4; ++level) {
        MeshLevel mesh = build_mesh(level, 3);
        auto nodal = solve_tridiagonal(assemble(mesh, constant, u));
        double max_err = 0.0;
        for (int k = 1; k < 2 * (mesh.interior_nodes + 1); k += 2) {
            double x = 0.5 * k * mesh.width;  // element midpoints
            max_err = std::max(max_err, std::fabs(evaluate_solution(mesh, nodal, x) -
                                                  analytic_constant_coeff(0.15, x)));
        }
        log_h.push_back(std::log2(mesh.width));
        log_err.push_back(std::log2(max_err));
    }
    double slope = teststat::fit_slope(log_h, log_err);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("evaluate_solution interpolation rules") {
    MeshLevel mesh = build_mesh(0, 3);
    std::vector<double> nodal{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    CHECK(evaluate_solution(mesh, nodal, mesh.node(2)) == doctest::Approx(3.0));
    CHECK(evaluate_solution(mesh, nodal, 0.0) == 0.0);
    CHECK(evaluate_solution(mesh, nodal, 1.0) == 0.0);
    // midway between nodes 1 and 2
    double mid = 0.5 * (mesh.node(1) + mesh.node(2));
    CHECK(evaluate_solution(mesh, nodal, mid) == doctest::Approx(2.5));
    // first element: linear from the boundary zero
    CHECK(evaluate_solution(mesh, nodal, 0.5 * mesh.width) == doctest::Approx(0.5));
    CHECK_THROWS(evaluate_solution(mesh, nodal, -0.1));
    CHECK_THROWS(evaluate_solution(mesh, nodal, 1.1));
}

TEST_CASE("forward_map shape, constant-coefficient value, level ladder") {
    DiffusionField field = default_field();
    auto points = observation_points(50);
    CHECK(points.size() == 50);
    CHECK(points.front() == doctest::Approx(0.01));
    CHECK(points.back() == doctest::Approx(0.99));

    DiffusionField constant(0.15, {0.0, 0.0});
    std::vector<double> zero{0.0, 0.0};
    auto g = forward_map(build_mesh(5, 3), constant, zero, points);
    CHECK(g[0] == doctest::Approx(1.11100).epsilon(1e-4));

    // ||G^l - G^10||^2 decreases monotonically in l for fixed u
    MeshLevel ref = build_mesh(10, 3);
    RngStream rng = derive_stream(31, 0);
    for (int draw = 0; draw < 3; ++draw) {
        std::vector<double> u{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        auto g_ref = forward_map(ref, field, u, points);
        double prev = std::numeric_limits<double>::infinity();
        for (int l = 0; l <= 5; ++l) {
            auto gl = forward_map(build_mesh(l, 3), field, u, points);
            double dist = 0.0;
            for (std::size_t i = 0; i < gl.size(); ++i) dist += (gl[i] - g_ref[i]) * (gl[i] - g_ref[i]);
            CHECK(dist < prev);
            prev = dist;
        }
    }
}

TEST_CASE("forward convergence rate matches the expected strong order") {
    DiffusionField field = default_field();
    auto points = observation_points(50);
    MeshLevel ref = build_mesh(10, 3);
    RngStream rng = derive_stream(32, 0);

    std::vector<double> log_h(6), log_err2(6, 0.0);
    const int draws = 5;
    std::vector<double> sums(6, 0.0);
    for (int d = 0; d < draws; ++d) {
        std::vector<double> u{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        auto g_ref = forward_map(ref, field, u, points);
        for (int l = 0; l <= 5; ++l) {
            auto gl = forward_map(build_mesh(l, 3), field, u, points);
            double dist = 0.0;
            for (std::size_t i = 0; i < gl.size(); ++i) dist += (gl[i] - g_ref[i]) * (gl[i] - g_ref[i]);
            sums[l] += dist / draws;
        }
    }
    for (int l = 0; l <= 5; ++l) {
        log_h[l] = std::log2(build_mesh(l, 3).width);
        log_err2[l] = std::log2(sums[l]);
    }
    CHECK(teststat::fit_slope(log_h, log_err2) >= 3.5);
}
