#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "rtmf/error.hpp"
#include "rtmf/maglev.hpp"
#include "rtmf/synthesis.hpp"
#include "support/generators.hpp"

using namespace rtmf;

namespace {

double model_following_residual(const UncertainLti& sys, const ReferenceModel& model,
                                const Matrix& g, const Matrix& h) {
    return (sys.a * g + sys.b * h - g * model.a_r).norm_inf();
}

// Brute-force reference: assemble the stacked linear system in the unknowns
// [rows(G); rows(H)] directly from the matching equations
//   A G + B H - G A_r = 0,  C G = C_r
// and solve it by Gauss-Jordan elimination in extended precision. Square for
// m == p; independent of the Kronecker fixed-point reduction under test.
struct StackedSolution {
    bool ok = false;
    Matrix g, h;
};

StackedSolution brute_force_gh(const UncertainLti& sys, const ReferenceModel& model) {
    const std::size_t n = sys.n();
    const std::size_t m = sys.m();
    const std::size_t p = sys.p();
    const std::size_t nr = model.n_r();
    const std::size_t cols = (n + m) * nr;
    const std::size_t rows = (n + p) * nr;
    StackedSolution out;
    if (rows != cols) return out;

    std::vector<std::vector<long double>> mat(rows, std::vector<long double>(cols + 1, 0.0L));
    auto g_idx = [&](std::size_t i, std::size_t j) { return i * nr + j; };
    auto h_idx = [&](std::size_t i, std::size_t j) { return n * nr + i * nr + j; };

    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < nr; ++j, ++row) {
            for (std::size_t k = 0; k < n; ++k) mat[row][g_idx(k, j)] += sys.a(i, k);
            for (std::size_t l = 0; l < m; ++l) mat[row][h_idx(l, j)] += sys.b(i, l);
            for (std::size_t k = 0; k < nr; ++k) mat[row][g_idx(i, k)] -= model.a_r(k, j);
        }
    }
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < nr; ++j, ++row) {
            for (std::size_t k = 0; k < n; ++k) mat[row][g_idx(k, j)] += sys.c(i, k);
            mat[row][cols] = model.c_r(i, j);
        }
    }

    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < rows; ++r)
            if (std::fabs((double)mat[r][col]) > std::fabs((double)mat[pivot][col])) pivot = r;
        if (std::fabs((double)mat[pivot][col]) < 1e-8) return out;
        std::swap(mat[col], mat[pivot]);
        const long double inv = 1.0L / mat[col][col];
        for (std::size_t c = col; c <= cols; ++c) mat[col][c] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == col) continue;
            const long double f = mat[r][col];
            if (f == 0.0L) continue;
            for (std::size_t c = col; c <= cols; ++c) mat[r][c] -= f * mat[col][c];
        }
    }

    out.g = Matrix(n, nr);
    out.h = Matrix(m, nr);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < nr; ++j) out.g(i, j) = (double)mat[g_idx(i, j)][cols];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < nr; ++j) out.h(i, j) = (double)mat[h_idx(i, j)][cols];
    out.ok = true;
    return out;
}

}  // namespace

TEST_CASE("omega inverts the plant-output block matrix for the maglev bench") {
    const UncertainLti sys = maglev::linear_plant();
    const OmegaBlocks om = compute_omega(sys);

    const Matrix expected{{0.0, 0.0, 1.0},
                          {1.0, 0.0, 0.0},
                          {0.0, -1.0 / 3518.85, 2180.0 / 3518.85}};
    CHECK((om.omega - expected).norm_inf() < 1e-12);

    const Matrix block = block2x2(sys.a, sys.b, sys.c, Matrix());
    CHECK((block * om.omega - Matrix::identity(3)).norm_inf() < 1e-12);
    CHECK((om.omega * block - Matrix::identity(3)).norm_inf() < 1e-12);

    CHECK(om.o11.rows() == 2);
    CHECK(om.o11.cols() == 2);
    CHECK(om.o12.rows() == 2);
    CHECK(om.o12.cols() == 1);
    CHECK(om.o21.rows() == 1);
    CHECK(om.o21.cols() == 2);
    CHECK(om.o22.rows() == 1);
    CHECK(om.o22.cols() == 1);
    CHECK(om.o21(0, 1) == doctest::Approx(-1.0 / 3518.85).epsilon(1e-14));
    CHECK(om.o22(0, 0) == doctest::Approx(2180.0 / 3518.85).epsilon(1e-14));
}

TEST_CASE("maglev synthesis reproduces the published gains") {
    const UncertainLti sys = maglev::linear_plant();
    const ReferenceModel model = maglev::reference_model();
    const SynthesisResult result = solve_gh(sys, model);

    // G comes out exactly: the elimination runs over related rationals.
    CHECK(result.g == maglev::published_g());

    REQUIRE(result.h.rows() == 1);
    REQUIRE(result.h.cols() == 3);
    CHECK(result.h(0, 0) == doctest::Approx(747740000.0 / 3518.85).epsilon(1e-12));
    CHECK(result.h(0, 1) == 0.0);
    CHECK(result.h(0, 2) == doctest::Approx(-343000.0 / 3518.85).epsilon(1e-12));

    const double scale = 1.0 + (result.g * model.a_r).norm_inf();
    CHECK(result.residual_dyn <= 1e-6 * scale);
    CHECK(result.residual_out <= 1e-9 * (1.0 + model.c_r.norm_inf()));

    CHECK(result.feasibility.rank == 3);
    CHECK(result.feasibility.required_rank == 3);
    CHECK(result.feasibility.feasible());
}

TEST_CASE("rounding H to the published figures leaves a visible residual") {
    const UncertainLti sys = maglev::linear_plant();
    const ReferenceModel model = maglev::reference_model();
    const SynthesisResult result = solve_gh(sys, model);

    const double rounded = model_following_residual(sys, model, maglev::published_g(),
                                                    maglev::published_h());
    CHECK(rounded == doctest::Approx(15625.0).epsilon(1e-9));

    const double exact = model_following_residual(sys, model, result.g, result.h);
    CHECK(exact < 1e-5);
    CHECK(exact * 1e3 < rounded);
}

TEST_CASE("model equal to the plant needs no feedforward correction") {
    UncertainLti sys;
    sys.a = Matrix{{0.0, 1.0}, {-2.0, -3.0}};
    sys.b = Matrix{{0.0}, {1.0}};
    sys.c = Matrix{{1.0, 0.0}};

    ReferenceModel model;
    model.a_r = sys.a;
    model.b_r = sys.b;
    model.c_r = sys.c;
    model.x_r0 = Vector(2);

    const SynthesisResult result = solve_gh(sys, model);
    CHECK((result.g - Matrix::identity(2)).norm_inf() < 1e-9);
    CHECK(result.h.norm_inf() < 1e-9);
}

TEST_CASE("more outputs than inputs is infeasible") {
    UncertainLti sys;
    sys.a = Matrix{{0.0, 1.0}, {-2.0, -3.0}};
    sys.b = Matrix{{0.0}, {1.0}};
    sys.c = Matrix::identity(2);

    CHECK_THROWS_WITH_AS(compute_omega(sys), doctest::Contains("outputs"), Error);

    ReferenceModel model;
    model.a_r = sys.a;
    model.b_r = sys.b;
    model.c_r = Matrix::identity(2);
    model.x_r0 = Vector(2);

    const FeasibilityReport report = check_feasibility(sys, model);
    CHECK_FALSE(report.outputs_le_inputs);
    CHECK_FALSE(report.feasible());

    try {
        solve_gh(sys, model);
        FAIL("expected an infeasible error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::infeasible);
    }
}

TEST_CASE("rank-deficient plant-output block is infeasible") {
    // Output on the last integrator: row [C 0] duplicates a row of [A B].
    UncertainLti sys;
    sys.a = Matrix{{0.0, 1.0}, {0.0, 0.0}};
    sys.b = Matrix{{0.0}, {1.0}};
    sys.c = Matrix{{0.0, 1.0}};

    ReferenceModel model;
    model.a_r = Matrix{{-1.0}};
    model.b_r = Matrix{{1.0}};
    model.c_r = Matrix{{1.0}};
    model.x_r0 = Vector(1);

    const FeasibilityReport report = check_feasibility(sys, model);
    CHECK(report.rank == 2);
    CHECK(report.required_rank == 3);
    CHECK_FALSE(report.rank_ok);
    CHECK(report.summary().find("deficient") != std::string::npos);

    try {
        solve_gh(sys, model);
        FAIL("expected an infeasible error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::infeasible);
    }
}

TEST_CASE("kronecker reduction matches a brute-force stacked solve") {
    testgen::Rng rng(0x5eedful);
    std::uniform_int_distribution<std::size_t> dim_n(1, 3);
    std::uniform_int_distribution<std::size_t> dim_nr(1, 3);
    std::uniform_real_distribution<double> eig(-3.0, -0.5);

    int compared = 0;
    for (int attempt = 0; attempt < 600 && compared < 50; ++attempt) {
        const std::size_t n = dim_n(rng);
        const std::size_t nr = dim_nr(rng);

        UncertainLti sys;
        sys.a = testgen::random_matrix(rng, n, n);
        sys.b = testgen::random_matrix(rng, n, 1);
        sys.c = testgen::random_matrix(rng, 1, n);

        std::vector<double> eigs(nr);
        for (auto& e : eigs) e = eig(rng);
        ReferenceModel model;
        model.a_r = testgen::matrix_with_eigs(rng, eigs);
        model.b_r = Matrix(nr, 1);
        model.c_r = testgen::random_matrix(rng, 1, nr);
        model.x_r0 = Vector(nr);

        SynthesisResult result;
        try {
            result = solve_gh(sys, model);
        } catch (const Error&) {
            continue;  // uncontrollable, rank-deficient, or ill-conditioned draw
        }

        const StackedSolution ref = brute_force_gh(sys, model);
        if (!ref.ok || ref.g.norm_inf() > 1e6 || ref.h.norm_inf() > 1e6) continue;

        const double g_err = (result.g - ref.g).norm_inf() / (1.0 + ref.g.norm_inf());
        const double h_err = (result.h - ref.h).norm_inf() / (1.0 + ref.h.norm_inf());
        CAPTURE(attempt);
        CHECK(g_err < 1e-8);
        CHECK(h_err < 1e-8);

        CHECK(model_following_residual(sys, model, result.g, result.h) <
              1e-8 * (1.0 + (result.g * model.a_r).norm_inf()));
        CHECK((sys.c * result.g - model.c_r).norm_inf() < 1e-8 * (1.0 + model.c_r.norm_inf()));
        ++compared;
    }
    CHECK(compared == 50);
}
