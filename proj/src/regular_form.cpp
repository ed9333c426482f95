#include "rtmf/regular_form.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rtmf/error.hpp"
#include "rtmf/linalg.hpp"

namespace rtmf {

namespace {

Matrix perm_matrix(const std::vector<std::size_t>& order) {
    Matrix p(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i) p(i, order[i]) = 1.0;
    return p;
}

// Row indices (ascending) of an invertible m x m minor of b, found by
// full-pivoting elimination; empty when no such minor exists.
std::vector<std::size_t> independent_rows(const Matrix& b) {
    Matrix w = b;
    const std::size_t n = w.rows(), m = w.cols();
    std::vector<bool> used_row(n, false), used_col(m, false);
    std::vector<std::size_t> rows;
    const double tol = static_cast<double>(n) * 1e-12 * std::max(w.norm_inf(), 1e-300);
    for (std::size_t step = 0; step < m; ++step) {
        double best = 0.0;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_row[i]) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (used_col[j]) continue;
                if (std::abs(w(i, j)) > best) {
                    best = std::abs(w(i, j));
                    pi = i;
                    pj = j;
                }
            }
        }
        if (best <= tol) return {};
        rows.push_back(pi);
        used_row[pi] = true;
        used_col[pj] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_row[i] || w(i, pj) == 0.0) continue;
            const double f = w(i, pj) / w(pi, pj);
            for (std::size_t j = 0; j < m; ++j)
                if (!used_col[j]) w(i, j) -= f * w(pi, j);
            w(i, pj) = 0.0;
        }
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

bool square_invertible(const Matrix& m) {
    return !LuDecomposition(m).singular();
}

// chi(a) = prod_k (a - mu_k I); factors commute, order is irrelevant.
Matrix poly_of_matrix(const Matrix& a, const std::vector<double>& roots) {
    Matrix chi = Matrix::identity(a.rows());
    for (double mu : roots) {
        Matrix shifted = a;
        for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= mu;
        chi = chi * shifted;
    }
    return chi;
}

// Ackermann: f (1 x r) such that spec(a - b f) = roots, for a single column b.
Matrix ackermann_row(const Matrix& a, const Matrix& b, const std::vector<double>& roots) {
    const std::size_t r = a.rows();
    const Matrix ctrb = controllability_matrix(a, b);
    Vector e(r);
    e[r - 1] = 1.0;
    const Vector w = solve(ctrb.transpose(), e);
    const Matrix chi = poly_of_matrix(a, roots);
    Matrix f(1, r);
    for (std::size_t j = 0; j < r; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < r; ++i) acc += w[i] * chi(i, j);
        f(0, j) = acc;
    }
    return f;
}

}  // namespace

RegularForm to_regular_form(const Matrix& a, const Matrix& b) {
    if (a.empty() || a.rows() != a.cols() || b.rows() != a.rows() || b.cols() == 0) {
        fail(ErrorKind::validation, "regular form needs square A and conforming nonempty B");
    }
    a.ensure_finite("regular form A");
    b.ensure_finite("regular form B");
    const std::size_t n = a.rows(), m = b.cols();
    if (m >= n) {
        fail(ErrorKind::validation,
             "regular form needs at least one unactuated state (m < n)");
    }
    if (rank(b) != m) {
        fail(ErrorKind::infeasible, "regular form: B does not have full column rank");
    }

    // Prefer the natural state order; permute only when the bottom block of B
    // is singular.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (!square_invertible(b.block(n - m, 0, m, m))) {
        const std::vector<std::size_t> bottom = independent_rows(b);
        if (bottom.empty()) {
            fail(ErrorKind::infeasible,
                 "regular form: no row permutation makes the bottom block of B invertible");
        }
        order.clear();
        std::vector<bool> in_bottom(n, false);
        for (std::size_t i : bottom) in_bottom[i] = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!in_bottom[i]) order.push_back(i);
        order.insert(order.end(), bottom.begin(), bottom.end());
    }

    const Matrix pm = perm_matrix(order);
    const Matrix bp = pm * b;
    const Matrix b1 = bp.block(0, 0, n - m, m);
    const Matrix b2 = bp.block(n - m, 0, m, m);
    const Matrix b2_inv = inverse(b2);

    RegularForm rf;
    rf.row_perm = order;
    rf.b2 = b2;
    rf.t1 = block2x2(Matrix::identity(n - m), (b1 * b2_inv) * -1.0, Matrix(), b2_inv) * pm;
    rf.t1_inv = pm.transpose() * block2x2(Matrix::identity(n - m), b1, Matrix(), b2);

    const Matrix tb = rf.t1 * b;
    Matrix want(n, m);
    for (std::size_t i = 0; i < m; ++i) want(n - m + i, i) = 1.0;
    if ((tb - want).norm_inf() > 1e-12) {
        fail(ErrorKind::numeric, "regular form: T1 B deviates from [0; I]");
    }

    const Matrix a_reg = rf.t1 * a * rf.t1_inv;
    rf.a11 = a_reg.block(0, 0, n - m, n - m);
    rf.a12 = a_reg.block(0, n - m, n - m, m);
    rf.a21 = a_reg.block(n - m, 0, m, n - m);
    rf.a22 = a_reg.block(n - m, n - m, m, m);
    return rf;
}

RegularForm to_regular_form(const UncertainLti& sys) {
    sys.validate();
    return to_regular_form(sys.a, sys.b);
}

std::vector<double> default_surface_poles(std::size_t count) {
    return std::vector<double>(count, -1.0);
}

SurfaceDesign design_k(const RegularForm& rf, const std::vector<double>& desired_poles) {
    const std::size_t r = rf.a11.rows();
    const std::size_t m = rf.b2.rows();
    if (desired_poles.size() != r) {
        std::ostringstream msg;
        msg << "surface design needs " << r << " poles, got " << desired_poles.size();
        fail(ErrorKind::validation, msg.str());
    }
    for (double mu : desired_poles) {
        if (!(mu < 0.0)) fail(ErrorKind::validation, "surface poles must be strictly negative reals");
    }
    if (!is_controllable(rf.a11, rf.a12)) {
        fail(ErrorKind::infeasible, "surface design: reduced pair (A11, A12) is uncontrollable");
    }

    // Reduce to one input column. Single-input pairs are used directly;
    // otherwise scan a deterministic dyad list for a controllable combination.
    Matrix k;
    if (m == 1) {
        k = ackermann_row(rf.a11, rf.a12, desired_poles) * -1.0;
    } else {
        std::vector<Vector> dyads;
        for (std::size_t i = 0; i < m; ++i) {
            Vector q(m);
            q[i] = 1.0;
            dyads.push_back(q);
        }
        Vector ones(m);
        for (std::size_t i = 0; i < m; ++i) ones[i] = 1.0;
        dyads.push_back(ones);
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int rep = 0; rep < 4; ++rep) {
            Vector q(m);
            for (std::size_t i = 0; i < m; ++i) q[i] = dist(rng);
            dyads.push_back(q);
        }
        bool placed = false;
        for (const Vector& q : dyads) {
            const Matrix bq = rf.a12 * column_matrix(q);
            if (!is_controllable(rf.a11, bq)) continue;
            const Matrix f = ackermann_row(rf.a11, bq, desired_poles);
            k = column_matrix(q) * (f * -1.0);
            placed = true;
            break;
        }
        if (!placed) {
            fail(ErrorKind::infeasible,
                 "surface design: no dyad reduction of (A11, A12) is controllable");
        }
    }

    SurfaceDesign d;
    d.k = k;
    d.reduced_a = rf.a11 + rf.a12 * k;
    d.script_a = rf.a21 + rf.a22 * k - k * d.reduced_a;
    d.a22_eff = rf.a22 - k * rf.a12;
    d.t2 = block2x2(Matrix::identity(r), Matrix(), k * -1.0, Matrix::identity(m));
    d.t2_inv = block2x2(Matrix::identity(r), Matrix(), k, Matrix::identity(m));

    std::vector<double> achieved = eig_real_parts(d.reduced_a);
    std::vector<double> want = desired_poles;
    std::sort(achieved.begin(), achieved.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < r; ++i) {
        if (std::abs(achieved[i] - want[i]) > 1e-6 * (1.0 + std::abs(want[i]))) {
            fail(ErrorKind::numeric, "surface design: achieved spectrum misses the request");
        }
    }
    return d;
}

Vector sigma(const SurfaceDesign& design, const Vector& eta, const Vector& xi) {
    return xi - design.k * eta;
}

}  // namespace rtmf
