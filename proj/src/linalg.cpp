#include "rtmf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rtmf/error.hpp"

namespace rtmf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require(bool ok, ErrorKind kind, const std::string& msg) {
    if (!ok) fail(kind, msg);
}

double row_sum_norm(const Matrix& a) {
    double norm = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
        norm = std::max(norm, s);
    }
    return norm;
}

}  // namespace

LuDecomposition::LuDecomposition(const Matrix& a) {
    require(!a.empty() && a.rows() == a.cols(), ErrorKind::validation,
            "LU factorization needs a nonempty square matrix");
    a.ensure_finite("LU factorization input");
    n_ = a.rows();
    lu_ = a;
    row_perm_.resize(n_);
    col_perm_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) row_perm_[i] = col_perm_[i] = i;
    row_sum_norm_ = row_sum_norm(a);

    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t pi = k, pj = k;
        double best = 0.0;
        for (std::size_t i = k; i < n_; ++i)
            for (std::size_t j = k; j < n_; ++j) {
                const double cand = std::abs(lu_(i, j));
                if (cand > best) {
                    best = cand;
                    pi = i;
                    pj = j;
                }
            }
        if (best <= row_sum_norm_ * kEps * static_cast<double>(n_) || best == 0.0) {
            singular_ = true;
            return;
        }
        if (pi != k) {
            std::swap(row_perm_[pi], row_perm_[k]);
            for (std::size_t j = 0; j < n_; ++j) std::swap(lu_(pi, j), lu_(k, j));
        }
        if (pj != k) {
            std::swap(col_perm_[pj], col_perm_[k]);
            for (std::size_t i = 0; i < n_; ++i) std::swap(lu_(i, pj), lu_(i, k));
        }
        for (std::size_t i = k + 1; i < n_; ++i) {
            const double m = lu_(i, k) / lu_(k, k);
            lu_(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
        }
    }
}

Vector LuDecomposition::substitute(const Vector& b) const {
    require(!singular_, ErrorKind::infeasible, "matrix is singular");
    require(b.size() == n_, ErrorKind::validation, "solve dimension mismatch");
    Vector y(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = b[row_perm_[i]];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * y[j];
        y[i] = acc;
    }
    for (std::size_t ii = n_; ii-- > 0;) {
        double acc = y[ii];
        for (std::size_t j = ii + 1; j < n_; ++j) acc -= lu_(ii, j) * y[j];
        y[ii] = acc / lu_(ii, ii);
    }
    Vector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[col_perm_[i]] = y[i];
    return x;
}

double LuDecomposition::cond_inf() const {
    if (singular_) return std::numeric_limits<double>::infinity();
    if (cond_cache_ >= 0.0) return cond_cache_;
    double inv_norm = 0.0;
    std::vector<double> abs_row_sums(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        Vector e(n_);
        e[j] = 1.0;
        const Vector col = substitute(e);
        for (std::size_t i = 0; i < n_; ++i) abs_row_sums[i] += std::abs(col[i]);
    }
    for (double s : abs_row_sums) inv_norm = std::max(inv_norm, s);
    cond_cache_ = row_sum_norm_ * inv_norm;
    return cond_cache_;
}

Vector solve(const Matrix& a, const Vector& b, const SolveOptions& opts) {
    b.ensure_finite("solve right-hand side");
    LuDecomposition lu(a);
    require(!lu.singular(), ErrorKind::infeasible, "linear solve: matrix is singular");
    const double cond = lu.cond_inf();
    require(cond <= opts.cond_limit, ErrorKind::infeasible,
            "linear solve: condition estimate " + std::to_string(cond) +
                " exceeds limit " + std::to_string(opts.cond_limit));
    Vector x = lu.substitute(b);
    // Iterative refinement: step while the correction is significant and the
    // residual strictly improves. Exactly representable solutions already
    // have a zero residual and must be returned untouched; a blind update
    // would spray sub-ulp noise into their zero entries.
    Vector r = b - a * x;
    for (int pass = 0; pass < 4; ++pass) {
        const double rnorm = r.norm_inf();
        if (rnorm == 0.0) break;
        const Vector dx = lu.substitute(r);
        if (dx.norm_inf() <= kEps * x.norm_inf()) break;
        const Vector xn = x + dx;
        const Vector rn = b - a * xn;
        if (rn.norm_inf() >= rnorm) break;
        x = xn;
        r = rn;
    }
    const double bound = 1e-9 * (1.0 + b.norm_inf());
    require(r.norm_inf() <= bound, ErrorKind::numeric,
            "linear solve: residual " + std::to_string(r.norm_inf()) +
                " exceeds contract bound " + std::to_string(bound));
    return x;
}

Matrix solve(const Matrix& a, const Matrix& b, const SolveOptions& opts) {
    require(a.rows() == b.rows(), ErrorKind::validation, "solve dimension mismatch");
    Matrix x(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const Vector xj = solve(a, b.col_vector(j), opts);
        for (std::size_t i = 0; i < x.rows(); ++i) x(i, j) = xj[i];
    }
    return x;
}

Matrix inverse(const Matrix& a, const SolveOptions& opts) {
    return solve(a, Matrix::identity(a.rows()), opts);
}

double cond_inf_estimate(const Matrix& a) {
    return LuDecomposition(a).cond_inf();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require(!a.empty() && !b.empty(), ErrorKind::validation, "kron of empty matrix");
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    k.ensure_finite("kronecker product");
    return k;
}

Vector stack_rows(const Matrix& m) {
    Vector v(m.rows() * m.cols());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v[idx++] = m(i, j);
    return v;
}

Matrix unstack_rows(const Vector& v, std::size_t rows, std::size_t cols) {
    require(v.size() == rows * cols, ErrorKind::validation,
            "unstack_rows: size does not factor into requested shape");
    Matrix m(rows, cols);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[idx++];
    return m;
}

namespace {

// Real parts of the roots of x^2 + b x + c.
void quadratic_real_parts(double b, double c, std::vector<double>& out) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        out.push_back((-b + root) / 2.0);
        out.push_back((-b - root) / 2.0);
    } else {
        out.push_back(-b / 2.0);
        out.push_back(-b / 2.0);
    }
}

// Real parts of the roots of x^3 + c2 x^2 + c1 x + c0. Exact triple roots
// (p = q = 0 after depression) come out exactly, which matters for repeated
// design poles such as the (s + 70)^3 reference model.
void cubic_real_parts(double c2, double c1, double c0, std::vector<double>& out) {
    const double shift = -c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    if (p == 0.0 && q == 0.0) {
        out.insert(out.end(), 3, shift);
        return;
    }
    const double delta = q * q / 4.0 + p * p * p / 27.0;
    if (delta > 0.0) {
        const double s = std::sqrt(delta);
        const double t1 = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
        out.push_back(t1 + shift);
        // Remaining factor t^2 + t1 t + (p + t1^2) has real part -t1/2.
        out.push_back(-t1 / 2.0 + shift);
        out.push_back(-t1 / 2.0 + shift);
        return;
    }
    // Three real roots (delta <= 0 implies p < 0 unless p = q = 0).
    const double r = 2.0 * std::sqrt(-p / 3.0);
    double cosarg = 3.0 * q / (p * r);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double phi = std::acos(cosarg);
    for (int k = 0; k < 3; ++k)
        out.push_back(r * std::cos((phi - 2.0 * M_PI * k) / 3.0) + shift);
}

void hessenberg_reduce(Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += a(i, k) * a(i, k);
        scale = std::sqrt(scale);
        if (scale == 0.0) continue;
        const double x0 = a(k + 1, k);
        const double alpha = (x0 >= 0.0 ? -scale : scale);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;
        // A <- (I - beta v v^T) A
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // A <- A (I - beta v v^T)
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

void record_2x2_real_parts(const Matrix& h, std::size_t i, std::vector<double>& out) {
    const double tr = h(i, i) + h(i + 1, i + 1);
    const double det = h(i, i) * h(i + 1, i + 1) - h(i, i + 1) * h(i + 1, i);
    quadratic_real_parts(-tr, det, out);
}

// Francis double-shift QR on an upper Hessenberg matrix.
std::vector<double> hessenberg_qr_real_parts(Matrix h) {
    const std::size_t n = h.rows();
    std::vector<double> out;
    out.reserve(n);
    std::size_t hi = n - 1;
    int iter = 0;
    int total_iter = 0;
    const int max_total = 60 * static_cast<int>(n);

    while (true) {
        // Zero negligible subdiagonals.
        for (std::size_t i = 0; i < hi; ++i) {
            const double small = kEps * (std::abs(h(i, i)) + std::abs(h(i + 1, i + 1)));
            if (std::abs(h(i + 1, i)) <= small) h(i + 1, i) = 0.0;
        }
        // Deflate converged eigenvalues from the bottom.
        if (hi == 0) {
            out.push_back(h(0, 0));
            break;
        }
        if (h(hi, hi - 1) == 0.0) {
            out.push_back(h(hi, hi));
            --hi;
            iter = 0;
            continue;
        }
        if (hi == 1 || h(hi - 1, hi - 2) == 0.0) {
            record_2x2_real_parts(h, hi - 1, out);
            if (hi == 1) break;
            hi -= 2;
            iter = 0;
            continue;
        }
        require(++total_iter <= max_total, ErrorKind::numeric,
                "eigenvalue iteration did not converge");
        // Active window [lo, hi].
        std::size_t lo = hi - 1;
        while (lo > 0 && h(lo, lo - 1) != 0.0) --lo;

        double s, t;
        ++iter;
        if (iter % 11 == 0) {
            // Exceptional shift to break symmetry-induced stalls.
            const double w = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
            s = 1.5 * w;
            t = w * w;
        } else {
            s = h(hi - 1, hi - 1) + h(hi, hi);
            t = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
        }
        double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) - s * h(lo, lo) + t;
        double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - s);
        double z = (lo + 2 <= hi) ? h(lo + 1, lo) * h(lo + 2, lo + 1) : 0.0;

        // Chase the bulge down the window; the last step uses a 2-element
        // reflector (has_z false).
        for (std::size_t k = lo; k + 1 <= hi; ++k) {
            if (k > lo) {
                x = h(k, k - 1);
                y = h(k + 1, k - 1);
                z = (k + 2 <= hi) ? h(k + 2, k - 1) : 0.0;
            }
            const bool has_z = (k + 2 <= hi);
            double v0 = x, v1 = y, v2 = has_z ? z : 0.0;
            const double norm = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
            if (norm == 0.0) continue;
            const double alpha = (v0 >= 0.0 ? -norm : norm);
            v0 -= alpha;
            const double vnorm2 = v0 * v0 + v1 * v1 + v2 * v2;
            if (vnorm2 == 0.0) continue;
            const double beta = 2.0 / vnorm2;
            const std::size_t jstart = (k > lo ? k - 1 : lo);
            for (std::size_t j = jstart; j < n; ++j) {
                double acc = v0 * h(k, j) + v1 * h(k + 1, j);
                if (has_z) acc += v2 * h(k + 2, j);
                acc *= beta;
                h(k, j) -= acc * v0;
                h(k + 1, j) -= acc * v1;
                if (has_z) h(k + 2, j) -= acc * v2;
            }
            const std::size_t iend = std::min(hi, k + 3);
            for (std::size_t i = 0; i <= iend; ++i) {
                double acc = v0 * h(i, k) + v1 * h(i, k + 1);
                if (has_z) acc += v2 * h(i, k + 2);
                acc *= beta;
                h(i, k) -= acc * v0;
                h(i, k + 1) -= acc * v1;
                if (has_z) h(i, k + 2) -= acc * v2;
            }
        }
        // Restore Hessenberg structure below the first subdiagonal.
        for (std::size_t i = lo + 2; i <= hi; ++i)
            for (std::size_t j = lo; j + 1 < i; ++j) h(i, j) = 0.0;
    }
    return out;
}

}  // namespace

std::vector<double> eig_real_parts(const Matrix& a) {
    require(!a.empty() && a.rows() == a.cols(), ErrorKind::validation,
            "eigenvalues need a nonempty square matrix");
    a.ensure_finite("eigenvalue input");
    const std::size_t n = a.rows();
    std::vector<double> out;
    if (n == 1) {
        out.push_back(a(0, 0));
    } else if (n == 2) {
        const double tr = a(0, 0) + a(1, 1);
        const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        quadratic_real_parts(-tr, det, out);
    } else if (n == 3) {
        // Monic characteristic polynomial from trace, principal minors, det.
        const double c2 = -(a(0, 0) + a(1, 1) + a(2, 2));
        const double m0 = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
        const double m1 = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
        const double m2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        const double det = a(0, 0) * m0 - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        cubic_real_parts(c2, m0 + m1 + m2, -det, out);
    } else {
        Matrix h = a;
        hessenberg_reduce(h);
        out = hessenberg_qr_real_parts(std::move(h));
    }
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

std::size_t rank(const Matrix& m, double tol) {
    require(!m.empty(), ErrorKind::validation, "rank of empty matrix");
    m.ensure_finite("rank input");
    Matrix w = m;
    const std::size_t r = w.rows(), c = w.cols();
    if (tol <= 0.0)
        tol = static_cast<double>(std::max(r, c)) * kEps * std::max(w.norm_inf(), 1e-300);
    std::size_t rk = 0;
    std::vector<bool> used_row(r, false);
    std::vector<bool> used_col(c, false);
    for (std::size_t step = 0; step < std::min(r, c); ++step) {
        // Full pivoting: largest remaining entry.
        double best = 0.0;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (used_row[i]) continue;
            for (std::size_t j = 0; j < c; ++j) {
                if (used_col[j]) continue;
                if (std::abs(w(i, j)) > best) {
                    best = std::abs(w(i, j));
                    pi = i;
                    pj = j;
                }
            }
        }
        if (best <= tol) break;
        ++rk;
        used_row[pi] = true;
        used_col[pj] = true;
        for (std::size_t i = 0; i < r; ++i) {
            if (used_row[i] || w(i, pj) == 0.0) continue;
            const double f = w(i, pj) / w(pi, pj);
            for (std::size_t j = 0; j < c; ++j)
                if (!used_col[j]) w(i, j) -= f * w(pi, j);
            w(i, pj) = 0.0;
        }
    }
    return rk;
}

Matrix controllability_matrix(const Matrix& a, const Matrix& b) {
    require(a.rows() == a.cols() && a.rows() == b.rows(), ErrorKind::validation,
            "controllability matrix dimension mismatch");
    const std::size_t n = a.rows();
    Matrix ctrb(n, n * b.cols());
    Matrix term = b;
    for (std::size_t k = 0; k < n; ++k) {
        ctrb.set_block(0, k * b.cols(), term);
        if (k + 1 < n) term = a * term;
    }
    return ctrb;
}

bool is_controllable(const Matrix& a, const Matrix& b) {
    return rank(controllability_matrix(a, b)) == a.rows();
}

}  // namespace rtmf
