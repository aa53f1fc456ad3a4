#include "mixhk/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "mixhk/errors.hpp"

namespace mixhk {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols != rhs.rows) throw ShapeError("matmul: inner dimensions differ");
    Matrix out(lhs.rows, rhs.cols);
    for (int i = 0; i < lhs.rows; ++i)
        for (int k = 0; k < lhs.cols; ++k) {
            const double v = lhs(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < rhs.cols; ++j) out(i, j) += v * rhs(k, j);
        }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
    return out;
}

double SymmetricMatrix::inf_norm() const {
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

SymmetricMatrix SymmetricMatrix::gram(const Matrix& m) {
    const Matrix p = matmul(transpose(m), m);
    SymmetricMatrix out(p.rows);
    for (int i = 0; i < p.rows; ++i)
        for (int j = i; j < p.cols; ++j) out.set(i, j, 0.5 * (p(i, j) + p(j, i)));
    return out;
}

SymmetricMatrix laplacian(const SimpleGraph& g) {
    SymmetricMatrix m(g.n);
    const auto deg = g.degrees();
    for (int i = 0; i < g.n; ++i) m.set(i, i, static_cast<double>(deg[i]));
    for (auto [i, j] : g.edges) m.set(i, j, -1.0);
    return m;
}

bool is_connected(const SimpleGraph& g) {
    if (g.n == 0) return false;
    return connected_components(g).components.size() == 1;
}

namespace {

double offdiag_frobenius(const SymmetricMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) s += 2.0 * m(i, j) * m(i, j);
    return std::sqrt(s);
}

// Keeps near-degenerate eigenvalues (within 1e-10) in the order the sweep
// assembled them, so simplicity decisions elsewhere stay reproducible.
std::vector<int> eigen_order(const std::vector<double>& values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    std::size_t lo = 0;
    while (lo < order.size()) {
        std::size_t hi = lo + 1;
        while (hi < order.size() && values[order[hi]] - values[order[hi - 1]] <= 1e-10) ++hi;
        std::sort(order.begin() + lo, order.begin() + hi);
        lo = hi;
    }
    return order;
}

}  // namespace

Spectrum eigendecompose(const SymmetricMatrix& m) {
    const int n = m.n;
    SymmetricMatrix a = m;
    Matrix v = Matrix::identity(n);

    constexpr double target = 1e-12;
    constexpr int max_sweeps = 100;
    double off = offdiag_frobenius(a);
    for (int sweep = 0; sweep < max_sweeps && off > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Rotate rows/columns p and q of A; the (p,q) entry is
                // annihilated exactly.
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);

                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = offdiag_frobenius(a);
    }
    if (off > target)
        throw NumericalError("eigendecompose: Jacobi sweeps did not converge, residual " +
                                 std::to_string(off),
                             off);

    std::vector<double> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = a(i, i);
    const auto order = eigen_order(raw);

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = Matrix(n, n);
    for (int c = 0; c < n; ++c) {
        const int src = order[c];
        spec.eigenvalues[c] = raw[src];
        // Deterministic sign: largest-magnitude entry positive.
        int pivot = 0;
        for (int r = 1; r < n; ++r)
            if (std::abs(v(r, src)) > std::abs(v(pivot, src))) pivot = r;
        const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += v(r, src) * v(r, src);
        norm = std::sqrt(norm);
        for (int r = 0; r < n; ++r) spec.eigenvectors(r, c) = sign * v(r, src) / norm;
    }
    return spec;
}

double lambda2(const SymmetricMatrix& m) {
    if (m.n < 2) throw DomainError("lambda2: matrix order must be at least 2");
    const Spectrum spec = eigendecompose(m);
    if (spec.eigenvalues.front() < -1e-10)
        throw DomainError("lambda2: matrix is not positive semidefinite (lambda1 = " +
                          std::to_string(spec.eigenvalues.front()) + ")");
    return spec.eigenvalues[1];
}

CheegerResult cheeger_constant(const SimpleGraph& g) {
    if (g.n < 2) throw DomainError("cheeger_constant: need at least 2 vertices");
    if (g.n > 20) throw SizeLimitError("cheeger_constant: exhaustive search capped at n = 20");

    std::vector<std::uint32_t> adj(g.n, 0);
    for (auto [i, j] : g.edges) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
    }

    auto subset_vertices = [&](std::uint32_t mask) {
        std::vector<int> out;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v)) out.push_back(v);
        return out;
    };

    CheegerResult best;
    bool have = false;
    const std::uint32_t full = (g.n == 32) ? ~0u : ((1u << g.n) - 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int size = std::popcount(mask);
        if (2 * size > g.n) continue;
        long long boundary = 0;
        for (std::uint32_t rest = mask; rest;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            boundary += std::popcount(adj[v] & ~mask & full);
        }
        const long long sz = size;
        bool take = false;
        if (!have) {
            take = true;
        } else {
            const long long lhs = boundary * best.denominator;
            const long long rhs = best.numerator * sz;
            if (lhs < rhs) {
                take = true;
            } else if (lhs == rhs) {
                take = subset_vertices(mask) < best.witness;
            }
        }
        if (take) {
            best.numerator = boundary;
            best.denominator = sz;
            best.witness = subset_vertices(mask);
            have = true;
        }
    }
    best.max_degree = g.max_degree();
    return best;
}

CheegerSandwichReport check_cheeger_sandwich(const SimpleGraph& g) {
    if (!is_connected(g)) throw DomainError("check_cheeger_sandwich: graph must be connected");
    const CheegerResult ig = cheeger_constant(g);
    CheegerSandwichReport rep;
    rep.cheeger = ig.value();
    rep.max_degree = ig.max_degree;
    rep.lambda2 = lambda2(laplacian(g));
    rep.upper = 2.0 * rep.cheeger;
    rep.lower = rep.cheeger * rep.cheeger / (2.0 * ig.max_degree);
    rep.pass = (rep.upper + 1e-9 >= rep.lambda2) && (rep.lambda2 >= rep.lower - 1e-9);
    return rep;
}

bool is_generalized_laplacian(const SymmetricMatrix& m, const SimpleGraph& g) {
    if (m.n != g.n) return false;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) {
            const double v = m(i, j);
            if (g.has_edge(i, j)) {
                if (!(v < 0.0)) return false;
            } else if (v != 0.0) {
                return false;
            }
        }
    return true;
}

PerronReport check_perron_frobenius(const SymmetricMatrix& m, const SimpleGraph& g) {
    if (!is_generalized_laplacian(m, g))
        throw PreconditionError("check_perron_frobenius: not a generalized Laplacian of g");
    if (!is_connected(g))
        throw PreconditionError("check_perron_frobenius: graph must be connected");

    const Spectrum spec = eigendecompose(m);
    PerronReport rep;
    rep.lambda1 = spec.eigenvalues[0];
    rep.gap = g.n > 1 ? spec.eigenvalues[1] - spec.eigenvalues[0] : 1.0;

    // Sign-normalize so the largest-magnitude entry is positive, then demand
    // strict positivity everywhere.
    int pivot = 0;
    for (int r = 1; r < g.n; ++r)
        if (std::abs(spec.eigenvectors(r, 0)) > std::abs(spec.eigenvectors(pivot, 0))) pivot = r;
    const double sign = spec.eigenvectors(pivot, 0) < 0.0 ? -1.0 : 1.0;
    rep.min_entry = sign * spec.eigenvectors(0, 0);
    for (int r = 1; r < g.n; ++r)
        rep.min_entry = std::min(rep.min_entry, sign * spec.eigenvectors(r, 0));

    rep.pass = rep.gap > 1e-9 && rep.min_entry > 1e-12;
    return rep;
}

Lambda2QQReport check_lambda2_QQ(const SimpleGraph& g, const StubbornnessDraw& alpha) {
    if (static_cast<int>(alpha.alphas.size()) != g.n)
        throw ShapeError("check_lambda2_QQ: alpha length mismatch");
    if (!is_connected(g)) throw PreconditionError("check_lambda2_QQ: graph must be connected");
    double max_alpha = 0.0;
    for (double a : alpha.alphas) {
        if (a >= 1.0)
            throw PreconditionError("check_lambda2_QQ: requires alpha_i < 1 for all agents");
        max_alpha = std::max(max_alpha, a);
    }

    const SymmetricMatrix lap = laplacian(g);
    const auto deg = g.degrees();
    Matrix q(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        const double scale = (1.0 - alpha.alphas[i]) / (1.0 + deg[i]);
        for (int j = 0; j < g.n; ++j) q(i, j) = scale * lap(i, j);
    }

    const SymmetricMatrix qq = SymmetricMatrix::gram(q);
    const Spectrum spec = eigendecompose(qq);

    Lambda2QQReport rep;
    rep.lambda1 = spec.eigenvalues[0];
    rep.lambda2_qq = spec.eigenvalues[1];

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(g.n));
    double dot = 0.0;
    for (int r = 0; r < g.n; ++r) dot += spec.eigenvectors(r, 0) * inv_sqrt_n;
    rep.angle_to_ones = std::acos(std::min(1.0, std::abs(dot)));

    const double l2 = lambda2(lap);
    const double factor = (1.0 - max_alpha) / g.n;
    rep.lower_bound = factor * factor * l2 * l2;

    rep.pass = std::abs(rep.lambda1) <= 1e-9 && rep.angle_to_ones <= 1e-6 &&
               rep.lambda2_qq > 1e-12 && rep.lambda2_qq >= rep.lower_bound - 1e-9;
    return rep;
}

}  // namespace mixhk
