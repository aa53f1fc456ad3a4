#pragma once

#include <cstdint>
#include <vector>

#include "mixhk/graph.hpp"
#include "mixhk/state.hpp"

namespace mixhk {

/// Dense column-ordered matrix, only as large as the spectral checks need.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    static Matrix identity(int n);

    double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

Matrix matmul(const Matrix& lhs, const Matrix& rhs);
Matrix transpose(const Matrix& m);

/// Symmetric n x n matrix; set() writes both triangles so the stored entries
/// are symmetric exactly.
struct SymmetricMatrix {
    int n = 0;
    std::vector<double> a;  // row-major

    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    void set(int i, int j, double v) {
        a[static_cast<std::size_t>(i) * n + j] = v;
        a[static_cast<std::size_t>(j) * n + i] = v;
    }

    double inf_norm() const;
    /// Symmetrized product m'm, assembled as (M + M')/2 to kill rounding
    /// asymmetry from the explicit multiply.
    static SymmetricMatrix gram(const Matrix& m);
};

/// Full symmetric eigendecomposition. eigenvalues ascending; eigenvectors
/// column k pairs with eigenvalue k, unit norm, mutually orthonormal.
struct Spectrum {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

/// Graph Laplacian L = D - A: degrees on the diagonal, -1 on edges.
SymmetricMatrix laplacian(const SimpleGraph& g);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is <= 1e-12,
/// at most 100 sweeps; throws NumericalError with the residual otherwise.
/// Eigenvalues within 1e-10 of each other keep their assembly order.
Spectrum eigendecompose(const SymmetricMatrix& m);

/// Second-smallest eigenvalue. Requires the input to be positive semidefinite
/// within -1e-10 on the smallest eigenvalue.
double lambda2(const SymmetricMatrix& m);

/// i(G) as the exact minimum over subsets S with 0 < |S| <= n/2 of
/// |boundary(S)| / |S|; ties resolved toward the lexicographically smallest
/// witness. Exhaustive over all 2^n subsets, so n is capped at 20.
struct CheegerResult {
    long long numerator = 0;    // |boundary(S)| of the witness
    long long denominator = 1;  // |S| of the witness
    std::vector<int> witness;   // sorted vertex list
    int max_degree = 0;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

CheegerResult cheeger_constant(const SimpleGraph& g);

/// 2 i(G) >= lambda2(L) >= i(G)^2 / (2 max_degree), with 1e-9 slack on both
/// sides. Requires a connected graph with n <= 20.
struct CheegerSandwichReport {
    double cheeger = 0.0;
    double lambda2 = 0.0;
    int max_degree = 0;
    double upper = 0.0;  // 2 i(G)
    double lower = 0.0;  // i(G)^2 / (2 max_degree)
    bool pass = false;
};

CheegerSandwichReport check_cheeger_sandwich(const SimpleGraph& g);

/// Smallest eigenvalue of a generalized Laplacian of a connected graph is
/// simple (gap > 1e-9) and its eigenvector, sign-normalized, is entrywise
/// positive (> 1e-12).
struct PerronReport {
    double lambda1 = 0.0;
    double gap = 0.0;
    double min_entry = 0.0;
    bool pass = false;
};

PerronReport check_perron_frobenius(const SymmetricMatrix& m, const SimpleGraph& g);

/// For Q = (I - diag(alpha)) (I + D)^-1 L of a connected graph with all
/// alpha_i < 1: Q'Q has smallest eigenvalue 0 (|.| <= 1e-9) with eigenvector
/// parallel to the all-ones vector within angle 1e-6, lambda2 > 0, and
/// lambda2(Q'Q) >= ((1 - max alpha)/n)^2 lambda2(L)^2 - 1e-9.
struct Lambda2QQReport {
    double lambda1 = 0.0;
    double angle_to_ones = 0.0;
    double lambda2_qq = 0.0;
    double lower_bound = 0.0;
    bool pass = false;
};

Lambda2QQReport check_lambda2_QQ(const SimpleGraph& g, const StubbornnessDraw& alpha);

/// True iff m is symmetric with m_ij < 0 exactly on edges of g and m_ij == 0
/// off edges (diagonal unconstrained).
bool is_generalized_laplacian(const SymmetricMatrix& m, const SimpleGraph& g);

bool is_connected(const SimpleGraph& g);

}  // namespace mixhk
