#include "sla/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace sla {

namespace {

std::string shape_of(const ComplexMatrix& A) {
    return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

// Rotate a column so its largest-magnitude component is real positive.
// Among near-equal magnitudes the first index wins, keeping the choice
// deterministic.
void phase_normalize_column(ComplexMatrix& V, Index col) {
    Index pivot = 0;
    double best = 0.0;
    for (Index i = 0; i < V.rows(); ++i) {
        const double mag = std::abs(V(i, col));
        if (mag > best * (1.0 + 1e-12)) {
            best = mag;
            pivot = i;
        }
    }
    if (best == 0.0) return;
    const Complex z = V(pivot, col);
    V.col(col) *= std::conj(z) / std::abs(z);
}

// Lexicographic comparison of phase-normalized eigenvector columns; used
// only to order exactly tied eigenvalues reproducibly.
bool column_less(const ComplexMatrix& V, Index a, Index b) {
    for (Index i = 0; i < V.rows(); ++i) {
        const Complex& x = V(i, a);
        const Complex& y = V(i, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

} // namespace

HermitianEig hermitian_eig(const ComplexMatrix& H) {
    if (H.rows() != H.cols()) {
        throw DimensionError("hermitian_eig: matrix must be square, got " + shape_of(H));
    }
    const double scale = H.norm();
    if ((H - H.adjoint()).norm() > kHermTol * scale) {
        throw PreconditionError("hermitian_eig: matrix is not Hermitian within tolerance");
    }

    const ComplexMatrix Hs = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(Hs);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("hermitian_eig: eigensolver failed to converge on a " +
                             shape_of(H) + " matrix");
    }

    const Index p = H.rows();
    HermitianEig out;
    out.eigenvalues.resize(p);
    out.eigenvectors.resize(p, p);

    // Solver returns ascending order; flip to descending.
    for (Index j = 0; j < p; ++j) {
        out.eigenvalues(j) = solver.eigenvalues()(p - 1 - j);
        out.eigenvectors.col(j) = solver.eigenvectors().col(p - 1 - j);
    }
    for (Index j = 0; j < p; ++j) phase_normalize_column(out.eigenvectors, j);

    // Break exact eigenvalue ties by eigenvector content so repeated
    // eigenvalues still come out in one reproducible order.
    for (Index j = 0; j + 1 < p; ++j) {
        Index run = j;
        while (run + 1 < p && out.eigenvalues(run + 1) == out.eigenvalues(j)) ++run;
        if (run > j) {
            std::vector<Index> order(static_cast<std::size_t>(run - j + 1));
            std::iota(order.begin(), order.end(), j);
            std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
                return column_less(out.eigenvectors, a, b);
            });
            ComplexMatrix block(p, run - j + 1);
            for (Index k = 0; k <= run - j; ++k) {
                block.col(k) = out.eigenvectors.col(order[static_cast<std::size_t>(k)]);
            }
            out.eigenvectors.middleCols(j, run - j + 1) = block;
            j = run;
        }
    }

    const double residual =
        (Hs * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal()).norm();
    const double orthogonality =
        (out.eigenvectors.adjoint() * out.eigenvectors - ComplexMatrix::Identity(p, p)).norm();
    if (residual > kEigTol * std::max(scale, 1e-300) * std::sqrt(double(p)) ||
        orthogonality > kEigTol * std::sqrt(double(p))) {
        throw NumericalError("hermitian_eig: factorization residual exceeds contract on a " +
                             shape_of(H) + " matrix");
    }
    return out;
}

ComplexVector eig_general(const ComplexMatrix& M) {
    if (M.rows() != M.cols()) {
        throw DimensionError("eig_general: matrix must be square, got " + shape_of(M));
    }
    if (M.rows() > 64) {
        throw PreconditionError("eig_general: sized for K <= 64, got K = " +
                                std::to_string(M.rows()));
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_general: Schur iteration failed to converge on a " +
                             shape_of(M) + " matrix");
    }
    return solver.eigenvalues();
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& A, double rank_tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sigma = svd.singularValues();
    if (rank_tol < 0.0) {
        const double sigma1 = sigma.size() > 0 ? sigma(0) : 0.0;
        rank_tol = static_cast<double>(std::max(A.rows(), A.cols())) *
                   std::numeric_limits<double>::epsilon() * sigma1;
    }
    RealVector inv = RealVector::Zero(sigma.size());
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > rank_tol) inv(i) = 1.0 / sigma(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double spectral_norm(const ComplexMatrix& A) {
    return Eigen::JacobiSVD<ComplexMatrix>(A).singularValues()(0);
}

double subspace_dist(const ComplexMatrix& U, const ComplexMatrix& V) {
    if (U.rows() != V.rows() || U.cols() != V.cols()) {
        throw DimensionError("subspace_dist: shapes differ, " + shape_of(U) + " vs " +
                             shape_of(V));
    }
    const Index r = U.cols();
    const ComplexMatrix eye = ComplexMatrix::Identity(r, r);
    if ((U.adjoint() * U - eye).norm() > kEigTol * std::sqrt(double(r)) ||
        (V.adjoint() * V - eye).norm() > kEigTol * std::sqrt(double(r))) {
        throw PreconditionError("subspace_dist: inputs must have orthonormal columns");
    }
    // sin of the largest canonical angle equals the spectral norm of the
    // residual (I - U U^H) V; this form stays accurate for tiny angles where
    // 1 - sigma_min(U^H V)^2 would cancel.
    const ComplexMatrix residual = V - U * (U.adjoint() * V);
    const double s = spectral_norm(residual);
    return std::min(s, 1.0);
}

} // namespace sla
