#pragma once

#include "sla/types.hpp"

namespace sla {

/// Relative residual tolerance for eigen/SVD factorization contracts.
inline constexpr double kEigTol = 1e-10;
/// Relative tolerance for accepting an input matrix as Hermitian.
inline constexpr double kHermTol = 1e-8;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending,
/// eigenvector column j paired with eigenvalue j. Columns are phase-normalized
/// so the largest-magnitude component of each eigenvector is real positive,
/// which makes the output deterministic for identical input bits.
struct HermitianEig {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Factor a Hermitian matrix H = V diag(lambda) V^H.
///
/// The input is symmetrized as (H + H^H)/2 before factoring; inputs whose
/// Hermitian deviation exceeds kHermTol * ||H|| are rejected. The result
/// satisfies ||H V - V diag(lambda)|| <= kEigTol * ||H|| and
/// ||V^H V - I|| <= kEigTol.
HermitianEig hermitian_eig(const ComplexMatrix& H);

/// Eigenvalues of a general (non-Hermitian) square matrix, any order.
/// Sized for ESPRIT rotation matrices: K x K with K <= 64.
ComplexVector eig_general(const ComplexMatrix& M);

/// Moore-Penrose pseudo-inverse via SVD truncation; singular values
/// <= rank_tol are dropped. rank_tol < 0 selects the default
/// max(m, n) * machine_eps * sigma_1(A).
ComplexMatrix pseudo_inverse(const ComplexMatrix& A, double rank_tol = -1.0);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& A);

/// Sine of the largest canonical angle between the column spaces of two
/// p x r isometries, i.e. max_j sin(arccos sigma_j(U^H V)). Value in [0, 1].
double subspace_dist(const ComplexMatrix& U, const ComplexMatrix& V);

} // namespace sla
