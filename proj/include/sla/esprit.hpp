#pragma once

#include "sla/covariance.hpp"
#include "sla/linalg.hpp"
#include "sla/simulate.hpp"
#include "sla/types.hpp"

namespace sla {

enum class Variant { DA, SS };

/// K estimated frequencies (sorted ascending, treated as an unordered set by
/// all consumers) together with the rotation eigenvalues that produced them
/// and the signal-subspace basis that was used.
struct FrequencyEstimate {
    RealVector freqs;
    ComplexVector esprit_eigs;
    ComplexMatrix subspace;
};

/// Orthonormal eigenvectors of the K algebraically largest eigenvalues of a
/// Hermitian matrix. Algebraic (not magnitude) order matters for the DA
/// estimate, whose smallest eigenvalues can be negative.
ComplexMatrix signal_subspace(const ComplexMatrix& r_hat, Index k);

/// Recover frequencies from a p x K signal-subspace basis via shift
/// invariance: z_k are the eigenvalues of pinv(U_1) U_2 where U_1 / U_2 drop
/// the last / first row, and f_k = arg(z_k) / (2 pi) mod 1.
FrequencyEstimate esprit_freqs(const ComplexMatrix& subspace);

/// ESPRIT on a covariance estimate of an m-element ULA (direct augmentation
/// output or anything shaped like it). Applies spatial smoothing first when
/// variant is SS.
FrequencyEstimate esprit_from_ula_cov(const ComplexMatrix& r_ula, Index k, Variant variant);

/// Full sparse-array pipeline from a covariance estimate of the sensors:
/// lag averaging, Toeplitz augmentation, optional smoothing, subspace,
/// frequencies.
FrequencyEstimate estimate_from_cov(const ComplexMatrix& r_omega, const Geometry& geom, Index k,
                                    Variant variant);

/// Same pipeline starting from raw snapshots.
FrequencyEstimate estimate(const Snapshots& snapshots, Index k, Variant variant);

/// The eigenvalue condition under which DA and SS select the same signal
/// subspace: lambda_K(R_da) > |lambda_M(R_da)|, eigenvalues sorted descending.
bool da_ss_same_subspace(const RealVector& da_eigenvalues, Index k);

} // namespace sla
