#pragma once

#include <cstdint>

#include "sla/linalg.hpp"
#include "sla/rng.hpp"
#include "sla/simulate.hpp"
#include "sla/types.hpp"

namespace sla::testing {

inline ComplexMatrix random_hermitian(Index p, std::uint64_t seed) {
    const ComplexMatrix g = complex_gaussian_matrix(p, p, seed);
    return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_isometry(Index p, Index r, std::uint64_t seed) {
    const ComplexMatrix g = complex_gaussian_matrix(p, r, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return ComplexMatrix(qr.householderQ()).leftCols(r);
}

/// One randomized Weyl / Davis-Kahan perturbation case. The perturbation is
/// scaled so the Davis-Kahan hypothesis ||E|| <= 0.293 (lambda_r - lambda_{r+1})
/// holds by construction. Returns true when both inequalities pass with
/// 1e-9 slack.
inline bool perturbation_case_passes(std::uint64_t seed) {
    SplitMix64 rng(seed);
    const Index p = 3 + static_cast<Index>(rng.next_u64() % 18); // 3 .. 20
    const Index r = 1 + static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(p - 1));

    const ComplexMatrix R = random_hermitian(p, rng.next_u64());
    const HermitianEig base = hermitian_eig(R);
    const double gap = base.eigenvalues(r - 1) - base.eigenvalues(r);
    if (gap <= 1e-8) return true; // no usable spectral gap; hypothesis void

    ComplexMatrix E = random_hermitian(p, rng.next_u64());
    const double target = (0.01 + 0.99 * rng.next_open_unit()) * 0.293 * gap;
    E *= target / spectral_norm(E);
    const double e_norm = spectral_norm(E);

    const HermitianEig pert = hermitian_eig(R + E);
    for (Index j = 0; j < p; ++j) {
        if (std::abs(pert.eigenvalues(j) - base.eigenvalues(j)) > e_norm + 1e-9) return false;
    }
    const double dist = subspace_dist(pert.eigenvectors.leftCols(r),
                                      base.eigenvectors.leftCols(r));
    return dist <= 2.0 * e_norm / gap + 1e-9;
}

} // namespace sla::testing
