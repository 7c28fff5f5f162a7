#include "sla/esprit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace sla {

namespace {

constexpr double kDegenerateModulus = 1e-12;

double arg_to_unit_freq(const Complex& z) {
    double f = std::arg(z) / (2.0 * M_PI);
    if (f < 0.0) f += 1.0;
    if (f >= 1.0) f -= 1.0;
    return f + 0.0; // flush -0.0
}

} // namespace

ComplexMatrix signal_subspace(const ComplexMatrix& r_hat, Index k) {
    if (k < 1) throw PreconditionError("signal_subspace: need K >= 1");
    if (k >= r_hat.rows()) {
        throw DimensionError("signal_subspace: K = " + std::to_string(k) +
                             " must be below the matrix size " + std::to_string(r_hat.rows()));
    }
    return hermitian_eig(r_hat).eigenvectors.leftCols(k);
}

FrequencyEstimate esprit_freqs(const ComplexMatrix& subspace) {
    const Index p = subspace.rows();
    const Index k = subspace.cols();
    if (k < 1) throw DimensionError("esprit_freqs: empty subspace");
    if (p < k + 1) {
        throw DimensionError("esprit_freqs: need at least K+1 = " + std::to_string(k + 1) +
                             " rows, got " + std::to_string(p));
    }

    const ComplexMatrix upper = subspace.topRows(p - 1);   // drop last row
    const ComplexMatrix lower = subspace.bottomRows(p - 1); // drop first row

    Eigen::JacobiSVD<ComplexMatrix> svd(upper);
    const RealVector& sigma = svd.singularValues();
    const double rank_tol = static_cast<double>(std::max(p - 1, k)) *
                            std::numeric_limits<double>::epsilon() * sigma(0);
    if (sigma(k - 1) <= rank_tol) {
        throw RankError("esprit_freqs: subspace with last row removed is rank-deficient");
    }

    const ComplexMatrix rotation = pseudo_inverse(upper) * lower;
    const ComplexVector z = eig_general(rotation);
    for (Index j = 0; j < z.size(); ++j) {
        if (std::abs(z(j)) < kDegenerateModulus) {
            throw DegenerateEigenvalueError(
                "esprit_freqs: rotation eigenvalue collapsed to zero; frequency undefined");
        }
    }

    FrequencyEstimate out;
    out.subspace = subspace;
    out.freqs.resize(k);
    out.esprit_eigs.resize(k);
    std::vector<Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Index{0});
    RealVector raw(k);
    for (Index j = 0; j < k; ++j) raw(j) = arg_to_unit_freq(z(j));
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return raw(a) < raw(b); });
    for (Index j = 0; j < k; ++j) {
        out.freqs(j) = raw(order[static_cast<std::size_t>(j)]);
        out.esprit_eigs(j) = z(order[static_cast<std::size_t>(j)]);
    }
    return out;
}

FrequencyEstimate esprit_from_ula_cov(const ComplexMatrix& r_ula, Index k, Variant variant) {
    const ComplexMatrix& r = r_ula;
    if (variant == Variant::SS) {
        return esprit_freqs(signal_subspace(ss_covariance(r, r.rows()), k));
    }
    return esprit_freqs(signal_subspace(r, k));
}

FrequencyEstimate estimate_from_cov(const ComplexMatrix& r_omega, const Geometry& geom, Index k,
                                    Variant variant) {
    const Index m = coarray(geom).m_contig;
    if (k > m - 1) {
        throw CapabilityError("estimate: K = " + std::to_string(k) +
                              " exceeds the capability K <= M-1 = " + std::to_string(m - 1) +
                              " of this geometry (contiguous aperture M = " + std::to_string(m) +
                              ")");
    }
    const ComplexMatrix r_da = da_toeplitz(da_lags(r_omega, geom, m));
    return esprit_from_ula_cov(r_da, k, variant);
}

FrequencyEstimate estimate(const Snapshots& snapshots, Index k, Variant variant) {
    return estimate_from_cov(sample_covariance(snapshots), snapshots.geometry, k, variant);
}

bool da_ss_same_subspace(const RealVector& da_eigenvalues, Index k) {
    const Index m = da_eigenvalues.size();
    if (k < 1 || k > m) throw DimensionError("da_ss_same_subspace: K out of range");
    return da_eigenvalues(k - 1) > std::abs(da_eigenvalues(m - 1));
}

} // namespace sla
