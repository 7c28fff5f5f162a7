#pragma once

#include <iosfwd>

#include "sla/array.hpp"
#include "sla/simulate.hpp"
#include "sla/types.hpp"

namespace sla {

/// Wrap-around distance on the unit circle: min(|f-g|, 1-|f-g|) in [0, 0.5].
double wraparound_dist(double f, double g);

/// Matched distance between two frequency sets of equal size K: the minimum
/// over source permutations of the maximum wrap-around error. Dispatches to
/// brute force for K <= 9 and to cyclic alignment above.
double matched_distance(const RealVector& estimated, const RealVector& truth);

/// Exhaustive K!-permutation minimum; the unambiguous (slow) route.
double matched_distance_bruteforce(const RealVector& estimated, const RealVector& truth);

/// Sort both sets and take the best of the K cyclic pairings. Equals the
/// brute-force minimum because an optimal circular matching never crosses.
double matched_distance_cyclic(const RealVector& estimated, const RealVector& truth);

/// Minimum pairwise wrap-around separation of a frequency set, K >= 2.
double min_separation(const RealVector& freqs);

/// Everything the nonasymptotic bounds consume, computed once per scene and
/// geometry: sigma_K of the aperture steering matrix, the spectral norm of
/// the sensor steering matrix, the power extremes and the problem sizes.
struct BoundIngredients {
    double sigma_k_a_m = 0.0; // K-th singular value of A_M
    double norm_a_omega = 0.0; // spectral norm of A_Omega
    double p_min = 0.0;
    double p_max = 0.0;
    double noise_power = 0.0;
    Index n_sensors = 0;
    Index m = 0;
    Index k = 0;
    Index n_snapshots = 0;
};

BoundIngredients bound_ingredients(const Geometry& geom, const SourceScene& scene,
                                   Index n_snapshots);

/// Signal-subspace error bound:
/// 16 N_S sqrt(M) / (p_min sigma_K^2(A_M)) * (p_max ||A_Omega||^2 + sigma^2) / sqrt(L).
/// Requires L >= N_S and M >= K+1.
double subspace_error_bound(const BoundIngredients& in);

/// Matched-distance bound, clamped to 1:
/// min{1, 2^{2K+9} N_S M sqrt(K^3) / (p_min sigma_K^3(A_M))
///        * max{sigma^2, p_max ||A_Omega||^2} / sqrt(L)}.
/// Evaluated in log space so the 2^{2K+9} prefactor cannot overflow.
double md_bound(const BoundIngredients& in);

/// The unclamped value of the same expression (may be huge or +inf).
double md_bound_unclamped(const BoundIngredients& in);

/// Snapshot count beyond which resolution delta is guaranteed:
/// 2^{4K+20} N_S^2 M^2 K^3 / (p_min^2 sigma_K^6(A_M) delta^2)
///   * max{sigma^4, p_max^2 ||A_Omega||^4}.
double resolution_snapshots(const BoundIngredients& in, double delta);

/// Gaussian covariance concentration bound:
/// (2 (sqrt(p/n) + u) + (sqrt(p/n) + u)^2) * sigma_norm,
/// which fails with probability at most 2 e^{-n u^2 / 2}.
double gauss_cov_bound(Index p, Index n, double u, double sigma_norm);

/// Probability floor 1 - 2 e^{-N_S/2} attached to the subspace and md bounds.
double probability_floor(Index n_sensors);

/// Bound values plus their ingredients, serializable as a flat key-value
/// block for the CLI.
struct BoundReport {
    double subspace_bound = 0.0;
    double md_bound = 0.0;
    double md_bound_raw = 0.0;
    double probability_floor = 0.0;
    BoundIngredients ingredients;
};

BoundReport bound_report(const Geometry& geom, const SourceScene& scene, Index n_snapshots);

void print_bound_report(const BoundReport& report, std::ostream& out);

} // namespace sla
