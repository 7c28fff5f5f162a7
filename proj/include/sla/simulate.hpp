#pragma once

#include <cstdint>

#include "sla/array.hpp"
#include "sla/types.hpp"

namespace sla {

/// K uncorrelated sources: distinct frequencies in [0, 1), positive powers,
/// plus the common noise power sigma^2 (>= 0, zero allowed).
struct SourceScene {
    RealVector freqs;
    RealVector powers;
    double noise_power = 0.0;

    SourceScene(RealVector frequencies, RealVector source_powers, double sigma2);

    /// Unit-power sources at the given frequencies.
    SourceScene(RealVector frequencies, double sigma2);

    int n_sources() const { return static_cast<int>(freqs.size()); }
    double p_min() const { return powers.minCoeff(); }
    double p_max() const { return powers.maxCoeff(); }

private:
    void validate();
};

/// The frequency set used by the experiments, K = 8.
SourceScene benchmark_scene(double sigma2);

/// Experiment-3 variant: last frequency replaced by 0.8 + delta.
SourceScene benchmark_scene_delta(double sigma2, double delta);

/// L array-output snapshots (columns) observed at the sensors of `geometry`.
struct Snapshots {
    ComplexMatrix data; // n_sensors x L
    Geometry geometry;
    std::uint64_t seed = 0;

    Index n_snapshots() const { return data.cols(); }
};

/// i.i.d. CN(0, 1) entries: real and imaginary parts independent N(0, 1/2).
/// Column-major fill order; bit-reproducible for a fixed seed.
ComplexMatrix complex_gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

/// Draw Y = A_Omega S + E with S columns i.i.d. CN(0, diag(powers)) and E
/// entries i.i.d. CN(0, sigma^2). Signal and noise use independent streams
/// derived from `seed`, so the draw depends only on (inputs, seed).
Snapshots sample_snapshots(const Geometry& geom, const SourceScene& scene, Index n_snapshots,
                           std::uint64_t seed);

/// Exact m x m covariance of an m-element ULA under the scene: Hermitian
/// Toeplitz with lag entries r_j = sum_k p_k e^{i 2 pi j f_k} (+ sigma^2 at
/// lag 0), equal to A_m diag(p) A_m^H + sigma^2 I.
ComplexMatrix true_covariance_ula(const SourceScene& scene, Index m);

/// Principal submatrix of R with rows/columns at the given sensor positions.
ComplexMatrix restrict_covariance(const ComplexMatrix& R, const std::vector<int>& positions);
ComplexMatrix restrict_covariance(const ComplexMatrix& R, const Geometry& geom);

} // namespace sla
