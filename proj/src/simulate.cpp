#include "sla/simulate.hpp"

#include <cmath>

#include "sla/rng.hpp"

namespace sla {

namespace {

constexpr std::uint64_t kSignalStream = 0x5349474eULL; // "SIGN"
constexpr std::uint64_t kNoiseStream = 0x4e4f4953ULL;  // "NOIS"

void fill_complex_gaussian(ComplexMatrix& X, SplitMix64& rng) {
    for (Index c = 0; c < X.cols(); ++c) {
        for (Index r = 0; r < X.rows(); ++r) {
            X(r, c) = rng.next_complex_gaussian();
        }
    }
}

} // namespace

void SourceScene::validate() {
    if (freqs.size() < 1) throw PreconditionError("scene: need at least one source");
    if (powers.size() != freqs.size()) {
        throw DimensionError("scene: frequency and power counts differ");
    }
    if (noise_power < 0.0) throw PreconditionError("scene: negative noise power");
    for (Index k = 0; k < freqs.size(); ++k) {
        freqs(k) = canonical_freq(freqs(k));
        if (!(powers(k) > 0.0)) throw PreconditionError("scene: source powers must be positive");
    }
    for (Index a = 0; a < freqs.size(); ++a) {
        for (Index b = a + 1; b < freqs.size(); ++b) {
            const double gap = std::abs(freqs(a) - freqs(b));
            if (std::min(gap, 1.0 - gap) < 1e-12) {
                throw PreconditionError("scene: duplicate source frequency " +
                                        std::to_string(freqs(a)));
            }
        }
    }
}

SourceScene::SourceScene(RealVector frequencies, RealVector source_powers, double sigma2)
    : freqs(std::move(frequencies)), powers(std::move(source_powers)), noise_power(sigma2) {
    validate();
}

SourceScene::SourceScene(RealVector frequencies, double sigma2)
    : freqs(std::move(frequencies)), powers(RealVector::Ones(freqs.size())), noise_power(sigma2) {
    validate();
}

SourceScene benchmark_scene(double sigma2) {
    RealVector f(8);
    f << 0.1, 0.25, 0.35, 0.45, 0.6, 0.7, 0.8, 0.9;
    return SourceScene(std::move(f), sigma2);
}

SourceScene benchmark_scene_delta(double sigma2, double delta) {
    RealVector f(8);
    f << 0.1, 0.25, 0.35, 0.45, 0.6, 0.7, 0.8, 0.8 + delta;
    return SourceScene(std::move(f), sigma2);
}

ComplexMatrix complex_gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw DimensionError("complex_gaussian_matrix: empty shape");
    ComplexMatrix X(rows, cols);
    SplitMix64 rng(seed);
    fill_complex_gaussian(X, rng);
    return X;
}

Snapshots sample_snapshots(const Geometry& geom, const SourceScene& scene, Index n_snapshots,
                           std::uint64_t seed) {
    if (n_snapshots < 1) throw PreconditionError("sample_snapshots: need L >= 1");

    const Index k = scene.n_sources();
    ComplexMatrix S(k, n_snapshots);
    {
        SplitMix64 rng(derive_seed(seed, kSignalStream));
        fill_complex_gaussian(S, rng);
        const RealVector amplitude = scene.powers.cwiseSqrt();
        S = amplitude.asDiagonal() * S;
    }

    const ComplexMatrix A = steering_matrix(geom.omega, scene.freqs);
    Snapshots out{A * S, geom, seed};

    if (scene.noise_power > 0.0) {
        ComplexMatrix E(geom.n_sensors(), n_snapshots);
        SplitMix64 rng(derive_seed(seed, kNoiseStream));
        fill_complex_gaussian(E, rng);
        out.data += std::sqrt(scene.noise_power) * E;
    }
    return out;
}

ComplexMatrix true_covariance_ula(const SourceScene& scene, Index m) {
    if (m < 1) throw PreconditionError("true_covariance_ula: need m >= 1");
    ComplexVector lags(m);
    for (Index j = 0; j < m; ++j) {
        Complex r(0.0, 0.0);
        for (Index k = 0; k < scene.freqs.size(); ++k) {
            const double phase = 2.0 * M_PI * static_cast<double>(j) * scene.freqs(k);
            r += scene.powers(k) * Complex(std::cos(phase), std::sin(phase));
        }
        lags(j) = r;
    }
    lags(0) = Complex(lags(0).real() + scene.noise_power, 0.0);

    ComplexMatrix R(m, m);
    for (Index j = 0; j < m; ++j) {
        for (Index l = 0; l <= j; ++l) {
            R(j, l) = lags(j - l);
            R(l, j) = std::conj(lags(j - l));
        }
    }
    return R;
}

ComplexMatrix restrict_covariance(const ComplexMatrix& R, const std::vector<int>& positions) {
    if (R.rows() != R.cols()) {
        throw DimensionError("restrict_covariance: covariance must be square");
    }
    for (int p : positions) {
        if (p < 0 || p >= R.rows()) {
            throw DimensionError("restrict_covariance: position " + std::to_string(p) +
                                 " outside a " + std::to_string(R.rows()) + "-element ULA");
        }
    }
    const Index n = static_cast<Index>(positions.size());
    ComplexMatrix out(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index l = 0; l < n; ++l) {
            out(j, l) = R(positions[static_cast<std::size_t>(j)],
                          positions[static_cast<std::size_t>(l)]);
        }
    }
    return out;
}

ComplexMatrix restrict_covariance(const ComplexMatrix& R, const Geometry& geom) {
    if (R.rows() < geom.omega.back() + 1) {
        throw DimensionError("restrict_covariance: covariance smaller than the virtual array");
    }
    return restrict_covariance(R, geom.omega);
}

} // namespace sla
