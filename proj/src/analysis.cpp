#include "sla/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include "sla/linalg.hpp"

namespace sla {

double wraparound_dist(double f, double g) {
    const double d = std::abs(f - g);
    return std::min(d, 1.0 - d);
}

namespace {

void check_equal_sizes(const RealVector& a, const RealVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("matched_distance: sets have different sizes, " +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    if (a.size() < 1) throw DimensionError("matched_distance: empty frequency sets");
}

} // namespace

double matched_distance_bruteforce(const RealVector& estimated, const RealVector& truth) {
    check_equal_sizes(estimated, truth);
    const Index k = truth.size();
    std::vector<Index> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), Index{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (Index j = 0; j < k; ++j) {
            worst = std::max(worst,
                             wraparound_dist(estimated(perm[static_cast<std::size_t>(j)]),
                                             truth(j)));
            if (worst >= best) break;
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double matched_distance_cyclic(const RealVector& estimated, const RealVector& truth) {
    check_equal_sizes(estimated, truth);
    const Index k = truth.size();
    RealVector a = estimated;
    RealVector b = truth;
    std::sort(a.data(), a.data() + k);
    std::sort(b.data(), b.data() + k);
    double best = std::numeric_limits<double>::infinity();
    for (Index shift = 0; shift < k; ++shift) {
        double worst = 0.0;
        for (Index j = 0; j < k; ++j) {
            worst = std::max(worst, wraparound_dist(a((j + shift) % k), b(j)));
            if (worst >= best) break;
        }
        best = std::min(best, worst);
    }
    return best;
}

double matched_distance(const RealVector& estimated, const RealVector& truth) {
    check_equal_sizes(estimated, truth);
    return truth.size() <= 9 ? matched_distance_bruteforce(estimated, truth)
                             : matched_distance_cyclic(estimated, truth);
}

double min_separation(const RealVector& freqs) {
    if (freqs.size() < 2) throw PreconditionError("min_separation: need at least 2 frequencies");
    double best = 0.5;
    for (Index a = 0; a < freqs.size(); ++a) {
        for (Index b = a + 1; b < freqs.size(); ++b) {
            best = std::min(best, wraparound_dist(freqs(a), freqs(b)));
        }
    }
    return best;
}

BoundIngredients bound_ingredients(const Geometry& geom, const SourceScene& scene,
                                   Index n_snapshots) {
    const Coarray ca = coarray(geom);
    BoundIngredients in;
    in.n_sensors = geom.n_sensors();
    in.m = ca.m_contig;
    in.k = scene.n_sources();
    in.n_snapshots = n_snapshots;
    in.p_min = scene.p_min();
    in.p_max = scene.p_max();
    in.noise_power = scene.noise_power;

    std::vector<int> aperture(static_cast<std::size_t>(in.m));
    std::iota(aperture.begin(), aperture.end(), 0);
    const ComplexMatrix a_m = steering_matrix(aperture, scene.freqs);
    const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(a_m).singularValues();
    in.sigma_k_a_m = sv(std::min<Index>(in.k, sv.size()) - 1);
    in.norm_a_omega = spectral_norm(steering_matrix(geom.omega, scene.freqs));
    return in;
}

double subspace_error_bound(const BoundIngredients& in) {
    if (in.m < in.k + 1) {
        throw PreconditionError("subspace_error_bound: requires M >= K+1");
    }
    if (in.n_snapshots < in.n_sensors) {
        throw PreconditionError("subspace_error_bound: requires L >= N_S");
    }
    const double numerator = 16.0 * static_cast<double>(in.n_sensors) *
                             std::sqrt(static_cast<double>(in.m));
    const double gap = in.p_min * in.sigma_k_a_m * in.sigma_k_a_m;
    const double level = in.p_max * in.norm_a_omega * in.norm_a_omega + in.noise_power;
    return numerator / gap * level / std::sqrt(static_cast<double>(in.n_snapshots));
}

namespace {

// log of the matched-distance bound; shared by the clamped and raw variants.
double log_md_bound(const BoundIngredients& in) {
    if (in.m < in.k + 1) throw PreconditionError("md_bound: requires M >= K+1");
    const double k = static_cast<double>(in.k);
    const double level =
        std::max(in.noise_power, in.p_max * in.norm_a_omega * in.norm_a_omega);
    return (2.0 * k + 9.0) * std::log(2.0) + std::log(static_cast<double>(in.n_sensors)) +
           std::log(static_cast<double>(in.m)) + 1.5 * std::log(k) - std::log(in.p_min) -
           3.0 * std::log(in.sigma_k_a_m) + std::log(level) -
           0.5 * std::log(static_cast<double>(in.n_snapshots));
}

} // namespace

double md_bound(const BoundIngredients& in) {
    const double lb = log_md_bound(in);
    if (lb >= 0.0) return 1.0;
    return std::exp(lb);
}

double md_bound_unclamped(const BoundIngredients& in) {
    const double lb = log_md_bound(in);
    if (lb > std::log(std::numeric_limits<double>::max())) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(lb);
}

double resolution_snapshots(const BoundIngredients& in, double delta) {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw PreconditionError("resolution_snapshots: delta must lie in (0, 0.5]");
    }
    if (in.m < in.k + 1) throw PreconditionError("resolution_snapshots: requires M >= K+1");
    const double k = static_cast<double>(in.k);
    const double level =
        std::max(in.noise_power * in.noise_power,
                 std::pow(in.p_max * in.norm_a_omega * in.norm_a_omega, 2.0));
    const double lb = (4.0 * k + 20.0) * std::log(2.0) +
                      2.0 * std::log(static_cast<double>(in.n_sensors)) +
                      2.0 * std::log(static_cast<double>(in.m)) + 3.0 * std::log(k) -
                      2.0 * std::log(in.p_min) - 6.0 * std::log(in.sigma_k_a_m) -
                      2.0 * std::log(delta) + std::log(level);
    if (lb > std::log(std::numeric_limits<double>::max())) {
        return std::numeric_limits<double>::infinity();
    }
    return std::exp(lb);
}

double gauss_cov_bound(Index p, Index n, double u, double sigma_norm) {
    if (n < 1 || p < 1) throw PreconditionError("gauss_cov_bound: need p, n >= 1");
    if (!(u > 0.0)) throw PreconditionError("gauss_cov_bound: need u > 0");
    const double x = std::sqrt(static_cast<double>(p) / static_cast<double>(n)) + u;
    return (2.0 * x + x * x) * sigma_norm;
}

double probability_floor(Index n_sensors) {
    return 1.0 - 2.0 * std::exp(-static_cast<double>(n_sensors) / 2.0);
}

BoundReport bound_report(const Geometry& geom, const SourceScene& scene, Index n_snapshots) {
    BoundReport report;
    report.ingredients = bound_ingredients(geom, scene, n_snapshots);
    report.md_bound = md_bound(report.ingredients);
    report.md_bound_raw = md_bound_unclamped(report.ingredients);
    report.probability_floor = probability_floor(report.ingredients.n_sensors);
    report.subspace_bound = report.ingredients.n_snapshots >= report.ingredients.n_sensors
                                ? subspace_error_bound(report.ingredients)
                                : std::numeric_limits<double>::quiet_NaN();
    return report;
}

void print_bound_report(const BoundReport& report, std::ostream& out) {
    const BoundIngredients& in = report.ingredients;
    out << "subspace_bound = " << report.subspace_bound << "\n"
        << "md_bound = " << report.md_bound << "\n"
        << "md_bound_unclamped = " << report.md_bound_raw << "\n"
        << "probability_floor = " << report.probability_floor << "\n"
        << "sigma_K_A_M = " << in.sigma_k_a_m << "\n"
        << "norm_A_Omega = " << in.norm_a_omega << "\n"
        << "p_min = " << in.p_min << "\n"
        << "p_max = " << in.p_max << "\n"
        << "sigma2 = " << in.noise_power << "\n"
        << "N_S = " << in.n_sensors << "\n"
        << "M = " << in.m << "\n"
        << "K = " << in.k << "\n"
        << "L = " << in.n_snapshots << "\n";
}

} // namespace sla
