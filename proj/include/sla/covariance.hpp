#pragma once

#include <iosfwd>
#include <string>

#include "sla/array.hpp"
#include "sla/simulate.hpp"
#include "sla/types.hpp"

namespace sla {

/// Averaged covariance lags r_0 .. r_{m-1} with the number of sensor pairs
/// contributing to each. r_0 is exactly real (its float dust is zeroed).
struct LagVector {
    ComplexVector lags;
    IntVector counts;

    Index size() const { return lags.size(); }
};

/// The covariance chain of one trial: the sparse-array sample covariance,
/// its direct-augmentation Toeplitz estimate, and the spatially smoothed
/// square. r_da is Hermitian Toeplitz but deliberately NOT projected to the
/// positive-semidefinite cone; possible indefiniteness is what separates the
/// DA and SS estimators at finite snapshot counts.
struct CovarianceSet {
    ComplexMatrix r_omega; // n_sensors x n_sensors
    ComplexMatrix r_da;    // m x m
    ComplexMatrix r_ss;    // m x m
    Index m = 0;
};

/// Sample covariance Y Y^H / L.
ComplexMatrix sample_covariance(const Snapshots& snapshots);
ComplexMatrix sample_covariance(const ComplexMatrix& data);

/// Average the entries of the sparse-array covariance sharing each sensor
/// difference mu = 0 .. m-1. Fails if some lag below m has no sensor pair,
/// naming the first missing one.
LagVector da_lags(const ComplexMatrix& r_omega, const Geometry& geom, Index m);

/// Assemble the Hermitian Toeplitz matrix with [R]_{jl} = r_{j-l}, negative
/// lags filled by conjugate symmetry.
ComplexMatrix da_toeplitz(const LagVector& lags);

/// Spatial smoothing: R_da^2 / m, positive semidefinite with the same
/// eigenvectors as R_da and eigenvalues squared over m.
ComplexMatrix ss_covariance(const ComplexMatrix& r_da, Index m);

/// Run the whole chain for one snapshot set.
CovarianceSet covariance_set(const Snapshots& snapshots);

/// Text dump: per matrix a "name rows cols" line followed by rows of
/// whitespace-separated complex entries formatted as re+imj.
void dump_covariance_set(const CovarianceSet& set, std::ostream& out);

/// Format one complex number as re+imj with 12 significant digits.
std::string format_complex(const Complex& z);

} // namespace sla
