#include "sla/covariance.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace sla {

ComplexMatrix sample_covariance(const ComplexMatrix& data) {
    if (data.cols() < 1) throw PreconditionError("sample_covariance: need L >= 1");
    ComplexMatrix R = ComplexMatrix::Zero(data.rows(), data.rows());
    R.selfadjointView<Eigen::Lower>().rankUpdate(data, 1.0 / static_cast<double>(data.cols()));
    return ComplexMatrix(R.selfadjointView<Eigen::Lower>());
}

ComplexMatrix sample_covariance(const Snapshots& snapshots) {
    return sample_covariance(snapshots.data);
}

LagVector da_lags(const ComplexMatrix& r_omega, const Geometry& geom, Index m) {
    const Index n = geom.n_sensors();
    if (r_omega.rows() != n || r_omega.cols() != n) {
        throw DimensionError("da_lags: covariance shape does not match the geometry");
    }
    if (m < 1) throw PreconditionError("da_lags: need m >= 1");

    LagVector out;
    out.lags = ComplexVector::Zero(m);
    out.counts = IntVector::Zero(m);
    for (Index j = 0; j < n; ++j) {
        for (Index l = 0; l < n; ++l) {
            const int mu = geom.omega[static_cast<std::size_t>(j)] -
                           geom.omega[static_cast<std::size_t>(l)];
            if (mu >= 0 && mu < m) {
                out.lags(mu) += r_omega(j, l);
                out.counts(mu) += 1;
            }
        }
    }
    for (Index mu = 0; mu < m; ++mu) {
        if (out.counts(mu) == 0) {
            throw GeometryError("da_lags: lag " + std::to_string(mu) +
                                " is missing from the coarray; contiguous aperture is smaller "
                                "than the requested m = " +
                                std::to_string(m));
        }
        out.lags(mu) /= static_cast<double>(out.counts(mu));
    }
    // The lag-0 average of a Hermitian matrix is real; drop the float dust so
    // the Toeplitz assembly below is exactly Hermitian.
    out.lags(0) = Complex(out.lags(0).real(), 0.0);
    return out;
}

ComplexMatrix da_toeplitz(const LagVector& lags) {
    const Index m = lags.size();
    if (m < 1) throw PreconditionError("da_toeplitz: empty lag vector");
    ComplexMatrix R(m, m);
    for (Index j = 0; j < m; ++j) {
        for (Index l = 0; l <= j; ++l) {
            R(j, l) = lags.lags(j - l);
            R(l, j) = std::conj(lags.lags(j - l));
        }
    }
    return R;
}

ComplexMatrix ss_covariance(const ComplexMatrix& r_da, Index m) {
    if (r_da.rows() != r_da.cols()) throw DimensionError("ss_covariance: matrix must be square");
    if (r_da.rows() != m) {
        throw DimensionError("ss_covariance: m = " + std::to_string(m) +
                             " does not match the matrix size " + std::to_string(r_da.rows()));
    }
    ComplexMatrix R = (r_da * r_da) / static_cast<double>(m);
    // R_da^2 is Hermitian in exact arithmetic; re-symmetrize the rounding.
    R = 0.5 * (R + R.adjoint()).eval();
    return R;
}

CovarianceSet covariance_set(const Snapshots& snapshots) {
    CovarianceSet set;
    set.m = coarray(snapshots.geometry).m_contig;
    set.r_omega = sample_covariance(snapshots);
    set.r_da = da_toeplitz(da_lags(set.r_omega, snapshots.geometry, set.m));
    set.r_ss = ss_covariance(set.r_da, set.m);
    return set;
}

std::string format_complex(const Complex& z) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g%+.12gj", z.real(), z.imag());
    return buffer;
}

namespace {

void dump_matrix(const std::string& name, const ComplexMatrix& A, std::ostream& out) {
    out << name << ' ' << A.rows() << ' ' << A.cols() << '\n';
    for (Index j = 0; j < A.rows(); ++j) {
        for (Index l = 0; l < A.cols(); ++l) {
            if (l > 0) out << ' ';
            out << format_complex(A(j, l));
        }
        out << '\n';
    }
}

} // namespace

void dump_covariance_set(const CovarianceSet& set, std::ostream& out) {
    dump_matrix("r_omega_hat", set.r_omega, out);
    dump_matrix("r_da_hat", set.r_da, out);
    dump_matrix("r_ss_hat", set.r_ss, out);
}

} // namespace sla
