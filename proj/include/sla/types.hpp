#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace sla {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using Complex = std::complex<double>;

using ComplexMatrix = MatrixX<Complex>;
using ComplexVector = VectorX<Complex>;
using RealMatrix = MatrixX<double>;
using RealVector = VectorX<double>;
using IntVector = VectorX<int>;

/// Mismatched or unusable matrix/vector shapes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input violates a documented precondition (non-Hermitian, non-isometric, ...).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A sparse-array geometry cannot support the requested operation.
struct GeometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The requested problem exceeds what the configuration can deliver (e.g. K > M-1).
struct CapabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An iterative kernel failed to converge.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A matrix expected to have full rank is rank-deficient.
struct RankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An ESPRIT eigenvalue collapsed to (numerical) zero; its frequency is undefined.
struct DegenerateEigenvalueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed configuration file or command line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sla
