#include <doctest.h>

#include <complex>

#include "sla/array.hpp"
#include "sla/linalg.hpp"
#include "test_support.hpp"

using namespace sla;
using sla::testing::random_hermitian;
using sla::testing::random_isometry;

namespace {

ComplexMatrix diag3(double a, double b, double c) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

} // namespace

TEST_CASE("hermitian_eig on the identity") {
    const HermitianEig eig = hermitian_eig(ComplexMatrix::Identity(3, 3));
    for (Index j = 0; j < 3; ++j) CHECK(eig.eigenvalues(j) == doctest::Approx(1.0).epsilon(1e-12));
    const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((gram - ComplexMatrix::Identity(3, 3)).norm() <= 1e-10);
}

TEST_CASE("hermitian_eig keeps a diagonal matrix in descending order") {
    const HermitianEig eig = hermitian_eig(diag3(5.0, 2.0, -1.0));
    CHECK(eig.eigenvalues(0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eig.eigenvalues(2) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig of a rank-one steering outer product") {
    const ComplexVector a = steering_vector({0, 1, 2}, 0.25);
    const ComplexMatrix h = a * a.adjoint();
    const HermitianEig eig = hermitian_eig(h);
    CHECK(eig.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(eig.eigenvalues(1)) <= 1e-12);
    CHECK(std::abs(eig.eigenvalues(2)) <= 1e-12);
    // leading eigenvector collinear with a / sqrt(3)
    const Complex overlap = (a / std::sqrt(3.0)).dot(eig.eigenvectors.col(0));
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig rejects bad inputs") {
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionError);
    ComplexMatrix skew = ComplexMatrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(skew), PreconditionError);
}

TEST_CASE("hermitian_eig reconstruction contract on random matrices") {
    int checked = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const Index p = 1 + static_cast<Index>(t % 20);
        const ComplexMatrix h = random_hermitian(p, 1000 + t);
        const HermitianEig eig = hermitian_eig(h);
        const ComplexMatrix rebuilt =
            eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
        REQUIRE(spectral_norm(rebuilt - h) <=
                1e-10 * static_cast<double>(p) * spectral_norm(h));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("hermitian_eig output is deterministic and phase-normalized") {
    const ComplexMatrix h = random_hermitian(12, 77);
    const HermitianEig first = hermitian_eig(h);
    const HermitianEig second = hermitian_eig(h);
    CHECK((first.eigenvalues.array() == second.eigenvalues.array()).all());
    CHECK((first.eigenvectors.array() == second.eigenvectors.array()).all());

    for (Index j = 0; j < first.eigenvectors.cols(); ++j) {
        Index pivot = 0;
        double best = 0.0;
        for (Index i = 0; i < first.eigenvectors.rows(); ++i) {
            if (std::abs(first.eigenvectors(i, j)) > best) {
                best = std::abs(first.eigenvectors(i, j));
                pivot = i;
            }
        }
        CHECK(first.eigenvectors(pivot, j).real() > 0.0);
        CHECK(std::abs(first.eigenvectors(pivot, j).imag()) <= 1e-12 * best);
    }
}

TEST_CASE("Weyl and Davis-Kahan perturbation properties") {
    for (std::uint64_t t = 0; t < 1000; ++t) {
        REQUIRE(sla::testing::perturbation_case_passes(42000 + t));
    }
}

TEST_CASE("eig_general on small analytic cases") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(0.0, 2.0);
    d(1, 1) = Complex(3.0, 0.0);
    ComplexVector z = eig_general(d);
    std::sort(z.data(), z.data() + 2,
              [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
    CHECK(std::abs(z(0) - Complex(0.0, 2.0)) <= 1e-12);
    CHECK(std::abs(z(1) - Complex(3.0, 0.0)) <= 1e-12);

    ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    z = eig_general(swap);
    std::sort(z.data(), z.data() + 2,
              [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
    CHECK(std::abs(z(0) - Complex(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(z(1) - Complex(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("eig_general recovers constructed eigenvalues") {
    // Build M = V diag(e^{±i 2 pi 0.1}) V^{-1} from a random invertible V.
    const double phase = 2.0 * M_PI * 0.1;
    ComplexMatrix v = complex_gaussian_matrix(2, 2, 2024);
    REQUIRE(std::abs(v.determinant()) > 1e-3);
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = std::polar(1.0, phase);
    d(1, 1) = std::polar(1.0, -phase);
    const ComplexMatrix m = v * d * v.inverse();

    ComplexVector z = eig_general(m);
    std::sort(z.data(), z.data() + 2,
              [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
    CHECK(std::abs(z(0) - d(1, 1)) <= 1e-10);
    CHECK(std::abs(z(1) - d(0, 0)) <= 1e-10);

    // characteristic-polynomial residual, checkable at this size
    for (Index j = 0; j < 2; ++j) {
        const Complex det = (m - z(j) * ComplexMatrix::Identity(2, 2)).determinant();
        CHECK(std::abs(det) <= kEigTol * std::pow(spectral_norm(m), 2.0));
    }
}

TEST_CASE("eig_general rejects oversized and non-square inputs") {
    CHECK_THROWS_AS(eig_general(ComplexMatrix::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(eig_general(ComplexMatrix::Identity(65, 65)), PreconditionError);
}

TEST_CASE("pseudo_inverse basics") {
    const ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
    CHECK((pseudo_inverse(eye) - eye).norm() <= 1e-12);

    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 2.0;
    const ComplexMatrix pinv = pseudo_inverse(a);
    CHECK(std::abs(pinv(0, 0) - Complex(0.5, 0.0)) <= 1e-14);
    CHECK(std::abs(pinv(0, 1)) <= 1e-14);
    CHECK(std::abs(pinv(1, 0)) <= 1e-14);
    CHECK(std::abs(pinv(1, 1)) <= 1e-14);
}

TEST_CASE("pseudo_inverse of a full-rank tall matrix is a left inverse") {
    const ComplexMatrix a = complex_gaussian_matrix(4, 2, 99);
    const ComplexMatrix left = pseudo_inverse(a) * a;
    CHECK((left - ComplexMatrix::Identity(2, 2)).norm() <= 1e-10);
}

TEST_CASE("pseudo_inverse satisfies the Moore-Penrose identities") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        SplitMix64 rng(7000 + t);
        const Index m = 2 + static_cast<Index>(rng.next_u64() % 6);
        const Index n = 2 + static_cast<Index>(rng.next_u64() % 6);
        ComplexMatrix a = complex_gaussian_matrix(m, n, rng.next_u64());
        if (t % 2 == 0) {
            // force rank deficiency by duplicating a column
            a.col(n - 1) = a.col(0);
        }
        const ComplexMatrix pinv = pseudo_inverse(a);
        CHECK((a * pinv * a - a).norm() <= 1e-9 * std::max(1.0, a.norm()));
        CHECK((pinv * a * pinv - pinv).norm() <= 1e-9 * std::max(1.0, pinv.norm()));
    }
}

TEST_CASE("spectral_norm analytic values") {
    CHECK(spectral_norm(ComplexMatrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -4.0;
    CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-14));

    const ComplexVector a = steering_vector({0, 1, 2}, 0.25);
    CHECK(spectral_norm(a * a.adjoint()) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("subspace_dist analytic values") {
    const ComplexMatrix u = random_isometry(6, 2, 11);
    CHECK(subspace_dist(u, u) <= 1e-7);

    ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
    ComplexMatrix e2 = ComplexMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    e2(1, 0) = 1.0;
    CHECK(subspace_dist(e1, e2) == doctest::Approx(1.0).epsilon(1e-14));

    const double theta = 0.3;
    ComplexMatrix rotated = ComplexMatrix::Zero(2, 1);
    rotated(0, 0) = std::cos(theta);
    rotated(1, 0) = std::sin(theta);
    CHECK(subspace_dist(e1, rotated) == doctest::Approx(std::sin(theta)).epsilon(1e-12));
}

TEST_CASE("subspace_dist is symmetric and validates inputs") {
    for (std::uint64_t t = 0; t < 25; ++t) {
        const ComplexMatrix u = random_isometry(8, 3, 500 + 2 * t);
        const ComplexMatrix v = random_isometry(8, 3, 501 + 2 * t);
        CHECK(std::abs(subspace_dist(u, v) - subspace_dist(v, u)) <= 1e-12);
    }
    const ComplexMatrix u = random_isometry(4, 2, 5);
    CHECK_THROWS_AS(subspace_dist(u, random_isometry(5, 2, 6)), DimensionError);
    CHECK_THROWS_AS(subspace_dist(u, ComplexMatrix(2.0 * u)), PreconditionError);
}
