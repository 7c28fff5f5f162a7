#include <doctest.h>

#include <cmath>

#include "sla/array.hpp"
#include "sla/rng.hpp"

using namespace sla;

TEST_CASE("coarray of a ULA is the ULA itself") {
    const Coarray ca = coarray(ula(4));
    CHECK(ca.differences == std::vector<int>{0, 1, 2, 3});
    CHECK(ca.m_contig == 4);
}

TEST_CASE("coarray of the 6-element MRA fills the whole aperture") {
    const Coarray ca = coarray(mra_6_14());
    REQUIRE(ca.differences.size() == 14);
    for (int lag = 0; lag <= 13; ++lag) CHECK(ca.contains(lag));
    CHECK(ca.m_contig == 14);
}

TEST_CASE("coarray with a hole stops at the first missing lag") {
    const Coarray ca = coarray(Geometry({0, 2}));
    CHECK(ca.differences == std::vector<int>{0, 2});
    CHECK(ca.m_contig == 1);
}

TEST_CASE("coarray is invariant under translating the array") {
    const Geometry base({0, 1, 4, 6});
    std::vector<int> shifted = base.omega;
    for (int& x : shifted) x += 3;
    const Coarray a = coarray(base);
    const Coarray b = coarray(Geometry(shifted));
    CHECK(a.differences == b.differences);
    CHECK(a.m_contig == b.m_contig);
}

TEST_CASE("ULA coarray aperture equals the array size") {
    for (int n = 2; n <= 12; ++n) CHECK(coarray(ula(n)).m_contig == n);
}

TEST_CASE("steering_matrix entries match the direct exponential") {
    RealVector single(1);
    single(0) = 0.37;
    const ComplexMatrix ones = steering_matrix({0}, single);
    CHECK(std::abs(ones(0, 0) - Complex(1.0, 0.0)) <= 1e-15);

    single(0) = 0.25;
    const ComplexMatrix quarter = steering_matrix({0, 1}, single);
    CHECK(std::abs(quarter(0, 0) - Complex(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(quarter(1, 0) - Complex(0.0, 1.0)) <= 1e-15);

    RealVector two(2);
    two << 0.1, 0.3;
    const ComplexMatrix a = steering_matrix({0, 1, 2}, two);
    for (int n = 0; n < 3; ++n) {
        for (int k = 0; k < 2; ++k) {
            const Complex expected = std::polar(1.0, 2.0 * M_PI * n * two(k));
            CHECK(std::abs(a(n, k) - expected) <= 1e-14);
        }
    }
}

TEST_CASE("steering_matrix rejects duplicate frequencies") {
    RealVector dup(2);
    dup << 0.2, 1.2; // same point on the circle
    CHECK_THROWS_AS(steering_matrix({0, 1}, dup), PreconditionError);
}

TEST_CASE("aperture steering matrix has full column rank") {
    SplitMix64 rng(314);
    for (int t = 0; t < 20; ++t) {
        const int m = 6 + static_cast<int>(rng.next_u64() % 8);
        const int k = 1 + static_cast<int>(rng.next_u64() % (m - 1));
        RealVector f(k);
        for (int j = 0; j < k; ++j) f(j) = rng.next_open_unit() * 0.999;
        std::sort(f.data(), f.data() + k);
        bool distinct = true;
        for (int j = 0; j + 1 < k; ++j) distinct &= f(j + 1) - f(j) > 1e-4;
        if (!distinct) continue;
        std::vector<int> aperture(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) aperture[static_cast<std::size_t>(j)] = j;
        const ComplexMatrix a = steering_matrix(aperture, f);
        const RealVector sv = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
        CHECK(sv(k - 1) > 0.0);
    }
}

TEST_CASE("doa_to_freq pins the experiment pairings") {
    CHECK(doa_to_freq(30.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(doa_to_freq(0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(std::abs(doa_to_freq(-53.13) - 0.6) <= 1e-3);
    CHECK_THROWS_AS(doa_to_freq(90.0), PreconditionError);
    CHECK_THROWS_AS(doa_to_freq(-90.5), PreconditionError);
}

TEST_CASE("freq_to_doa pins the experiment pairings") {
    CHECK(freq_to_doa(0.25) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(freq_to_doa(0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(std::abs(freq_to_doa(0.9) - (-11.54)) <= 0.01);
    CHECK(freq_to_doa(0.5) == doctest::Approx(-90.0).epsilon(1e-12));
    CHECK_THROWS_AS(freq_to_doa(1.0), PreconditionError);
    CHECK_THROWS_AS(freq_to_doa(-0.1), PreconditionError);
}

TEST_CASE("doa to freq round trip") {
    for (double theta = -89.5; theta < 90.0; theta += 0.61) {
        CHECK(std::abs(freq_to_doa(doa_to_freq(theta)) - theta) <= 1e-9);
    }
}

TEST_CASE("geometry text format round trips") {
    const std::vector<int> parsed = parse_index_list("0,1,6,9,11,13");
    CHECK(parsed == mra_6_14().omega);
    CHECK(parse_index_list(" 0 , 2 ,5") == std::vector<int>{0, 2, 5});
    CHECK_THROWS_AS(parse_index_list(""), ConfigError);
    CHECK_THROWS_AS(parse_index_list("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_index_list("1,two"), ConfigError);
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(Geometry({3}), GeometryError);
    CHECK_THROWS_AS(Geometry({-1, 2}), GeometryError);
    CHECK_THROWS_AS(Geometry({0, 2, 2}), GeometryError);
    CHECK_THROWS_AS(Geometry({0, 5}, 4), GeometryError);
    CHECK(Geometry({0, 5}).n_virtual == 6);
}

TEST_CASE("nested and coprime generators produce valid geometries") {
    const Geometry n22 = nested(2, 2);
    CHECK(n22.omega == std::vector<int>{0, 1, 2, 5});
    CHECK(coarray(n22).m_contig == 6);

    const Geometry cp = coprime(2, 3);
    CHECK(cp.omega.front() == 0);
    for (std::size_t i = 1; i < cp.omega.size(); ++i) CHECK(cp.omega[i] > cp.omega[i - 1]);
    CHECK(coarray(cp).m_contig >= 2);
    CHECK_THROWS_AS(coprime(2, 4), GeometryError);
}
