#include "sla/array.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace sla {

Geometry::Geometry(std::vector<int> positions, int virtual_size)
    : omega(std::move(positions)), n_virtual(virtual_size) {
    if (omega.size() < 2) {
        throw GeometryError("geometry: need at least 2 sensors");
    }
    if (omega.front() < 0) {
        throw GeometryError("geometry: sensor positions must be non-negative");
    }
    for (std::size_t i = 1; i < omega.size(); ++i) {
        if (omega[i] <= omega[i - 1]) {
            throw GeometryError("geometry: sensor positions must be strictly increasing");
        }
    }
    if (n_virtual <= 0) n_virtual = omega.back() + 1;
    if (omega.back() > n_virtual - 1) {
        throw GeometryError("geometry: last sensor position " + std::to_string(omega.back()) +
                            " exceeds virtual ULA size " + std::to_string(n_virtual));
    }
}

bool Coarray::contains(int lag) const {
    return std::binary_search(differences.begin(), differences.end(), lag);
}

Coarray coarray(const Geometry& geom) {
    std::set<int> diffs;
    for (std::size_t j = 0; j < geom.omega.size(); ++j) {
        for (std::size_t l = 0; l <= j; ++l) {
            diffs.insert(geom.omega[j] - geom.omega[l]);
        }
    }
    Coarray out;
    out.differences.assign(diffs.begin(), diffs.end());
    int m = 0;
    while (diffs.count(m)) ++m;
    out.m_contig = m;
    return out;
}

double canonical_freq(double f) {
    double r = f - std::floor(f);
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r = 0.0;
    return r;
}

ComplexMatrix steering_matrix(const std::vector<int>& indices, const RealVector& freqs) {
    for (int idx : indices) {
        if (idx < 0) throw PreconditionError("steering_matrix: negative element index");
    }
    RealVector f(freqs.size());
    for (Index k = 0; k < freqs.size(); ++k) f(k) = canonical_freq(freqs(k));
    for (Index a = 0; a < f.size(); ++a) {
        for (Index b = a + 1; b < f.size(); ++b) {
            const double gap = std::abs(f(a) - f(b));
            if (std::min(gap, 1.0 - gap) < 1e-12) {
                throw PreconditionError("steering_matrix: duplicate frequency " +
                                        std::to_string(f(a)));
            }
        }
    }
    ComplexMatrix A(static_cast<Index>(indices.size()), f.size());
    for (Index j = 0; j < A.rows(); ++j) {
        for (Index k = 0; k < A.cols(); ++k) {
            const double phase = 2.0 * M_PI * indices[static_cast<std::size_t>(j)] * f(k);
            A(j, k) = Complex(std::cos(phase), std::sin(phase));
        }
    }
    return A;
}

ComplexVector steering_vector(const std::vector<int>& indices, double f) {
    RealVector one(1);
    one(0) = f;
    return steering_matrix(indices, one).col(0);
}

double doa_to_freq(double theta_deg) {
    if (!(theta_deg >= -90.0 && theta_deg < 90.0)) {
        throw PreconditionError("doa_to_freq: angle must lie in [-90, 90) degrees");
    }
    return canonical_freq(0.5 * std::sin(theta_deg * M_PI / 180.0));
}

double freq_to_doa(double f) {
    if (!(f >= 0.0 && f < 1.0)) {
        throw PreconditionError("freq_to_doa: frequency must lie in [0, 1)");
    }
    const double folded = f < 0.5 ? f : f - 1.0;
    return std::asin(2.0 * folded) * 180.0 / M_PI;
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const auto begin = token.find_first_not_of(" \t");
        if (begin == std::string::npos) {
            throw ConfigError("index list: empty entry in '" + text + "'");
        }
        const auto end = token.find_last_not_of(" \t");
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token.substr(begin, end - begin + 1), &used);
        } catch (const std::exception&) {
            throw ConfigError("index list: cannot parse '" + token + "'");
        }
        if (used != end - begin + 1) {
            throw ConfigError("index list: trailing garbage in '" + token + "'");
        }
        out.push_back(value);
    }
    if (out.empty()) throw ConfigError("index list: no entries in '" + text + "'");
    return out;
}

Geometry mra_6_14() {
    return Geometry({0, 1, 6, 9, 11, 13});
}

Geometry ula(int n) {
    if (n < 2) throw GeometryError("ula: need n >= 2");
    std::vector<int> omega(static_cast<std::size_t>(n));
    std::iota(omega.begin(), omega.end(), 0);
    return Geometry(std::move(omega));
}

Geometry nested(int n1, int n2) {
    if (n1 < 1 || n2 < 1) throw GeometryError("nested: need n1, n2 >= 1");
    std::vector<int> omega;
    for (int i = 0; i < n1; ++i) omega.push_back(i);
    for (int m = 1; m <= n2; ++m) omega.push_back(m * (n1 + 1) - 1);
    return Geometry(std::move(omega));
}

Geometry coprime(int p, int q) {
    if (p < 2 || q <= p) throw GeometryError("coprime: need 2 <= p < q");
    if (std::gcd(p, q) != 1) {
        throw GeometryError("coprime: " + std::to_string(p) + " and " + std::to_string(q) +
                            " share a factor");
    }
    std::set<int> omega;
    for (int k = 0; k < q; ++k) omega.insert(k * p);
    for (int k = 1; k < 2 * p; ++k) omega.insert(k * q);
    return Geometry(std::vector<int>(omega.begin(), omega.end()));
}

} // namespace sla
