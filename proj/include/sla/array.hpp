#pragma once

#include <string>
#include <vector>

#include "sla/types.hpp"

namespace sla {

/// A sparse linear array: strictly increasing zero-based sensor positions
/// (half-wavelength units) inside a virtual ULA of n_virtual elements.
struct Geometry {
    std::vector<int> omega;
    int n_virtual = 0;

    /// n_virtual <= 0 defaults to omega.back() + 1.
    explicit Geometry(std::vector<int> positions, int virtual_size = 0);

    int n_sensors() const { return static_cast<int>(omega.size()); }
};

/// The difference set of a geometry and its contiguous aperture M, the
/// greatest M with {0, ..., M-1} all present as sensor-pair differences.
struct Coarray {
    std::vector<int> differences;
    int m_contig = 0;

    bool contains(int lag) const;
};

Coarray coarray(const Geometry& geom);

/// Steering matrix with (j, k) entry e^{i 2 pi indices_j f_k}. Frequencies
/// are canonicalized into [0, 1) and must be pairwise distinct there.
ComplexMatrix steering_matrix(const std::vector<int>& indices, const RealVector& freqs);

/// Single steering vector at frequency f over the given element indices.
ComplexVector steering_vector(const std::vector<int>& indices, double f);

/// Map a broadside angle in degrees, theta in [-90, 90), to the spatial
/// frequency f = (sin(theta)/2) mod 1 in [0, 1).
double doa_to_freq(double theta_deg);

/// Inverse map; f = 0.5 lands exactly on -90 degrees.
double freq_to_doa(double f);

/// Reduce a frequency into the canonical interval [0, 1).
double canonical_freq(double f);

/// Parse the comma-separated integer geometry format, e.g. "0,1,6,9,11,13".
std::vector<int> parse_index_list(const std::string& text);

/// The minimum-redundancy array used throughout the experiments.
Geometry mra_6_14();

Geometry ula(int n);

/// Two-level nested array: dense segment 0..n1-1 plus sparse segment
/// {m (n1 + 1) - 1 : m = 1..n2}.
Geometry nested(int n1, int n2);

/// Coprime array: {0, p, 2p, ..., (q-1) p} united with {q, 2q, ..., (2p-1) q}
/// for coprime p < q.
Geometry coprime(int p, int q);

} // namespace sla
