#pragma once

#include <cstddef>
#include <vector>

#include "harmspace/geometry.hpp"

namespace harmspace {

/// Dimension of the space of degree-k spherical harmonics in n variables.
int dim_harmonics(int n, int k);

/// Offset of degree k in the flattened (k, j) index, i.e. sum_{l<k} d_l.
std::size_t harmonic_offset(int n, int k);

/// Total number of basis functions of degree <= K.
std::size_t harmonic_count(int n, int K);

/// C_k^lambda(u) by the three-term recurrence.
double gegenbauer(double lambda, int k, double u);

double chebyshev(int k, double u);
double legendre(int k, double u);

/// Z_k as a function of u = x'.y' under the unit-mass sphere measure.
/// n = 2 uses 2 T_k (k >= 1); n >= 3 uses d_k C_k^lambda(u) / C_k^lambda(1).
double zonal_profile(int n, int k, double u);

double zonal(int n, int k, const Vec& x, const Vec& y);

/// Y_j^{(k)}(x'), 1 <= j <= d_k, for n in {2, 3}.
///
/// n = 2: j = 1 -> sqrt(2) cos k theta, j = 2 -> sqrt(2) sin k theta (k >= 1).
/// n = 3: j = 2m-1 -> cos m phi, j = 2m -> sin m phi (1 <= m <= k), j = 2k+1 -> m = 0,
/// each times the fully normalized associated Legendre function (no Condon-Shortley phase).
double basis_eval(int n, int k, int j, const Vec& x);

/// All basis functions of degree <= K, evaluated together.
class HarmonicBasis {
public:
    HarmonicBasis(int n, int K);

    int dimension() const { return n_; }
    int max_degree() const { return K_; }
    std::size_t size() const { return count_; }

    /// out has size(); entry harmonic_offset(n, k) + j - 1 is Y_j^{(k)}(x).
    void evaluate_all(const Vec& x, double* out) const;
    std::vector<double> evaluate_all(const Vec& x) const;

private:
    int n_;
    int K_;
    std::size_t count_;
    // n = 3 recurrence coefficients for the normalized associated Legendre
    // polynomial parts, indexed [l * (K + 1) + m].
    std::vector<double> a_, b_, diag_;
};

} // namespace harmspace
