#pragma once

#include <random>

#include "contactify/lie_core.hpp"

namespace contactify::sampling {

using Rng = std::mt19937_64;

inline Eigen::VectorXcd complex_gaussian(int n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int k = 0; k < n; ++k) {
        const double re = g(rng);
        const double im = g(rng);
        v[k] = lie::Complex(re, im);
    }
    return v;
}

inline Eigen::VectorXcd unit_vector(int n, Rng& rng) {
    Eigen::VectorXcd v = complex_gaussian(n, rng);
    while (v.norm() < 1e-6) v = complex_gaussian(n, rng);
    return v / v.norm();
}

/// Random vector tangent to the unit sphere at x: Re<x|v> = 0.
inline Eigen::VectorXcd tangent_at(const Eigen::VectorXcd& x, Rng& rng) {
    Eigen::VectorXcd v = complex_gaussian(static_cast<int>(x.size()), rng);
    const double r = (x.adjoint() * v).value().real();
    return v - r * x;
}

inline lie::Matrix ginibre(int n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    lie::Matrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = lie::Complex(g(rng), g(rng));
    return m;
}

inline lie::HermitianMatrix hermitian(int n, Rng& rng) {
    const lie::Matrix g = ginibre(n, rng);
    return lie::HermitianMatrix(0.5 * (g + g.adjoint().eval()));
}

inline lie::AntiHermitianMatrix antihermitian(int n, Rng& rng) {
    const lie::Matrix g = ginibre(n, rng);
    return lie::AntiHermitianMatrix(0.5 * (g - g.adjoint().eval()));
}

/// Haar-ish unitary: the exponential of a random anti-Hermitian matrix.
/// Unitary to machine precision, which is all the suites need.
inline lie::UnitaryMatrix unitary(int n, Rng& rng) {
    return lie::matrix_exp(antihermitian(n, rng));
}

/// Hermitian matrix with prescribed spectrum, conjugated by a random unitary.
inline lie::HermitianMatrix hermitian_with_spectrum(const Eigen::VectorXd& eigs,
                                                    Rng& rng) {
    const lie::UnitaryMatrix u = unitary(static_cast<int>(eigs.size()), rng);
    return lie::HermitianMatrix(u.raw() * eigs.cast<lie::Complex>().asDiagonal() *
                                u.raw().adjoint());
}

} // namespace contactify::sampling
