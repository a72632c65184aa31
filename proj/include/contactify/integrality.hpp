#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contactify/lie_core.hpp"
#include "contactify/orbit.hpp"

namespace contactify::integrality {

/// Exact rational with 64-bit numerator and denominator, always reduced,
/// denominator always positive.  Intermediate products go through 128-bit
/// arithmetic and overflow throws instead of wrapping: a wrong exact answer
/// is worse than no answer.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    Rational abs() const { return num_ < 0 ? -*this : *this; }
    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    std::string str() const;

    /// True when o divides *this with an integer quotient.
    bool divisible_by(const Rational& o) const;

private:
    long long num_, den_;
};

/// Positive generator of the additive subgroup a Z + b Z of Q.
/// gcd(0, 0) = 0 by convention.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Spectrum of a Hermitian matrix with exact rational eigenvalues, grouped
/// into blocks of equal value: lambdas strictly increasing, multiplicities
/// positive, sum of multiplicities = n.
struct SpectralBlocks {
    std::vector<Rational> lambdas;
    std::vector<int> multiplicities;

    int n() const {
        int s = 0;
        for (int d : multiplicities) s += d;
        return s;
    }
};

/// Builds SpectralBlocks from unordered (value, multiplicity) pairs.
/// Sorts by value; a repeated value throws duplicate_eigenvalue (the caller
/// decides how to merge, this layer refuses to guess).
SpectralBlocks spectral_blocks(std::vector<std::pair<Rational, int>> pairs);

/// Positive generator hbar of the subgroup of (Q, +) generated by the
/// eigenvalues: every lambda_j is an integer multiple of hbar and the
/// quotients have gcd 1.  All-zero spectrum (the orbit is a central point)
/// yields nullopt rather than an exception.
std::optional<Rational> hbar_generator(const SpectralBlocks& blocks);

/// Checks the density-matrix identity trace = sum lambda_j d_j = 1 exactly,
/// and audits its hbar form 1/hbar = sum (lambda_j/hbar) d_j.  Throws
/// not_a_state on a negative eigenvalue.
bool quantum_state_identity(const SpectralBlocks& blocks);

/// Full-rank lattice in Q^dim.  Generators are stored in units of 2*pi:
/// the geometric lattice is { 2*pi*sum_i c_i g_i : c_i in Z }, so the
/// transcendental factor never enters the exact arithmetic.
class RationalLattice {
public:
    explicit RationalLattice(std::vector<std::vector<Rational>> generators);

    int dim() const { return static_cast<int>(generators_.size()); }
    const std::vector<std::vector<Rational>>& generators() const {
        return generators_;
    }

private:
    std::vector<std::vector<Rational>> generators_;
};

/// Whether the values mu(gamma_i) over the lattice generators lie in a
/// cyclic subgroup 2*pi*hbar*Z, and its generator hbar.  For rational data
/// the answer is always yes; mu = 0 degenerates to (true, nullopt).
std::pair<bool, std::optional<Rational>> lattice_mu_check(
    const RationalLattice& lattice, const std::vector<Rational>& mu);

/// Orthonormal basis (under <,>_u) of the corner of the isotropy algebra
/// where the contact form vanishes:
/// g0_mu = { T in g_mu : <mu, T> = 0 }.  One-codimensional in g_mu for
/// mu != 0; a vanishing functional throws domain_error.
std::vector<lie::AntiHermitianMatrix> isotropy_zero_basis(
    const lie::HermitianMatrix& mu, lie::PairingConvention c);

/// Everything the compactness test produces for one rational spectrum.
/// For mu != 0: isotropy_zero_dim = isotropy_dim - 1 and
/// contactification_dim = orbit_dim + 1.  The all-zero spectrum is the
/// degenerate central point: not integral, no hbar, zero-dimensional orbit.
struct IntegralityReport {
    bool integral;
    std::optional<Rational> hbar;
    SpectralBlocks blocks;
    int isotropy_dim;
    int isotropy_zero_dim;
    int orbit_dim;
    int contactification_dim;
    bool is_quantum_state;
    std::optional<bool> state_identity_holds;
};

IntegralityReport build_report(const SpectralBlocks& blocks);

/// Nearest rational with denominator <= max_den, by continued fractions.
/// Throws domain_error when no convergent with such a denominator is within
/// rel_tol (relative to max(1, |x|)).
Rational rationalize(double x, double rel_tol = 1e-9,
                     long long max_den = 1000000);

/// Rationalizes a numerically computed spectrum and merges equal values
/// into blocks.  Entry point for matrices whose exact spectrum is rational
/// but only known through floating point.
SpectralBlocks blocks_from_numeric_spectrum(const std::vector<double>& eigenvalues,
                                            double rel_tol = 1e-9,
                                            long long max_den = 1000000);

/// Diagonal Hermitian matrix realizing the blocks (ascending order).
lie::HermitianMatrix diagonal_realization(const SpectralBlocks& blocks);

} // namespace contactify::integrality
