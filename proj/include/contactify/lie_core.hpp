#pragma once

#include <complex>

#include <Eigen/Dense>

#include "contactify/common.hpp"

namespace contactify::lie {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for structural type invariants, relative to the matrix norm.
inline constexpr double kStructuralTol = 1e-12;

/// Element of u*(n): a Hermitian n x n matrix.  The constructor rejects
/// anything whose deviation from its conjugate transpose exceeds
/// kStructuralTol relative to the Frobenius norm (floor 1 for tiny inputs).
class HermitianMatrix {
public:
    explicit HermitianMatrix(Matrix entries);

    int n() const { return static_cast<int>(entries_.rows()); }
    const Matrix& raw() const { return entries_; }

private:
    Matrix entries_;
};

/// Element of u(n): an anti-Hermitian n x n matrix.
class AntiHermitianMatrix {
public:
    explicit AntiHermitianMatrix(Matrix entries);

    int n() const { return static_cast<int>(entries_.rows()); }
    const Matrix& raw() const { return entries_; }

private:
    Matrix entries_;
};

/// Element of U(n).  Checked against U U^dagger = I at construction.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(Matrix entries);

    int n() const { return static_cast<int>(entries_.rows()); }
    const Matrix& raw() const { return entries_; }

private:
    Matrix entries_;
};

/// Normalization of the pairing between u*(n) and u(n).  Two conventions
/// are in live use: scale 1/2 (the orbit and contact modules) and scale 1
/// (the integrality module).  Every pairing-dependent operation takes the
/// convention explicitly so results are auditable.
struct PairingConvention {
    double scale;

    static PairingConvention half() { return PairingConvention{0.5}; }
    static PairingConvention full() { return PairingConvention{1.0}; }
};

/// <A, T> = scale * Re(i tr(A T)).  For Hermitian A and anti-Hermitian T
/// the trace i*tr(A T) is real; the residual imaginary part is checked
/// against 1e-12 (relative to |A||T|) and a violation throws.
double pairing(const HermitianMatrix& A, const AntiHermitianMatrix& T,
               PairingConvention c);

/// Commutator in u(n).  Throws on dimension mismatch.
AntiHermitianMatrix commutator(const AntiHermitianMatrix& X,
                               const AntiHermitianMatrix& Y);

/// Lie bracket transported to u*(n): [A, B] = -i (A B - B A).
HermitianMatrix dual_bracket(const HermitianMatrix& A, const HermitianMatrix& B);

/// Coadjoint action Ad*_U(A) = U A U^dagger.  Preserves the spectrum.
HermitianMatrix coadjoint_action(const UnitaryMatrix& U, const HermitianMatrix& A);

/// Infinitesimal coadjoint action ad*_T(mu) = [mu, T] = mu T - T mu.
/// The result is Hermitian.  Callers that need the opposite orientation
/// (the tangent-vector convention) use hamiltonian_field_dual.
HermitianMatrix coadjoint_infinitesimal(const AntiHermitianMatrix& T,
                                        const HermitianMatrix& mu);

/// Hamiltonian vector field of the linear function F_T(mu) = <mu, T>:
/// X_{F_T}(mu) = [T, mu].  Equal to -coadjoint_infinitesimal(T, mu).
HermitianMatrix hamiltonian_field_dual(const AntiHermitianMatrix& T,
                                       const HermitianMatrix& mu);

/// exp: u(n) -> U(n) through the unitary diagonalization of iT.  Exactness
/// of unitarity is preferred over speed: the eigenvector matrix is unitary
/// to machine precision, so the result passes the UnitaryMatrix check even
/// for large ||T||, where scaling-and-squaring would drift.
UnitaryMatrix matrix_exp(const AntiHermitianMatrix& T);

AntiHermitianMatrix operator*(double t, const AntiHermitianMatrix& T);

/// Frobenius-norm distance helpers used throughout the test suites.
double distance(const HermitianMatrix& A, const HermitianMatrix& B);
double distance(const AntiHermitianMatrix& A, const AntiHermitianMatrix& B);

} // namespace contactify::lie
