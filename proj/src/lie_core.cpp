#include "contactify/lie_core.hpp"

#include <cmath>

namespace contactify::lie {

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() < 1 || m.rows() != m.cols())
        fail("dimension_mismatch",
             std::string(what) + ": expected a square matrix of size >= 1");
}

void require_same_n(int a, int b, const char* what) {
    if (a != b)
        fail("dimension_mismatch",
             std::string(what) + ": operand sizes " + std::to_string(a) +
                 " and " + std::to_string(b) + " differ");
}

// Relative scale for structural checks; floor 1 so near-zero matrices are
// judged by absolute deviation.
double check_scale(const Matrix& m) { return std::max(1.0, m.norm()); }

} // namespace

HermitianMatrix::HermitianMatrix(Matrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "HermitianMatrix");
    const double dev = (entries_ - entries_.adjoint().eval()).norm();
    if (dev > kStructuralTol * check_scale(entries_))
        fail("invariant_violation",
             "HermitianMatrix: deviation from conjugate transpose " +
                 std::to_string(dev) + " exceeds tolerance");
}

AntiHermitianMatrix::AntiHermitianMatrix(Matrix entries)
    : entries_(std::move(entries)) {
    require_square(entries_, "AntiHermitianMatrix");
    const double dev = (entries_ + entries_.adjoint().eval()).norm();
    if (dev > kStructuralTol * check_scale(entries_))
        fail("invariant_violation",
             "AntiHermitianMatrix: deviation from negated conjugate transpose " +
                 std::to_string(dev) + " exceeds tolerance");
}

UnitaryMatrix::UnitaryMatrix(Matrix entries) : entries_(std::move(entries)) {
    require_square(entries_, "UnitaryMatrix");
    const Matrix gram = entries_.adjoint() * entries_;
    const double dev =
        (gram - Matrix::Identity(entries_.rows(), entries_.cols())).norm();
    if (dev > kStructuralTol * std::max(1.0, entries_.squaredNorm()))
        fail("invariant_violation",
             "UnitaryMatrix: U^dagger U deviates from identity by " +
                 std::to_string(dev));
}

double pairing(const HermitianMatrix& A, const AntiHermitianMatrix& T,
               PairingConvention c) {
    require_same_n(A.n(), T.n(), "pairing");
    const Complex z = Complex(0.0, 1.0) * (A.raw() * T.raw()).trace();
    const double scale = std::max(1.0, A.raw().norm() * T.raw().norm());
    if (std::abs(z.imag()) > 1e-12 * scale)
        fail("invariant_violation",
             "pairing: i tr(A T) has residual imaginary part " +
                 std::to_string(z.imag()));
    return c.scale * z.real();
}

AntiHermitianMatrix commutator(const AntiHermitianMatrix& X,
                               const AntiHermitianMatrix& Y) {
    require_same_n(X.n(), Y.n(), "commutator");
    return AntiHermitianMatrix(X.raw() * Y.raw() - Y.raw() * X.raw());
}

HermitianMatrix dual_bracket(const HermitianMatrix& A, const HermitianMatrix& B) {
    require_same_n(A.n(), B.n(), "dual_bracket");
    return HermitianMatrix(Complex(0.0, -1.0) *
                           (A.raw() * B.raw() - B.raw() * A.raw()));
}

HermitianMatrix coadjoint_action(const UnitaryMatrix& U, const HermitianMatrix& A) {
    require_same_n(U.n(), A.n(), "coadjoint_action");
    return HermitianMatrix(U.raw() * A.raw() * U.raw().adjoint());
}

HermitianMatrix coadjoint_infinitesimal(const AntiHermitianMatrix& T,
                                        const HermitianMatrix& mu) {
    require_same_n(T.n(), mu.n(), "coadjoint_infinitesimal");
    return HermitianMatrix(mu.raw() * T.raw() - T.raw() * mu.raw());
}

HermitianMatrix hamiltonian_field_dual(const AntiHermitianMatrix& T,
                                       const HermitianMatrix& mu) {
    require_same_n(T.n(), mu.n(), "hamiltonian_field_dual");
    return HermitianMatrix(T.raw() * mu.raw() - mu.raw() * T.raw());
}

UnitaryMatrix matrix_exp(const AntiHermitianMatrix& T) {
    // iT is Hermitian, so iT = V diag(h) V^dagger with real h and unitary V,
    // and exp(T) = V diag(exp(-i h)) V^dagger.
    Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0.0, 1.0) * T.raw());
    if (es.info() != Eigen::Success)
        fail("domain_error", "matrix_exp: eigendecomposition did not converge");
    const Eigen::VectorXd h = es.eigenvalues();
    Eigen::VectorXcd phases(h.size());
    for (Eigen::Index k = 0; k < h.size(); ++k)
        phases[k] = std::exp(Complex(0.0, -h[k]));
    return UnitaryMatrix(es.eigenvectors() * phases.asDiagonal() *
                         es.eigenvectors().adjoint());
}

AntiHermitianMatrix operator*(double t, const AntiHermitianMatrix& T) {
    return AntiHermitianMatrix(t * T.raw());
}

double distance(const HermitianMatrix& A, const HermitianMatrix& B) {
    require_same_n(A.n(), B.n(), "distance");
    return (A.raw() - B.raw()).norm();
}

double distance(const AntiHermitianMatrix& A, const AntiHermitianMatrix& B) {
    require_same_n(A.n(), B.n(), "distance");
    return (A.raw() - B.raw()).norm();
}

} // namespace contactify::lie
