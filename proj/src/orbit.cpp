#include "contactify/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace contactify::orbit {

using lie::Complex;
using lie::Matrix;

namespace {

constexpr Complex kI{0.0, 1.0};

// Real orthonormal basis of u(n) under <T,T'>_u = -1/2 tr(T T').
// Order: diagonal generators, then for each j < k the real rotation and the
// imaginary symmetric generator.  The ordering is part of the contract:
// isotropy coordinates are reproducible across runs.
std::vector<Matrix> u_basis(int n) {
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(n) * n);
    const double s2 = std::sqrt(2.0);
    for (int k = 0; k < n; ++k) {
        Matrix m = Matrix::Zero(n, n);
        m(k, k) = kI * s2;
        out.push_back(std::move(m));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Matrix a = Matrix::Zero(n, n);
            a(j, k) = 1.0;
            a(k, j) = -1.0;
            out.push_back(std::move(a));
            Matrix s = Matrix::Zero(n, n);
            s(j, k) = kI;
            s(k, j) = kI;
            out.push_back(std::move(s));
        }
    return out;
}

// Matching orthonormal basis of u*(n) under <A,B>_{u*} = 1/2 tr(A B).
std::vector<Matrix> u_dual_basis(int n) {
    std::vector<Matrix> out;
    out.reserve(static_cast<size_t>(n) * n);
    const double s2 = std::sqrt(2.0);
    for (int k = 0; k < n; ++k) {
        Matrix m = Matrix::Zero(n, n);
        m(k, k) = s2;
        out.push_back(std::move(m));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            Matrix a = Matrix::Zero(n, n);
            a(j, k) = 1.0;
            a(k, j) = 1.0;
            out.push_back(std::move(a));
            Matrix s = Matrix::Zero(n, n);
            s(j, k) = kI;
            s(k, j) = -kI;
            out.push_back(std::move(s));
        }
    return out;
}

void require_unit(const Eigen::VectorXcd& x, const char* what) {
    if (std::abs(x.norm() - 1.0) > 1e-12)
        fail("invariant_violation",
             std::string(what) + ": vector norm deviates from 1 by " +
                 std::to_string(std::abs(x.norm() - 1.0)));
}

void require_pure_tangent(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                          const char* what) {
    if (x.size() != y.size())
        fail("dimension_mismatch", std::string(what) + ": vector sizes differ");
    const double r = (x.adjoint() * y).value().real();
    if (std::abs(r) > 1e-10 * std::max(1.0, y.norm()))
        fail("tangency_violation",
             std::string(what) + ": Re<x|y> = " + std::to_string(r) +
                 ", no anti-Hermitian generator maps x there");
}

} // namespace

IsotropyBasis::IsotropyBasis(lie::HermitianMatrix mu,
                             std::vector<lie::AntiHermitianMatrix> basis)
    : mu_(std::move(mu)), basis_(std::move(basis)) {
    const double mu_scale = std::max(1.0, mu_.raw().norm());
    for (size_t a = 0; a < basis_.size(); ++a) {
        if (basis_[a].n() != mu_.n())
            fail("dimension_mismatch", "IsotropyBasis: element size mismatch");
        const double res =
            lie::distance(lie::coadjoint_infinitesimal(basis_[a], mu_),
                          lie::HermitianMatrix(Matrix::Zero(mu_.n(), mu_.n())));
        if (res > 1e-10 * mu_scale)
            fail("invariant_violation",
                 "IsotropyBasis: commutation residual " + std::to_string(res));
        for (size_t b = 0; b <= a; ++b) {
            const double ip =
                -0.5 * (basis_[a].raw() * basis_[b].raw()).trace().real();
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(ip - want) > 1e-10)
                fail("invariant_violation",
                     "IsotropyBasis: basis not orthonormal, <a,b> = " +
                         std::to_string(ip));
        }
    }
}

SpectrumClusters clustered_spectrum(const lie::HermitianMatrix& mu) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(mu.raw(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        fail("domain_error", "clustered_spectrum: eigensolver did not converge");
    const Eigen::VectorXd ev = es.eigenvalues(); // ascending
    const double scale = mu.raw().norm();

    SpectrumClusters out;
    out.values.push_back(ev[0]);
    out.multiplicities.push_back(1);
    double sum = ev[0];
    for (int k = 1; k < ev.size(); ++k) {
        const double gap = ev[k] - out.values.back();
        if (gap <= 1e-8 * scale) {
            // extend the current cluster; its value is the running mean
            sum += ev[k];
            out.multiplicities.back() += 1;
            out.values.back() = sum / out.multiplicities.back();
        } else if (gap <= 1e-6 * scale) {
            fail("eigenvalue_ambiguity",
                 "clustered_spectrum: gap " + std::to_string(gap) +
                     " between eigenvalues is inside the undecidable band (" +
                     std::to_string(1e-8 * scale) + ", " +
                     std::to_string(1e-6 * scale) + ")");
        } else {
            out.values.push_back(ev[k]);
            out.multiplicities.push_back(1);
            sum = ev[k];
        }
    }
    return out;
}

IsotropyBasis isotropy_algebra(const lie::HermitianMatrix& mu) {
    const int n = mu.n();
    const int dim = n * n;
    const std::vector<Matrix> tb = u_basis(n);
    const std::vector<Matrix> hb = u_dual_basis(n);

    // Matrix of T -> [mu, T] between the two orthonormal bases.
    Eigen::MatrixXd m(dim, dim);
    for (int b = 0; b < dim; ++b) {
        const Matrix c = mu.raw() * tb[b] - tb[b] * mu.raw();
        for (int a = 0; a < dim; ++a)
            m(a, b) = 0.5 * (hb[a] * c).trace().real();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;

    // Kernel cut with a floor at the scale of mu itself: for scalar mu the
    // whole map is roundoff and every direction belongs to the kernel.
    const double cut = 1e-10 * std::max(smax, std::max(1.0, mu.raw().norm()));
    int kernel_dim = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv[k] <= cut) ++kernel_dim;

    const SpectrumClusters clusters = clustered_spectrum(mu);
    int expected = 0;
    for (int d : clusters.multiplicities) expected += d * d;
    if (kernel_dim != expected)
        fail("rank_ambiguity",
             "isotropy_algebra: SVD kernel dimension " +
                 std::to_string(kernel_dim) + " disagrees with block count " +
                 std::to_string(expected));

    std::vector<lie::AntiHermitianMatrix> basis;
    basis.reserve(kernel_dim);
    for (int k = dim - kernel_dim; k < dim; ++k) {
        Matrix t = Matrix::Zero(n, n);
        for (int b = 0; b < dim; ++b) t += svd.matrixV()(b, k) * tb[b];
        basis.emplace_back(std::move(t));
    }
    return IsotropyBasis(mu, std::move(basis));
}

double kks_form(const lie::HermitianMatrix& mu, const lie::AntiHermitianMatrix& X,
                const lie::AntiHermitianMatrix& Y, lie::PairingConvention c) {
    return lie::pairing(mu, lie::commutator(X, Y), c);
}

double kks_pure_state(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                      const Eigen::VectorXcd& yprime) {
    require_unit(x, "kks_pure_state");
    require_pure_tangent(x, y, "kks_pure_state");
    require_pure_tangent(x, yprime, "kks_pure_state");
    return (y.adjoint() * yprime).value().imag();
}

lie::AntiHermitianMatrix pure_state_generator(const Eigen::VectorXcd& x,
                                              const Eigen::VectorXcd& y) {
    require_unit(x, "pure_state_generator");
    require_pure_tangent(x, y, "pure_state_generator");
    const double c = (x.adjoint() * y).value().imag();
    Matrix t = y * x.adjoint() - x * y.adjoint() - kI * c * (x * x.adjoint());
    lie::AntiHermitianMatrix out{std::move(t)};
    const double res = (out.raw() * x - y).norm();
    if (res > 1e-10 * std::max(1.0, y.norm()))
        fail("invariant_violation",
             "pure_state_generator: T x misses y by " + std::to_string(res));
    return out;
}

lie::HermitianMatrix moment_map(const Eigen::VectorXcd& x) {
    require_unit(x, "moment_map");
    return lie::HermitianMatrix(x * x.adjoint());
}

double cotangent_symplectic(const lie::HermitianMatrix& mu,
                            const OrbitTangentPair& a, const OrbitTangentPair& b,
                            lie::PairingConvention c) {
    return lie::pairing(a.momentum, b.generator, c) -
           lie::pairing(b.momentum, a.generator, c) +
           lie::pairing(mu, lie::commutator(a.generator, b.generator), c);
}

std::pair<double, double> reduced_form_pullback_check(
    const lie::HermitianMatrix& mu, const lie::UnitaryMatrix& g,
    const lie::AntiHermitianMatrix& v, const lie::AntiHermitianMatrix& vprime,
    lie::PairingConvention c) {
    const lie::HermitianMatrix moved = lie::coadjoint_action(g, mu);
    const lie::AntiHermitianMatrix av(g.raw() * v.raw() * g.raw().adjoint());
    const lie::AntiHermitianMatrix avp(g.raw() * vprime.raw() * g.raw().adjoint());
    return {kks_form(moved, av, avp, c), kks_form(mu, v, vprime, c)};
}

lie::HermitianMatrix coadjoint_flow_linear(const lie::AntiHermitianMatrix& T,
                                           const lie::HermitianMatrix& mu0,
                                           double t) {
    return lie::coadjoint_action(lie::matrix_exp(t * T), mu0);
}

OrbitInfo orbit_info(const lie::HermitianMatrix& mu) {
    OrbitInfo info{clustered_spectrum(mu), 0, 0};
    info.isotropy_dim = isotropy_algebra(mu).dim();
    info.orbit_dim = mu.n() * mu.n() - info.isotropy_dim;
    return info;
}

} // namespace contactify::orbit
