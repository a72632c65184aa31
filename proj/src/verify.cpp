#include "contactify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "contactify/common.hpp"
#include "contactify/contact.hpp"
#include "contactify/dynamics.hpp"
#include "contactify/integrality.hpp"
#include "contactify/orbit.hpp"
#include "contactify/sampling.hpp"

namespace contactify::verify {

namespace {

using lie::AntiHermitianMatrix;
using lie::HermitianMatrix;
using lie::Matrix;
using lie::PairingConvention;
using lie::UnitaryMatrix;
using sampling::Rng;

/// Collects error/tolerance ratios for one suite.
class Recorder {
public:
    Recorder(std::string suite, const Tolerances& overrides)
        : suite_(std::move(suite)), overrides_(overrides) {}

    void check(const std::string& name, double err, double default_tol) {
        double tol = default_tol;
        auto it = overrides_.find(name);
        if (it != overrides_.end()) tol = std::max(tol, it->second);
        const double ratio = err / tol;
        if (!(ratio <= max_ratio_)) {  // also promotes NaN to worst
            max_ratio_ = ratio;
            worst_ = name;
        }
    }

    /// Exact (combinatorial) checks: any failure saturates the ratio.
    void require(const std::string& name, bool ok) {
        check(name, ok ? 0.0 : 1.0, 0.5);
    }

    SuiteResult finish(int samples) const {
        return SuiteResult{suite_, samples, max_ratio_, worst_,
                           max_ratio_ <= 1.0};
    }

private:
    std::string suite_;
    const Tolerances& overrides_;
    double max_ratio_ = 0.0;
    std::string worst_ = "none";
};

int require_samples(int samples) {
    if (samples <= 0) fail("domain_error", "verify: samples must be positive");
    return samples;
}

double rel(double err, double scale) { return err / std::max(1.0, scale); }

std::vector<double> sorted_spectrum(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.raw());
    std::vector<double> v(es.eigenvalues().data(),
                          es.eigenvalues().data() + a.n());
    std::sort(v.begin(), v.end());
    return v;
}

AntiHermitianMatrix conjugated(const UnitaryMatrix& u,
                               const AntiHermitianMatrix& t) {
    return AntiHermitianMatrix(u.raw() * t.raw() * u.raw().adjoint());
}

} // namespace

SuiteResult run_lie_core(int samples, std::uint64_t seed,
                         const Tolerances& overrides) {
    require_samples(samples);
    Rng rng(seed);
    Recorder rec("lie-core", overrides);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);

    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 3;
        const HermitianMatrix A = sampling::hermitian(n, rng);
        const HermitianMatrix B = sampling::hermitian(n, rng);
        const HermitianMatrix C = sampling::hermitian(n, rng);
        const AntiHermitianMatrix T = sampling::antihermitian(n, rng);
        const AntiHermitianMatrix S = sampling::antihermitian(n, rng);
        const UnitaryMatrix U = sampling::unitary(n, rng);
        const PairingConvention c =
            it % 2 ? PairingConvention::half() : PairingConvention::full();

        const double a = coef(rng), b = coef(rng);
        const HermitianMatrix comb(a * A.raw() + b * B.raw());
        const double pa = pairing(A, T, c), pb = pairing(B, T, c);
        rec.check("pairing-bilinear",
                  rel(std::abs(pairing(comb, T, c) - a * pa - b * pb),
                      std::abs(a * pa) + std::abs(b * pb)),
                  1e-10);

        rec.check("pairing-commutator-antisym",
                  rel(std::abs(pairing(A, commutator(T, S), c) +
                               pairing(A, commutator(S, T), c)),
                      std::abs(pairing(A, commutator(T, S), c))),
                  1e-12);

        rec.check("pairing-ad-invariance",
                  rel(std::abs(pairing(coadjoint_action(U, A), conjugated(U, T),
                                       c) -
                               pairing(A, T, c)),
                      std::abs(pairing(A, T, c))),
                  1e-10);

        const HermitianMatrix j1 = dual_bracket(dual_bracket(A, B), C);
        const HermitianMatrix j2 = dual_bracket(dual_bracket(B, C), A);
        const HermitianMatrix j3 = dual_bracket(dual_bracket(C, A), B);
        rec.check("dual-bracket-jacobi",
                  rel((j1.raw() + j2.raw() + j3.raw()).norm(),
                      A.raw().norm() * B.raw().norm() * C.raw().norm()),
                  1e-10);

        const HermitianMatrix moved = coadjoint_action(U, A);
        const std::vector<double> s0 = sorted_spectrum(A);
        const std::vector<double> s1 = sorted_spectrum(moved);
        double spec_err = 0.0;
        for (int k = 0; k < n; ++k)
            spec_err = std::max(spec_err, std::abs(s0[k] - s1[k]));
        rec.check("coadjoint-spectrum", rel(spec_err, A.raw().norm()), 1e-10);

        const double t1 = coef(rng), t2 = coef(rng);
        const UnitaryMatrix e1 = matrix_exp(t1 * T);
        const UnitaryMatrix e2 = matrix_exp(t2 * T);
        const UnitaryMatrix e12 = matrix_exp((t1 + t2) * T);
        rec.check("exp-one-parameter",
                  rel((e1.raw() * e2.raw() - e12.raw()).norm(), 1.0), 1e-10);
        rec.check("exp-zero",
                  (matrix_exp(0.0 * T).raw() - Matrix::Identity(n, n)).norm(),
                  1e-12);

        const double h = 1e-6;
        const Matrix fd = (orbit::coadjoint_flow_linear(T, A, h).raw() -
                           orbit::coadjoint_flow_linear(T, A, -h).raw()) /
                          (2.0 * h);
        rec.check("flow-derivative",
                  rel((fd - hamiltonian_field_dual(T, A).raw()).norm(),
                      A.raw().norm() * T.raw().norm()),
                  1e-6);

        const double lhs =
            pairing(hamiltonian_field_dual(S, A), T, c);
        const double rhs = pairing(A, commutator(T, S), c);
        rec.check("poisson-linear-functions", rel(std::abs(lhs - rhs), std::abs(rhs)),
                  1e-10);
    }
    return rec.finish(samples);
}

SuiteResult run_orbit(int samples, std::uint64_t seed,
                      const Tolerances& overrides) {
    require_samples(samples);
    Rng rng(seed);
    Recorder rec("orbit", overrides);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const PairingConvention c = PairingConvention::half();

    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 3;

        // Alternate distinct and degenerate spectra; keep gaps comfortably
        // above the clustering band.
        Eigen::VectorXd eigs(n);
        if (it % 3 == 2 && n >= 3) {
            const double lo = coef(rng);
            for (int k = 0; k < n; ++k) eigs[k] = k < 2 ? lo : lo + 1.0 + k;
        } else {
            for (int k = 0; k < n; ++k) eigs[k] = coef(rng) + 3.0 * k;
        }
        const HermitianMatrix mu = sampling::hermitian_with_spectrum(eigs, rng);

        const orbit::IsotropyBasis iso = orbit::isotropy_algebra(mu);
        const orbit::SpectrumClusters cl = orbit::clustered_spectrum(mu);
        int dim_expected = 0;
        for (int d : cl.multiplicities) dim_expected += d * d;
        rec.require("isotropy-dimension", iso.dim() == dim_expected);

        const AntiHermitianMatrix X = sampling::antihermitian(n, rng);
        const AntiHermitianMatrix Y = sampling::antihermitian(n, rng);

        Matrix zc = Matrix::Zero(n, n);
        for (const auto& t : iso.basis()) zc += coef(rng) * t.raw();
        const AntiHermitianMatrix Xz(X.raw() + zc);
        const double kxy = orbit::kks_form(mu, X, Y, c);
        rec.check("kks-well-defined", rel(std::abs(orbit::kks_form(mu, Xz, Y, c) - kxy),
                                          std::abs(kxy)),
                  1e-10);
        rec.check("kks-antisym",
                  rel(std::abs(kxy + orbit::kks_form(mu, Y, X, c)), std::abs(kxy)),
                  1e-12);

        // Witness of nondegeneracy transverse to the isotropy algebra:
        // omega_mu(X, i[mu, X]) = -scale * ||[mu, X]||^2.
        const Matrix hx = mu.raw() * X.raw() - X.raw() * mu.raw();
        const AntiHermitianMatrix Yw(lie::Complex(0.0, 1.0) * hx);
        const double wexp = -c.scale * hx.squaredNorm();
        rec.check("kks-nondegenerate-witness",
                  rel(std::abs(orbit::kks_form(mu, X, Yw, c) - wexp), std::abs(wexp)),
                  1e-10);

        const Eigen::VectorXcd x = sampling::unit_vector(n, rng);
        const Eigen::VectorXcd y = sampling::tangent_at(x, rng);
        const Eigen::VectorXcd yp = sampling::tangent_at(x, rng);
        const AntiHermitianMatrix Tx = orbit::pure_state_generator(x, y);
        const AntiHermitianMatrix Txp = orbit::pure_state_generator(x, yp);
        const HermitianMatrix rho = orbit::moment_map(x);
        const double pure = orbit::kks_pure_state(x, y, yp);
        rec.check("kks-pure-state",
                  rel(std::abs(orbit::kks_form(rho, Tx, Txp, c) - pure), std::abs(pure)),
                  1e-10);

        const UnitaryMatrix U = sampling::unitary(n, rng);
        rec.check("moment-equivariance",
                  (orbit::moment_map(U.raw() * x).raw() -
                   U.raw() * rho.raw() * U.raw().adjoint())
                      .norm(),
                  1e-12);

        const auto both = orbit::reduced_form_pullback_check(mu, U, X, Y, c);
        rec.check("kks-pullback",
                  rel(std::abs(both.first - both.second), std::abs(both.second)),
                  1e-10);

        const orbit::OrbitTangentPair pa{X, sampling::hermitian(n, rng)};
        const orbit::OrbitTangentPair pb{Y, sampling::hermitian(n, rng)};
        const double omega_ab = orbit::cotangent_symplectic(mu, pa, pb, c);
        rec.check("cotangent-antisym",
                  rel(std::abs(omega_ab + orbit::cotangent_symplectic(mu, pb, pa, c)),
                      std::abs(omega_ab)),
                  1e-12);
        const HermitianMatrix zero(Matrix::Zero(n, n));
        rec.check("cotangent-reduces-to-kks",
                  rel(std::abs(orbit::cotangent_symplectic(mu, {X, zero},
                                                           {Y, zero}, c) -
                               kxy),
                      std::abs(kxy)),
                  1e-12);

        const double t = coef(rng);
        const HermitianMatrix mut = orbit::coadjoint_flow_linear(X, mu, t);
        const std::vector<double> s0 = sorted_spectrum(mu);
        const std::vector<double> s1 = sorted_spectrum(mut);
        double spec_err = 0.0;
        for (int k = 0; k < n; ++k)
            spec_err = std::max(spec_err, std::abs(s0[k] - s1[k]));
        rec.check("flow-spectrum", rel(spec_err, mu.raw().norm()), 1e-10);
    }
    return rec.finish(samples);
}

SuiteResult run_integrality(int samples, std::uint64_t seed,
                            const Tolerances& overrides) {
    require_samples(samples);
    Rng rng(seed);
    Recorder rec("integrality", overrides);
    using integrality::Rational;
    std::uniform_int_distribution<long long> num(-12, 12);
    std::uniform_int_distribution<long long> den(1, 12);
    std::uniform_int_distribution<int> small(1, 3);

    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 5;

        // Random rational blocks: distinct values, multiplicities summing
        // to n, not all eigenvalues zero.
        std::vector<std::pair<Rational, int>> pairs;
        int left = n;
        while (left > 0) {
            Rational v(num(rng), den(rng));
            bool dup = false;
            for (const auto& p : pairs) dup = dup || p.first == v;
            if (dup) continue;
            const int d = std::min(left, small(rng));
            pairs.emplace_back(v, d);
            left -= d;
        }
        bool all_zero = true;
        for (const auto& p : pairs) all_zero = all_zero && p.first.is_zero();
        if (all_zero) pairs.back().first = Rational(1, den(rng));
        const integrality::SpectralBlocks blocks =
            integrality::spectral_blocks(pairs);

        const auto hbar = integrality::hbar_generator(blocks);
        rec.require("hbar-exists", hbar.has_value());
        if (!hbar) continue;

        bool divides = true;
        long long quotient_gcd = 0;
        for (const Rational& l : blocks.lambdas) {
            divides = divides && l.divisible_by(*hbar);
            if (l.divisible_by(*hbar)) {
                const Rational q = l / *hbar;
                quotient_gcd = std::gcd(quotient_gcd, q.num());
            }
        }
        rec.require("hbar-divides", divides);
        rec.require("hbar-minimal", quotient_gcd == 1);
        bool strictly_minimal = true;
        for (int m = 2; m <= 7; ++m) {
            const Rational cand = *hbar * Rational(m, 1);
            bool all_div = true;
            for (const Rational& l : blocks.lambdas)
                all_div = all_div && l.divisible_by(cand);
            strictly_minimal = strictly_minimal && !all_div;
        }
        rec.require("hbar-brute-minimal", strictly_minimal);

        long long qnum = num(rng);
        if (qnum == 0) qnum = 1;
        const Rational q(qnum, den(rng));
        std::vector<std::pair<Rational, int>> scaled;
        for (size_t b = 0; b < blocks.lambdas.size(); ++b)
            scaled.emplace_back(blocks.lambdas[b] * q, blocks.multiplicities[b]);
        const auto hbar_scaled =
            integrality::hbar_generator(integrality::spectral_blocks(scaled));
        rec.require("hbar-scaling",
                    hbar_scaled.has_value() && *hbar_scaled == *hbar * q.abs());

        // The standard-basis lattice reproduces the generator from the
        // per-eigenvalue functional values.
        std::vector<std::vector<Rational>> gens;
        std::vector<Rational> mu_vec;
        for (size_t b = 0; b < blocks.lambdas.size(); ++b)
            for (int r = 0; r < blocks.multiplicities[b]; ++r)
                mu_vec.push_back(blocks.lambdas[b]);
        for (int i = 0; i < n; ++i) {
            std::vector<Rational> g(n, Rational(0, 1));
            g[i] = Rational(1, 1);
            gens.push_back(std::move(g));
        }
        const auto lat = integrality::lattice_mu_check(
            integrality::RationalLattice(gens), mu_vec);
        rec.require("lattice-generator",
                    lat.first && lat.second && *lat.second == *hbar);

        const integrality::IntegralityReport rep =
            integrality::build_report(blocks);
        rec.require("report-integral", rep.integral && rep.hbar == hbar);
        rec.require("report-dims",
                    rep.isotropy_zero_dim == rep.isotropy_dim - 1 &&
                        rep.contactification_dim == rep.orbit_dim + 1 &&
                        rep.orbit_dim == n * n - rep.isotropy_dim);
        Rational trace(0, 1);
        bool nonneg = true;
        for (size_t b = 0; b < blocks.lambdas.size(); ++b) {
            trace = trace + blocks.lambdas[b] * Rational(blocks.multiplicities[b], 1);
            nonneg = nonneg && !(blocks.lambdas[b] < Rational(0, 1));
        }
        rec.require("report-state-flag",
                    rep.is_quantum_state == (nonneg && trace == Rational(1, 1)));

        for (const Rational& l : blocks.lambdas)
            rec.require("rationalize-roundtrip",
                        integrality::rationalize(l.to_double()) == l);

        Eigen::VectorXd eigs(n);
        int row = 0;
        for (size_t b = 0; b < blocks.lambdas.size(); ++b)
            for (int r = 0; r < blocks.multiplicities[b]; ++r)
                eigs[row++] = blocks.lambdas[b].to_double();
        const HermitianMatrix mu = sampling::hermitian_with_spectrum(eigs, rng);
        int dim_expected = 0;
        for (int d : blocks.multiplicities) dim_expected += d * d;
        rec.require("isotropy-numeric-dim",
                    orbit::isotropy_algebra(mu).dim() == dim_expected);
        rec.require("isotropy-zero-numeric-dim",
                    static_cast<int>(
                        integrality::isotropy_zero_basis(mu, lie::PairingConvention::full())
                            .size()) == dim_expected - 1);
    }
    return rec.finish(samples);
}

SuiteResult run_contact(int samples, std::uint64_t seed,
                        const Tolerances& overrides) {
    require_samples(samples);
    Rng rng(seed);
    Recorder rec("contact", overrides);
    std::uniform_real_distribution<double> angle(0.1, 3.0);

    rec.check("monopole-flux",
              std::abs(contact::monopole_flux() - 4.0 * M_PI), 1e-10);

    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 2;
        const contact::SpherePoint x(sampling::unit_vector(n, rng));
        const contact::SphereTangent v(x, sampling::tangent_at(x.coords(), rng));
        const contact::SphereTangent w(x, sampling::tangent_at(x.coords(), rng));

        rec.check("reeb-theta",
                  std::abs(contact::liouville(x, contact::reeb(x)) - 1.0), 1e-12);
        double reeb_dtheta = 0.0;
        for (const contact::CVector& b : contact::tangent_basis(x))
            reeb_dtheta = std::max(
                reeb_dtheta, std::abs(contact::dtheta(x, contact::reeb(x),
                                                      contact::SphereTangent(x, b))));
        rec.check("reeb-dtheta", reeb_dtheta, 1e-12);

        const double t = angle(rng);
        const contact::SpherePoint xt = contact::reeb_flow(x, t);
        const contact::CVector vt =
            std::exp(lie::Complex(0.0, 2.0 * t)) * v.vector();
        rec.check("reeb-flow-invariance",
                  std::abs(contact::liouville(xt, contact::SphereTangent(xt, vt)) -
                           contact::liouville(x, v)),
                  1e-12);
        rec.check("reeb-flow-period",
                  (contact::reeb_flow(x, M_PI).coords() - x.coords()).norm(),
                  1e-12);

        rec.check("liouville-sesquilinear",
                  std::abs(contact::liouville(x, v) -
                           0.5 * (x.coords().adjoint() * v.vector()).value().imag()),
                  1e-14);
        rec.check("dtheta-sesquilinear",
                  std::abs(contact::dtheta(x, v, w) -
                           (v.vector().adjoint() * w.vector()).value().imag()),
                  1e-12);

        const contact::ContactCheck cc = contact::contact_condition(x);
        rec.require("contact-flag", cc.contact);
        rec.check("contact-det", std::abs(cc.det - 1.0), 1e-10);

        const auto chars = contact::characteristic_directions(x);
        rec.require("characteristic-dim", chars.size() == 1);
        if (chars.size() == 1) {
            const contact::CVector ix = lie::Complex(0.0, 1.0) * x.coords();
            const double align =
                std::abs((ix.adjoint() * chars[0].vector()).value());
            rec.check("characteristic-direction",
                      std::abs(align - chars[0].vector().norm()), 1e-10);
        }

        if (n == 2) {
            const contact::S2Point p = contact::hopf_map(x);
            rec.check("hopf-norm", std::abs(p.coords().norm() - 1.0), 1e-12);
            const contact::SpherePoint xphase = contact::reeb_flow(x, angle(rng));
            rec.check("hopf-fiber-invariance",
                      (contact::hopf_map(xphase).coords() - p.coords()).norm(),
                      1e-12);
            const auto pull = contact::hopf_pullback_check(x, v, w);
            rec.check("hopf-pullback",
                      rel(std::abs(pull.first - pull.second), std::abs(pull.first)),
                      1e-10);
        }
    }
    return rec.finish(samples);
}

SuiteResult run_dynamics(int samples, std::uint64_t seed,
                         const Tolerances& overrides) {
    require_samples(samples);
    Rng rng(seed);
    Recorder rec("dynamics", overrides);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const dynamics::HamiltonianOnBase Hz = dynamics::linear_z();

    for (int it = 0; it < samples; ++it) {
        const Eigen::Vector3d cvec(coef(rng), coef(rng), coef(rng));
        const dynamics::HamiltonianOnBase Hl = dynamics::linear(cvec, coef(rng));
        const contact::S2Point p(
            contact::hopf_map(contact::SpherePoint(sampling::unit_vector(2, rng))));

        rec.check("gradient-consistency-linear-z",
                  dynamics::gradient_consistency(Hz, p), 1e-6);
        rec.check("gradient-consistency-linear",
                  dynamics::gradient_consistency(Hl, p), 1e-6);

        // X_H is the field the quarter volume form pairs against -dH.
        Eigen::Vector3d w3(coef(rng), coef(rng), coef(rng));
        w3 -= w3.dot(p.coords()) * p.coords();
        const Eigen::Vector3d xh = dynamics::hamiltonian_field_s2(Hl, p);
        rec.check("field-volume-identity",
                  rel(std::abs(0.25 * contact::monopole_form(p, xh, w3) +
                               dynamics::sphere_gradient(Hl, p).dot(w3)),
                      xh.norm() * w3.norm()),
                  1e-10);

        const contact::SpherePoint x(sampling::unit_vector(2, rng));
        const dynamics::LiftedHamiltonian lifted = dynamics::lift_through_hopf(Hl);
        const dynamics::GaugeChoice gauge =
            it % 2 ? dynamics::GaugeChoice::constant(coef(rng))
                   : dynamics::GaugeChoice::orthogonal();
        const contact::SphereTangent vel = dynamics::el_velocity(x, lifted, gauge);

        double resid = 0.0;
        const auto basis = contact::horizontal_basis(x);
        for (const contact::CVector& b : basis) {
            const contact::SphereTangent tb(x, b);
            const double dH =
                (lifted.gradient(x).adjoint() * b).value().real();
            resid = std::max(resid,
                             std::abs(contact::dtheta(x, vel, tb) + dH));
        }
        rec.check("el-residual", resid, 1e-12);

        const double vert =
            (vel.vector().adjoint() *
             (lie::Complex(0.0, 2.0) * x.coords())).value().real();
        const double vert_expected =
            gauge.kind == dynamics::GaugeChoice::Kind::Constant ? gauge.c : 0.0;
        rec.check("el-gauge-component", std::abs(vert - vert_expected), 1e-12);

        rec.check("el-projection-identity",
                  (contact::hopf_push(x, vel.vector()) -
                   dynamics::hamiltonian_field_s2(Hl, contact::hopf_map(x)))
                      .norm(),
                  1e-10);
        const contact::SphereTangent vel0 =
            dynamics::el_velocity(x, lifted, dynamics::GaugeChoice::orthogonal());
        rec.check("el-gauge-projection",
                  (contact::hopf_push(x, vel.vector()) -
                   contact::hopf_push(x, vel0.vector()))
                      .norm(),
                  1e-12);

        // S^5 with the invariant Hamiltonian |z_1|^2 / 2.
        if (it % 8 == 0) {
            const contact::SpherePoint x5(sampling::unit_vector(3, rng));
            dynamics::LiftedHamiltonian h5;
            h5.evaluate = [](const contact::SpherePoint& q) {
                return 0.5 * std::norm(q.coords()(0));
            };
            h5.gradient = [](const contact::SpherePoint& q) {
                contact::CVector g = contact::CVector::Zero(q.n());
                g(0) = q.coords()(0);
                return g;
            };
            const contact::SphereTangent v5 = dynamics::el_velocity(x5, h5);
            double r5 = 0.0;
            for (const contact::CVector& b : contact::horizontal_basis(x5)) {
                const double dH = (h5.gradient(x5).adjoint() * b).value().real();
                r5 = std::max(r5, std::abs(contact::dtheta(
                                      x5, v5, contact::SphereTangent(x5, b)) +
                                  dH));
            }
            rec.check("el-residual-s5", r5, 1e-12);
        }
    }

    // Flow-level checks once per run.
    {
        contact::CVector z0(2);
        z0 << lie::Complex(0.6, 0.2), lie::Complex(0.4, 0.0);
        z0.normalize();
        const contact::SpherePoint x0(z0);
        const double t1 = 2.0, dt = 1e-3;
        const dynamics::Trajectory traj = dynamics::el_flow(Hz, x0, t1, dt);
        const dynamics::LiftedHamiltonian lifted = dynamics::lift_through_hopf(Hz);
        const double e0 = lifted.evaluate(traj.states.front());
        double drift = 0.0;
        for (const auto& s : traj.states)
            drift = std::max(drift, std::abs(lifted.evaluate(s) - e0));
        rec.check("energy-drift", drift, 1e-8);

        const std::vector<contact::S2Point> base =
            dynamics::flow_s2(Hz, contact::hopf_map(x0), t1, dt);
        double proj_err = 0.0;
        for (size_t k = 0; k < base.size(); ++k)
            proj_err = std::max(proj_err, (traj.projected[k].coords() -
                                           base[k].coords())
                                              .norm());
        rec.check("projection-vs-base-flow", proj_err, 1e-6);

        const dynamics::Trajectory tc =
            dynamics::el_flow(Hz, x0, t1, dt, dynamics::GaugeChoice::constant(0.7));
        double gauge_err = 0.0;
        for (size_t k = 0; k < tc.projected.size(); ++k)
            gauge_err = std::max(gauge_err, (tc.projected[k].coords() -
                                             traj.projected[k].coords())
                                                .norm());
        rec.check("projection-gauge-independence", gauge_err, 1e-6);
    }
    return rec.finish(samples);
}

std::vector<SuiteResult> run_all(int samples, std::uint64_t seed,
                                 const Tolerances& overrides) {
    std::vector<SuiteResult> out;
    out.push_back(run_lie_core(samples, seed, overrides));
    out.push_back(run_orbit(samples, seed, overrides));
    out.push_back(run_integrality(samples, seed, overrides));
    out.push_back(run_contact(samples, seed, overrides));
    out.push_back(run_dynamics(samples, seed, overrides));
    return out;
}

} // namespace contactify::verify
