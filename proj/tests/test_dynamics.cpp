#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contactify/dynamics.hpp"
#include "contactify/sampling.hpp"
#include "oracles.hpp"

using namespace contactify;
using contact::CVector;
using contact::S2Point;
using contact::SpherePoint;
using contact::SphereTangent;
using dynamics::GaugeChoice;
using lie::Complex;

namespace {

SpherePoint state(Complex z1, Complex z2) {
    CVector z(2);
    z << z1, z2;
    z.normalize();
    return SpherePoint(z);
}

/// Closed-form solution of the lifted linear-z dynamics in the metric
/// gauge: z1(t) = exp(i |z2|^2 t) z1(0), z2(t) = exp(-i |z1|^2 t) z2(0).
CVector analytic_state(const SpherePoint& x0, double t) {
    const double a1 = std::norm(x0.coords()(0));
    const double a2 = std::norm(x0.coords()(1));
    CVector z(2);
    z << std::exp(Complex(0, a2 * t)) * x0.coords()(0),
        std::exp(Complex(0, -a1 * t)) * x0.coords()(1);
    return z;
}

/// Base curve under linear-z: clockwise rotation about the z axis.
Eigen::Vector3d analytic_base(const Eigen::Vector3d& p0, double t) {
    return {std::cos(t) * p0.x() + std::sin(t) * p0.y(),
            -std::sin(t) * p0.x() + std::cos(t) * p0.y(), p0.z()};
}

} // namespace

TEST_CASE("base Hamiltonian field for linear-z is the clockwise rotation") {
    const dynamics::HamiltonianOnBase H = dynamics::linear_z();
    sampling::Rng rng(3);
    for (int it = 0; it < 40; ++it) {
        const S2Point p = contact::hopf_map(SpherePoint(sampling::unit_vector(2, rng)));
        const Eigen::Vector3d x = dynamics::hamiltonian_field_s2(H, p);
        CHECK((x - Eigen::Vector3d(p.coords().y(), -p.coords().x(), 0.0)).norm() <=
              1e-12);
        // defining identity: (1/4) vol(X_H, w) = -dH(w) on tangents
        Eigen::Vector3d w(0.3 * it - 1, 0.7, -0.2);
        w -= w.dot(p.coords()) * p.coords();
        CHECK(std::abs(0.25 * contact::monopole_form(p, x, w) +
                       dynamics::sphere_gradient(H, p).dot(w)) <= 1e-12);
    }
}

TEST_CASE("gradient audit accepts consistent pairs and flags broken ones") {
    sampling::Rng rng(5);
    const S2Point p = contact::hopf_map(SpherePoint(sampling::unit_vector(2, rng)));
    CHECK(dynamics::gradient_consistency(dynamics::linear_z(), p) <= 1e-6);
    CHECK(dynamics::gradient_consistency(
              dynamics::linear({0.3, -1.2, 0.8}, 0.25), p) <= 1e-6);

    dynamics::HamiltonianOnBase broken = dynamics::linear_z();
    broken.gradient = [](const S2Point&) {
        return Eigen::Vector3d(0.0, 0.0, 0.5); // twice the true gradient
    };
    CHECK(dynamics::gradient_consistency(broken, p) > 1e-3);
}

TEST_CASE("sphere integrator follows the closed-form rotation") {
    const dynamics::HamiltonianOnBase H = dynamics::linear_z();
    const S2Point p0(Eigen::Vector3d(0.6, -0.48, 0.64));
    const double t1 = 10.0, dt = 1e-3;
    const auto states = dynamics::flow_s2(H, p0, t1, dt);
    REQUIRE(states.size() == 10001);
    for (size_t k = 0; k < states.size(); k += 500) {
        const double t = t1 * static_cast<double>(k) / (states.size() - 1);
        CHECK((states[k].coords() - analytic_base(p0.coords(), t)).norm() <=
              1e-8);
    }
    // energy along the flow
    double drift = 0.0;
    for (const auto& s : states)
        drift = std::max(drift,
                         std::abs(H.evaluate(s) - H.evaluate(states.front())));
    CHECK(drift <= 1e-10);
}

TEST_CASE("integrator rejects steps that leave the sphere") {
    const dynamics::HamiltonianOnBase steep = dynamics::linear({0, 0, 50}, 0.0);
    const S2Point p0(Eigen::Vector3d(1, 0, 0));
    CHECK_THROWS_AS(dynamics::flow_s2(steep, p0, 1.0, 0.5), Error);
}

TEST_CASE("lift through the fibration evaluates downstairs") {
    const dynamics::HamiltonianOnBase H = dynamics::linear_z();
    const dynamics::LiftedHamiltonian lifted = dynamics::lift_through_hopf(H);
    sampling::Rng rng(7);
    for (int it = 0; it < 50; ++it) {
        const SpherePoint x(sampling::unit_vector(2, rng));
        CHECK(lifted.evaluate(x) ==
              doctest::Approx(H.evaluate(contact::hopf_map(x))).epsilon(1e-14));
        // the lift of linear-z is |z1|^2 / 2 up to the constant
        CHECK(lifted.evaluate(x) ==
              doctest::Approx(0.5 * std::norm(x.coords()(0))).epsilon(1e-12));
        // gradient encodes the differential along tangents
        const CVector v = sampling::tangent_at(x.coords(), rng);
        const double h = 1e-6;
        CVector xp = x.coords() + h * v, xm = x.coords() - h * v;
        const double fd = (lifted.evaluate(SpherePoint(xp / xp.norm())) -
                           lifted.evaluate(SpherePoint(xm / xm.norm()))) /
                          (2 * h);
        CHECK(std::abs((lifted.gradient(x).adjoint() * v).value().real() - fd) <=
              1e-7);
    }
}

TEST_CASE("the Euler-Lagrange velocity solves the contact equation") {
    const dynamics::LiftedHamiltonian lifted =
        dynamics::lift_through_hopf(dynamics::linear_z());
    sampling::Rng rng(11);
    for (int it = 0; it < 60; ++it) {
        const SpherePoint x(sampling::unit_vector(2, rng));
        const GaugeChoice gauge = it % 2 ? GaugeChoice::constant(0.4 * it - 2)
                                         : GaugeChoice::orthogonal();
        const SphereTangent v = dynamics::el_velocity(x, lifted, gauge);
        for (const CVector& b : contact::horizontal_basis(x)) {
            const double dH = (lifted.gradient(x).adjoint() * b).value().real();
            CHECK(std::abs(contact::dtheta(x, v, SphereTangent(x, b)) + dH) <=
                  1e-12);
        }
        // gauge fixes the vertical component <v, 2ix>
        const double vert =
            (v.vector().adjoint() * (Complex(0, 2) * x.coords())).value().real();
        const double want =
            gauge.kind == GaugeChoice::Kind::Constant ? gauge.c : 0.0;
        CHECK(vert == doctest::Approx(want).epsilon(1e-12));
    }

    // Closed form in the metric gauge: v = (i |z2|^2 z1, -i |z1|^2 z2).
    const SpherePoint x0 = state(Complex(0.6, 0.2), Complex(0.74, -0.1));
    const SphereTangent v0 = dynamics::el_velocity(x0, lifted);
    const double a1 = std::norm(x0.coords()(0)), a2 = std::norm(x0.coords()(1));
    CVector want(2);
    want << Complex(0, a2) * x0.coords()(0), Complex(0, -a1) * x0.coords()(1);
    CHECK((v0.vector() - want).norm() <= 1e-12);
}

TEST_CASE("a Hamiltonian that varies along the fiber is rejected") {
    dynamics::LiftedHamiltonian bad;
    bad.evaluate = [](const SpherePoint& x) { return x.coords()(0).real(); };
    bad.gradient = [](const SpherePoint& x) {
        CVector g = CVector::Zero(x.n());
        g(0) = 1.0;
        return g;
    };
    sampling::Rng rng(13);
    const SpherePoint x(sampling::unit_vector(2, rng));
    CHECK_THROWS_AS(dynamics::el_velocity(x, bad), Error);
}

TEST_CASE("upstairs flow matches its closed form and conserves energy") {
    const dynamics::HamiltonianOnBase H = dynamics::linear_z();
    const SpherePoint x0 = state(Complex(0.8, 0.1), Complex(0.58, -0.05));
    const double t1 = 2 * M_PI, dt = 1e-3;
    const dynamics::Trajectory traj = dynamics::el_flow(H, x0, t1, dt);
    REQUIRE(traj.times.size() == traj.states.size());
    REQUIRE(traj.times.size() == traj.projected.size());

    double state_err = 0.0;
    for (size_t k = 0; k < traj.times.size(); k += 97)
        state_err = std::max(
            state_err,
            (traj.states[k].coords() - analytic_state(x0, traj.times[k])).norm());
    CHECK(state_err <= 1e-8);

    const dynamics::LiftedHamiltonian lifted = dynamics::lift_through_hopf(H);
    double drift = 0.0, torus_drift = 0.0;
    const double a1 = std::norm(x0.coords()(0));
    for (const auto& s : traj.states) {
        drift = std::max(drift, std::abs(lifted.evaluate(s) -
                                         lifted.evaluate(traj.states.front())));
        torus_drift =
            std::max(torus_drift, std::abs(std::norm(s.coords()(0)) - a1));
    }
    CHECK(drift <= 1e-8);
    CHECK(torus_drift <= 1e-8);

    // Projection equals the base flow of the projected initial point.
    const auto base =
        dynamics::flow_s2(H, contact::hopf_map(x0), t1, dt);
    REQUIRE(base.size() == traj.projected.size());
    double proj_err = 0.0;
    for (size_t k = 0; k < base.size(); ++k)
        proj_err = std::max(
            proj_err, (traj.projected[k].coords() - base[k].coords()).norm());
    CHECK(proj_err <= 1e-6);

    // ... and the analytic base rotation.
    double rot_err = 0.0;
    for (size_t k = 0; k < traj.times.size(); k += 211)
        rot_err = std::max(
            rot_err,
            (traj.projected[k].coords() -
             analytic_base(contact::hopf_map(x0).coords(), traj.times[k]))
                .norm());
    CHECK(rot_err <= 1e-6);
}

TEST_CASE("projected dynamics does not depend on the gauge") {
    const dynamics::HamiltonianOnBase H = dynamics::linear_z();
    const SpherePoint x0 = state(Complex(0.3, -0.5), Complex(0.7, 0.2));
    const double t1 = 3.0, dt = 1e-3;
    const dynamics::Trajectory ref = dynamics::el_flow(H, x0, t1, dt);
    for (double c : {-1.0, 0.5, 1.0}) {
        const dynamics::Trajectory alt =
            dynamics::el_flow(H, x0, t1, dt, GaugeChoice::constant(c));
        double err = 0.0;
        for (size_t k = 0; k < ref.projected.size(); ++k)
            err = std::max(err, (alt.projected[k].coords() -
                                 ref.projected[k].coords())
                                    .norm());
        CHECK(err <= 1e-6);
        // but the states themselves differ (the fiber phase moves)
        CHECK((alt.states.back().coords() - ref.states.back().coords()).norm() >
              1e-3);
    }
}

TEST_CASE("action of the displayed circle is 2 pi |z1|^2") {
    // gamma(t) = (exp(-it) z1, z2) on [0, 2 pi]: Hhat = |z1|^2 / 2 constant,
    // theta0(gamma') = -|z1|^2 / 2, so the action splits into
    // pi |z1|^2 - (-pi |z1|^2) = 2 pi |z1|^2.
    const double r1 = 0.6, r2 = 0.8; // |z1|^2 = 0.36
    const int m = 2001;
    const double t1 = 2 * M_PI;
    std::vector<double> times(m);
    std::vector<SpherePoint> states;
    states.reserve(m);
    for (int k = 0; k < m; ++k) {
        times[k] = t1 * k / (m - 1);
        CVector z(2);
        z << r1 * std::exp(Complex(0, -times[k])), r2;
        states.emplace_back(z);
    }
    const dynamics::Trajectory traj = dynamics::assemble_trajectory(
        std::move(times), std::move(states), GaugeChoice::orthogonal());
    const dynamics::ActionValue act =
        dynamics::action_functional(traj, dynamics::linear_z());

    const double want = 2 * M_PI * r1 * r1;
    CHECK(act.value == doctest::Approx(want).epsilon(1e-9));
    CHECK(act.hamiltonian_part == doctest::Approx(M_PI * r1 * r1).epsilon(1e-9));
    CHECK(act.form_part == doctest::Approx(-M_PI * r1 * r1).epsilon(1e-9));

    // Pointwise oracle with the exact derivative: the integrand of the
    // action is constant |z1|^2 along this circle.
    for (int k = 0; k < m; k += 400) {
        const double t = t1 * k / (m - 1);
        CVector g(2), gd(2);
        g << r1 * std::exp(Complex(0, -t)), r2;
        gd << Complex(0, -1) * r1 * std::exp(Complex(0, -t)), 0.0;
        const double integrand =
            0.5 * r1 * r1 - contact::liouville(g, gd);
        CHECK(integrand == doctest::Approx(r1 * r1).epsilon(1e-14));
    }

    // Cross-check the quadrature against a plain trapezoid sum.
    std::vector<double> integrand(m);
    for (int k = 0; k < m; ++k) {
        const double t = t1 * k / (m - 1);
        CVector g(2), gd(2);
        g << r1 * std::exp(Complex(0, -t)), r2;
        gd << Complex(0, -1) * r1 * std::exp(Complex(0, -t)), 0.0;
        integrand[k] = 0.5 * r1 * r1 - contact::liouville(g, gd);
    }
    CHECK(act.value ==
          doctest::Approx(oracles::trapezoid(integrand, t1 / (m - 1)))
              .epsilon(1e-8));
}

TEST_CASE("action input validation") {
    std::vector<double> times{0.0, 0.1, 0.3}; // non-uniform
    std::vector<SpherePoint> states(3, state(1.0, 0.0));
    CHECK_THROWS_AS(dynamics::assemble_trajectory(times, states,
                                                  GaugeChoice::orthogonal()),
                    Error);
    dynamics::Trajectory two;
    two.times = {0.0, 0.1};
    two.states = {state(1.0, 0.0), state(1.0, 0.0)};
    two.projected = {contact::hopf_map(state(1.0, 0.0)),
                     contact::hopf_map(state(1.0, 0.0))};
    two.step = 0.1;
    CHECK_THROWS_AS(dynamics::action_functional(two, dynamics::linear_z()),
                    Error);
}

TEST_CASE("solutions are stationary points of the action") {
    const dynamics::HamiltonianOnBase H = dynamics::linear_z();
    const SpherePoint x0 = state(Complex(0.7, 0.0), Complex(0.4, 0.59));
    const dynamics::Trajectory sol = dynamics::el_flow(H, x0, 2 * M_PI, 2e-3);

    sampling::Rng rng(101);
    for (int it = 0; it < 5; ++it) {
        const auto delta = dynamics::admissible_perturbation(sol, rng);
        const double d = dynamics::stationarity_difference(sol, H, delta, 1e-4);
        CHECK(std::abs(d) <= 1e-6);
    }

    // A great circle through the poles is not a solution; the derivative
    // must be visibly nonzero for a generic perturbation.
    const int m = static_cast<int>(sol.times.size());
    std::vector<double> times(m);
    std::vector<SpherePoint> states;
    states.reserve(m);
    for (int k = 0; k < m; ++k) {
        times[k] = 2 * M_PI * k / (m - 1);
        CVector z(2);
        z << std::cos(times[k]), std::sin(times[k]);
        states.emplace_back(z);
    }
    const dynamics::Trajectory circle = dynamics::assemble_trajectory(
        std::move(times), std::move(states), GaugeChoice::orthogonal());
    double worst = 0.0;
    for (int it = 0; it < 5; ++it) {
        const auto delta = dynamics::admissible_perturbation(circle, rng);
        worst = std::max(
            worst,
            std::abs(dynamics::stationarity_difference(circle, H, delta, 1e-4)));
    }
    CHECK(worst >= 1e-3);
}

TEST_CASE("perturbations are admissible by construction") {
    const dynamics::Trajectory sol = dynamics::el_flow(
        dynamics::linear_z(), state(Complex(0.6, 0.3), Complex(0.5, -0.55)),
        1.0, 1e-3);
    sampling::Rng rng(7);
    const auto delta = dynamics::admissible_perturbation(sol, rng);
    REQUIRE(delta.size() == sol.states.size());
    CHECK(delta.front().norm() == 0.0);
    CHECK(delta.back().norm() == 0.0);
    double worst_tangency = 0.0;
    for (size_t k = 0; k < delta.size(); ++k)
        worst_tangency = std::max(
            worst_tangency,
            std::abs((sol.states[k].coords().adjoint() * delta[k]).value().real()));
    CHECK(worst_tangency <= 1e-12);

    // Rejections: endpoint violation and non-tangent direction.
    auto bad_end = delta;
    bad_end.back() = CVector::Constant(2, Complex(0.1, 0.0));
    CHECK_THROWS_AS(
        dynamics::stationarity_difference(sol, dynamics::linear_z(), bad_end, 1e-4),
        Error);
    auto bad_dir = delta;
    bad_dir[delta.size() / 2] = sol.states[delta.size() / 2].coords(); // radial
    CHECK_THROWS_AS(
        dynamics::stationarity_difference(sol, dynamics::linear_z(), bad_dir, 1e-4),
        Error);
}
