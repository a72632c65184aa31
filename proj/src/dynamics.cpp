#include "contactify/dynamics.hpp"

#include <cmath>

namespace contactify::dynamics {

using contact::CVector;
using contact::S2Point;
using contact::SpherePoint;
using contact::SphereTangent;

namespace {

constexpr contact::Complex kI{0.0, 1.0};

S2Point renormalize3(const Eigen::Vector3d& p) {
    const double n = p.norm();
    if (n < 0.5) fail("step_rejected", "flow_s2: state collapsed toward 0");
    return S2Point(p / n);
}

SpherePoint renormalize(const CVector& x) {
    const double n = x.norm();
    if (n < 0.5) fail("step_rejected", "el_flow: state collapsed toward 0");
    return SpherePoint(x / n);
}

int step_count(double t1, double dt, const char* what) {
    if (!(t1 >= 0.0) || !(dt > 0.0))
        fail("domain_error", std::string(what) + ": need t1 >= 0 and dt > 0");
    if (t1 == 0.0) return 0;
    return std::max(1, static_cast<int>(std::llround(t1 / dt)));
}

// dH(w) = Re<G|w>
double apply_differential(const CVector& g, const CVector& w) {
    return (g.adjoint() * w).value().real();
}

// Composite Simpson on uniformly sampled values; odd interval counts close
// with a 3/8 rule over the last three intervals.  4th-order accurate.
double simpson(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size()) - 1; // intervals
    if (n < 2) fail("domain_error", "simpson: need at least 3 samples");
    double s = 0.0;
    const int even_part = (n % 2 == 0) ? n : n - 3;
    for (int k = 0; k + 2 <= even_part; k += 2)
        s += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
    if (n % 2 != 0) {
        const int b = even_part;
        s += 3.0 * h / 8.0 * (f[b] + 3.0 * f[b + 1] + 3.0 * f[b + 2] + f[b + 3]);
    }
    return s;
}

// Path velocities by finite differences.  5-point stencils when possible,
// 3-point otherwise; both one-sided at the ends.
std::vector<CVector> path_velocity(const std::vector<SpherePoint>& xs, double h) {
    const int m = static_cast<int>(xs.size());
    std::vector<CVector> v(m);
    auto s = [&](int k) -> const CVector& { return xs[k].coords(); };
    if (m >= 5) {
        v[0] = (-25.0 * s(0) + 48.0 * s(1) - 36.0 * s(2) + 16.0 * s(3) -
                3.0 * s(4)) /
               (12.0 * h);
        v[1] = (-3.0 * s(0) - 10.0 * s(1) + 18.0 * s(2) - 6.0 * s(3) + s(4)) /
               (12.0 * h);
        for (int k = 2; k < m - 2; ++k)
            v[k] = (s(k - 2) - 8.0 * s(k - 1) + 8.0 * s(k + 1) - s(k + 2)) /
                   (12.0 * h);
        v[m - 2] = (3.0 * s(m - 1) + 10.0 * s(m - 2) - 18.0 * s(m - 3) +
                    6.0 * s(m - 4) - s(m - 5)) /
                   (12.0 * h);
        v[m - 1] = (25.0 * s(m - 1) - 48.0 * s(m - 2) + 36.0 * s(m - 3) -
                    16.0 * s(m - 4) + 3.0 * s(m - 5)) /
                   (12.0 * h);
    } else {
        v[0] = (-3.0 * s(0) + 4.0 * s(1) - s(2)) / (2.0 * h);
        for (int k = 1; k < m - 1; ++k) v[k] = (s(k + 1) - s(k - 1)) / (2.0 * h);
        v[m - 1] = (3.0 * s(m - 1) - 4.0 * s(m - 2) + s(m - 3)) / (2.0 * h);
    }
    return v;
}

} // namespace

HamiltonianOnBase linear(const Eigen::Vector3d& coeffs, double offset) {
    return HamiltonianOnBase{
        [coeffs, offset](const S2Point& p) {
            return coeffs.dot(p.coords()) + offset;
        },
        [coeffs](const S2Point&) { return coeffs; }};
}

HamiltonianOnBase linear_z() {
    return linear(Eigen::Vector3d(0.0, 0.0, 0.25), 0.25);
}

double gradient_consistency(const HamiltonianOnBase& H, const S2Point& p) {
    const double h = 1e-5;
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d dir = Eigen::Vector3d::Zero();
        dir[k] = 1.0;
        dir -= p.coords().dot(dir) * p.coords();
        if (dir.norm() < 1e-3) continue;
        dir.normalize();
        const double fd = (H.evaluate(renormalize3(p.coords() + h * dir)) -
                           H.evaluate(renormalize3(p.coords() - h * dir))) /
                          (2.0 * h);
        const double an = H.gradient(p).dot(dir);
        worst = std::max(worst,
                         std::abs(fd - an) / std::max(1.0, std::abs(an)));
    }
    return worst;
}

Eigen::Vector3d sphere_gradient(const HamiltonianOnBase& H, const S2Point& p) {
    const Eigen::Vector3d g = H.gradient(p);
    return g - p.coords().dot(g) * p.coords();
}

Eigen::Vector3d hamiltonian_field_s2(const HamiltonianOnBase& H,
                                     const S2Point& p) {
    return 4.0 * p.coords().cross(sphere_gradient(H, p));
}

std::vector<S2Point> flow_s2(const HamiltonianOnBase& H, const S2Point& p0,
                             double t1, double dt) {
    const int n = step_count(t1, dt, "flow_s2");
    const double h = (n == 0) ? 0.0 : t1 / n;
    std::vector<S2Point> out;
    out.reserve(n + 1);
    out.push_back(p0);
    auto field = [&](const Eigen::Vector3d& p) {
        return hamiltonian_field_s2(H, renormalize3(p));
    };
    Eigen::Vector3d p = p0.coords();
    for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d k1 = field(p);
        const Eigen::Vector3d k2 = field(p + 0.5 * h * k1);
        const Eigen::Vector3d k3 = field(p + 0.5 * h * k2);
        const Eigen::Vector3d k4 = field(p + h * k3);
        const Eigen::Vector3d raw = p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Eigen::Vector3d next = raw / raw.norm();
        if ((next - raw).norm() > 1e-3)
            fail("step_rejected",
                 "flow_s2: renormalization moved the state by more than 1e-3; "
                 "reduce dt");
        p = next;
        out.push_back(S2Point(p));
    }
    return out;
}

LiftedHamiltonian lift_through_hopf(const HamiltonianOnBase& H) {
    return LiftedHamiltonian{
        [H](const SpherePoint& x) { return H.evaluate(contact::hopf_map(x)); },
        [H](const SpherePoint& x) {
            // G = (D hopf)^T grad H, assembled column by column over the
            // real coordinate directions of C^2.
            const Eigen::Vector3d g = H.gradient(contact::hopf_map(x));
            const CVector dirs[4] = {
                (CVector(2) << 1.0, 0.0).finished(),
                (CVector(2) << kI, 0.0).finished(),
                (CVector(2) << 0.0, 1.0).finished(),
                (CVector(2) << 0.0, kI).finished()};
            double comp[4];
            for (int r = 0; r < 4; ++r)
                comp[r] = g.dot(contact::hopf_push(x, dirs[r]));
            CVector out(2);
            out[0] = contact::Complex(comp[0], comp[1]);
            out[1] = contact::Complex(comp[2], comp[3]);
            return out;
        }};
}

SphereTangent el_velocity(const SpherePoint& x, const LiftedHamiltonian& H,
                          const GaugeChoice& gauge) {
    const CVector g = H.gradient(x);
    const CVector fiber = kI * x.coords();
    const double vert = apply_differential(g, fiber);
    if (std::abs(vert) > 1e-10 * std::max(1.0, g.norm()))
        fail("domain_error",
             "el_velocity: dH does not annihilate the fiber direction "
             "(Hamiltonian is not invariant along the Reeb flow)");

    // The horizontal basis is Darboux for dtheta (dtheta(u, iu) = 1), so the
    // linear system i_v dtheta = -dH splits into independent pairs.
    const std::vector<CVector> h = contact::horizontal_basis(x);
    CVector v = CVector::Zero(x.n());
    for (size_t j = 0; j + 1 < h.size(); j += 2) {
        const CVector& u = h[j];
        const CVector& iu = h[j + 1];
        v += -apply_differential(g, iu) * u + apply_differential(g, u) * iu;
    }
    const double a =
        (gauge.kind == GaugeChoice::Kind::Orthogonal) ? 0.0 : 0.5 * gauge.c;
    v += a * fiber;
    return SphereTangent(x, std::move(v));
}

Trajectory assemble_trajectory(std::vector<double> times,
                               std::vector<contact::SpherePoint> states,
                               GaugeChoice gauge) {
    if (times.size() != states.size() || times.empty())
        fail("dimension_mismatch",
             "assemble_trajectory: times and states must match and be nonempty");
    Trajectory traj;
    traj.step = times.size() > 1 ? times[1] - times[0] : 0.0;
    for (size_t k = 1; k < times.size(); ++k) {
        const double dt = times[k] - times[k - 1];
        if (std::abs(dt - traj.step) > 1e-9 * std::max(1.0, std::abs(traj.step)))
            fail("domain_error", "assemble_trajectory: non-uniform time grid");
    }
    traj.projected.reserve(states.size());
    for (const SpherePoint& x : states) traj.projected.push_back(contact::hopf_map(x));
    traj.times = std::move(times);
    traj.states = std::move(states);
    traj.gauge = gauge;
    return traj;
}

Trajectory el_flow(const HamiltonianOnBase& H, const SpherePoint& x0, double t1,
                   double dt, const GaugeChoice& gauge) {
    if (x0.n() != 2)
        fail("dimension_mismatch", "el_flow: the lifted flow lives on S^3");
    const LiftedHamiltonian lifted = lift_through_hopf(H);
    const int n = step_count(t1, dt, "el_flow");
    const double h = (n == 0) ? 0.0 : t1 / n;

    std::vector<double> times;
    std::vector<SpherePoint> states;
    times.reserve(n + 1);
    states.reserve(n + 1);
    times.push_back(0.0);
    states.push_back(x0);

    auto field = [&](const CVector& y) {
        return el_velocity(renormalize(y), lifted, gauge).vector();
    };
    CVector x = x0.coords();
    for (int k = 0; k < n; ++k) {
        const CVector k1 = field(x);
        const CVector k2 = field(x + 0.5 * h * k1);
        const CVector k3 = field(x + 0.5 * h * k2);
        const CVector k4 = field(x + h * k3);
        const CVector raw = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const CVector next = raw / raw.norm();
        if ((next - raw).norm() > 1e-3)
            fail("step_rejected",
                 "el_flow: renormalization moved the state by more than 1e-3; "
                 "reduce dt");
        x = next;
        times.push_back(h * (k + 1));
        states.push_back(SpherePoint(x));
    }
    Trajectory traj = assemble_trajectory(std::move(times), std::move(states), gauge);
    traj.step = h;
    return traj;
}

ActionValue action_functional(const Trajectory& traj, const HamiltonianOnBase& H) {
    const int m = static_cast<int>(traj.states.size());
    if (m < 3)
        fail("domain_error", "action_functional: need at least 3 samples");
    const double h = traj.step;
    if (!(h > 0.0))
        fail("domain_error", "action_functional: degenerate time step");

    const LiftedHamiltonian lifted = lift_through_hopf(H);
    std::vector<double> energy(m), form(m);
    const std::vector<CVector> vel = path_velocity(traj.states, h);
    for (int k = 0; k < m; ++k) {
        energy[k] = lifted.evaluate(traj.states[k]);
        form[k] = contact::liouville(traj.states[k].coords(), vel[k]);
    }
    ActionValue out;
    out.hamiltonian_part = simpson(energy, h);
    out.form_part = simpson(form, h);
    out.value = out.hamiltonian_part - out.form_part;
    return out;
}

double stationarity_difference(const Trajectory& traj, const HamiltonianOnBase& H,
                               const std::vector<CVector>& delta, double eps) {
    const size_t m = traj.states.size();
    if (delta.size() != m)
        fail("dimension_mismatch",
             "stationarity_difference: one perturbation vector per sample");
    if (!(eps > 0.0))
        fail("domain_error", "stationarity_difference: eps must be positive");
    if (delta.front().norm() > 1e-12 || delta.back().norm() > 1e-12)
        fail("domain_error",
             "stationarity_difference: perturbation must vanish at endpoints");
    for (size_t k = 0; k < m; ++k) {
        const double r =
            (traj.states[k].coords().adjoint() * delta[k]).value().real();
        if (std::abs(r) > 1e-10 * std::max(1.0, delta[k].norm()))
            fail("tangency_violation",
                 "stationarity_difference: perturbation not tangent at sample " +
                     std::to_string(k));
    }

    auto shifted = [&](double sign) {
        std::vector<SpherePoint> states;
        states.reserve(m);
        for (size_t k = 0; k < m; ++k)
            states.push_back(renormalize(traj.states[k].coords() +
                                         sign * eps * delta[k]));
        return assemble_trajectory(traj.times, std::move(states), traj.gauge);
    };
    const double plus = action_functional(shifted(1.0), H).value;
    const double minus = action_functional(shifted(-1.0), H).value;
    return (plus - minus) / (2.0 * eps);
}

std::vector<CVector> admissible_perturbation(const Trajectory& traj,
                                             sampling::Rng& rng) {
    const size_t m = traj.states.size();
    if (m < 3)
        fail("domain_error", "admissible_perturbation: need at least 3 samples");
    const int n = traj.states.front().n();
    const CVector seed = sampling::complex_gaussian(n, rng);
    const double span = traj.times.back() - traj.times.front();
    std::vector<CVector> out(m);
    for (size_t k = 0; k < m; ++k) {
        if (k == 0 || k + 1 == m) {
            out[k] = CVector::Zero(n);
            continue;
        }
        const CVector& x = traj.states[k].coords();
        const double r = (x.adjoint() * seed).value().real();
        const double envelope =
            std::sin(M_PI * (traj.times[k] - traj.times.front()) / span);
        out[k] = envelope * (seed - r * x);
    }
    return out;
}

} // namespace contactify::dynamics
