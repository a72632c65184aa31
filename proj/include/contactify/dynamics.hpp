#pragma once

#include <functional>
#include <vector>

#include "contactify/contact.hpp"
#include "contactify/sampling.hpp"

namespace contactify::dynamics {

/// Hamiltonian on the base 2-sphere: an ambient function on R^3 together
/// with its ambient gradient.  Tangential projection happens inside the
/// operations, so any smooth extension of the same sphere function gives
/// the same dynamics.
struct HamiltonianOnBase {
    std::function<double(const contact::S2Point&)> evaluate;
    std::function<Eigen::Vector3d(const contact::S2Point&)> gradient;
};

/// H(p) = (z + 1) / 4, the normalization under which the base flow is the
/// unit-speed rotation about the z axis.
HamiltonianOnBase linear_z();

/// H(p) = coeffs . p + offset.
HamiltonianOnBase linear(const Eigen::Vector3d& coeffs, double offset);

/// Max relative error between gradient and a central finite difference of
/// evaluate along tangent directions at p.  Audit hook for user-supplied
/// Hamiltonians; the suites require <= 1e-6.
double gradient_consistency(const HamiltonianOnBase& H, const contact::S2Point& p);

/// Tangential part of the ambient gradient at p.
Eigen::Vector3d sphere_gradient(const HamiltonianOnBase& H, const contact::S2Point& p);

/// Hamiltonian vector field of H for the quarter-volume symplectic form:
/// X_H(p) = 4 p x grad_S H(p), the unique field with (1/4) vol(X_H, .) = -dH.
Eigen::Vector3d hamiltonian_field_s2(const HamiltonianOnBase& H,
                                     const contact::S2Point& p);

/// RK4 integration of X_H on the sphere with renormalization after every
/// step; a step whose retraction moves the point by more than 1e-3 throws
/// step_rejected.  Samples lie on the uniform grid k * (t1/N), N = round(t1/dt).
std::vector<contact::S2Point> flow_s2(const HamiltonianOnBase& H,
                                      const contact::S2Point& p0, double t1,
                                      double dt);

/// How the vertical (Reeb) component of the velocity is fixed along an
/// Euler-Lagrange solution.  Orthogonal: <v, R(x)> = 0 in the round metric.
/// Constant: <v, R(x)> = c.
struct GaugeChoice {
    enum class Kind { Orthogonal, Constant };
    Kind kind = Kind::Orthogonal;
    double c = 0.0;

    static GaugeChoice orthogonal() { return {Kind::Orthogonal, 0.0}; }
    static GaugeChoice constant(double c) { return {Kind::Constant, c}; }
};

/// Hamiltonian upstairs on S^{2n-1}: evaluate plus the ambient real
/// gradient G, encoding the differential as dH(w) = Re<G|w>.  Must be
/// invariant along the Reeb fiber; el_velocity checks this.
struct LiftedHamiltonian {
    std::function<double(const contact::SpherePoint&)> evaluate;
    std::function<contact::CVector(const contact::SpherePoint&)> gradient;
};

/// Pullback of a base Hamiltonian through the fibration (n = 2).
LiftedHamiltonian lift_through_hopf(const HamiltonianOnBase& H);

/// The Euler-Lagrange velocity at x: the unique tangent v with
/// dtheta(x, v, w) + dH(x)(w) = 0 for all tangent w, made unique by the
/// gauge choice in the Reeb direction.  Works on S^{2n-1} for any n; throws
/// domain_error when dH does not annihilate the fiber direction.
contact::SphereTangent el_velocity(const contact::SpherePoint& x,
                                   const LiftedHamiltonian& H,
                                   const GaugeChoice& gauge = GaugeChoice::orthogonal());

/// Sampled Euler-Lagrange solution upstairs together with its projection.
struct Trajectory {
    std::vector<double> times;
    std::vector<contact::SpherePoint> states;
    std::vector<contact::S2Point> projected;
    double step = 0.0;
    GaugeChoice gauge;
};

/// Builds a Trajectory from explicit samples: checks uniform spacing,
/// recomputes the projection.  Shared by the integrator and the CSV reader.
Trajectory assemble_trajectory(std::vector<double> times,
                               std::vector<contact::SpherePoint> states,
                               GaugeChoice gauge);

/// RK4 integration of the Euler-Lagrange field on S^3 (base Hamiltonian
/// lifted through the fibration), renormalizing every step.
Trajectory el_flow(const HamiltonianOnBase& H, const contact::SpherePoint& x0,
                   double t1, double dt,
                   const GaugeChoice& gauge = GaugeChoice::orthogonal());

/// The action integral split into its two parts:
/// value = integral of H dt - integral of theta0 along the path.
struct ActionValue {
    double value;
    double hamiltonian_part;
    double form_part;
};

/// Evaluates the action on a sampled path: composite Simpson for both
/// integrands, path velocity by 4th-order finite differences (one-sided at
/// the ends, 2nd-order when fewer than 5 samples).  Requires >= 3 samples
/// and uniform times.
ActionValue action_functional(const Trajectory& traj, const HamiltonianOnBase& H);

/// Central-difference directional derivative of the action at traj along
/// the perturbation delta (one tangent vector per sample, zero at both
/// endpoints): (A[x + eps d] - A[x - eps d]) / (2 eps), perturbed states
/// renormalized onto the sphere.
double stationarity_difference(const Trajectory& traj, const HamiltonianOnBase& H,
                               const std::vector<contact::CVector>& delta,
                               double eps);

/// Random admissible perturbation: one fixed Gaussian ambient vector,
/// projected to the tangent space at every sample and shaped by a
/// sin(pi t / T) envelope; endpoints exactly zero.
std::vector<contact::CVector> admissible_perturbation(const Trajectory& traj,
                                                      sampling::Rng& rng);

} // namespace contactify::dynamics
