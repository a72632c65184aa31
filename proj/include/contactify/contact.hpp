#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "contactify/common.hpp"

namespace contactify::contact {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

/// Point of the unit sphere S^{2n-1} in C^n, n >= 1.  Unit norm within
/// 1e-12 is enforced at construction.
class SpherePoint {
public:
    explicit SpherePoint(CVector x);

    int n() const { return static_cast<int>(x_.size()); }
    const CVector& coords() const { return x_; }

private:
    CVector x_;
};

/// Tangent vector at a sphere point: Re<x|v> = 0 within 1e-12 relative to
/// ||v||.  Carries its base point so form evaluations can cross-check.
class SphereTangent {
public:
    SphereTangent(SpherePoint at, CVector v);

    const SpherePoint& at() const { return at_; }
    const CVector& vector() const { return v_; }

private:
    SpherePoint at_;
    CVector v_;
};

/// Point of the unit 2-sphere in R^3.
class S2Point {
public:
    explicit S2Point(Eigen::Vector3d p);

    const Eigen::Vector3d& coords() const { return p_; }

private:
    Eigen::Vector3d p_;
};

/// Contact form theta0 of the sphere, evaluated by the coordinate formula
/// (1/2) sum_k (q^k(x) p_k(v) - p_k(x) q^k(v)) with z_k = q^k + i p_k.
/// This raw overload accepts any pair of same-size vectors; the identity
/// with (1/2) Im<x|v> is a property of the formula, not its definition.
double liouville(const CVector& x, const CVector& v);
double liouville(const SpherePoint& x, const SphereTangent& v);

/// Exterior derivative of theta0 on tangent vectors at x:
/// sum_k (q^k(v) p_k(w) - p_k(v) q^k(w)) = Im<v|w>.
double dtheta(const SpherePoint& x, const SphereTangent& v,
              const SphereTangent& w);

/// Reeb field R(x) = 2 i x: theta0(R) = 1 and dtheta(R, .) = 0 on the
/// tangent space.  Its flow x -> exp(2it) x has minimal period pi.
SphereTangent reeb(const SpherePoint& x);
SpherePoint reeb_flow(const SpherePoint& x, double t);

/// Deterministic orthonormal frames at x, seeded from the coordinate
/// vectors in index order.  horizontal_basis spans ker theta0 within T_x S
/// (the complex-orthogonal complement of x, listed as u, iu pairs);
/// tangent_basis prepends the fiber direction i x.
std::vector<CVector> horizontal_basis(const SpherePoint& x);
std::vector<CVector> tangent_basis(const SpherePoint& x);

struct ContactCheck {
    bool contact;  // dtheta nondegenerate on ker theta0
    double det;    // Gram determinant of the skew form; 1 in exact arithmetic
};

/// Evaluates the contact condition at x: the skew matrix of dtheta on the
/// horizontal basis must be nondegenerate.  For n = 1 the kernel of theta0
/// is trivial and det = 1 by the empty-product convention.
ContactCheck contact_condition(const SpherePoint& x);

/// Basis of the characteristic set of theta0 at x: directions annihilating
/// both theta0 and dtheta within T_x S.  Computed as the numerical kernel
/// of the skew form on the full tangent basis.  Always span{ix} here; a
/// singular value inside (1e-10, 1e-6) * sigma_max throws rank_ambiguity.
std::vector<SphereTangent> characteristic_directions(const SpherePoint& x);

/// Fibration S^3 -> S^2 (n = 2 only), x = (alpha, nu):
///   x + i y = 2 conj(alpha) nu,  z = |alpha|^2 - |nu|^2.
/// Constant on the circle fiber x -> exp(it) x.
S2Point hopf_map(const SpherePoint& x);

/// Differential of hopf_map at x applied to an ambient vector v.
Eigen::Vector3d hopf_push(const SpherePoint& x, const CVector& v);

/// Volume 2-form of the unit sphere evaluated on tangent vectors at p:
/// det[p a b].  Tangency of a and b is checked to 1e-10.
double monopole_form(const S2Point& p, const Eigen::Vector3d& a,
                     const Eigen::Vector3d& b);

/// Both sides of the pullback identity dtheta = (1/4) hopf^* (monopole):
/// first dtheta(x, v, w), then the monopole form at hopf_map(x) on the
/// pushed-forward vectors, scaled by 1/4.
std::pair<double, double> hopf_pullback_check(const SpherePoint& x,
                                              const SphereTangent& v,
                                              const SphereTangent& w);

/// Flux of the monopole form through the sphere, by a Gauss-Legendre grid
/// in cos(theta) times a uniform midpoint grid in phi.  Exact answer 4 pi.
double monopole_flux(int n_cos = 64, int n_phi = 128);

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

} // namespace contactify::contact
