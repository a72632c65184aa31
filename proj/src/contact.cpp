#include "contactify/contact.hpp"

#include <cmath>

namespace contactify::contact {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_base(const SpherePoint& x, const SphereTangent& t,
                       const char* what) {
    if (t.at().n() != x.n() ||
        (t.at().coords() - x.coords()).norm() > 1e-10)
        fail("domain_error",
             std::string(what) + ": tangent vector based at a different point");
}

} // namespace

SpherePoint::SpherePoint(CVector x) : x_(std::move(x)) {
    if (x_.size() < 1) fail("dimension_mismatch", "SpherePoint: empty vector");
    const double dev = std::abs(x_.norm() - 1.0);
    if (dev > 1e-12)
        fail("invariant_violation",
             "SpherePoint: norm deviates from 1 by " + std::to_string(dev));
}

SphereTangent::SphereTangent(SpherePoint at, CVector v)
    : at_(std::move(at)), v_(std::move(v)) {
    if (v_.size() != at_.coords().size())
        fail("dimension_mismatch", "SphereTangent: sizes differ");
    const double r = (at_.coords().adjoint() * v_).value().real();
    if (std::abs(r) > 1e-12 * std::max(1.0, v_.norm()))
        fail("tangency_violation",
             "SphereTangent: Re<x|v> = " + std::to_string(r));
}

S2Point::S2Point(Eigen::Vector3d p) : p_(std::move(p)) {
    const double dev = std::abs(p_.norm() - 1.0);
    if (dev > 1e-12)
        fail("invariant_violation",
             "S2Point: norm deviates from 1 by " + std::to_string(dev));
}

double liouville(const CVector& x, const CVector& v) {
    if (x.size() != v.size())
        fail("dimension_mismatch", "liouville: vector sizes differ");
    double s = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k)
        s += 0.5 * (x[k].real() * v[k].imag() - x[k].imag() * v[k].real());
    return s;
}

double liouville(const SpherePoint& x, const SphereTangent& v) {
    require_same_base(x, v, "liouville");
    return liouville(x.coords(), v.vector());
}

double dtheta(const SpherePoint& x, const SphereTangent& v,
              const SphereTangent& w) {
    require_same_base(x, v, "dtheta");
    require_same_base(x, w, "dtheta");
    const CVector& a = v.vector();
    const CVector& b = w.vector();
    double s = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k)
        s += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    return s;
}

SphereTangent reeb(const SpherePoint& x) {
    return SphereTangent(x, 2.0 * kI * x.coords());
}

SpherePoint reeb_flow(const SpherePoint& x, double t) {
    return SpherePoint(std::exp(2.0 * kI * t) * x.coords());
}

std::vector<CVector> horizontal_basis(const SpherePoint& x) {
    const int n = x.n();
    // Complex Gram-Schmidt against x, seeded from e_0, e_1, ... in order.
    // A candidate nearly inside the current span is skipped; with n
    // orthonormal seeds at most one can be.
    std::vector<CVector> cplx;
    cplx.push_back(x.coords());
    for (int k = 0; k < n && static_cast<int>(cplx.size()) < n; ++k) {
        CVector r = CVector::Zero(n);
        r[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const CVector& u : cplx) r -= u * (u.adjoint() * r).value();
        if (r.norm() > 1e-3) cplx.push_back(r / r.norm());
    }
    if (static_cast<int>(cplx.size()) != n)
        fail("rank_ambiguity", "horizontal_basis: frame completion failed");

    std::vector<CVector> out;
    out.reserve(2 * (n - 1));
    for (int k = 1; k < n; ++k) {
        out.push_back(cplx[k]);
        out.push_back(kI * cplx[k]);
    }
    return out;
}

std::vector<CVector> tangent_basis(const SpherePoint& x) {
    std::vector<CVector> out;
    out.push_back(kI * x.coords());
    for (CVector& u : horizontal_basis(x)) out.push_back(std::move(u));
    return out;
}

ContactCheck contact_condition(const SpherePoint& x) {
    const std::vector<CVector> h = horizontal_basis(x);
    const int m = static_cast<int>(h.size());
    if (m == 0) return {true, 1.0};
    Eigen::MatrixXd skew(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            skew(a, b) = (h[a].adjoint() * h[b]).value().imag();
    const double det = skew.determinant();
    return {std::abs(det) > 1e-8, det};
}

std::vector<SphereTangent> characteristic_directions(const SpherePoint& x) {
    const std::vector<CVector> tb = tangent_basis(x);
    const int m = static_cast<int>(tb.size());
    Eigen::MatrixXd skew(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            skew(a, b) = (tb[a].adjoint() * tb[b]).value().imag();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(skew, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;

    std::vector<SphereTangent> out;
    for (int k = 0; k < m; ++k) {
        if (smax == 0.0 || sv[k] <= 1e-10 * smax) {
            CVector dir = CVector::Zero(x.n());
            for (int b = 0; b < m; ++b) dir += svd.matrixV()(b, k) * tb[b];
            out.emplace_back(x, std::move(dir));
        } else if (sv[k] <= 1e-6 * smax) {
            fail("rank_ambiguity",
                 "characteristic_directions: singular value " +
                     std::to_string(sv[k]) + " inside the undecidable band");
        }
    }
    return out;
}

S2Point hopf_map(const SpherePoint& x) {
    if (x.n() != 2)
        fail("dimension_mismatch", "hopf_map: defined on S^3 in C^2 only");
    const Complex alpha = x.coords()[0];
    const Complex nu = x.coords()[1];
    const Complex w = 2.0 * std::conj(alpha) * nu;
    return S2Point(Eigen::Vector3d(w.real(), w.imag(),
                                   std::norm(alpha) - std::norm(nu)));
}

Eigen::Vector3d hopf_push(const SpherePoint& x, const CVector& v) {
    if (x.n() != 2 || v.size() != 2)
        fail("dimension_mismatch", "hopf_push: defined on S^3 in C^2 only");
    const Complex alpha = x.coords()[0];
    const Complex nu = x.coords()[1];
    const Complex a = v[0];
    const Complex b = v[1];
    const Complex dw = 2.0 * (std::conj(a) * nu + std::conj(alpha) * b);
    const double dz = 2.0 * (std::conj(alpha) * a).real() -
                      2.0 * (std::conj(nu) * b).real();
    return Eigen::Vector3d(dw.real(), dw.imag(), dz);
}

double monopole_form(const S2Point& p, const Eigen::Vector3d& a,
                     const Eigen::Vector3d& b) {
    if (std::abs(p.coords().dot(a)) > 1e-10 * std::max(1.0, a.norm()) ||
        std::abs(p.coords().dot(b)) > 1e-10 * std::max(1.0, b.norm()))
        fail("tangency_violation", "monopole_form: argument not tangent at p");
    Eigen::Matrix3d m;
    m.col(0) = p.coords();
    m.col(1) = a;
    m.col(2) = b;
    return m.determinant();
}

std::pair<double, double> hopf_pullback_check(const SpherePoint& x,
                                              const SphereTangent& v,
                                              const SphereTangent& w) {
    const double lhs = dtheta(x, v, w);
    const S2Point p = hopf_map(x);
    const double rhs = 0.25 * monopole_form(p, hopf_push(x, v.vector()),
                                            hopf_push(x, w.vector()));
    return {lhs, rhs};
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1) fail("domain_error", "gauss_legendre: need at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    // Newton iteration from the Chebyshev-angle initial guess; the
    // derivative comes from the standard Legendre recurrences.
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double t = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double pd = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pd = n * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / pd;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        nodes[k] = -t;
        nodes[n - 1 - k] = t;
        const double w = 2.0 / ((1.0 - t * t) * pd * pd);
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
}

double monopole_flux(int n_cos, int n_phi) {
    if (n_cos < 1 || n_phi < 1)
        fail("domain_error", "monopole_flux: grid sizes must be positive");
    std::vector<double> u, wu;
    gauss_legendre(n_cos, u, wu);
    const double dphi = 2.0 * M_PI / n_phi;
    double flux = 0.0;
    for (int i = 0; i < n_cos; ++i) {
        const double r = std::sqrt(1.0 - u[i] * u[i]);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = dphi * (j + 0.5);
            const double c = std::cos(phi), s = std::sin(phi);
            const S2Point p(Eigen::Vector3d(r * c, r * s, u[i]));
            // oriented coordinate frame (d/dphi, d/du) of the cylinder chart
            const Eigen::Vector3d dp_phi(-r * s, r * c, 0.0);
            const Eigen::Vector3d dp_u(-u[i] * c / r, -u[i] * s / r, 1.0);
            flux += wu[i] * dphi * monopole_form(p, dp_phi, dp_u);
        }
    }
    return flux;
}

} // namespace contactify::contact
