#pragma once

#include <utility>
#include <vector>

#include "contactify/lie_core.hpp"

namespace contactify::orbit {

/// Orthonormal basis (under <T,T'>_u = -1/2 tr(T T')) of the isotropy
/// algebra g_mu = { T in u(n) : [mu, T] = 0 }.  The constructor re-checks
/// orthonormality and the commutation residual, so a value of this type is
/// trustworthy wherever it travels.
class IsotropyBasis {
public:
    IsotropyBasis(lie::HermitianMatrix mu,
                  std::vector<lie::AntiHermitianMatrix> basis);

    const lie::HermitianMatrix& mu() const { return mu_; }
    const std::vector<lie::AntiHermitianMatrix>& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.size()); }

private:
    lie::HermitianMatrix mu_;
    std::vector<lie::AntiHermitianMatrix> basis_;
};

/// Tangent vector to T*U(n) at a point of the fiber over mu, in the
/// trivialization by (generator, momentum variation) pairs.
struct OrbitTangentPair {
    lie::AntiHermitianMatrix generator;
    lie::HermitianMatrix momentum;
};

/// Spectrum of a Hermitian matrix after clustering nearly equal eigenvalues.
/// values are strictly increasing, multiplicities positive and summing to n.
struct SpectrumClusters {
    std::vector<double> values;
    std::vector<int> multiplicities;
};

/// Clusters the eigenvalues of mu.  Gaps below 1e-8 * ||mu|| merge, gaps
/// between 1e-8 and 1e-6 * ||mu|| are ambiguous and throw
/// (eigenvalue_ambiguity), larger gaps separate clusters.
SpectrumClusters clustered_spectrum(const lie::HermitianMatrix& mu);

/// Isotropy algebra of mu under the coadjoint action, as the numerical
/// kernel of T -> [mu, T] (SVD over a real orthonormal basis of u(n)).
/// The kernel dimension is cross-checked against sum d_j^2 over the
/// eigenvalue multiplicities; a mismatch throws rank_ambiguity.
IsotropyBasis isotropy_algebra(const lie::HermitianMatrix& mu);

/// Kostant-Kirillov-Souriau form at mu on ad*-generators:
/// omega_mu(X, Y) = <mu, [X, Y]>.
double kks_form(const lie::HermitianMatrix& mu, const lie::AntiHermitianMatrix& X,
                const lie::AntiHermitianMatrix& Y, lie::PairingConvention c);

/// KKS form on the pure-state orbit in the bra-ket presentation: for
/// generators mapping x to y and y', the value is Im<y|y'>.  Requires
/// ||x|| = 1 and Re<x|y> = Re<x|y'> = 0 (necessary for a generator to exist).
double kks_pure_state(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                      const Eigen::VectorXcd& yprime);

/// Anti-Hermitian T with T x = y, given ||x|| = 1 and Re<x|y> = 0.
/// T = |y><x| - |x><y| - i Im<x|y> |x><x|; the last term cancels the phase
/// drift when <x|y> is imaginary but nonzero.  The postcondition T x = y is
/// asserted to 1e-10.
lie::AntiHermitianMatrix pure_state_generator(const Eigen::VectorXcd& x,
                                              const Eigen::VectorXcd& y);

/// Moment map of the unit sphere in C^n: J(x) = |x><x|.
lie::HermitianMatrix moment_map(const Eigen::VectorXcd& x);

/// Canonical symplectic form of T*U(n) in the (generator, momentum)
/// trivialization at the fiber over mu:
/// Omega((v,s),(v',s')) = <s, v'> - <s', v> + <mu, [v, v']>.
double cotangent_symplectic(const lie::HermitianMatrix& mu,
                            const OrbitTangentPair& a, const OrbitTangentPair& b,
                            lie::PairingConvention c);

/// Both sides of the statement that the coadjoint action is a
/// symplectomorphism of the KKS form: first the form at Ad*_g(mu) on
/// pushed-forward generators, second the form at mu.  They agree to 1e-10
/// for exact inputs; the caller compares.
std::pair<double, double> reduced_form_pullback_check(
    const lie::HermitianMatrix& mu, const lie::UnitaryMatrix& g,
    const lie::AntiHermitianMatrix& v, const lie::AntiHermitianMatrix& vprime,
    lie::PairingConvention c);

/// Solution at time t of the linear coadjoint flow generated by T:
/// mu(t) = exp(tT) mu0 exp(-tT).
lie::HermitianMatrix coadjoint_flow_linear(const lie::AntiHermitianMatrix& T,
                                           const lie::HermitianMatrix& mu0,
                                           double t);

struct OrbitInfo {
    SpectrumClusters spectrum;
    int isotropy_dim;
    int orbit_dim;
};

OrbitInfo orbit_info(const lie::HermitianMatrix& mu);

} // namespace contactify::orbit
