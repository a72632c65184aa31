#include "contactify/integrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace contactify::integrality {

namespace {

using Wide = __int128;

long long narrow(Wide v, const char* what) {
    if (v > static_cast<Wide>(std::numeric_limits<long long>::max()) ||
        v < static_cast<Wide>(std::numeric_limits<long long>::min()))
        fail("overflow", std::string(what) + ": exact value exceeds 64-bit range");
    return static_cast<long long>(v);
}

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        const Wide r = a % b;
        a = b;
        b = r;
    }
    return a;
}

Rational from_wide(Wide num, Wide den, const char* what) {
    if (den == 0) fail("domain_error", std::string(what) + ": zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num, what), narrow(den, what));
}

} // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) fail("domain_error", "Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return from_wide(static_cast<Wide>(num_) * o.den_ +
                         static_cast<Wide>(o.num_) * den_,
                     static_cast<Wide>(den_) * o.den_, "Rational::+");
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    return from_wide(static_cast<Wide>(num_) * o.num_,
                     static_cast<Wide>(den_) * o.den_, "Rational::*");
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) fail("domain_error", "Rational: division by zero");
    return from_wide(static_cast<Wide>(num_) * o.den_,
                     static_cast<Wide>(den_) * o.num_, "Rational::/");
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<Wide>(num_) * o.den_ < static_cast<Wide>(o.num_) * den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::divisible_by(const Rational& o) const {
    if (o.is_zero()) return is_zero();
    const Rational q = *this / o;
    return q.den() == 1;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    // Over the common denominator L the subgroup is generated by
    // gcd of the scaled numerators.
    const Wide l = static_cast<Wide>(a.den()) / wide_gcd(a.den(), b.den()) *
                   static_cast<Wide>(b.den());
    const Wide na = static_cast<Wide>(a.num()) * (l / a.den());
    const Wide nb = static_cast<Wide>(b.num()) * (l / b.den());
    return from_wide(wide_gcd(na, nb), l, "rational_gcd");
}

SpectralBlocks spectral_blocks(std::vector<std::pair<Rational, int>> pairs) {
    if (pairs.empty())
        fail("domain_error", "spectral_blocks: empty spectrum");
    for (const auto& [lambda, d] : pairs)
        if (d <= 0)
            fail("domain_error", "spectral_blocks: multiplicity " +
                                     std::to_string(d) + " must be positive");
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SpectralBlocks out;
    for (const auto& [lambda, d] : pairs) {
        if (!out.lambdas.empty() && out.lambdas.back() == lambda)
            fail("duplicate_eigenvalue",
                 "spectral_blocks: value " + lambda.str() +
                     " appears in two blocks; merge multiplicities first");
        out.lambdas.push_back(lambda);
        out.multiplicities.push_back(d);
    }
    return out;
}

std::optional<Rational> hbar_generator(const SpectralBlocks& blocks) {
    Rational g;
    for (const Rational& lambda : blocks.lambdas) g = rational_gcd(g, lambda);
    if (g.is_zero()) return std::nullopt;
    return g;
}

bool quantum_state_identity(const SpectralBlocks& blocks) {
    Rational trace;
    for (size_t k = 0; k < blocks.lambdas.size(); ++k) {
        if (blocks.lambdas[k] < Rational(0, 1))
            fail("not_a_state", "quantum_state_identity: negative eigenvalue " +
                                    blocks.lambdas[k].str());
        trace = trace + blocks.lambdas[k] * Rational(blocks.multiplicities[k], 1);
    }
    const bool is_state = trace == Rational(1, 1);
    if (is_state) {
        // Audit the equivalent occupation-number form 1/hbar = sum q_j d_j.
        const auto hbar = hbar_generator(blocks);
        if (!hbar)
            fail("domain_error", "quantum_state_identity: zero spectrum with unit trace");
        Rational occupied;
        for (size_t k = 0; k < blocks.lambdas.size(); ++k) {
            const Rational q = blocks.lambdas[k] / *hbar;
            if (q.den() != 1)
                fail("domain_error",
                     "quantum_state_identity: quotient " + q.str() +
                         " is not an integer; hbar_generator is inconsistent");
            occupied = occupied + q * Rational(blocks.multiplicities[k], 1);
        }
        if (!(occupied * *hbar == Rational(1, 1)))
            fail("domain_error",
                 "quantum_state_identity: occupation form disagrees with trace");
    }
    return is_state;
}

RationalLattice::RationalLattice(std::vector<std::vector<Rational>> generators)
    : generators_(std::move(generators)) {
    const size_t d = generators_.size();
    if (d == 0) fail("domain_error", "RationalLattice: no generators");
    for (const auto& g : generators_)
        if (g.size() != d)
            fail("dimension_mismatch",
                 "RationalLattice: generator count must equal the dimension");
    // Exact Gaussian elimination; full rank required.
    std::vector<std::vector<Rational>> m = generators_;
    for (size_t col = 0, row = 0; col < d; ++col) {
        size_t pivot = row;
        while (pivot < d && m[pivot][col].is_zero()) ++pivot;
        if (pivot == d)
            fail("invariant_violation",
                 "RationalLattice: generators are linearly dependent");
        std::swap(m[pivot], m[row]);
        for (size_t r = row + 1; r < d; ++r) {
            if (m[r][col].is_zero()) continue;
            const Rational f = m[r][col] / m[row][col];
            for (size_t cc = col; cc < d; ++cc)
                m[r][cc] = m[r][cc] - f * m[row][cc];
        }
        ++row;
    }
}

std::pair<bool, std::optional<Rational>> lattice_mu_check(
    const RationalLattice& lattice, const std::vector<Rational>& mu) {
    if (static_cast<int>(mu.size()) != lattice.dim())
        fail("dimension_mismatch", "lattice_mu_check: mu has wrong dimension");
    Rational g;
    for (const auto& gen : lattice.generators()) {
        Rational dot;
        for (size_t k = 0; k < gen.size(); ++k) dot = dot + gen[k] * mu[k];
        g = rational_gcd(g, dot);
    }
    if (g.is_zero()) return {true, std::nullopt};
    return {true, g};
}

std::vector<lie::AntiHermitianMatrix> isotropy_zero_basis(
    const lie::HermitianMatrix& mu, lie::PairingConvention c) {
    const orbit::IsotropyBasis iso = orbit::isotropy_algebra(mu);
    const int m = iso.dim();
    Eigen::VectorXd w(m);
    for (int a = 0; a < m; ++a) w[a] = lie::pairing(mu, iso.basis()[a], c);
    if (w.norm() <= 1e-10 * std::max(1.0, mu.raw().norm()))
        fail("domain_error",
             "isotropy_zero_basis: <mu, .> vanishes on the whole isotropy "
             "algebra (mu = 0?)");

    // Complete w/|w| to an orthonormal coordinate basis; columns 2..m of Q
    // span its kernel.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
    const Eigen::MatrixXd q = qr.householderQ();
    std::vector<lie::AntiHermitianMatrix> out;
    out.reserve(m - 1);
    const int n = mu.n();
    for (int col = 1; col < m; ++col) {
        lie::Matrix t = lie::Matrix::Zero(n, n);
        for (int a = 0; a < m; ++a) t += q(a, col) * iso.basis()[a].raw();
        lie::AntiHermitianMatrix elt{std::move(t)};
        const double residual = std::abs(lie::pairing(mu, elt, c));
        if (residual > 1e-10 * std::max(1.0, mu.raw().norm()))
            fail("invariant_violation",
                 "isotropy_zero_basis: element pairs to " +
                     std::to_string(residual) + " instead of 0");
        out.push_back(std::move(elt));
    }
    return out;
}

IntegralityReport build_report(const SpectralBlocks& blocks) {
    IntegralityReport r;
    r.blocks = blocks;
    r.hbar = hbar_generator(blocks);
    r.integral = r.hbar.has_value();

    const int n = blocks.n();
    r.isotropy_dim = 0;
    for (int d : blocks.multiplicities) r.isotropy_dim += d * d;
    if (r.integral) {
        r.isotropy_zero_dim = r.isotropy_dim - 1;
        r.orbit_dim = n * n - r.isotropy_dim;
        r.contactification_dim = r.orbit_dim + 1;
    } else {
        // central point mu = 0: the contact form degenerates, nothing to build
        r.isotropy_zero_dim = r.isotropy_dim;
        r.orbit_dim = 0;
        r.contactification_dim = 0;
    }

    const bool nonnegative = std::none_of(
        blocks.lambdas.begin(), blocks.lambdas.end(),
        [](const Rational& l) { return l < Rational(0, 1); });
    // quantum_state_identity both decides unit trace and audits the
    // occupation-number form; it throws only on negative eigenvalues,
    // which are excluded here.
    r.is_quantum_state = nonnegative && quantum_state_identity(blocks);
    r.state_identity_holds =
        r.is_quantum_state ? std::optional<bool>(true) : std::nullopt;
    return r;
}

Rational rationalize(double x, double rel_tol, long long max_den) {
    if (!std::isfinite(x)) fail("domain_error", "rationalize: non-finite input");
    const double tol = rel_tol * std::max(1.0, std::abs(x));
    // continued-fraction convergents h/k of x, with the usual seed
    // p_{-1}/q_{-1} = 1/0 and p_{-2}/q_{-2} = 0/1
    double rest = x;
    long long h = 1, k = 0, hp = 0, kp = 1;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(rest);
        if (std::abs(fl) > 9e17) fail("overflow", "rationalize: term too large");
        const long long a = static_cast<long long>(fl);
        const Wide nh = static_cast<Wide>(a) * h + hp;
        const Wide nk = static_cast<Wide>(a) * k + kp;
        if (nk > max_den) break;
        hp = h;
        kp = k;
        h = narrow(nh, "rationalize");
        k = narrow(nk, "rationalize");
        if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol)
            return Rational(h, k);
        const double frac = rest - fl;
        if (frac < 1e-15) break;
        rest = 1.0 / frac;
    }
    fail("domain_error",
         "rationalize: no rational within tolerance has denominator <= " +
             std::to_string(max_den));
}

SpectralBlocks blocks_from_numeric_spectrum(const std::vector<double>& eigenvalues,
                                            double rel_tol, long long max_den) {
    if (eigenvalues.empty())
        fail("domain_error", "blocks_from_numeric_spectrum: empty spectrum");
    std::vector<std::pair<Rational, int>> pairs;
    for (double x : eigenvalues) {
        const Rational r = rationalize(x, rel_tol, max_den);
        bool merged = false;
        for (auto& p : pairs)
            if (p.first == r) {
                ++p.second;
                merged = true;
                break;
            }
        if (!merged) pairs.emplace_back(r, 1);
    }
    return spectral_blocks(std::move(pairs));
}

lie::HermitianMatrix diagonal_realization(const SpectralBlocks& blocks) {
    const int n = blocks.n();
    lie::Matrix m = lie::Matrix::Zero(n, n);
    int row = 0;
    for (size_t b = 0; b < blocks.lambdas.size(); ++b)
        for (int rep = 0; rep < blocks.multiplicities[b]; ++rep)
            m(row, row) = blocks.lambdas[b].to_double(), ++row;
    return lie::HermitianMatrix(std::move(m));
}

} // namespace contactify::integrality
