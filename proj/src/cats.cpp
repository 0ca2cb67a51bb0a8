#include "dgf/cats.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "dgf/fock.hpp"
#include "dgf/specfun.hpp"

namespace dgf::cats {

namespace {

constexpr Complex kI{0.0, 1.0};

// exp(M) for a strictly triangular (nilpotent) M: the series terminates after
// dim terms and every matrix entry receives exactly one term, so there is no
// cancellation.
OperatorMatrix triangular_exp(const OperatorMatrix& m) {
    const int dim = static_cast<int>(m.rows());
    OperatorMatrix sum = OperatorMatrix::Identity(dim, dim);
    OperatorMatrix term = OperatorMatrix::Identity(dim, dim);
    for (int j = 1; j <= dim; ++j) {
        term = (term * m) / static_cast<double>(j);
        if (term.isZero(0.0)) break;
        sum += term;
    }
    return sum;
}

// log of |<n|alpha, k>|^2: Poisson-like weight broadened by the Laguerre
// factor, exp(-l) l^s (lo!/hi!) [L_lo^s(l)]^2 with l = |alpha|^2,
// lo = min(n, k), s = |n - k|. One formula covers both sides of k.
double log_occupation(int n, int k, double lam) {
    const int lo = std::min(n, k);
    const int s = std::abs(n - k);
    const auto lag = specfun::log_assoc_laguerre(lo, s, lam);
    if (lag.sign == 0.0) return -std::numeric_limits<double>::infinity();
    return -lam + s * std::log(lam) + specfun::log_factorial(lo) -
           specfun::log_factorial(std::max(n, k)) + 2.0 * lag.log_abs;
}

}  // namespace

int min_safe_dim(double alpha_abs, int k, double tail_tol) {
    if (k < 0) throw std::invalid_argument("min_safe_dim: k must be >= 0");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("min_safe_dim: tail_tol must be > 0");
    alpha_abs = std::abs(alpha_abs);
    if (alpha_abs == 0.0) return k + 1;
    const double lam = alpha_abs * alpha_abs;
    const double spread = std::sqrt((2.0 * k + 1.0) * lam);
    const int n_cap = k + static_cast<int>(std::ceil(lam + 40.0 * spread)) + 80;
    long double below = 0.0L;  // weight on sites < n
    for (int n = 0; n < n_cap; ++n) {
        if (n > k + lam && 1.0L - below < static_cast<long double>(tail_tol))
            return std::max(n, k + 1);
        below += std::exp(static_cast<long double>(log_occupation(n, k, lam)));
    }
    return n_cap;
}

void require_capacity(double alpha_abs, int k, int dim, double tail_tol, const char* what) {
    const int need = min_safe_dim(alpha_abs, k, tail_tol);
    if (dim < need) {
        std::ostringstream msg;
        msg << what << ": displacement |alpha| = " << std::abs(alpha_abs) << " with k = " << k
            << " needs dim >= " << need << " (got " << dim << ")";
        throw TruncationError(msg.str(), need);
    }
}

StateVector coherent_state(Complex beta, int dim) {
    if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
    require_capacity(std::abs(beta), 0, dim, 1e-12, "coherent_state");
    StateVector c = StateVector::Zero(dim);
    c[0] = std::exp(-0.5 * std::norm(beta));
    for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * beta / std::sqrt(static_cast<double>(n));
    return c;
}

OperatorMatrix glauber_displacement(Complex alpha, int dim) {
    if (dim < 1) throw std::invalid_argument("glauber_displacement: dim must be >= 1");
    const OperatorMatrix a = fock::annihilation(dim);
    OperatorMatrix gen = alpha * a.transpose() - std::conj(alpha) * a;
    return gen.exp();
}

StateVector displaced_fock(Complex alpha, int k, int dim) {
    if (dim < 1) throw std::invalid_argument("displaced_fock: dim must be >= 1");
    if (k < 0 || k >= dim) throw std::invalid_argument("displaced_fock: k out of range");
    require_capacity(std::abs(alpha), k, dim, 1e-12, "displaced_fock");
    return glauber_displacement(alpha, dim).col(k);
}

OperatorMatrix deformed_displacement(Complex alpha, int dim) {
    if (dim < 1) throw std::invalid_argument("deformed_displacement: dim must be >= 1");
    const OperatorMatrix d = glauber_displacement(kI * alpha, dim);
    const OperatorMatrix dd = d.adjoint();
    const OperatorMatrix p = fock::parity(dim);
    return (d - dd) * p / (2.0 * kI) + 0.5 * (d + dd);
}

OperatorMatrix deformed_displacement_normal_ordered(Complex alpha, int dim) {
    if (dim < 1) throw std::invalid_argument("deformed_displacement_normal_ordered: dim must be >= 1");
    const auto [lower, raise] = fock::deformed_ladder(dim);
    const OperatorMatrix left = triangular_exp(alpha * raise);
    const OperatorMatrix right = triangular_exp(-std::conj(alpha) * lower);
    return std::exp(-0.5 * std::norm(alpha)) * left * right;
}

StateVector CatDecomposition::reconstruct(int dim) const {
    StateVector sum = StateVector::Zero(dim);
    for (const auto& c : components) {
        if (c.fock_index < 0 || c.fock_index >= dim)
            throw std::invalid_argument("CatDecomposition::reconstruct: fock index out of range");
        // Unguarded on purpose: reconstruction must live in the same
        // truncated space as the state it is compared against.
        sum += c.weight * glauber_displacement(c.displacement, dim).col(c.fock_index);
    }
    return sum;
}

CatState cat_from_fock(Complex alpha, int k, int dim) {
    if (dim < 1) throw std::invalid_argument("cat_from_fock: dim must be >= 1");
    if (k < 0 || k >= dim) throw std::invalid_argument("cat_from_fock: k out of range");
    require_capacity(std::abs(alpha), k, dim, 1e-12, "cat_from_fock");
    CatState out;
    out.state = deformed_displacement(alpha, dim).col(k);
    const double parity_sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex phase = std::exp(-kI * parity_sign * (M_PI / 4.0)) / std::sqrt(2.0);
    out.parts.components = {
        {phase, kI * alpha, k},
        {std::conj(phase), -kI * alpha, k},
    };
    return out;
}

CatState cat_from_displaced(Complex alpha, Complex beta, int k, int dim) {
    if (dim < 1) throw std::invalid_argument("cat_from_displaced: dim must be >= 1");
    if (k < 0 || k >= dim) throw std::invalid_argument("cat_from_displaced: k out of range");
    require_capacity(std::abs(alpha) + std::abs(beta), k, dim, 1e-12, "cat_from_displaced");
    CatState out;
    out.state = deformed_displacement(alpha, dim) * displaced_fock(beta, k, dim);
    const double ps = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex w_minus = std::exp(-kI * std::real(alpha * std::conj(beta))) / 2.0;
    const Complex w_plus = std::conj(w_minus);
    out.parts.components = {
        {w_minus, -kI * alpha + beta, k},
        {-kI * ps * w_minus, kI * alpha - beta, k},
        {w_plus, kI * alpha + beta, k},
        {kI * ps * w_plus, -kI * alpha - beta, k},
    };
    return out;
}

}  // namespace dgf::cats
