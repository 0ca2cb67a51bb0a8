#include "dgf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "dgf/specfun.hpp"

namespace dgf::lattice {

namespace {

constexpr Complex kI{0.0, 1.0};

int boundary_window(int sites) { return std::min(kBoundaryMargin, sites - 1); }

double boundary_population(const StateVector& v, int window) {
    const int n = static_cast<int>(v.size());
    return v.tail(std::min(window, n)).squaredNorm();
}

// Phase of the bracket e^{+-i pi/4} theta^s + e^{-+i pi/4} (-theta)^s after
// the magnitude theta^s is factored out: 1 for even s, +-i for odd s.
Complex branch_phase(int m, int k, int s) {
    if (s % 2 == 0) return 1.0;
    const bool k_odd = (k % 2 == 1);
    if (m >= k) return k_odd ? kI : -kI;
    return k_odd ? -kI : kI;
}

}  // namespace

void LatticeSpec::validate() const {
    if (!(g > 0.0)) throw std::invalid_argument("LatticeSpec: g must be > 0");
    if (sites < 2) throw std::invalid_argument("LatticeSpec: sites must be >= 2");
    if (!(leakage_tol > 0.0)) throw std::invalid_argument("LatticeSpec: leakage_tol must be > 0");
}

OperatorMatrix hamiltonian(const LatticeSpec& spec) {
    spec.validate();
    OperatorMatrix h = OperatorMatrix::Zero(spec.sites, spec.sites);
    for (int m = 0; m + 1 < spec.sites; ++m) {
        const double c = spec.g * ((m % 2 == 0) ? 1.0 : -1.0) * std::sqrt(m + 1.0);
        h(m, m + 1) = c;
        h(m + 1, m) = c;
    }
    return h;
}

Propagator::Propagator(const LatticeSpec& spec) {
    spec.validate();
    const int n = spec.sites;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int m = 0; m + 1 < n; ++m)
        sub[m] = spec.g * ((m % 2 == 0) ? 1.0 : -1.0) * std::sqrt(m + 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Propagator: tridiagonal eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

StateVector Propagator::apply(const StateVector& input, double z) const {
    if (input.size() != eigenvalues_.size())
        throw std::invalid_argument("Propagator::apply: dimension mismatch");
    StateVector modal = eigenvectors_.transpose() * input;
    for (int j = 0; j < modal.size(); ++j)
        modal[j] *= std::exp(-kI * z * eigenvalues_[j]);
    return eigenvectors_ * modal;
}

OperatorMatrix Propagator::matrix(double z) const {
    const int n = sites();
    StateVector phases(n);
    for (int j = 0; j < n; ++j) phases[j] = std::exp(-kI * z * eigenvalues_[j]);
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.transpose();
}

EvolutionRecord evolve_numeric(const LatticeSpec& spec, const StateVector& input,
                               const std::vector<double>& z_grid, std::string input_label) {
    spec.validate();
    if (input.size() != spec.sites)
        throw std::invalid_argument("evolve_numeric: input dim must equal spec.sites");
    if (z_grid.empty()) throw std::invalid_argument("evolve_numeric: empty z grid");
    for (size_t j = 0; j < z_grid.size(); ++j) {
        if (z_grid[j] < 0.0) throw std::invalid_argument("evolve_numeric: z must be >= 0");
        if (j > 0 && z_grid[j] < z_grid[j - 1])
            throw std::invalid_argument("evolve_numeric: z grid must be ascending");
    }

    const Propagator prop(spec);
    const int samples = static_cast<int>(z_grid.size());
    const int window = boundary_window(spec.sites);

    EvolutionRecord rec;
    rec.z_grid = Eigen::Map<const Eigen::VectorXd>(z_grid.data(), samples);
    rec.fields.resize(samples, spec.sites);
    rec.leakage.resize(samples);
    rec.input_label = std::move(input_label);

    for (int j = 0; j < samples; ++j) {
        const StateVector field = prop.apply(input, z_grid[j]);
        rec.fields.row(j) = field.transpose();
        rec.leakage[j] = boundary_population(field, window);
    }
    rec.max_leakage = rec.leakage.maxCoeff();

    if (rec.max_leakage > spec.leakage_tol) {
        // Boundary reflection already contaminated the run, so the safe size
        // cannot be read off the fields; report a headroom estimate.
        rec.min_safe_sites = std::max(spec.sites + 32, (spec.sites * 13) / 10);
        std::ostringstream msg;
        msg << "boundary leakage " << rec.max_leakage << " exceeds tolerance " << spec.leakage_tol
            << "; rerun with sites >= " << rec.min_safe_sites << " (estimate)";
        rec.warning = msg.str();
    }
    return rec;
}

Complex green_analytic(const GreenQuery& q) { return green_analytic(q.m, q.k, q.theta); }

Complex green_analytic(int m, int k, double theta) {
    if (m < 0 || k < 0) throw std::domain_error("green_analytic: m and k must be >= 0");
    if (theta < 0.0) throw std::domain_error("green_analytic: theta must be >= 0");
    if (theta == 0.0) return (m == k) ? 1.0 : 0.0;

    const int lo = std::min(m, k);
    const int s = std::abs(m - k);
    const auto pre = specfun::log_amplitude_prefactor(m, k, theta);
    const auto lag = specfun::log_assoc_laguerre(lo, s, theta * theta);
    if (lag.sign == 0.0) return 0.0;
    const double magnitude = lag.sign * std::exp(pre.log_abs + lag.log_abs);
    return branch_phase(m, k, s) * magnitude;
}

GreenColumn green_column(int k, const LatticeSpec& spec, double z) {
    spec.validate();
    if (k < 0 || k >= spec.sites) throw std::invalid_argument("green_column: k out of range");
    if (z < 0.0) throw std::domain_error("green_column: z must be >= 0");

    const double theta = spec.g * z;
    GreenColumn col;
    col.amplitudes.resize(spec.sites);
    for (int m = 0; m < spec.sites; ++m) col.amplitudes[m] = green_analytic(m, k, theta);
    col.norm_deficit = std::abs(1.0 - col.amplitudes.squaredNorm());
    if (col.norm_deficit > spec.leakage_tol) {
        col.min_safe_sites = cats::min_safe_dim(theta, k, spec.leakage_tol / 100.0);
        std::ostringstream msg;
        msg << "analytic column misses " << col.norm_deficit << " of its weight beyond site "
            << spec.sites - 1 << "; use sites >= " << col.min_safe_sites;
        col.warning = msg.str();
    }
    return col;
}

double appendix_matrix_element(MatrixElementForm form, int m, int k, double theta) {
    if (m < 0 || k < 0) throw std::domain_error("appendix_matrix_element: m and k must be >= 0");
    if (theta < 0.0) throw std::domain_error("appendix_matrix_element: theta must be >= 0");

    bool wants_m_ge_k = false;
    bool with_parity = false;
    bool sign_flip_on_s = false;  // forms carrying (-theta)^s instead of theta^s
    switch (form) {
        case MatrixElementForm::raise_lower_parity_m_ge_k:
            wants_m_ge_k = true; with_parity = true; break;
        case MatrixElementForm::raise_lower_parity_m_le_k:
            with_parity = true; sign_flip_on_s = true; break;
        case MatrixElementForm::lower_raise_parity_m_ge_k:
            wants_m_ge_k = true; with_parity = true; sign_flip_on_s = true; break;
        case MatrixElementForm::lower_raise_parity_m_le_k:
            with_parity = true; break;
        case MatrixElementForm::lower_raise_m_ge_k:
            wants_m_ge_k = true; sign_flip_on_s = true; break;
        case MatrixElementForm::lower_raise_m_le_k:
            break;
        case MatrixElementForm::raise_lower_m_ge_k:
            wants_m_ge_k = true; break;
        case MatrixElementForm::raise_lower_m_le_k:
            sign_flip_on_s = true; break;
    }
    if (wants_m_ge_k && m < k)
        throw std::domain_error("appendix_matrix_element: form requires m >= k");
    if (!wants_m_ge_k && m > k)
        throw std::domain_error("appendix_matrix_element: form requires m <= k");

    const int lo = std::min(m, k);
    const int s = std::abs(m - k);
    double sign = 1.0;
    if (with_parity && k % 2 == 1) sign = -sign;
    if (sign_flip_on_s && s % 2 == 1) sign = -sign;

    if (theta == 0.0) return (m == k) ? sign : 0.0;

    const auto lag = specfun::log_assoc_laguerre(lo, s, theta * theta);
    if (lag.sign == 0.0) return 0.0;
    const double log_mag = 0.5 * (specfun::log_factorial(lo) - specfun::log_factorial(std::max(m, k))) +
                           s * std::log(theta) + lag.log_abs;
    return sign * lag.sign * std::exp(log_mag);
}

OperatorMatrix assemble_propagator_closed(int dim, double theta) {
    if (dim < 1) throw std::invalid_argument("assemble_propagator_closed: dim must be >= 1");
    if (theta < 0.0) throw std::domain_error("assemble_propagator_closed: theta must be >= 0");
    using Form = MatrixElementForm;
    OperatorMatrix u(dim, dim);
    const double envelope = std::exp(-0.5 * theta * theta);
    for (int m = 0; m < dim; ++m) {
        for (int k = 0; k < dim; ++k) {
            const bool ge = m >= k;
            const double rl = appendix_matrix_element(
                ge ? Form::raise_lower_m_ge_k : Form::raise_lower_m_le_k, m, k, theta);
            const double lr = appendix_matrix_element(
                ge ? Form::lower_raise_m_ge_k : Form::lower_raise_m_le_k, m, k, theta);
            const double rlp = appendix_matrix_element(
                ge ? Form::raise_lower_parity_m_ge_k : Form::raise_lower_parity_m_le_k, m, k, theta);
            const double lrp = appendix_matrix_element(
                ge ? Form::lower_raise_parity_m_ge_k : Form::lower_raise_parity_m_le_k, m, k, theta);
            u(m, k) = envelope * (0.5 * (rl + lr) - 0.5 * kI * rlp + 0.5 * kI * lrp);
        }
    }
    return u;
}

PropagatedCat propagate_cat(const LatticeSpec& spec, Complex beta, int k, double z) {
    spec.validate();
    if (k < 0 || k >= spec.sites) throw std::invalid_argument("propagate_cat: k out of range");
    if (z < 0.0) throw std::domain_error("propagate_cat: z must be >= 0");

    const StateVector input = cats::displaced_fock(beta, k, spec.sites);
    const Propagator prop(spec);

    PropagatedCat out;
    out.state = prop.apply(input, z);
    out.leakage = boundary_population(out.state, boundary_window(spec.sites));
    if (out.leakage > spec.leakage_tol) {
        out.min_safe_sites = cats::min_safe_dim(std::abs(beta) + spec.g * z, k, spec.leakage_tol / 100.0);
        std::ostringstream msg;
        msg << "boundary leakage " << out.leakage << " exceeds tolerance " << spec.leakage_tol
            << "; use sites >= " << out.min_safe_sites;
        out.warning = msg.str();
    }

    const double gz = spec.g * z;
    const double ps = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex w_fwd = std::exp(kI * gz * std::imag(beta)) / 2.0;
    const Complex w_bwd = std::conj(w_fwd);
    out.parts.components = {
        {w_fwd, beta - gz, k},
        {-kI * ps * w_fwd, gz - beta, k},
        {w_bwd, gz + beta, k},
        {kI * ps * w_bwd, -gz - beta, k},
    };
    return out;
}

}  // namespace dgf::lattice
