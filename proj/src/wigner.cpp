#include "dgf/wigner.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dgf/cats.hpp"
#include "dgf/fock.hpp"
#include "dgf/specfun.hpp"

namespace dgf::wigner {

namespace {

constexpr double kImagTol = 1e-9;

// Highest index still carrying weight; the guard treats psi as a Fock
// component there.
int effective_top_index(const StateVector& psi) {
    for (int m = static_cast<int>(psi.size()) - 1; m >= 0; --m)
        if (std::norm(psi[m]) > 1e-13) return m;
    return 0;
}

Complex raw_expectation(const StateVector& psi, Complex alpha) {
    const int dim = static_cast<int>(psi.size());
    StateVector flipped(dim);
    for (int m = 0; m < dim; ++m) flipped[m] = ((m % 2 == 0) ? 1.0 : -1.0) * psi[m];
    const OperatorMatrix d = cats::glauber_displacement(2.0 * alpha, dim);
    return psi.dot(d * flipped);
}

}  // namespace

double wigner_point(const StateVector& psi, Complex alpha) {
    const int dim = static_cast<int>(psi.size());
    if (dim < 1) throw std::invalid_argument("wigner_point: empty state");
    if (!is_normalized(psi, 1e-8))
        throw std::invalid_argument("wigner_point: state is not normalized");

    const int k_top = effective_top_index(psi);
    const double disp = 2.0 * std::abs(alpha);
    if (static_cast<double>(dim) <= disp * disp + k_top + 2.0)
        throw TruncationError("wigner_point: displaced state does not fit the basis",
                              cats::min_safe_dim(disp, k_top));

    const Complex value = raw_expectation(psi, alpha);
    if (std::abs(value.imag()) > kImagTol) {
        std::ostringstream msg;
        msg << "wigner_point: |Im| = " << std::abs(value.imag())
            << " exceeds " << kImagTol << "; truncation too small";
        throw TruncationError(msg.str(), cats::min_safe_dim(disp, k_top));
    }
    return value.real();
}

double wigner_fock_closed(int k, Complex alpha) {
    if (k < 0) throw std::domain_error("wigner_fock_closed: k must be >= 0");
    const double a2 = std::norm(alpha);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-2.0 * a2) * specfun::assoc_laguerre(k, 0, 4.0 * a2);
}

double wigner_coherent_closed(Complex beta, Complex alpha) {
    return std::exp(-2.0 * std::norm(beta - alpha));
}

WignerGrid wigner_grid(const StateVector& psi, std::pair<double, double> x_range,
                       std::pair<double, double> y_range, int resolution,
                       std::string state_label) {
    if (resolution < 2) throw std::invalid_argument("wigner_grid: resolution must be >= 2");
    if (!is_normalized(psi, 1e-8))
        throw std::invalid_argument("wigner_grid: state is not normalized");

    const int dim = static_cast<int>(psi.size());
    const int k_top = effective_top_index(psi);

    WignerGrid grid;
    grid.state_label = std::move(state_label);
    grid.x_axis = Eigen::VectorXd::LinSpaced(resolution, x_range.first, x_range.second);
    grid.y_axis = Eigen::VectorXd::LinSpaced(resolution, y_range.first, y_range.second);
    grid.values.resize(resolution, resolution);

    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            const Complex alpha(grid.x_axis[i], grid.y_axis[j]);
            if (cats::min_safe_dim(2.0 * std::abs(alpha), k_top) > dim) {
                grid.values(i, j) = std::numeric_limits<double>::quiet_NaN();
                ++grid.missing_count;
                continue;
            }
            grid.values(i, j) = wigner_point(psi, alpha);
        }
    }
    return grid;
}

std::vector<double> diagonal_trace(const lattice::LatticeSpec& spec, int k,
                                   const std::vector<double>& z_grid) {
    spec.validate();
    if (k < 0 || k >= spec.sites) throw std::invalid_argument("diagonal_trace: k out of range");
    std::vector<double> trace;
    trace.reserve(z_grid.size());
    for (double z : z_grid) {
        const Complex e = lattice::green_analytic(k, k, spec.g * z);
        if (std::abs(e.imag()) > 1e-10)
            throw std::logic_error("diagonal_trace: diagonal amplitude is not real");
        trace.push_back(e.real());
    }
    return trace;
}

}  // namespace dgf::wigner
