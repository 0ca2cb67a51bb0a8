#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dgf/lattice.hpp"
#include "dgf/types.hpp"

// Wigner functions as displaced-parity expectation values,
//   W(alpha) = <psi| D(2 alpha) (-1)^n |psi>,
// in the convention with the pi/2 prefactor dropped (vacuum peaks at 1).
// Multiply by 2/pi to recover the standard normalization.
namespace dgf::wigner {

// Re <psi| D(2 alpha) (-1)^n |psi>. D(2 alpha) (-1)^n is Hermitian, so the
// value is real up to truncation; |Im| > 1e-9 raises TruncationError.
double wigner_point(const StateVector& psi, Complex alpha);

// Fock state |k>: (-1)^k exp(-2|alpha|^2) L_k(4|alpha|^2).
double wigner_fock_closed(int k, Complex alpha);

// Coherent state |beta>: exp(-2|beta - alpha|^2).
double wigner_coherent_closed(Complex beta, Complex alpha);

struct WignerGrid {
    Eigen::VectorXd x_axis;
    Eigen::VectorXd y_axis;
    Eigen::MatrixXd values;  // values(i, j) = W(x_axis[i] + i y_axis[j]); NaN = missing
    std::string state_label;
    int missing_count = 0;
};

// Tabulates wigner_point over [x_range] x [y_range]. Points whose
// displacement 2|alpha| fails the truncation guard are recorded as NaN
// rather than silent zeros.
WignerGrid wigner_grid(const StateVector& psi, std::pair<double, double> x_range,
                       std::pair<double, double> y_range, int resolution,
                       std::string state_label = "");

// Light monitored along the injection waveguide: E_k(z_j) from the analytic
// Green function diagonal, real by construction. Equals
// (-1)^k * wigner_fock_closed(k, alpha) along the line 2|alpha| = g z.
std::vector<double> diagonal_trace(const lattice::LatticeSpec& spec, int k,
                                   const std::vector<double>& z_grid);

}  // namespace dgf::wigner
