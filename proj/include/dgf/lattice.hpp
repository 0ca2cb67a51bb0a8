#pragma once

#include <string>
#include <vector>

#include "dgf/cats.hpp"
#include "dgf/types.hpp"

// The deformed Glauber-Fock lattice: alternating-sign square-root couplings
// H = g (a^dag (-1)^n + (-1)^n a), its spectral propagator exp(-izH), the
// analytic Laguerre Green function, the eight disentangled matrix-element
// closed forms, and cat-splitting propagation.
namespace dgf::lattice {

struct LatticeSpec {
    double g = 1.0;             // coupling scale per unit length
    int sites = 2;              // truncation / waveguide count
    double leakage_tol = 1e-8;  // boundary-population budget per sample

    void validate() const;
};

// Real symmetric tridiagonal, zero diagonal, H[m, m+1] = g (-1)^m sqrt(m+1).
OperatorMatrix hamiltonian(const LatticeSpec& spec);

// One-time eigendecomposition of the tridiagonal H; each application of
// exp(-izH) is then O(N^2) and exactly unitary.
class Propagator {
  public:
    explicit Propagator(const LatticeSpec& spec);

    StateVector apply(const StateVector& input, double z) const;
    OperatorMatrix matrix(double z) const;
    int sites() const { return static_cast<int>(eigenvalues_.size()); }

  private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;  // real orthogonal
};

struct EvolutionRecord {
    Eigen::VectorXd z_grid;
    Eigen::MatrixXcd fields;  // row j = amplitudes E_m(z_j)
    std::string input_label;
    Eigen::VectorXd leakage;  // per-sample population on the boundary window
    double max_leakage = 0.0;
    int min_safe_sites = 0;   // populated with the estimate when warned
    std::string warning;      // empty when leakage stayed under tolerance

    bool leaked() const { return !warning.empty(); }
};

// fields[j] = exp(-i z_j H) input. Leakage above spec.leakage_tol sets the
// warning (with a minimal safe N estimate) but is not fatal.
EvolutionRecord evolve_numeric(const LatticeSpec& spec, const StateVector& input,
                               const std::vector<double>& z_grid,
                               std::string input_label = "");

struct GreenQuery {
    int m;         // output site
    int k;         // excited site
    double theta;  // g z
};

// <m| exp(-izH) |k> assembled in the log domain from the Laguerre closed
// forms; the m <= k and m >= k branches coincide at m = k.
Complex green_analytic(const GreenQuery& q);
Complex green_analytic(int m, int k, double theta);

struct GreenColumn {
    StateVector amplitudes;
    double norm_deficit = 0.0;  // population of the untruncated state beyond the window
    int min_safe_sites = 0;
    std::string warning;
};

GreenColumn green_column(int k, const LatticeSpec& spec, double z);

// The eight closed forms for <m| e^{+-theta a^dag} e^{-+theta a} [(-1)^n] |k>,
// split by exponent order, parity factor, and side of the diagonal.
enum class MatrixElementForm {
    raise_lower_parity_m_ge_k,  // <m| e^{+theta a^dag} e^{-theta a} (-1)^n |k>, m >= k
    raise_lower_parity_m_le_k,  //   "                                     , m <= k
    lower_raise_parity_m_ge_k,  // <m| e^{-theta a^dag} e^{+theta a} (-1)^n |k>, m >= k
    lower_raise_parity_m_le_k,
    lower_raise_m_ge_k,         // <m| e^{-theta a^dag} e^{+theta a} |k>, m >= k
    lower_raise_m_le_k,
    raise_lower_m_ge_k,         // <m| e^{+theta a^dag} e^{-theta a} |k>, m >= k
    raise_lower_m_le_k,
};

// Closed-form value; all eight are real for real theta. Throws domain_error
// when (m, k) lies outside the variant's validity region.
double appendix_matrix_element(MatrixElementForm form, int m, int k, double theta);

// exp(-theta^2/2) [ e^{theta a^dag} e^{-theta a} (1 - i(-1)^n)/2
//                 + e^{-theta a^dag} e^{theta a} (1 + i(-1)^n)/2 ]
// assembled entrywise from the eight closed forms; equals exp(-izH) with
// theta = gz up to truncation at the boundary columns.
OperatorMatrix assemble_propagator_closed(int dim, double theta);

struct PropagatedCat {
    StateVector state;
    cats::CatDecomposition parts;
    double leakage = 0.0;
    int min_safe_sites = 0;
    std::string warning;
};

// exp(-izH) |beta, k>: four displaced Fock components with displacements
// beta - gz, gz - beta, gz + beta, -gz - beta. The input must fit the basis;
// evolution that pushes weight into the boundary window sets the warning.
PropagatedCat propagate_cat(const LatticeSpec& spec, Complex beta, int k, double z);

}  // namespace dgf::lattice
