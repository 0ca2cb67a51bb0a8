#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dgf {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;     // amplitudes over |0>, |1>, ..., |N-1>
using OperatorMatrix = Eigen::MatrixXcd;  // dense operator in the number basis

// Sites next to the truncation edge that form the leakage window.
inline constexpr int kBoundaryMargin = 5;

// Budget on |sum_m |c_m|^2 - 1| for a vector labeled "normalized".
inline constexpr double kNormTol = 1e-12;

StateVector basis_state(int dim, int k);

inline double norm_sq(const StateVector& v) { return v.squaredNorm(); }

inline bool is_normalized(const StateVector& v, double tol = kNormTol) {
    return std::abs(norm_sq(v) - 1.0) <= tol;
}

// A requested construction does not fit in the truncated basis. Carries the
// smallest dimension that would.
class TruncationError : public std::runtime_error {
  public:
    TruncationError(const std::string& what, int min_safe_dim)
        : std::runtime_error(what), min_safe_dim_(min_safe_dim) {}
    int min_safe_dim() const { return min_safe_dim_; }

  private:
    int min_safe_dim_;
};

}  // namespace dgf
