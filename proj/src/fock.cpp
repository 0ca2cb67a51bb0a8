#include "dgf/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace dgf {

StateVector basis_state(int dim, int k) {
    if (dim < 1) throw std::invalid_argument("basis_state: dim must be >= 1");
    if (k < 0 || k >= dim) throw std::invalid_argument("basis_state: index out of range");
    StateVector v = StateVector::Zero(dim);
    v[k] = 1.0;
    return v;
}

namespace fock {

namespace {
void check_dim(int dim, const char* who) {
    if (dim < 1) throw std::invalid_argument(std::string(who) + ": dim must be >= 1");
}
}  // namespace

OperatorMatrix annihilation(int dim) {
    check_dim(dim, "annihilation");
    OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
    return m;
}

OperatorMatrix creation(int dim) {
    check_dim(dim, "creation");
    return annihilation(dim).transpose();
}

OperatorMatrix parity(int dim) {
    check_dim(dim, "parity");
    OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return m;
}

std::pair<OperatorMatrix, OperatorMatrix> deformed_ladder(int dim) {
    check_dim(dim, "deformed_ladder");
    const OperatorMatrix p = parity(dim);
    OperatorMatrix lower = p * annihilation(dim);
    OperatorMatrix raise = creation(dim) * p;
    return {std::move(lower), std::move(raise)};
}

Complex inner(const StateVector& bra, const StateVector& ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("inner: dimension mismatch");
    return bra.dot(ket);  // Eigen conjugates the left factor
}

double max_abs(const OperatorMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const OperatorMatrix& m) {
    return max_abs(m - m.adjoint());
}

double unitarity_defect(const OperatorMatrix& m, int interior) {
    OperatorMatrix g = m.adjoint() * m;
    g.diagonal().array() -= 1.0;
    interior = std::min<int>(interior, static_cast<int>(g.rows()));
    if (interior < 1) return 0.0;
    return g.topLeftCorner(interior, interior).cwiseAbs().maxCoeff();
}

double block_max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b,
                          int rows, int cols) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("block_max_abs_diff: shape mismatch");
    rows = std::min<int>(rows, static_cast<int>(a.rows()));
    cols = std::min<int>(cols, static_cast<int>(a.cols()));
    if (rows < 1 || cols < 1) return 0.0;
    return (a.topLeftCorner(rows, cols) - b.topLeftCorner(rows, cols)).cwiseAbs().maxCoeff();
}

}  // namespace fock
}  // namespace dgf
