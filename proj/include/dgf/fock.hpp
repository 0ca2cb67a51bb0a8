#pragma once

#include <utility>

#include "dgf/types.hpp"

// Truncated Fock-space foundation: ladder and parity operators, inner
// products, and the defect measures used by the operator-identity tests.
namespace dgf::fock {

// a|n> = sqrt(n) |n-1>,  entries M[n-1, n] = sqrt(n).
OperatorMatrix annihilation(int dim);

// a^dag|n> = sqrt(n+1) |n+1>; exactly the transpose of annihilation().
OperatorMatrix creation(int dim);

// (-1)^n photon-number parity, diag(+1, -1, +1, ...).
OperatorMatrix parity(int dim);

// Deformed pair A = (-1)^n a and A^dag = a^dag (-1)^n; adjoints of each other.
std::pair<OperatorMatrix, OperatorMatrix> deformed_ladder(int dim);

Complex inner(const StateVector& bra, const StateVector& ket);

double max_abs(const OperatorMatrix& m);

// max |M - M^dag| over all entries.
double hermiticity_defect(const OperatorMatrix& m);

// max |(M^dag M - I)_{ij}| over i, j < interior.
double unitarity_defect(const OperatorMatrix& m, int interior);

// max |A - B| over the leading rows x cols block.
double block_max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b,
                          int rows, int cols);

}  // namespace dgf::fock
