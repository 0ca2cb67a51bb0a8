#pragma once

#include <vector>

#include "dgf/types.hpp"

// State constructors: coherent states, displaced Fock states |alpha, k>, the
// parity-deformed displacement operator, and the two- and four-component cat
// superpositions it generates.
namespace dgf::cats {

// Smallest dimension N such that the occupation distribution of |alpha, k>
// keeps less than tail_tol of its weight on sites >= N. This is the
// truncation guard used by every state constructor; tail_tol is
// configuration, not a magic constant.
int min_safe_dim(double alpha_abs, int k, double tail_tol = 1e-12);

// Throws TruncationError (naming the minimal safe dim) when dim is too small
// to hold |alpha, k> at the given tail tolerance.
void require_capacity(double alpha_abs, int k, int dim, double tail_tol = 1e-12,
                      const char* what = "state construction");

// c_n = exp(-|beta|^2/2) beta^n / sqrt(n!); Poissonian with mean |beta|^2.
StateVector coherent_state(Complex beta, int dim);

// exp(alpha a^dag - alpha^* a) by scaling-and-squaring matrix exponential.
// Column k is the displaced Fock state |alpha, k>. Exactly unitary in the
// truncated space (exponential of an anti-Hermitian matrix).
OperatorMatrix glauber_displacement(Complex alpha, int dim);

// Column k of glauber_displacement, guarded against truncation loss.
StateVector displaced_fock(Complex alpha, int k, int dim);

// D_NL(alpha) = exp(alpha A^dag - alpha^* A) with A = (-1)^n a, built from
// the parity decomposition
//   D_NL(alpha) = (1/2i) [D(i alpha) - D^dag(i alpha)] (-1)^n
//               + (1/2)  [D(i alpha) + D^dag(i alpha)].
// The decomposition is an exact identity of the truncated generators, not an
// approximation.
OperatorMatrix deformed_displacement(Complex alpha, int dim);

// Normal-ordered route exp(-|alpha|^2/2) exp(alpha A^dag) exp(-alpha^* A),
// each factor a terminating triangular series. Validation path: its entries
// are the untruncated matrix elements for every m, k < dim.
OperatorMatrix deformed_displacement_normal_ordered(Complex alpha, int dim);

struct CatComponent {
    Complex weight;
    Complex displacement;
    int fock_index;
};

struct CatDecomposition {
    std::vector<CatComponent> components;  // two or four entries

    // sum_i weight_i |displacement_i, fock_index_i> in an N-dimensional basis.
    StateVector reconstruct(int dim) const;
};

struct CatState {
    StateVector state;
    CatDecomposition parts;
};

// D_NL(alpha)|k>: two displaced Fock states separated in phase,
//   e^{-i(-1)^k pi/4}/sqrt(2) |i alpha, k> + e^{+i(-1)^k pi/4}/sqrt(2) |-i alpha, k>.
CatState cat_from_fock(Complex alpha, int k, int dim);

// D_NL(alpha)|beta, k>: four displaced Fock states,
//   e^{-i Re(alpha beta^*)}/2 [ |-i alpha + beta, k> - i(-1)^k |i alpha - beta, k> ]
// + e^{+i Re(alpha beta^*)}/2 [ |i alpha + beta, k> + i(-1)^k |-i alpha - beta, k> ].
CatState cat_from_displaced(Complex alpha, Complex beta, int k, int dim);

}  // namespace dgf::cats
