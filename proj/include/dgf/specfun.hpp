#pragma once

namespace dgf::specfun {

// ln(n!) from a cumulative table built once (long-double accumulation);
// falls back to lgamma past the table.
double log_factorial(int n);

// Associated Laguerre polynomial L_k^s(x) by the three-term recurrence in k:
//   L_0^s = 1,  L_1^s = 1 + s - x,
//   (k+1) L_{k+1}^s = (2k+1+s-x) L_k^s - (k+s) L_{k-1}^s.
// Stable in the regime used here (s >= 0, x >= 0).
double assoc_laguerre(int k, int s, double x);

// value = sign * exp(log_abs), sign in {-1, 0, +1}.
struct SignedLog {
    double log_abs;
    double sign;
};

// Same recurrence with the magnitude carried in the log domain (power-of-two
// rescaling), so |L| far outside double range stays usable.
SignedLog log_assoc_laguerre(int k, int s, double x);

// log | sqrt(min(m,k)!/max(m,k)!) * theta^|m-k| * exp(-theta^2/2) | plus the
// sign of the Laguerre factor L_min^{|m-k|}(theta^2). Callers add the
// Laguerre log-magnitude and exponentiate once; the assembled amplitude is
// overflow-free for m, k up to 1e4.
SignedLog log_amplitude_prefactor(int m, int k, double theta);

}  // namespace dgf::specfun
