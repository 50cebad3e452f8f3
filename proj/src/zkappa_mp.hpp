#pragma once

namespace curs::detail {

// Closed-form proposal constant for the Gaussian law, evaluated in 50-digit
// floating point because the alternating sum cancels down to roughly
// (2 kappa sigma)^{d-1} of its largest term. Only the final value is rounded
// back to double.
double z_kappa_closed_mp(int d, double kappa, double sigma);

// log Pf(Lambda(sigma)) for Lambda_ij = exp((i^2+j^2) sigma^2/2)
// erf((j-i) sigma/2), 0 <= i,j < n, n even. The individual expansion terms of
// the Pfaffian are O(sigma^{n/2}) but the value is O(sigma^{n(n-1)/2}): every
// lower Taylor order cancels exactly, so small sigma loses far more digits
// than double holds. Evaluated in 50-digit floating point.
double log_pf_lambda_mp(int n, double sigma);

}  // namespace curs::detail
