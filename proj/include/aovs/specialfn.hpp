#pragma once

namespace aovs::sf {

// ln Gamma(x) for x > 0. Good to ~1e-13 absolute in log space, i.e. the
// exponentiated value is correct to better than 1e-12 relative while it is
// representable, and the log stays accurate far beyond that.
double log_gamma(double x);

// ln of Stirling's approximation sqrt(2*pi*x) * (x/e)^x, which approximates
// Gamma(x + 1).
double stirling_log_gamma(double x);

// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(double a, double b);

// Incomplete beta B(x; a, b) = integral_0^x t^(a-1) (1-t)^(b-1) dt
// for x in [0, 1], a > 0, b > 0.
double inc_beta(double x, double a, double b);

// Regularized incomplete beta I_x(a, b) = B(x; a, b) / B(a, b).
double reg_inc_beta(double x, double a, double b);

// ln I_x(a, b). The linear value underflows around I < 1e-308 (reached by
// spherical-cap fractions in a few thousand dimensions); the log form keeps
// every bound finite. Returns -inf for x = 0.
double log_reg_inc_beta(double x, double a, double b);

}  // namespace aovs::sf
