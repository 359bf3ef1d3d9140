#pragma once

namespace sphull::numeric {

// Gamma function; throws a Pole error at nonpositive integers.
double gamma_checked(double x);
double lgamma_checked(double x);

// 1 - I_x(a,b) given x and its complement y = 1 - x (both supplied so the
// caller can keep precision near x = 1).
double beta_survival(double a, double b, double x, double y);
double beta_survival(double a, double b, double x);

// Regularized incomplete beta I_x(a,b).
double beta_cdf(double a, double b, double x);

double beta_density(double a, double b, double x);

}  // namespace sphull::numeric
