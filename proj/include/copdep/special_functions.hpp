#pragma once

namespace copdep::sf {

// Standard normal distribution function, Cody-style rational erfc.
// Absolute accuracy better than 1e-14; saturates to 0/1 in the far tails.
double std_normal_cdf(double x);

// Standard normal density.
double std_normal_pdf(double x);

// Inverse of std_normal_cdf (Wichura's AS 241 with one Halley refinement).
double std_normal_quantile(double p);

// Student-t distribution function with nu > 0 degrees of freedom,
// via the regularized incomplete beta function.
double student_t_cdf(double x, double nu);

// Student-t density.
double student_t_pdf(double x, double nu);

// Inverse of student_t_cdf.
double student_t_quantile(double p, double nu);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double reg_inc_beta(double a, double b, double x);

// Gauss hypergeometric function 2F1(a,b;c;z) for real z < 1.
// Power series for |z| <= 0.9, Pfaff z/(z-1) transformation for z < -0.9;
// for very negative z (transformed argument near 1) falls back to the
// Euler integral evaluated by adaptive quadrature (requires c > a > 0).
double hyp2f1(double a, double b, double c, double z);

// Debye function D_k(x) = k/x^k * integral_0^x t^k/(e^t-1) dt, k in {1,2}, x > 0.
double debye(int k, double x);

// Exponential integral E_1(x) = integral_1^inf e^{-x s}/s ds, x > 0.
double exp_integral_e1(double x);

// Modified Bessel function of the second kind K_nu(x), nu > -1/2, x > 0.
double bessel_k(double nu, double x);

} // namespace copdep::sf
