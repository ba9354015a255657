#pragma once

#include <functional>

#include "copdep/copula.hpp"

namespace copdep {

// Bivariate standard normal CDF P(X<=x, Y<=y) with correlation rho.
// Gauss-Legendre on the arcsine-substituted single-integral reduction.
double binormal_cdf(double x, double y, double rho);

// Copula values (the spec-level operations).
double gaussian_cdf(double rho, double u, double v);
double student_t_cdf2(double rho, double nu, double u, double v);
double laplace_cdf(double rho, double u, double v);

// Standard Laplace marginal (scale 1/sqrt(2), unit variance) used by the
// Laplace copula: cdf and quantile.
double laplace_marginal_cdf(double x);
double laplace_marginal_quantile(double p);

// Log-density generator phi(t) = log g(t) of an elliptical family with
// derivative hooks, for the TP2 sandwich criterion.
struct EllipticalSpec {
    double rho;
    double nu = 0.0; // degrees of freedom when applicable
    std::function<double(double)> log_gen_prime;        // phi'
    std::function<double(double)> log_gen_double_prime; // phi''
};

EllipticalSpec elliptical_spec(Family f, double rho, double nu = 0.0);

// Evaluates inf/sup of t phi''(t)/phi'(t) over a grid of
// T = {t>0 : phi'(t) < 0} and tests
// -rho/(1+rho) <= inf <= sup <= rho/(1-rho).
bool elliptical_tp2_criterion(const EllipticalSpec& spec);

class GaussianCopula : public Copula {
public:
    GaussianCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override;
    double density(double u, double v) const override;
    bool has_density() const override;

private:
    double rho_;
};

class StudentTCopula : public Copula {
public:
    StudentTCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override;
    double density(double u, double v) const override;
    bool has_density() const override;

private:
    double rho_, nu_;
};

class LaplaceCopula : public Copula {
public:
    LaplaceCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override; // mixing-integral conditional cdf
    bool has_density() const override;

private:
    double rho_;
};

} // namespace copdep
