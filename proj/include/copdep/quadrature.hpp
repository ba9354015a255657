#pragma once

#include <functional>
#include <span>
#include <vector>

namespace copdep::quad {

// Adaptive Gauss-Kronrod 7-15 on [a,b]. Recurses until the embedded error
// estimate of a panel drops below max(abs_tol, rel_tol*|I|) or depth runs out.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol = 1e-12, double rel_tol = 1e-12,
                   int max_depth = 30);

// Nodes/weights of the n-point Gauss-Legendre rule on [-1,1].
// Computed once per n by Newton iteration and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// Fixed-order Gauss-Legendre integral of f over [a,b].
double gl_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Tanh-sinh (double-exponential) rule on (a,b). Tolerates integrable
// endpoint singularities; `levels` halvings of the step.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int levels = 10);

} // namespace copdep::quad
