#pragma once

#include <optional>
#include <string>

#include "copdep/copula.hpp"

namespace copdep {

enum class MeasureName { xi, rho_s, tau, lambda_l, lambda_u };
enum class MeasureMethod { closed_form, quadrature, monte_carlo, limit };

const char* measure_name_str(MeasureName m);
const char* measure_method_str(MeasureMethod m);

struct MeasureValue {
    MeasureName name;
    double value = 0.0;
    MeasureMethod method = MeasureMethod::quadrature;
    std::optional<double> stderr_est;
};

// 12 * midpoint-quadrature of C on an n x n grid - 3.
MeasureValue spearman_rho_quad(const Copula& c, int n = 400);

// 4 * sum over checkerboard cells of C(midpoint) * cellmass - 1.
MeasureValue kendall_tau_quad(const Copula& c, int n = 400);

// 6 * midpoint-quadrature of (d1)^2 - 2, with one refinement step when two
// resolutions disagree by more than 1e-3.
MeasureValue chatterjee_xi_quad(const Copula& c, int n = 400);

// Rank statistics on a sample: Spearman product-moment of ranks, Kendall
// via merge-sort inversion counting, Chatterjee's n-term rank formula.
// stderr via 10 batch means when the sample is large enough.
MeasureValue estimate_from_sample(const SamplePairs& pairs, MeasureName which);

// Closed-form table value if the (family, measure) cell has one.
std::optional<MeasureValue> closed_form(const CopulaSpec& spec, MeasureName which);

// Numeric tail limits from t = 2^-4.. 2^-9 with geometric-decay detection
// and linear extrapolation; returns (lambda_L, lambda_U).
std::pair<MeasureValue, MeasureValue> tail_coefficients(const Copula& c);

// Closed-form tail coefficients where the family tables state them.
std::optional<std::pair<double, double>> tail_closed_form(const CopulaSpec& spec);

} // namespace copdep
