#pragma once

#include <cstddef>
#include <vector>

#include "copdep/copula.hpp"

namespace copdep {

// Piecewise-constant function on (0,1) with n equal cells.
struct StepFn {
    std::vector<double> values;
    std::size_t size() const { return values.size(); }
};

// n x n cell-mass discretization of a copula; rows index u, columns v.
// Row and column sums are 1/n.
struct Checkerboard {
    std::size_t n = 0;
    std::vector<double> mass; // row-major, mass[i*n + j]

    double& at(std::size_t i, std::size_t j) { return mass[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return mass[i * n + j]; }

    // C(i/n, j/n) for i,j in 0..n (cumulative over the cell grid).
    double cdf_at(std::size_t i, std::size_t j) const;
};

struct OrderVerdict {
    bool holds = false;
    double max_violation = 0.0;
    double witness_u = 0.0;
    double witness_v = 0.0;
};

// Values sorted descending; same multiset.
StepFn decreasing_rearrangement(const StepFn& f);

// f prec_S g: prefix sums of the decreasing rearrangements dominate and the
// totals agree (both within tol, scaled by cell width 1/n).
OrderVerdict schur_leq(const StepFn& f, const StepFn& g, double tol = 1e-9);

// Cell masses by inclusion-exclusion of the cdf.
Checkerboard checkerboard_from_copula(const Copula& c, std::size_t n);

// Increasing rearranged copula at checkerboard scale: for every column
// level j the row-cumulative profile S_.(j) is sorted descending, which
// makes the conditional cdf nonincreasing in the conditioning cell (CIS)
// and is lower-orthant maximal among Schur-equivalent checkerboards.
Checkerboard increasing_rearranged(const Checkerboard& cb);

// d1-Schur order via n-checkerboards: per column level the scaled
// conditional-cdf step functions must be Schur-ordered; cross-checked
// against the pointwise order of the increasing rearranged boards.
OrderVerdict schur_order_d1(const Copula& D, const Copula& E, std::size_t n = 40,
                            double tol = 1e-9);
OrderVerdict schur_order_d1(const Checkerboard& D, const Checkerboard& E,
                            double tol = 1e-9);

// D <= E + tol on the n x n interior grid.
OrderVerdict lower_orthant_leq(const Copula& D, const Copula& E, std::size_t n = 40,
                               double tol = 1e-7);

enum class MonotoneVerdict { cis, cds, both, neither };

struct CisResult {
    MonotoneVerdict first;  // V | U (d1 monotone in u)
    MonotoneVerdict second; // U | V (transposed)
    MonotoneVerdict both;   // CI / CD / both / neither
};

// Grid check of Definition-level CIS/CDS: u -> d1(u,v) monotone within tol
// for each of n levels v; the transposed copula gives the second argument
// and the combined CI/CD verdict.
CisResult cis_check(const Copula& c, std::size_t n = 200, double tol = 1e-6);

// Log-supermodularity of the density on an n x n grid of cell midpoints;
// cell-mass surrogate (mass * n^2) when no closed-form density exists is
// chosen by the caller via use_mass_surrogate.
// Throws std::runtime_error for families without a density unless the
// surrogate is requested.
bool tp2_density_check(const Copula& c, std::size_t n = 40,
                       bool use_mass_surrogate = false);

// C >= Pi - tol on the grid.
OrderVerdict plod_check(const Copula& c, std::size_t n = 40, double tol = 1e-9);

} // namespace copdep
