#pragma once

#include <functional>

#include "copdep/copula.hpp"

namespace copdep {

// Pickands dependence function A: [0,1] -> [1/2,1], convex, bounded by
// max{t,1-t} <= A(t) <= 1. kink < 0 marks a smooth A; piecewise-linear
// families (Marshall-Olkin / Cuadras-Auge) record the kink location so the
// convexity validation uses one-sided differences around it.
struct PickandsFn {
    Family family;
    std::function<double(double)> a;
    std::function<double(double)> a_prime; // one-sided limits at a kink
    double kink = -1.0;
};

// Validates the Pickands invariants on a 1000-point grid and throws
// std::runtime_error (invalid Pickands) on violation.
PickandsFn make_pickands(Family family, const CopulaSpec& spec);
PickandsFn make_pickands(Family family, std::vector<std::pair<std::string, double>> params);

// exp(ln(uv) A(ln v / (ln u + ln v))).
double ev_cdf(const PickandsFn& A, double u, double v);

// A1 >= A2 - 1e-12 on a 2001-point uniform grid; by the extreme-value
// ordering theorem this certifies C1 <=_lo C2 and C1 <=_dS C2.
bool pickands_leq(const PickandsFn& a1, const PickandsFn& a2, int grid = 2001);

// (lambda_L, lambda_U) = (1{A(1/2) <= 1/2 + 1e-12}, 2(1 - A(1/2))).
std::pair<double, double> ev_tails(const PickandsFn& A);

class EvCopula : public Copula {
public:
    EvCopula(const CopulaSpec& spec);

    double cdf(double u, double v) const override;
    double d1(double u, double v) const override; // (C/u) (A(t) - t A'(t))
    bool has_density() const override;
    bool symmetric() const override { return symmetric_; }

    const PickandsFn& pickands() const { return pick_; }

private:
    PickandsFn pick_;
    bool symmetric_ = true;
};

} // namespace copdep
