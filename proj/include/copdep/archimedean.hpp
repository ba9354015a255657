#pragma once

#include <functional>
#include <limits>

#include "copdep/copula.hpp"

namespace copdep {

// Archimedean generator pair (phi, psi) with the derivatives the
// dependence classifiers need. phi: (0,1] -> [0, phi_at_zero), strictly
// decreasing convex, phi(1)=0; psi is the pseudo-inverse (0 beyond
// phi_at_zero).
struct Generator {
    Family family;
    double theta = 0.0;
    double phi_at_zero = std::numeric_limits<double>::infinity();
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;
    std::function<double(double)> psi;
    std::function<double(double)> psi_prime;        // 0 beyond phi_at_zero
    std::function<double(double)> psi_double_prime; // 0 beyond phi_at_zero
    bool psi_smooth = true; // false when psi has a kink inside (0, phi(0))
};

Generator make_generator(Family family, double theta);

// psi(phi(u) + phi(v)).
double arch_cdf(const Generator& g, double u, double v);

enum class CiCdVerdict { ci, cd, both, neither, not_applicable };

// Log-convexity test of -psi' on a log-spaced grid over (0, min(phi(0), 50)):
// convex => CI, concave => CD, linear => both (independence). Families whose
// psi is not differentiable on the needed range report not_applicable.
CiCdVerdict ci_cd_classify(const Generator& g, int grid = 400);

// Log-convexity of psi'' on the same grid (the TP2 characterization).
// Returns not_applicable where psi'' is unavailable or the copula has no
// density (W/M endpoints).
enum class Tp2Verdict { yes, no, not_applicable };
Tp2Verdict tp2_check_arch(const Generator& g, int grid = 400);

// Subadditivity of f = phi1 o psi2 over a grid of (x,y) covering
// [0, min(phi2(0), cap)]^2 with cap = 50; certifies D1 <=_lo D2.
bool subadditivity_check(const Generator& g1, const Generator& g2, int grid = 200);

class ArchimedeanCopula : public Copula {
public:
    ArchimedeanCopula(const CopulaSpec& spec);

    double cdf(double u, double v) const override;  // Table closed form
    double d1(double u, double v) const override;   // psi'(phi(u)+phi(v)) phi'(u)
    double density(double u, double v) const override;
    bool has_density() const override;
    std::optional<double> conditional_quantile_closed(double u, double p) const override;

    const Generator& generator() const { return gen_; }

private:
    Generator gen_;
};

} // namespace copdep
