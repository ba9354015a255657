#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace copdep {

enum class Family {
    // Archimedean (generator table)
    clayton, nelsen2, amh, gumbel_hougaard, frank, joe, nelsen7, nelsen8,
    gumbel_barnett, nelsen10, nelsen11, nelsen12, nelsen13, nelsen14,
    genest_ghoudi, nelsen16, nelsen17, nelsen18, nelsen19, nelsen20,
    nelsen21, nelsen22,
    // extreme value
    bb5, cuadras_auge, galambos, husler_reiss, joe_ev, marshall_olkin,
    t_ev, tawn,
    // elliptical
    gaussian, student_t, laplace,
    // unclassified
    frechet, mardia, fgm, plackett, raftery,
    independence,
};

enum class FamilyClass { archimedean, extreme_value, elliptical, unclassified };

FamilyClass family_class(Family f);
const char* family_name(Family f);
std::optional<Family> family_from_string(const std::string& name);
std::vector<std::string> family_param_names(Family f);

// Family identifier plus validated named parameters. Construction throws
// std::invalid_argument when a parameter falls outside the admissible range.
struct CopulaSpec {
    Family family;
    std::vector<std::pair<std::string, double>> params;

    CopulaSpec(Family f, std::vector<std::pair<std::string, double>> p);
    double param(const std::string& name) const;
    std::string describe() const;
};

struct UnitPoint {
    double u;
    double v;
};

class Copula {
public:
    virtual ~Copula() = default;

    virtual double cdf(double u, double v) const = 0;

    // Conditional distribution function of V given U=u. Default is a
    // central finite difference with h=1e-5 clamped to the interior;
    // families with closed forms override.
    virtual double d1(double u, double v) const;

    virtual bool has_density() const { return true; }

    // Copula density where it exists; default is a finite difference of d1.
    virtual double density(double u, double v) const;

    virtual bool symmetric() const { return true; }

    // Closed-form conditional quantile if the family has one.
    virtual std::optional<double> conditional_quantile_closed(double u, double p) const {
        (void)u;
        (void)p;
        return std::nullopt;
    }

    const CopulaSpec* spec() const { return spec_ ? &*spec_ : nullptr; }

protected:
    std::optional<CopulaSpec> spec_;
};

using CopulaPtr = std::shared_ptr<const Copula>;

CopulaPtr make_copula(const CopulaSpec& spec);
CopulaPtr make_copula(Family f, std::vector<std::pair<std::string, double>> params);

// u + v - 1 + C(1-u, 1-v); applying twice gives back the original.
CopulaPtr survival_copula(CopulaPtr base);

// C^T(u,v) = C(v,u).
CopulaPtr transposed_copula(CopulaPtr base);

// Smallest v with d1(u,v) >= p, by bracketing bisection with a secant
// acceleration; at most 80 iterations, interval tolerance 1e-10.
double conditional_quantile(const Copula& c, double u, double p);

struct SamplePairs {
    std::vector<UnitPoint> rows;
    std::uint64_t seed = 0;
};

// Conditional-inversion sampling; mixture families select the component,
// elliptical families use their stochastic representation. Deterministic:
// equal (spec, n, seed) give bit-identical rows.
SamplePairs sample(const Copula& c, std::size_t n, std::uint64_t seed);

// CSV with header `u,v` and 17-significant-digit decimal rendering.
std::string sample_to_csv(const SamplePairs& s);

} // namespace copdep
