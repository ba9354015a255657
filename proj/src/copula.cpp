#include "copdep/copula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "copdep/archimedean.hpp"
#include "copdep/elliptical.hpp"
#include "copdep/extreme_value.hpp"
#include "copdep/unclassified.hpp"

namespace copdep {

namespace {

struct FamilyInfo {
    const char* name;
    FamilyClass cls;
    std::vector<std::string> params;
};

const std::map<Family, FamilyInfo>& family_table() {
    static const std::map<Family, FamilyInfo> table = {
        {Family::clayton, {"clayton", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen2, {"nelsen2", FamilyClass::archimedean, {"theta"}}},
        {Family::amh, {"amh", FamilyClass::archimedean, {"theta"}}},
        {Family::gumbel_hougaard, {"gumbel_hougaard", FamilyClass::archimedean, {"theta"}}},
        {Family::frank, {"frank", FamilyClass::archimedean, {"theta"}}},
        {Family::joe, {"joe", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen7, {"nelsen7", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen8, {"nelsen8", FamilyClass::archimedean, {"theta"}}},
        {Family::gumbel_barnett, {"gumbel_barnett", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen10, {"nelsen10", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen11, {"nelsen11", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen12, {"nelsen12", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen13, {"nelsen13", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen14, {"nelsen14", FamilyClass::archimedean, {"theta"}}},
        {Family::genest_ghoudi, {"genest_ghoudi", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen16, {"nelsen16", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen17, {"nelsen17", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen18, {"nelsen18", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen19, {"nelsen19", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen20, {"nelsen20", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen21, {"nelsen21", FamilyClass::archimedean, {"theta"}}},
        {Family::nelsen22, {"nelsen22", FamilyClass::archimedean, {"theta"}}},
        {Family::bb5, {"bb5", FamilyClass::extreme_value, {"theta", "delta"}}},
        {Family::cuadras_auge, {"cuadras_auge", FamilyClass::extreme_value, {"delta"}}},
        {Family::galambos, {"galambos", FamilyClass::extreme_value, {"delta"}}},
        {Family::husler_reiss, {"husler_reiss", FamilyClass::extreme_value, {"delta"}}},
        {Family::joe_ev, {"joe_ev", FamilyClass::extreme_value, {"alpha1", "alpha2", "delta"}}},
        {Family::marshall_olkin,
         {"marshall_olkin", FamilyClass::extreme_value, {"alpha1", "alpha2"}}},
        {Family::t_ev, {"t_ev", FamilyClass::extreme_value, {"rho", "nu"}}},
        {Family::tawn, {"tawn", FamilyClass::extreme_value, {"alpha1", "alpha2", "theta"}}},
        {Family::gaussian, {"gaussian", FamilyClass::elliptical, {"rho"}}},
        {Family::student_t, {"student_t", FamilyClass::elliptical, {"rho", "nu"}}},
        {Family::laplace, {"laplace", FamilyClass::elliptical, {"rho"}}},
        {Family::frechet, {"frechet", FamilyClass::unclassified, {"alpha", "beta"}}},
        {Family::mardia, {"mardia", FamilyClass::unclassified, {"theta"}}},
        {Family::fgm, {"fgm", FamilyClass::unclassified, {"theta"}}},
        {Family::plackett, {"plackett", FamilyClass::unclassified, {"theta"}}},
        {Family::raftery, {"raftery", FamilyClass::unclassified, {"delta"}}},
        {Family::independence, {"independence", FamilyClass::unclassified, {}}},
    };
    return table;
}

[[noreturn]] void bad_param(Family f, const std::string& why) {
    throw std::invalid_argument(std::string("invalid parameter for ") + family_name(f) +
                                ": " + why);
}

void validate(Family f, const CopulaSpec& s) {
    auto in = [&](const char* n) { return s.param(n); };
    auto require = [&](bool ok, const std::string& why) {
        if (!ok) bad_param(f, why);
    };
    switch (f) {
        case Family::clayton: require(in("theta") >= -1.0, "theta in [-1,inf)"); break;
        case Family::nelsen2: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::amh:
            require(in("theta") >= -1.0 && in("theta") <= 1.0, "theta in [-1,1]");
            break;
        case Family::gumbel_hougaard: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::frank: require(std::isfinite(in("theta")), "theta finite"); break;
        case Family::joe: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::nelsen7:
            require(in("theta") >= 0.0 && in("theta") <= 1.0, "theta in [0,1]");
            break;
        case Family::nelsen8: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::gumbel_barnett:
            require(in("theta") >= 0.0 && in("theta") <= 1.0, "theta in [0,1]");
            break;
        case Family::nelsen10:
            require(in("theta") >= 0.0 && in("theta") <= 1.0, "theta in [0,1]");
            break;
        case Family::nelsen11:
            require(in("theta") >= 0.0 && in("theta") <= 0.5, "theta in [0,1/2]");
            break;
        case Family::nelsen12: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::nelsen13: require(in("theta") >= 0.0, "theta in [0,inf)"); break;
        case Family::nelsen14: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::genest_ghoudi: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::nelsen16: require(in("theta") >= 0.0, "theta in [0,inf)"); break;
        case Family::nelsen17: require(in("theta") != 0.0, "theta nonzero"); break;
        case Family::nelsen18: require(in("theta") >= 2.0, "theta in [2,inf)"); break;
        case Family::nelsen19: require(in("theta") >= 0.0, "theta in [0,inf)"); break;
        case Family::nelsen20: require(in("theta") >= 0.0, "theta in [0,inf)"); break;
        case Family::nelsen21: require(in("theta") >= 1.0, "theta in [1,inf)"); break;
        case Family::nelsen22:
            require(in("theta") >= 0.0 && in("theta") <= 1.0, "theta in [0,1]");
            break;
        case Family::bb5:
            require(in("theta") >= 1.0, "theta in [1,inf)");
            require(in("delta") > 0.0, "delta > 0");
            break;
        case Family::cuadras_auge:
            require(in("delta") >= 0.0 && in("delta") <= 1.0, "delta in [0,1]");
            break;
        case Family::galambos: require(in("delta") > 0.0, "delta > 0"); break;
        case Family::husler_reiss: require(in("delta") >= 0.0, "delta >= 0"); break;
        case Family::joe_ev:
            require(in("alpha1") >= 0.0 && in("alpha1") <= 1.0, "alpha1 in [0,1]");
            require(in("alpha2") >= 0.0 && in("alpha2") <= 1.0, "alpha2 in [0,1]");
            require(in("delta") > 0.0, "delta > 0");
            break;
        case Family::marshall_olkin:
            require(in("alpha1") >= 0.0 && in("alpha1") <= 1.0, "alpha1 in [0,1]");
            require(in("alpha2") >= 0.0 && in("alpha2") <= 1.0, "alpha2 in [0,1]");
            break;
        case Family::t_ev:
            require(in("rho") > -1.0 && in("rho") < 1.0, "rho in (-1,1)");
            require(in("nu") > 0.0, "nu > 0");
            break;
        case Family::tawn:
            require(in("alpha1") >= 0.0 && in("alpha1") <= 1.0, "alpha1 in [0,1]");
            require(in("alpha2") >= 0.0 && in("alpha2") <= 1.0, "alpha2 in [0,1]");
            require(in("theta") >= 1.0, "theta in [1,inf)");
            break;
        case Family::gaussian:
            require(in("rho") >= -1.0 && in("rho") <= 1.0, "rho in [-1,1]");
            break;
        case Family::student_t:
            require(in("rho") >= -1.0 && in("rho") <= 1.0, "rho in [-1,1]");
            require(in("nu") > 0.0, "nu > 0");
            break;
        case Family::laplace:
            require(in("rho") >= -1.0 && in("rho") <= 1.0, "rho in [-1,1]");
            break;
        case Family::frechet:
            require(in("alpha") >= 0.0 && in("beta") >= 0.0, "alpha, beta >= 0");
            require(in("alpha") + in("beta") <= 1.0 + 1e-12, "alpha + beta <= 1");
            break;
        case Family::mardia:
            require(in("theta") >= -1.0 && in("theta") <= 1.0, "theta in [-1,1]");
            break;
        case Family::fgm:
            require(in("theta") >= -1.0 && in("theta") <= 1.0, "theta in [-1,1]");
            break;
        case Family::plackett: require(in("theta") > 0.0, "theta > 0"); break;
        case Family::raftery:
            require(in("delta") >= 0.0 && in("delta") <= 1.0, "delta in [0,1]");
            break;
        case Family::independence: break;
    }
}

} // namespace

FamilyClass family_class(Family f) { return family_table().at(f).cls; }

const char* family_name(Family f) { return family_table().at(f).name; }

std::optional<Family> family_from_string(const std::string& name) {
    for (const auto& [f, info] : family_table())
        if (name == info.name) return f;
    // a few aliases seen in the literature tables
    if (name == "gumbel" || name == "gumbel-hougaard") return Family::gumbel_hougaard;
    if (name == "ali_mikhail_haq") return Family::amh;
    if (name == "pi" || name == "product") return Family::independence;
    return std::nullopt;
}

std::vector<std::string> family_param_names(Family f) { return family_table().at(f).params; }

CopulaSpec::CopulaSpec(Family f, std::vector<std::pair<std::string, double>> p)
    : family(f), params(std::move(p)) {
    const auto& expected = family_table().at(f).params;
    for (const auto& name : expected) {
        bool found = false;
        for (const auto& [k, v] : params)
            if (k == name) {
                if (std::isnan(v)) bad_param(f, name + " is NaN");
                found = true;
            }
        if (!found) bad_param(f, "missing parameter " + name);
    }
    for (const auto& [k, v] : params) {
        (void)v;
        if (std::find(expected.begin(), expected.end(), k) == expected.end())
            bad_param(f, "unknown parameter " + k);
    }
    validate(f, *this);
}

double CopulaSpec::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw std::invalid_argument("no parameter named " + name);
}

std::string CopulaSpec::describe() const {
    std::string s = family_name(family);
    for (const auto& [k, v] : params) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " %s=%g", k.c_str(), v);
        s += buf;
    }
    return s;
}

double Copula::d1(double u, double v) const {
    const double h = 1e-5;
    const double lo = std::max(u - h, 1e-12);
    const double hi = std::min(u + h, 1.0 - 1e-12);
    return std::clamp((cdf(hi, v) - cdf(lo, v)) / (hi - lo), 0.0, 1.0);
}

double Copula::density(double u, double v) const {
    const double h = 1e-5;
    const double lo = std::max(v - h, 1e-12);
    const double hi = std::min(v + h, 1.0 - 1e-12);
    return std::max((d1(u, hi) - d1(u, lo)) / (hi - lo), 0.0);
}

namespace {

class SurvivalCopula : public Copula {
public:
    explicit SurvivalCopula(CopulaPtr base) : base_(std::move(base)) {
        if (base_->spec()) spec_ = *base_->spec();
    }
    double cdf(double u, double v) const override {
        return std::clamp(u + v - 1.0 + base_->cdf(1.0 - u, 1.0 - v), 0.0, 1.0);
    }
    double d1(double u, double v) const override {
        return std::clamp(1.0 - base_->d1(1.0 - u, 1.0 - v), 0.0, 1.0);
    }
    double density(double u, double v) const override {
        return base_->density(1.0 - u, 1.0 - v);
    }
    bool has_density() const override { return base_->has_density(); }
    bool symmetric() const override { return base_->symmetric(); }
    CopulaPtr base() const { return base_; }

private:
    CopulaPtr base_;
};

class TransposedCopula : public Copula {
public:
    explicit TransposedCopula(CopulaPtr base) : base_(std::move(base)) {
        if (base_->spec()) spec_ = *base_->spec();
    }
    double cdf(double u, double v) const override { return base_->cdf(v, u); }
    double density(double u, double v) const override { return base_->density(v, u); }
    bool has_density() const override { return base_->has_density(); }
    bool symmetric() const override { return base_->symmetric(); }

private:
    CopulaPtr base_;
};

} // namespace

CopulaPtr make_copula(const CopulaSpec& spec) {
    switch (family_class(spec.family)) {
        case FamilyClass::archimedean:
            return std::make_shared<ArchimedeanCopula>(spec);
        case FamilyClass::extreme_value:
            return std::make_shared<EvCopula>(spec);
        case FamilyClass::elliptical:
            if (spec.family == Family::gaussian) return std::make_shared<GaussianCopula>(spec);
            if (spec.family == Family::student_t)
                return std::make_shared<StudentTCopula>(spec);
            return std::make_shared<LaplaceCopula>(spec);
        case FamilyClass::unclassified: break;
    }
    switch (spec.family) {
        case Family::frechet:
        case Family::mardia: return std::make_shared<FrechetCopula>(spec);
        case Family::fgm: return std::make_shared<FgmCopula>(spec);
        case Family::plackett: return std::make_shared<PlackettCopula>(spec);
        case Family::raftery: return std::make_shared<RafteryCopula>(spec);
        case Family::independence: return std::make_shared<IndependenceCopula>();
        default: throw std::logic_error("unhandled family");
    }
}

CopulaPtr make_copula(Family f, std::vector<std::pair<std::string, double>> params) {
    return make_copula(CopulaSpec(f, std::move(params)));
}

CopulaPtr survival_copula(CopulaPtr base) {
    // applying the transform twice gives the original map back; unwrap so
    // the involution is exact
    if (auto s = std::dynamic_pointer_cast<const SurvivalCopula>(base)) return s->base();
    return std::make_shared<SurvivalCopula>(std::move(base));
}

CopulaPtr transposed_copula(CopulaPtr base) {
    return std::make_shared<TransposedCopula>(std::move(base));
}

double conditional_quantile(const Copula& c, double u, double p) {
    if (!(u > 0.0 && u < 1.0 && p > 0.0 && p < 1.0))
        throw std::invalid_argument("conditional_quantile: u, p must be interior");
    if (auto closed = c.conditional_quantile_closed(u, p)) return *closed;

    double lo = 0.0, hi = 1.0;
    double flo = 0.0 - p, fhi = 1.0 - p; // d1(u,0)=0, d1(u,1)=1 by marginals
    if (fhi < 0.0)
        throw std::runtime_error("conditional_quantile: d1 failed to bracket");
    // Bracketing bisection with an Illinois-style secant step; keeps the
    // invariant d1(hi) >= p > d1(lo) so jumps and flats land on the left
    // edge of {d1 >= p}.
    for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        double mid;
        if (it % 3 == 2 || fhi == flo) {
            mid = 0.5 * (lo + hi);
        } else {
            mid = (lo * fhi - hi * flo) / (fhi - flo);
            if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
        }
        const double fm = c.d1(u, mid) - p;
        if (std::fabs(fm) < 1e-13 && fm >= 0.0) return mid;
        if (fm >= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return hi;
}

std::string sample_to_csv(const SamplePairs& s) {
    std::string out = "u,v\n";
    char buf[80];
    for (const auto& r : s.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.u, r.v);
        out += buf;
    }
    return out;
}

} // namespace copdep
