#pragma once

#include "copdep/copula.hpp"

namespace copdep {

class IndependenceCopula : public Copula {
public:
    IndependenceCopula();
    double cdf(double u, double v) const override { return u * v; }
    double d1(double u, double v) const override {
        (void)u;
        return v;
    }
    double density(double, double) const override { return 1.0; }
    std::optional<double> conditional_quantile_closed(double, double p) const override {
        return p;
    }
};

// alpha M + (1 - alpha - beta) Pi + beta W (Mardia is the special case
// alpha = theta^2(1+theta)/2, beta = theta^2(1-theta)/2).
class FrechetCopula : public Copula {
public:
    FrechetCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override;
    double density(double u, double v) const override;
    bool has_density() const override;

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    double alpha_, beta_;
};

class FgmCopula : public Copula {
public:
    FgmCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override;
    double density(double u, double v) const override;

private:
    double theta_;
};

class PlackettCopula : public Copula {
public:
    PlackettCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override;
    double density(double u, double v) const override;

private:
    double theta_;
};

class RafteryCopula : public Copula {
public:
    RafteryCopula(const CopulaSpec& spec);
    double cdf(double u, double v) const override;
    double d1(double u, double v) const override;
    bool has_density() const override;

private:
    double delta_;
};

} // namespace copdep
