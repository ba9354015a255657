#include "copdep/elliptical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "copdep/quadrature.hpp"
#include "copdep/special_functions.hpp"

namespace copdep {

double binormal_cdf(double x, double y, double rho) {
    if (std::isnan(x) || std::isnan(y)) return std::numeric_limits<double>::quiet_NaN();
    if (rho >= 1.0) return sf::std_normal_cdf(std::min(x, y));
    if (rho <= -1.0)
        return std::max(sf::std_normal_cdf(x) + sf::std_normal_cdf(y) - 1.0, 0.0);
    if (x == -std::numeric_limits<double>::infinity() ||
        y == -std::numeric_limits<double>::infinity())
        return 0.0;
    if (x == std::numeric_limits<double>::infinity()) return sf::std_normal_cdf(y);
    if (y == std::numeric_limits<double>::infinity()) return sf::std_normal_cdf(x);

    // Phi2(x,y;rho) = Phi(x)Phi(y) + (1/2pi) int_0^{asin rho}
    //                 exp(-(x^2+y^2-2xy sin t)/(2 cos^2 t)) dt
    // (derivative-in-rho identity with r = sin t; the substitution removes
    // the 1/sqrt(1-r^2) endpoint singularity so fixed Gauss-Legendre is
    // accurate to ~1e-14 for |rho| <= 0.9999)
    const double a = std::asin(rho);
    const auto& gl = quad::gauss_legendre(48);
    double s = 0.0;
    const double c = 0.5 * a, h = 0.5 * a;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = c + h * gl.nodes[i];
        const double st = std::sin(t);
        const double ct2 = 1.0 - st * st;
        s += gl.weights[i] * std::exp(-(x * x + y * y - 2.0 * x * y * st) / (2.0 * ct2));
    }
    s *= h / (2.0 * M_PI);
    return std::clamp(sf::std_normal_cdf(x) * sf::std_normal_cdf(y) + s, 0.0, 1.0);
}

double gaussian_cdf(double rho, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    if (rho >= 1.0) return std::min(u, v);
    if (rho <= -1.0) return std::max(u + v - 1.0, 0.0);
    return binormal_cdf(sf::std_normal_quantile(u), sf::std_normal_quantile(v), rho);
}

namespace {

// P(T1<=x, T2<=y) for the bivariate t: integrate the exact conditional
// T_{nu+1} distribution against the t_nu density of the first coordinate.
double bit_cdf(double x, double y, double rho, double nu) {
    const double omr2 = 1.0 - rho * rho;
    auto cond = [&](double s) {
        const double scale = std::sqrt((nu + 1.0) / (omr2 * (nu + s * s)));
        return sf::student_t_cdf((y - rho * s) * scale, nu + 1.0);
    };
    // truncate the lower tail where T_nu(s) < 1e-12
    const double lo = sf::student_t_quantile(1e-12, nu);
    if (x <= lo) return 0.0;
    auto f = [&](double s) { return sf::student_t_pdf(s, nu) * cond(s); };
    return quad::adaptive_gk(f, lo, x, 1e-11, 1e-10);
}

} // namespace

double student_t_cdf2(double rho, double nu, double u, double v) {
    if (!(nu > 0.0)) throw std::invalid_argument("student_t_cdf2: nu must be positive");
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    if (rho >= 1.0) return std::min(u, v);
    if (rho <= -1.0) return std::max(u + v - 1.0, 0.0);
    const double x = sf::student_t_quantile(u, nu);
    const double y = sf::student_t_quantile(v, nu);
    return std::clamp(bit_cdf(x, y, rho, nu), 0.0, 1.0);
}

double laplace_marginal_cdf(double x) {
    // Laplace with unit variance (scale 1/sqrt 2), the marginal of the
    // exponential scale mixture sqrt(W) Z
    if (x < 0.0) return 0.5 * std::exp(M_SQRT2 * x);
    return 1.0 - 0.5 * std::exp(-M_SQRT2 * x);
}

double laplace_marginal_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    if (p < 0.5) return std::log(2.0 * p) / M_SQRT2;
    return -std::log(2.0 * (1.0 - p)) / M_SQRT2;
}

double laplace_cdf(double rho, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    if (rho >= 1.0) return std::min(u, v);
    if (rho <= -1.0) return std::max(u + v - 1.0, 0.0);
    const double x = laplace_marginal_quantile(u);
    const double y = laplace_marginal_quantile(v);
    // P(X<=x, Y<=y) = E_W[Phi2(x/sqrt W, y/sqrt W; rho)], W ~ Exp(1),
    // with W = -ln(1-r) so the weight is uniform on (0,1)
    auto f = [&](double r) {
        const double w = -std::log1p(-r);
        const double rs = 1.0 / std::sqrt(w);
        return binormal_cdf(x * rs, y * rs, rho);
    };
    return std::clamp(quad::adaptive_gk(f, 0.0, 1.0, 1e-8, 1e-8, 24), 0.0, 1.0);
}

EllipticalSpec elliptical_spec(Family f, double rho, double nu) {
    EllipticalSpec s;
    s.rho = rho;
    s.nu = nu;
    switch (f) {
        case Family::gaussian:
            s.log_gen_prime = [](double) { return -0.5; };
            s.log_gen_double_prime = [](double) { return 0.0; };
            break;
        case Family::student_t:
            if (!(nu > 0.0))
                throw std::invalid_argument("elliptical_spec: nu must be positive");
            s.log_gen_prime = [nu](double t) { return -(nu + 2.0) / (2.0 * (nu + t)); };
            s.log_gen_double_prime = [nu](double t) {
                return (nu + 2.0) / (2.0 * (nu + t) * (nu + t));
            };
            break;
        case Family::laplace:
            // g(t) = K_0(sqrt(2t))/pi
            s.log_gen_prime = [](double t) {
                const double sq = std::sqrt(2.0 * t);
                return -sf::bessel_k(1.0, sq) / (sq * sf::bessel_k(0.0, sq));
            };
            s.log_gen_double_prime = [](double t) {
                const double sq = std::sqrt(2.0 * t);
                const double k0 = sf::bessel_k(0.0, sq);
                const double k1 = sf::bessel_k(1.0, sq);
                return (sq * k0 * k0 + 2.0 * k0 * k1 - sq * k1 * k1) /
                       (sq * sq * sq * k0 * k0);
            };
            break;
        default:
            throw std::invalid_argument("elliptical_spec: not an elliptical family");
    }
    return s;
}

bool elliptical_tp2_criterion(const EllipticalSpec& spec) {
    if (!spec.log_gen_prime || !spec.log_gen_double_prime)
        throw std::runtime_error("elliptical_tp2_criterion: derivative hooks absent");
    const double rho = spec.rho;
    if (!(rho > -1.0 && rho < 1.0)) return false;
    double inf_r = std::numeric_limits<double>::infinity();
    double sup_r = -std::numeric_limits<double>::infinity();
    const int n = 400;
    for (int i = 0; i < n; ++i) {
        // log-spaced t over (1e-6, 1e4)
        const double t = std::exp(std::log(1e-6) + (std::log(1e4) - std::log(1e-6)) *
                                                       i / (n - 1.0));
        const double p1 = spec.log_gen_prime(t);
        if (!(p1 < 0.0)) continue; // T = {t : phi'(t) < 0}
        const double r = t * spec.log_gen_double_prime(t) / p1;
        inf_r = std::min(inf_r, r);
        sup_r = std::max(sup_r, r);
    }
    if (!std::isfinite(inf_r)) return false;
    const double tol = 1e-12;
    return -rho / (1.0 + rho) <= inf_r + tol && sup_r <= rho / (1.0 - rho) + tol;
}

GaussianCopula::GaussianCopula(const CopulaSpec& spec) : rho_(spec.param("rho")) {
    spec_ = spec;
}

double GaussianCopula::cdf(double u, double v) const { return gaussian_cdf(rho_, u, v); }

double GaussianCopula::d1(double u, double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    if (u <= 0.0 || u >= 1.0) throw std::domain_error("gaussian d1: u on the boundary");
    if (rho_ >= 1.0) return v >= u ? 1.0 : 0.0;
    if (rho_ <= -1.0) return v >= 1.0 - u ? 1.0 : 0.0;
    const double x = sf::std_normal_quantile(u);
    const double y = sf::std_normal_quantile(v);
    return sf::std_normal_cdf((y - rho_ * x) / std::sqrt(1.0 - rho_ * rho_));
}

double GaussianCopula::density(double u, double v) const {
    const double x = sf::std_normal_quantile(u);
    const double y = sf::std_normal_quantile(v);
    const double o = 1.0 - rho_ * rho_;
    return std::exp(-(rho_ * rho_ * (x * x + y * y) - 2.0 * rho_ * x * y) / (2.0 * o)) /
           std::sqrt(o);
}

bool GaussianCopula::has_density() const { return std::fabs(rho_) < 1.0; }

StudentTCopula::StudentTCopula(const CopulaSpec& spec)
    : rho_(spec.param("rho")), nu_(spec.param("nu")) {
    spec_ = spec;
}

double StudentTCopula::cdf(double u, double v) const {
    return student_t_cdf2(rho_, nu_, u, v);
}

double StudentTCopula::d1(double u, double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    if (u <= 0.0 || u >= 1.0) throw std::domain_error("student-t d1: u on the boundary");
    if (rho_ >= 1.0) return v >= u ? 1.0 : 0.0;
    if (rho_ <= -1.0) return v >= 1.0 - u ? 1.0 : 0.0;
    const double x = sf::student_t_quantile(u, nu_);
    const double y = sf::student_t_quantile(v, nu_);
    const double scale =
        std::sqrt((nu_ + 1.0) / ((1.0 - rho_ * rho_) * (nu_ + x * x)));
    return sf::student_t_cdf((y - rho_ * x) * scale, nu_ + 1.0);
}

double StudentTCopula::density(double u, double v) const {
    const double x = sf::student_t_quantile(u, nu_);
    const double y = sf::student_t_quantile(v, nu_);
    const double o = 1.0 - rho_ * rho_;
    const double q = (x * x - 2.0 * rho_ * x * y + y * y) / o;
    const double ln_c2 = std::lgamma(0.5 * nu_ + 1.0) - std::lgamma(0.5 * nu_) -
                         std::log(nu_ * M_PI) - 0.5 * std::log(o) -
                         (0.5 * nu_ + 1.0) * std::log1p(q / nu_);
    return std::exp(ln_c2) / (sf::student_t_pdf(x, nu_) * sf::student_t_pdf(y, nu_));
}

bool StudentTCopula::has_density() const { return std::fabs(rho_) < 1.0; }

LaplaceCopula::LaplaceCopula(const CopulaSpec& spec) : rho_(spec.param("rho")) {
    spec_ = spec;
}

double LaplaceCopula::cdf(double u, double v) const { return laplace_cdf(rho_, u, v); }

bool LaplaceCopula::has_density() const { return std::fabs(rho_) < 1.0; }

} // namespace copdep
