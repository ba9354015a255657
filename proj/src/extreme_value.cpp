#include "copdep/extreme_value.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "copdep/special_functions.hpp"

namespace copdep {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// p-norm style helper: (a^-d + b^-d)^(-1/d) computed through the smaller
// argument so extreme exponents cannot overflow.
double neg_power_mean(double a, double b, double d) {
    if (a <= 0.0 || b <= 0.0) return 0.0;
    const double p = std::min(a, b), q = std::max(a, b);
    const double r = std::pow(p / q, d); // in [0,1]
    return p * std::pow(1.0 + r, -1.0 / d);
}

PickandsFn make_pickands_impl(Family family, const CopulaSpec& s) {
    PickandsFn A;
    A.family = family;
    switch (family) {
        case Family::gumbel_hougaard: {
            const double th = s.param("theta");
            A.a = [th](double t) {
                if (t <= 0.0 || t >= 1.0) return 1.0;
                const double p = std::min(t, 1.0 - t), q = std::max(t, 1.0 - t);
                return q * std::pow(1.0 + std::pow(p / q, th), 1.0 / th);
            };
            A.a_prime = [th, a = A.a](double t) {
                const double at = a(t);
                return std::pow(t / at, th - 1.0) - std::pow((1.0 - t) / at, th - 1.0);
            };
            break;
        }
        case Family::galambos: {
            const double d = s.param("delta");
            A.a = [d](double t) {
                if (t <= 0.0 || t >= 1.0) return 1.0;
                return 1.0 - neg_power_mean(t, 1.0 - t, d);
            };
            A.a_prime = [d](double t) {
                const double p = std::min(t, 1.0 - t), q = std::max(t, 1.0 - t);
                const double K = std::pow(1.0 + std::pow(p / q, d), -(d + 1.0) / d);
                const double core = K * (std::pow(p / q, d + 1.0) - 1.0);
                return t <= 0.5 ? core : -core;
            };
            break;
        }
        case Family::cuadras_auge: {
            const double d = s.param("delta");
            A.a = [d](double t) { return 1.0 - d * std::min(t, 1.0 - t); };
            A.a_prime = [d](double t) { return t < 0.5 ? -d : d; };
            A.kink = 0.5;
            break;
        }
        case Family::marshall_olkin: {
            const double a1 = s.param("alpha1"), a2 = s.param("alpha2");
            A.a = [a1, a2](double t) {
                return std::max(1.0 - a1 * (1.0 - t), 1.0 - a2 * t);
            };
            A.a_prime = [a1, a2](double t) {
                // branch t < a1/(a1+a2) is the 1 - a2 t piece
                return (a1 + a2 == 0.0 || t < a1 / (a1 + a2)) ? -a2 : a1;
            };
            if (a1 + a2 > 0.0) A.kink = a1 / (a1 + a2);
            break;
        }
        case Family::bb5: {
            const double th = s.param("theta"), d = s.param("delta");
            A.a = [th, d](double t) {
                if (t <= 0.0 || t >= 1.0) return 1.0;
                const double x1 = std::pow(t, th);
                const double x2 = std::pow(1.0 - t, th);
                return std::pow(x1 + x2 - neg_power_mean(x1, x2, d), 1.0 / th);
            };
            A.a_prime = [th, d](double t) {
                const double x1 = std::pow(t, th);
                const double x2 = std::pow(1.0 - t, th);
                const double corr = neg_power_mean(x1, x2, d);
                const double g = x1 + x2 - corr;
                const double r1 = (x1 > 0.0 && corr > 0.0)
                                      ? std::pow(corr / x1, d + 1.0)
                                      : 0.0;
                const double r2 = (x2 > 0.0 && corr > 0.0)
                                      ? std::pow(corr / x2, d + 1.0)
                                      : 0.0;
                return std::pow(g, 1.0 / th - 1.0) *
                       (std::pow(t, th - 1.0) * (1.0 - r1) -
                        std::pow(1.0 - t, th - 1.0) * (1.0 - r2));
            };
            break;
        }
        case Family::joe_ev: {
            const double a1 = s.param("alpha1"), a2 = s.param("alpha2");
            const double d = s.param("delta");
            if (a1 == 0.0 || a2 == 0.0) {
                A.a = [](double) { return 1.0; };
                A.a_prime = [](double) { return 0.0; };
                break;
            }
            A.a = [a1, a2, d](double t) {
                if (t <= 0.0 || t >= 1.0) return 1.0;
                return 1.0 - neg_power_mean(a1 * (1.0 - t), a2 * t, d);
            };
            A.a_prime = [a1, a2, d](double t) {
                const double x = a1 * (1.0 - t), y = a2 * t;
                const double h = neg_power_mean(x, y, d);
                if (h <= 0.0) return 0.0;
                return a1 * std::pow(h / x, d + 1.0) - a2 * std::pow(h / y, d + 1.0);
            };
            break;
        }
        case Family::tawn: {
            const double a1 = s.param("alpha1"), a2 = s.param("alpha2");
            const double th = s.param("theta");
            A.a = [a1, a2, th](double t) {
                const double x = a1 * (1.0 - t), y = a2 * t;
                double nrm = 0.0;
                if (x > 0.0 && y > 0.0) {
                    const double p = std::min(x, y), q = std::max(x, y);
                    nrm = q * std::pow(1.0 + std::pow(p / q, th), 1.0 / th);
                } else {
                    nrm = std::max(x, y);
                }
                return (1.0 - a1) * (1.0 - t) + (1.0 - a2) * t + nrm;
            };
            A.a_prime = [a1, a2, th, a = A.a](double t) {
                const double x = a1 * (1.0 - t), y = a2 * t;
                if (x <= 0.0 && y <= 0.0) return 0.0;
                double nrm;
                if (x > 0.0 && y > 0.0) {
                    const double p = std::min(x, y), q = std::max(x, y);
                    nrm = q * std::pow(1.0 + std::pow(p / q, th), 1.0 / th);
                } else {
                    nrm = std::max(x, y);
                }
                const double dx = (x > 0.0) ? a1 * std::pow(x / nrm, th - 1.0) : 0.0;
                const double dy = (y > 0.0) ? a2 * std::pow(y / nrm, th - 1.0) : 0.0;
                return a1 - a2 + (dy - dx);
            };
            break;
        }
        case Family::husler_reiss: {
            const double d = s.param("delta");
            if (d == 0.0) {
                A.a = [](double) { return 1.0; };
                A.a_prime = [](double) { return 0.0; };
                break;
            }
            auto z = [d](double t) {
                return 1.0 / d + 0.5 * d * std::log(t / (1.0 - t));
            };
            A.a = [z](double t) {
                if (t <= 0.0 || t >= 1.0) return 1.0;
                return (1.0 - t) * sf::std_normal_cdf(z(1.0 - t)) +
                       t * sf::std_normal_cdf(z(t));
            };
            // t phi(z_t) = (1-t) phi(z_{1-t}), so the density terms cancel
            A.a_prime = [z](double t) {
                return sf::std_normal_cdf(z(t)) - sf::std_normal_cdf(z(1.0 - t));
            };
            break;
        }
        case Family::t_ev: {
            const double rho = s.param("rho"), nu = s.param("nu");
            auto z = [rho, nu](double t) {
                return std::sqrt((1.0 + nu) / (1.0 - rho * rho)) *
                       (std::pow(t / (1.0 - t), 1.0 / nu) - rho);
            };
            A.a = [z, nu](double t) {
                if (t <= 0.0 || t >= 1.0) return 1.0;
                return (1.0 - t) * sf::student_t_cdf(z(1.0 - t), nu + 1.0) +
                       t * sf::student_t_cdf(z(t), nu + 1.0);
            };
            A.a_prime = [a = A.a](double t) {
                const double h = 1e-6;
                const double lo = std::max(t - h, 1e-9);
                const double hi = std::min(t + h, 1.0 - 1e-9);
                return (a(hi) - a(lo)) / (hi - lo);
            };
            break;
        }
        default:
            throw std::invalid_argument("make_pickands: not an extreme-value family");
    }
    return A;
}

void validate_pickands(const PickandsFn& A) {
    const int n = 1000;
    double prev2 = A.a(0.0), prev1 = A.a(1.0 / n);
    if (std::fabs(prev2 - 1.0) > 1e-9 || std::fabs(A.a(1.0) - 1.0) > 1e-9)
        throw std::runtime_error("invalid pickands: A(0) or A(1) differs from 1");
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const double at = A.a(t);
        if (at > 1.0 + 1e-9 || at < std::max(t, 1.0 - t) - 1e-9)
            throw std::runtime_error("invalid pickands: bound violation");
    }
    for (int i = 2; i <= n; ++i) {
        const double t0 = static_cast<double>(i - 2) / n;
        const double t2 = static_cast<double>(i) / n;
        if (A.kink >= 0.0 && t0 < A.kink && A.kink < t2) {
            // piecewise-linear kink: second difference straddles it
            prev2 = prev1;
            prev1 = A.a(t2);
            continue;
        }
        const double cur = A.a(t2);
        if (cur - 2.0 * prev1 + prev2 < -1e-9)
            throw std::runtime_error("invalid pickands: convexity violation");
        prev2 = prev1;
        prev1 = cur;
    }
}

} // namespace

PickandsFn make_pickands(Family family, const CopulaSpec& spec) {
    PickandsFn A = make_pickands_impl(family, spec);
    validate_pickands(A);
    return A;
}

PickandsFn make_pickands(Family family,
                         std::vector<std::pair<std::string, double>> params) {
    return make_pickands(family, CopulaSpec(family, std::move(params)));
}

double ev_cdf(const PickandsFn& A, double u, double v) {
    if (u <= 0.0 || v <= 0.0) return 0.0;
    if (u >= 1.0) return v;
    if (v >= 1.0) return u;
    const double s = std::log(u) + std::log(v);
    const double t = std::log(v) / s;
    return std::exp(s * A.a(t));
}

bool pickands_leq(const PickandsFn& a1, const PickandsFn& a2, int grid) {
    for (int i = 1; i < grid - 1; ++i) {
        const double t = static_cast<double>(i) / (grid - 1);
        if (a1.a(t) < a2.a(t) - 1e-12) return false;
    }
    return true;
}

std::pair<double, double> ev_tails(const PickandsFn& A) {
    const double ah = A.a(0.5);
    const double lambda_l = (ah <= 0.5 + 1e-12) ? 1.0 : 0.0;
    return {lambda_l, 2.0 * (1.0 - ah)};
}

EvCopula::EvCopula(const CopulaSpec& spec) : pick_(make_pickands(spec.family, spec)) {
    spec_ = spec;
    switch (spec.family) {
        case Family::marshall_olkin:
            symmetric_ = spec.param("alpha1") == spec.param("alpha2");
            break;
        case Family::joe_ev:
        case Family::tawn:
            symmetric_ = spec.param("alpha1") == spec.param("alpha2");
            break;
        default: symmetric_ = true;
    }
}

double EvCopula::cdf(double u, double v) const { return ev_cdf(pick_, u, v); }

double EvCopula::d1(double u, double v) const {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    if (u <= 0.0 || u >= 1.0)
        throw std::domain_error("extreme-value d1: u on the boundary");
    const double s = std::log(u) + std::log(v);
    const double t = std::log(v) / s;
    const double c = std::exp(s * pick_.a(t));
    return std::clamp(c / u * (pick_.a(t) - t * pick_.a_prime(t)), 0.0, 1.0);
}

bool EvCopula::has_density() const {
    // the piecewise-linear Pickands families carry singular mass
    return pick_.kink < 0.0;
}

} // namespace copdep
