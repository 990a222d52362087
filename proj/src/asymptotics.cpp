#include "iht/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace iht {

namespace {

void check_unit(double v, const char* name, bool allow_one) {
    const bool ok = v > 0.0 && (allow_one ? v <= 1.0 : v < 1.0);
    if (!ok)
        throw std::invalid_argument(std::string(name) + " = " + std::to_string(v) +
                                    " is outside the valid range");
}

// Composite Simpson on the smooth theta-integrand. With x = lm + w sin^2 the
// factors sin^2/x and cos^2/(1-x) stay bounded even when the support touches
// 0 (lm = 0) or 1 (lp = 1), written so that neither expression cancels.
double simpson(const AsymptoticParams& params, double ta, double tb, std::size_t panels) {
    const auto [lm, lp] = esd_support(params);
    const double w = lp - lm;
    const double head = 1.0 - lp;  // >= 0
    auto f = [&](double t) {
        const double st2 = std::sin(t) * std::sin(t);
        const double ct2 = std::cos(t) * std::cos(t);
        const double a = lm == 0.0 ? 1.0 / w : st2 / (lm + w * st2);
        const double b = head == 0.0 ? 1.0 / w : ct2 / (head + w * ct2);
        return w * w / (M_PI * params.p) * a * b;
    };
    const double h = (tb - ta) / double(2 * panels);
    double s = f(ta) + f(tb);
    for (std::size_t i = 1; i < 2 * panels; ++i) s += f(ta + h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace

AsymptoticParams make_params(double rho_r, double rho_s) {
    check_unit(rho_r, "rho_r", true);
    check_unit(rho_s, "rho_s", true);
    const double one_minus = 1.0 - rho_r;
    return {rho_r, rho_s, 1.0 - rho_s, one_minus * one_minus};
}

AsymptoticParams make_params_pq(double p, double q) {
    check_unit(p, "p", false);
    check_unit(q, "q", false);
    return {1.0 - std::sqrt(q), 1.0 - p, p, q};
}

double relative_rank(std::size_t n1, std::size_t n2, std::size_t r) {
    if (n1 == 0 || n2 == 0 || r < 1 || r > std::min(n1, n2))
        throw std::invalid_argument("relative_rank: rank out of range");
    return 1.0 - std::sqrt((1.0 - double(r) / double(n1)) * (1.0 - double(r) / double(n2)));
}

double sampling_rate(std::size_t n1, std::size_t n2, std::size_t s) {
    if (n1 == 0 || n2 == 0 || s < 1 || s > n1 * n2)
        throw std::invalid_argument("sampling_rate: s out of range");
    return double(s) / (double(n1) * double(n2));
}

double asymptotic_rate(const AsymptoticParams& params) {
    const double q = params.q;           // (1-rho_r)^2
    const double boundary = 1.0 - q;     // dof line: rho_s = 1 - (1-rho_r)^2
    if (params.rho_s <= boundary) return 1.0;
    double a = q * params.rho_s;
    double b = params.rho_r * (2.0 - params.rho_r) * (1.0 - params.rho_s);
    if (a < 0.0 && a > -1e-14) a = 0.0;
    if (b < 0.0 && b > -1e-14) b = 0.0;
    const double d = std::sqrt(a) - std::sqrt(b);
    return 1.0 - d * d;
}

std::pair<double, double> esd_support(const AsymptoticParams& params) {
    const double p = params.p, q = params.q;
    check_unit(p, "p", false);
    check_unit(q, "q", false);
    const double u = std::sqrt(q * (1.0 - p));
    const double v = std::sqrt(p * (1.0 - q));
    const double lm = (u - v) * (u - v);
    const double lp = (u + v) * (u + v);
    return {lm, lp};
}

double limiting_density(const AsymptoticParams& params, double x) {
    if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument("limiting_density: x must lie in the open interval (0,1)");
    const auto [lm, lp] = esd_support(params);
    if (x < lm || x > lp) return 0.0;
    const double num = std::sqrt(std::max(0.0, (lp - x) * (x - lm)));
    return num / (2.0 * M_PI * params.p * x * (1.0 - x));
}

LimitingEsd limiting_esd(const AsymptoticParams& params) {
    const auto [lm, lp] = esd_support(params);
    const double p = params.p, q = params.q;
    return {std::max(0.0, 1.0 - q / p), std::max(0.0, (p + q - 1.0) / p), lm, lp};
}

double continuous_mass(const AsymptoticParams& params, double a, double b) {
    const auto [lm, lp] = esd_support(params);
    a = std::max(a, lm);
    b = std::min(b, lp);
    if (a >= b) return 0.0;
    const double width = lp - lm;
    if (width <= 0.0) return 0.0;
    auto theta = [&](double x) {
        const double u = std::sqrt(std::min(1.0, std::max(0.0, (x - lm) / width)));
        return std::asin(u);
    };
    return simpson(params, theta(a), theta(b), 256);
}

double continuous_mass(const AsymptoticParams& params) {
    const auto [lm, lp] = esd_support(params);
    return continuous_mass(params, lm, lp);
}

}  // namespace iht
