#pragma once

#include <cstddef>
#include <utility>

namespace iht {

/// Dimension-free parameters of the large-scale limit: relative rank rho_r,
/// sampling rate rho_s, and the induced truncation ratios p = 1 - rho_s
/// (row ratio) and q = (1 - rho_r)^2 (column ratio).
struct AsymptoticParams {
    double rho_r;
    double rho_s;
    double p;
    double q;
};

/// Validated constructor from (rho_r, rho_s) in (0,1].
AsymptoticParams make_params(double rho_r, double rho_s);

/// Validated constructor from raw truncation ratios (p,q) in (0,1).
AsymptoticParams make_params_pq(double p, double q);

/// rho_r = 1 - sqrt((1 - r/n1)(1 - r/n2)).
double relative_rank(std::size_t n1, std::size_t n2, std::size_t r);

/// rho_s = s / (n1 n2).
double sampling_rate(std::size_t n1, std::size_t n2, std::size_t s);

/// Large-scale limit of the linear rate. Returns 1 on and below the
/// degrees-of-freedom boundary rho_s <= 1 - (1-rho_r)^2.
double asymptotic_rate(const AsymptoticParams& params);

/// Support edges lambda-+ = (sqrt(q(1-p)) -+ sqrt(p(1-q)))^2 of the limiting
/// spectral density, ordered.
std::pair<double, double> esd_support(const AsymptoticParams& params);

/// Continuous part of the limiting density at x in (0,1); the point masses
/// are reported separately by limiting_esd. Throws for x outside (0,1).
double limiting_density(const AsymptoticParams& params, double x);

/// Atoms and support edges of the limiting spectral distribution.
struct LimitingEsd {
    double mass_at_0;
    double mass_at_1;
    double lambda_minus;
    double lambda_plus;
};
LimitingEsd limiting_esd(const AsymptoticParams& params);

/// Integral of the continuous density over [a,b] (clipped to the support),
/// via the x = lambda- + (lambda+ - lambda-) sin^2(theta) substitution that
/// removes the inverse-square-root edge singularities.
double continuous_mass(const AsymptoticParams& params, double a, double b);

/// Total continuous mass; mass_at_0 + mass_at_1 + continuous = 1.
double continuous_mass(const AsymptoticParams& params);

}  // namespace iht
