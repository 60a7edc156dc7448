#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "middev/rng.hpp"

namespace middev {

/// Shipped i.i.d. noise families. All are symmetric, mean zero, variance
/// sigma^2, and satisfy the Gaussian-integrability requirement
/// E exp(t0 V^2) < infinity for some t0 > 0 (bounded families trivially).
/// Heavy-tailed families are deliberately not constructible.
enum class NoiseFamily {
    Gaussian,                 ///< N(0, sigma^2)
    Uniform,                  ///< U(-c, c) with c = sigma*sqrt(3)
    ScaledTwoPointSymmetric,  ///< +-sigma with probability 1/2 each
};

/// Immutable description of a noise family with its exact moment functionals.
struct NoiseSpec {
    NoiseFamily family = NoiseFamily::Gaussian;
    double sigma = 1.0;      ///< standard deviation of V
    double m4 = 3.0;         ///< E V^4
    double var_sq = 2.0;     ///< E (V^2 - sigma^2)^2
    double var_quart = 96.0; ///< E (V^4 - E V^4)^2
    bool gaussian_integrable = true;
    bool chen_ledoux = true; ///< tail condition on V^4 (see params validator)
};

/// Builds a NoiseSpec with analytically exact moments.
///   Gaussian: m4 = 3 sigma^4, var_sq = 2 sigma^4, var_quart = 96 sigma^8.
///   Uniform(-c,c), c = sigma*sqrt(3) (so Var V = sigma^2), using
///     E V^{2k} = c^{2k}/(2k+1): m4 = (9/5) sigma^4, var_sq = (4/5) sigma^4,
///     var_quart = E V^8 - (E V^4)^2 = (144/25) sigma^8.
///   ScaledTwoPointSymmetric: V^2 is deterministic, so m4 = sigma^4 and
///     var_sq = var_quart = 0 (degenerate; blocked from rate evaluation).
[[nodiscard]] NoiseSpec make_noise(NoiseFamily family, double sigma);

/// n i.i.d. draws, a pure function of (spec, n, seed).
[[nodiscard]] std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n,
                                               std::uint64_t seed);

/// Rate function of the quadratic sum L_n = sum V_k^2: x^2 / (2 E(V^2-sigma^2)^2).
/// Throws DegenerateSecondMoment if var_sq = 0.
[[nodiscard]] double rate_L(const NoiseSpec& spec, double x);

/// Rate function of the quartic sum Lambda_n = sum V_k^4: x^2 / (2 E(V^4-EV^4)^2).
/// Throws DegenerateFourthMoment if var_quart = 0.
[[nodiscard]] double rate_Lambda(const NoiseSpec& spec, double x);

/// Analytic truncated second moment E[V^2 1{|V| <= c}].  Used as the exact
/// per-step conditional variance of truncated-noise martingale increments.
[[nodiscard]] double truncated_second_moment(const NoiseSpec& spec, double c);

[[nodiscard]] std::string family_name(NoiseFamily family);
[[nodiscard]] NoiseFamily family_from_name(const std::string& name);

/// One draw in a hot loop.  Gaussian uses the fixed inverse-CDF transform;
/// Uniform maps one raw draw onto (-c, c); the two-point family uses one bit.
[[nodiscard]] inline double draw_noise(const NoiseSpec& spec, Xoshiro256pp& rng) noexcept {
    switch (spec.family) {
        case NoiseFamily::Gaussian:
            return spec.sigma * inverse_normal_cdf(rng.next_open01());
        case NoiseFamily::Uniform:
            return spec.sigma * 1.7320508075688772935 * rng.next_symmetric11();
        case NoiseFamily::ScaledTwoPointSymmetric:
        default:
            return (rng.next_u64() >> 63) ? spec.sigma : -spec.sigma;
    }
}

}  // namespace middev
