#include "middev/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "middev/errors.hpp"

namespace middev {

NoiseSpec make_noise(NoiseFamily family, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("noise: sigma must be finite and > 0");
    NoiseSpec spec;
    spec.family = family;
    spec.sigma = sigma;
    const double s4 = sigma * sigma * sigma * sigma;
    const double s8 = s4 * s4;
    switch (family) {
        case NoiseFamily::Gaussian:
            spec.m4 = 3.0 * s4;
            spec.var_sq = 2.0 * s4;
            spec.var_quart = 96.0 * s8;  // E V^8 - (E V^4)^2 = (105 - 9) sigma^8
            break;
        case NoiseFamily::Uniform:
            // V ~ U(-c,c), c = sigma sqrt(3): E V^{2k} = c^{2k}/(2k+1).
            spec.m4 = 1.8 * s4;                  // 9 sigma^4 / 5
            spec.var_sq = 0.8 * s4;              // 9/5 - 1
            spec.var_quart = (144.0 / 25.0) * s8;  // 81/9 - 81/25
            break;
        case NoiseFamily::ScaledTwoPointSymmetric:
            spec.m4 = s4;
            spec.var_sq = 0.0;
            spec.var_quart = 0.0;
            break;
    }
    spec.gaussian_integrable = true;  // all shipped families
    spec.chen_ledoux = true;          // Gaussian tails / bounded support
    return spec;
}

std::vector<double> sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
    Xoshiro256pp rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = draw_noise(spec, rng);
    return out;
}

double rate_L(const NoiseSpec& spec, double x) {
    if (spec.var_sq <= 0.0)
        throw DegenerateSecondMoment("rate_L: Var(V^2) = 0 for this family");
    return x * x / (2.0 * spec.var_sq);
}

double rate_Lambda(const NoiseSpec& spec, double x) {
    if (spec.var_quart <= 0.0)
        throw DegenerateFourthMoment("rate_Lambda: Var(V^4) = 0 for this family");
    return x * x / (2.0 * spec.var_quart);
}

double truncated_second_moment(const NoiseSpec& spec, double c) {
    if (c <= 0.0) return 0.0;
    const double s = spec.sigma;
    switch (spec.family) {
        case NoiseFamily::Gaussian: {
            // E[V^2 1{|V|<=c}] = sigma^2 [(2 Phi(b) - 1) - 2 b phi(b)], b = c/sigma.
            const double b = c / s;
            const double phi = std::exp(-0.5 * b * b) / 2.5066282746310005024;  // sqrt(2 pi)
            const double central = std::erf(b / 1.4142135623730950488);         // 2 Phi(b) - 1
            return s * s * (central - 2.0 * b * phi);
        }
        case NoiseFamily::Uniform: {
            const double cu = s * 1.7320508075688772935;  // support bound
            if (c >= cu) return s * s;
            // (1/(2cu)) * integral_{-c}^{c} v^2 dv = c^3/(3 cu)
            return c * c * c / (3.0 * cu);
        }
        case NoiseFamily::ScaledTwoPointSymmetric:
        default:
            return c >= s ? s * s : 0.0;
    }
}

std::string family_name(NoiseFamily family) {
    switch (family) {
        case NoiseFamily::Gaussian: return "gaussian";
        case NoiseFamily::Uniform: return "uniform";
        case NoiseFamily::ScaledTwoPointSymmetric: return "two_point";
    }
    return "gaussian";
}

NoiseFamily family_from_name(const std::string& name) {
    if (name == "gaussian") return NoiseFamily::Gaussian;
    if (name == "uniform") return NoiseFamily::Uniform;
    if (name == "two_point") return NoiseFamily::ScaledTwoPointSymmetric;
    throw std::invalid_argument("unknown noise family: " + name);
}

}  // namespace middev
