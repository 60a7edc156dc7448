#pragma once

#include <cmath>
#include <cstdint>

// Deterministic random number generation.
//
// Requirements driving this design:
//   * replica streams must be derivable from (master_seed, replica_index)
//     without iterating a shared generator (counter-based derivation), so
//     replicas can run on any worker in any order and still reproduce;
//   * the uniform -> Gaussian transform must be a fixed documented map with
//     no rejection step, so a replica consumes a predictable number of raw
//     draws and produces bitwise-stable output for a given seed.
//
// Raw generator: xoshiro256++ (Blackman & Vigna), seeded by four successive
// SplitMix64 outputs of the 64-bit stream seed, which is itself
// SplitMix64(master_seed + (index+1) * golden-gamma): a pure function of
// (master_seed, index).
//
// Gaussian transform: Wichura's AS 241 rational approximation of the inverse
// normal CDF (PPND16, double precision), applied to one uniform draw in (0,1).

namespace middev {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output function: a bijective mixer on 64-bit words.
[[nodiscard]] inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based seed derivation: stream seed for a given replica index.
/// Pure function of (master_seed, index); no generator state is shared.
[[nodiscard]] inline std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                                      std::uint64_t index) noexcept {
    return mix64(master_seed + (index + 1) * kGoldenGamma);
}

/// xoshiro256++ pseudo-random generator (period 2^256 - 1).
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t stream_seed) noexcept {
        // Expand the 64-bit seed through SplitMix64 as recommended by the
        // generator's authors.
        std::uint64_t z = stream_seed;
        for (auto& word : s_) {
            z += kGoldenGamma;
            word = mix64(z);
        }
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // never all-zero
    }

    [[nodiscard]] std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double strictly inside (0,1): ((x >> 11) + 0.5) * 2^-53.
    /// Never returns 0 or 1, so it is safe to feed to the inverse CDF.
    [[nodiscard]] double next_open01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform double in (-1,1), symmetric about 0.
    [[nodiscard]] double next_symmetric11() noexcept {
        return 2.0 * next_open01() - 1.0;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

/// Inverse of the standard normal CDF (Wichura, algorithm AS 241, PPND16).
/// Accurate to about 1e-16 relative for p in (0,1).
[[nodiscard]] inline double inverse_normal_cdf(double p) noexcept {
    const double q = p - 0.5;
    if (q >= -0.425 && q <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                ((((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                       1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                     1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                   5.99832206555887937690e-1) * r + 1.0));
    }
    return (q < 0.0) ? -value : value;
}

/// One standard normal draw from one uniform draw.
[[nodiscard]] inline double next_standard_normal(Xoshiro256pp& rng) noexcept {
    return inverse_normal_cdf(rng.next_open01());
}

}  // namespace middev
