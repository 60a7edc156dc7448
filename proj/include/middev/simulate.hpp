#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "middev/params.hpp"

namespace middev {

/// One realized path of the double autoregression
///   X_k = theta_n X_{k-1} + eps_k,   eps_k = rho_n eps_{k-1} + V_k,
/// with X_0 = eps_0 = 0.  V is indexed 1..n (stored at V[k-1]); eps and X are
/// indexed 0..n.
struct Trajectory {
    ScheduleSample schedule;
    double sigma = 1.0;       ///< noise standard deviation of the generating model
    std::vector<double> V;    ///< V[k-1] = V_k, k = 1..n
    std::vector<double> eps;  ///< eps[k], k = 0..n
    std::vector<double> X;    ///< X[k],   k = 0..n

    [[nodiscard]] std::int64_t n() const noexcept {
        return static_cast<std::int64_t>(V.size());
    }
};

/// Simulates a trajectory with noise drawn from config.noise.
/// Deterministic in (config, seed).  Throws NonStationaryAtN via the schedule.
[[nodiscard]] Trajectory generate(const ModelConfig& config, std::uint64_t seed);

/// Same recursion applied to caller-supplied noise (injection hook for exact
/// small-case tests).  Throws LengthMismatch if V.size() != config.n.
[[nodiscard]] Trajectory generate_with_noise(const ModelConfig& config,
                                             std::vector<double> V);

/// CSV dump with header k,V,eps,X; the k = 0 row has an empty V column.
void dump_csv(const Trajectory& traj, std::ostream& out);

}  // namespace middev
