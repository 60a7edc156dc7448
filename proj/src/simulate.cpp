#include "middev/simulate.hpp"

#include <cstdio>
#include <ostream>

#include "middev/errors.hpp"

namespace middev {

namespace {

Trajectory advance(const ModelConfig& config, std::vector<double> V) {
    Trajectory traj;
    traj.schedule = sample_schedule(config);
    traj.sigma = config.noise.sigma;
    const std::size_t n = V.size();
    traj.V = std::move(V);
    traj.eps.assign(n + 1, 0.0);
    traj.X.assign(n + 1, 0.0);
    const double theta = traj.schedule.theta_n;
    const double rho = traj.schedule.rho_n;
    for (std::size_t k = 1; k <= n; ++k) {
        traj.eps[k] = rho * traj.eps[k - 1] + traj.V[k - 1];
        traj.X[k] = theta * traj.X[k - 1] + traj.eps[k];
    }
    return traj;
}

}  // namespace

Trajectory generate(const ModelConfig& config, std::uint64_t seed) {
    config.validate();
    return advance(config, sample_noise(config.noise, static_cast<std::size_t>(config.n), seed));
}

Trajectory generate_with_noise(const ModelConfig& config, std::vector<double> V) {
    config.validate();
    if (static_cast<std::int64_t>(V.size()) != config.n)
        throw LengthMismatch("generate_with_noise: V.size() != config.n");
    return advance(config, std::move(V));
}

void dump_csv(const Trajectory& traj, std::ostream& out) {
    out << "k,V,eps,X\n";
    char line[128];
    std::snprintf(line, sizeof line, "0,,%.17g,%.17g\n", traj.eps[0], traj.X[0]);
    out << line;
    for (std::int64_t k = 1; k <= traj.n(); ++k) {
        std::snprintf(line, sizeof line, "%lld,%.17g,%.17g,%.17g\n",
                      static_cast<long long>(k), traj.V[static_cast<std::size_t>(k - 1)],
                      traj.eps[static_cast<std::size_t>(k)], traj.X[static_cast<std::size_t>(k)]);
        out << line;
    }
}

}  // namespace middev
