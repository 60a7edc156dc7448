#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "middev/errors.hpp"
#include "middev/noise.hpp"
#include "middev/rates.hpp"
#include "middev/rng.hpp"

using namespace middev;

TEST_CASE("canonical matrices at gamma = (-1,-1), sigma = 1") {
    const RateModel m = build_rate_model(-1.0, -1.0, 1.0);
    CHECK(m.g == -2.0);
    // All entries are dyadic rationals here, so compare exactly.
    CHECK(m.Gamma[0][0] == 1.0);
    CHECK(m.Gamma[0][1] == 0.0);
    CHECK(m.Gamma[1][0] == 0.0);
    CHECK(m.Gamma[1][1] == 4.0);
    CHECK(m.Theta[0][0] == 0.25);
    CHECK(m.Theta[0][1] == 0.25);
    CHECK(m.Theta[1][0] == 0.25);
    CHECK(m.Theta[1][1] == 0.5);
    CHECK(m.ThetaTilde[0][0] == 0.25);
    CHECK(m.ThetaTilde[0][1] == 0.25);
    CHECK(m.ThetaTilde[1][1] == 0.5);
    CHECK(m.Upsilon[0][0] == 2.0);
    CHECK(m.Upsilon[0][1] == 0.0);
    CHECK(m.Upsilon[1][0] == -4.0);
    CHECK(m.Upsilon[1][1] == 4.0);
    CHECK(m.UpsilonTilde[0] == 2.0);
    CHECK(m.UpsilonTilde[1] == -2.0);
}

TEST_CASE("scalar rate values at the canonical parameters") {
    const RateModel m = build_rate_model(-1.0, -1.0, 1.0);
    CHECK(eval_rate(m, RateName::I_theta, 1.0) == 0.5);
    CHECK(eval_rate(m, RateName::I_rho, 1.0) == 0.125);
    CHECK(eval_rate(m, RateName::J, 1.0) == 0.5);
    CHECK(eval_rate(m, RateName::I_d, 4.0) == 0.5);
    CHECK(eval_rate(m, RateName::J_d, 2.0) == 0.5);
    CHECK(eval_rate(m, RateName::I_L, 2.0) == 1.0);  // Gaussian var_sq = 2
    CHECK(eval_rate(m, RateName::I_Lambda, 4.0) ==
          doctest::Approx(16.0 / 192.0).epsilon(1e-15));
    for (const RateName r : {RateName::I_theta, RateName::I_rho, RateName::J,
                             RateName::I_d, RateName::J_d, RateName::I_L,
                             RateName::I_Lambda}) {
        CHECK(eval_rate(m, r, 0.0) == 0.0);
        CHECK(eval_rate(m, r, 1.3) == eval_rate(m, r, -1.3));  // even functions
        CHECK(eval_rate(m, r, 2.0) > eval_rate(m, r, 1.0));
    }
}

TEST_CASE("joint rate decomposes along the diagonal of Gamma") {
    const RateModel m = build_rate_model(-1.0, -1.0, 1.0);
    CHECK(eval_joint(m, 1.0, 0.0) == 0.5);
    CHECK(eval_joint(m, 0.0, 2.0) == 0.5);
    CHECK(eval_joint(m, 1.0, 2.0) == 1.0);
    CHECK(eval_joint(m, 0.0, 0.0) == 0.0);
    CHECK_THROWS_AS((void)eval_rate(m, RateName::I_joint, 1.0), std::invalid_argument);
}

TEST_CASE("regime guards on construction") {
    CHECK_THROWS_AS((void)build_rate_model(0.0, -1.0, 1.0), InvalidRegime);
    CHECK_THROWS_AS((void)build_rate_model(-1.0, 0.5, 1.0), InvalidRegime);
    CHECK_THROWS_AS((void)build_rate_model(-1.0, -1.0, 0.0), InvalidRegime);
    CHECK_THROWS_AS((void)build_rate_model(-1.0, -1.0, -2.0), InvalidRegime);
    CHECK_NOTHROW((void)build_rate_model(-1e-6, -3.0, 0.1));
}

TEST_CASE("statistic-to-rate dispatch per regime") {
    CHECK(rate_for_statistic(Case::I, "theta") == RateName::I_theta);
    CHECK(rate_for_statistic(Case::I, "rho") == RateName::I_rho);
    CHECK(rate_for_statistic(Case::I, "d") == RateName::I_d);
    CHECK(rate_for_statistic(Case::II, "theta") == RateName::J);
    CHECK(rate_for_statistic(Case::II, "rho") == RateName::J);
    CHECK(rate_for_statistic(Case::II, "d") == RateName::J_d);
    CHECK(rate_for_statistic(Case::I, "L") == RateName::I_L);
    CHECK(rate_for_statistic(Case::II, "L") == RateName::I_L);
    CHECK(rate_for_statistic(Case::I, "Lambda") == RateName::I_Lambda);
    CHECK(rate_for_statistic(Case::II, "Lambda") == RateName::I_Lambda);
    CHECK_THROWS_AS((void)rate_for_statistic(Case::I, "durbin"), std::invalid_argument);
}

TEST_CASE("rate names round-trip") {
    for (const RateName r : {RateName::I_theta, RateName::I_rho, RateName::I_joint,
                             RateName::J, RateName::I_d, RateName::J_d, RateName::I_L,
                             RateName::I_Lambda}) {
        CHECK(rate_from_name(rate_name(r)) == r);
    }
    CHECK_THROWS_AS((void)rate_from_name("I_bogus"), std::invalid_argument);
}

TEST_CASE("classical stationary variance formulas") {
    CHECK(stationary_theta_variance(0.5, 0.0) == 0.75);
    CHECK(stationary_theta_variance(0.0, 0.0) == 1.0);
    CHECK(stationary_rho_variance(0.5, 0.0) == 0.25);
    CHECK(stationary_rho_variance(0.0, 0.0) == 0.0);
    // The first-stage formula is symmetric under swapping theta and rho.
    CHECK(stationary_theta_variance(0.3, 0.8) ==
          doctest::Approx(stationary_theta_variance(0.8, 0.3)).epsilon(1e-15));
    CHECK(stationary_theta_variance(0.95, 0.95) > 0.0);
    CHECK(stationary_rho_variance(0.9, -0.9) > 0.0);
}

TEST_CASE("Upsilon Theta Upsilon^T = Gamma on random regimes") {
    Xoshiro256pp rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        const double g1 = -0.1 - 2.9 * rng.next_open01();
        const double g2 = -0.1 - 2.9 * rng.next_open01();
        const double sigma = 0.3 + 2.7 * rng.next_open01();
        const RateModel m = build_rate_model(g1, g2, sigma);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                double v = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        v += m.Upsilon[i][a] * m.Theta[a][b] * m.Upsilon[j][b];
                const double rel = std::fabs(v - m.Gamma[i][j]) /
                                   std::max(1.0, std::fabs(m.Gamma[i][j]));
                CHECK(rel <= 1e-10);
            }
        }
        // Scalar analogue for the oscillating pair.
        const double c = 2.0 * m.UpsilonTilde[0] * m.UpsilonTilde[0] * m.ThetaTilde[0][0];
        const double x = 0.25 + 3.0 * rng.next_open01();
        CHECK(eval_rate(m, RateName::J, x) * c == doctest::Approx(x * x).epsilon(1e-12));
    }
}

TEST_CASE("consistency report passes and has the documented shape") {
    for (const auto& params : {std::array<double, 3>{-1.0, -1.0, 1.0},
                               std::array<double, 3>{-0.5, -1.5, 0.8}}) {
        const RateModel m = build_rate_model(params[0], params[1], params[2]);
        const ConsistencyReport rep = consistency_check(m);
        CHECK(rep.all_pass());
        REQUIRE(rep.checks.size() == 11);  // 3 algebraic + 4 x (trend, final)
        CHECK(rep.checks[0].name == "Upsilon*Theta*Upsilon^T = Gamma");
        CHECK(rep.checks[1].name == "J(x)*2*UpsilonTilde1^2*ThetaTilde11 = x^2");
        CHECK(rep.checks[2].name == "I_d(x)=I_rho(x/2), J_d(x)=J(x/2)");
        REQUIRE(rep.matching.size() == 12);  // 4 definitions x 3 kappas
        CHECK(rep.matching[0].name == "caseI kappa^3 sigma_theta^2 -> Gamma11");
        CHECK(rep.matching[0].kappa == 1e2);
        CHECK(rep.matching[2].kappa == 1e4);
        // Finite-kappa error shrinks along each kappa ladder.
        for (int def = 0; def < 4; ++def) {
            CHECK(rep.matching[3 * def + 1].rel_error < rep.matching[3 * def].rel_error);
            CHECK(rep.matching[3 * def + 2].rel_error <
                  rep.matching[3 * def + 1].rel_error);
            CHECK(rep.matching[3 * def + 2].rel_error < 5e-3);
        }
    }
}

TEST_CASE("variance matching values at kappa = 1000") {
    // kappa^3 sigma_theta^2 with theta = 1 - 1/kappa, rho = 1 - 1/kappa should
    // approach Gamma11 = 1 with O(1/kappa) error.
    const RateModel m = build_rate_model(-1.0, -1.0, 1.0);
    const ConsistencyReport rep = consistency_check(m);
    const MatchingLine& line = rep.matching[1];  // caseI theta def, kappa = 1e3
    CHECK(line.kappa == 1e3);
    CHECK(line.target == 1.0);
    CHECK(line.value == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("degenerate noise moments surface through the noise rates") {
    const NoiseSpec tp = make_noise(NoiseFamily::ScaledTwoPointSymmetric, 1.0);
    const RateModel m = build_rate_model(-1.0, -1.0, 1.0, tp);
    CHECK_THROWS_AS((void)eval_rate(m, RateName::I_L, 1.0), DegenerateSecondMoment);
    CHECK_THROWS_AS((void)eval_rate(m, RateName::I_Lambda, 1.0), DegenerateFourthMoment);
    // Estimator rates do not touch the noise moments.
    CHECK(eval_rate(m, RateName::I_theta, 1.0) == 0.5);
}
