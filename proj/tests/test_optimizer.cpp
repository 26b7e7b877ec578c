#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "optfwer/optimizer.hpp"
#include "optfwer/parallel.hpp"

using namespace optfwer;

namespace {
const AlternativeModel kBeta = AlternativeModel::beta(0.5);

OptimizerConfig quick_config(double alpha = 0.05, std::int64_t n_opt = 20000,
                             std::uint64_t seed = 7) {
    OptimizerConfig cfg;
    cfg.alpha = alpha;
    cfg.n_opt = n_opt;
    cfg.seed = seed;
    return cfg;
}
}  // namespace

TEST_CASE("bisect_root on a synthetic monotone target") {
    // 1/(1 + mu) = 0.2 at mu = 4.
    const auto target = [](double mu) { return 1.0 / (1.0 + mu); };
    const double root = bisect_root(target, 0.2, 1e-4, 50.0);
    CHECK(root == doctest::Approx(4.0).epsilon(1e-4));
    // Constraint slack at zero.
    CHECK(bisect_root(target, 1.0, 1e-4, 50.0) == 0.0);
    // Root beyond the initial bound: doubling finds it.
    const auto far = [](double mu) { return 200.0 / (200.0 + mu); };
    const double far_root = bisect_root(far, 0.5, 1e-6, 1.0);
    CHECK(far_root == doctest::Approx(200.0).epsilon(1e-6));
}

TEST_CASE("bisect_root reports bracket failure") {
    const auto stuck = [](double) { return 1.0; };
    CHECK_THROWS_AS((void)bisect_root(stuck, 0.5, 1e-4, 1.0), std::runtime_error);
}

TEST_CASE("bisect_coordinate hits the level on its own batch") {
    const int K = 3;
    const OptimizerConfig cfg = quick_config(0.05, 50000);
    for (int gamma : {0, 1, 2}) {
        const LabeledSampleBatch batch = make_batch(kBeta, K, gamma, cfg.n_opt, cfg.seed ^ gamma);
        std::vector<double> mu(K, 0.0);
        const double root = bisect_coordinate(gamma, mu, batch, cfg);
        CHECK(root > 0.0);  // F(0) = 1 > alpha
        mu[static_cast<std::size_t>(gamma)] = root;
        const double f = fwer_hat(batch, mu);
        CHECK(f >= cfg.alpha - 0.005);
        CHECK(f <= cfg.alpha + 0.005);
    }
}

TEST_CASE("alpha = 1 fits a zero vector in one iteration") {
    const FitResult result = fit(kBeta, 3, quick_config(1.0, 2000));
    CHECK(result.converged);
    CHECK(result.iterations == 1);
    for (double m : result.mu_hat) CHECK(m == 0.0);
    for (CoordinateStatus s : result.coordinate_status) CHECK(s == CoordinateStatus::zero);
}

TEST_CASE("small fit converges with non-negative multipliers") {
    const FitResult result = fit(kBeta, 3, quick_config());
    CHECK(result.converged);
    CHECK(result.iterations <= 20);
    CHECK(result.trajectory.size() == static_cast<std::size_t>(result.iterations));
    for (double m : result.mu_hat) CHECK(m >= 0.0);
    bool any_root = false;
    for (CoordinateStatus s : result.coordinate_status)
        any_root = any_root || s == CoordinateStatus::root;
    CHECK(any_root);
}

TEST_CASE("refitting with the same seed is bit-exact, at any thread count") {
    const OptimizerConfig cfg = quick_config(0.05, 10000);
    const FitResult a = fit(kBeta, 3, cfg);
    const FitResult b = fit(kBeta, 3, cfg);
    CHECK(a.mu_hat == b.mu_hat);
    CHECK(a.trajectory == b.trajectory);
    set_max_threads(1);
    const FitResult c = fit(kBeta, 3, cfg);
    set_max_threads(0);
    CHECK(a.mu_hat == c.mu_hat);
}

TEST_CASE("fit validates input") {
    CHECK_THROWS_AS((void)fit(kBeta, 1, quick_config()), std::invalid_argument);
    OptimizerConfig bad = quick_config();
    bad.delta = 0.1;  // delta > epsilon
    CHECK_THROWS_AS((void)fit(kBeta, 3, bad), std::invalid_argument);
    bad = quick_config();
    bad.alpha = 0.0;
    CHECK_THROWS_AS((void)fit(kBeta, 3, bad), std::invalid_argument);
}

TEST_CASE("contraction diagnostic") {
    const std::vector<double> traj = {1.0, 0.5, 0.25};
    const std::vector<double> ratios = contraction_diagnostic(traj, 0.0);
    REQUIRE(ratios.size() == 2);
    CHECK(ratios[0] == doctest::Approx(0.5));
    CHECK(ratios[1] == doctest::Approx(0.5));

    // Entries at or below the noise floor are excluded.
    const std::vector<double> noisy = {1.0, 0.5, 0.25, 1e-5, 2e-5};
    CHECK(contraction_diagnostic(noisy, 1e-4).size() == 2);

    const std::vector<double> flat = {0.5, 0.5, 0.5};
    for (double r : contraction_diagnostic(flat, 0.0)) CHECK(r == doctest::Approx(1.0));

    CHECK_THROWS_AS((void)contraction_diagnostic(std::vector<double>{1.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("slackness holds for a fitted policy") {
    const OptimizerConfig cfg = quick_config(0.05, 50000);
    const FitResult result = fit(kBeta, 3, cfg);
    const auto checks = check_slackness(kBeta, 3, result.mu_hat, cfg, 50000, 999);
    REQUIRE(checks.size() == 3);
    for (const SlacknessCheck& c : checks) {
        INFO("gamma=", c.gamma, " mu=", c.mu_gamma, " fwer=", c.fwer);
        CHECK(c.ok);
        CHECK(c.binding == (c.mu_gamma > 0.0));
    }
}

TEST_CASE("saved fit JSON round-trips") {
    const OptimizerConfig cfg = quick_config(0.05, 5000, 31);
    const FitResult result = fit(kBeta, 3, cfg);
    const SavedFit saved{kBeta, 3, cfg, result};
    const std::string text = saved_fit_to_json(saved);
    const SavedFit back = saved_fit_from_json(text);
    CHECK(back.K == 3);
    CHECK(back.model.str() == kBeta.str());
    CHECK(back.config.alpha == cfg.alpha);
    CHECK(back.config.seed == cfg.seed);
    CHECK(back.config.n_opt == cfg.n_opt);
    CHECK(back.result.mu_hat == result.mu_hat);
    CHECK(back.result.converged == result.converged);
    CHECK(back.result.trajectory == result.trajectory);
    CHECK_THROWS((void)saved_fit_from_json("{\"k\": 3}"));
}
