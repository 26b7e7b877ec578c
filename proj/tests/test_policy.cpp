#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "optfwer/coefficients.hpp"
#include "optfwer/policy.hpp"

using namespace optfwer;

TEST_CASE("optimal_l_star examples and tie-break") {
    CHECK(optimal_l_star(std::vector<double>{2.0, 2.0, 2.0}) == 3);
    // S = (0, -4, -2, 0): tie between l=0 and l=3 resolves to the largest
    CHECK(optimal_l_star(std::vector<double>{-4.0, 2.0, 2.0}) == 3);
    CHECK(optimal_l_star(std::vector<double>{-5.5, 0.0, 2.0}) == 0);
    CHECK(optimal_l_star(std::vector<double>{}) == 0);
    CHECK(optimal_l_star(std::vector<double>{-1.0, -1.0}) == 0);
    CHECK(optimal_l_star(std::vector<double>{0.0, 0.0}) == 2);
    CHECK(optimal_l_star(std::vector<double>{1.0, -1.0, 1.0, -1.0}) == 3);
}

TEST_CASE("decide rejects everything at mu = 0") {
    const AlternativeModel model = AlternativeModel::beta(0.5);
    const std::vector<double> p = {0.3, 0.9, 0.01, 0.5};
    const std::vector<double> mu(4, 0.0);
    const PolicyResult result = decide(model, mu, p);
    CHECK(result.l_star == 4);
    for (bool r : result.reject) CHECK(r);
}

TEST_CASE("decide validates input") {
    const AlternativeModel model = AlternativeModel::beta(0.5);
    CHECK_THROWS_AS((void)decide(model, std::vector<double>{0.0}, std::vector<double>{0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)decide(model, std::vector<double>{0.0, 0.0}, std::vector<double>{0.5, 0.0}),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)decide(model, std::vector<double>{0.0, -1.0}, std::vector<double>{0.5, 0.2}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)decide(model, std::vector<double>{0.0}, std::vector<double>{0.5, 0.2}),
        std::invalid_argument);
}

TEST_CASE("rejections follow the sorted order") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const AlternativeModel model = AlternativeModel::beta(0.4);
    for (int rep = 0; rep < 500; ++rep) {
        const int K = 2 + static_cast<int>(rng() % 7);
        std::vector<double> p(static_cast<std::size_t>(K));
        for (double& v : p) v = 0.999 * unif(rng) + 1e-6;
        std::vector<double> mu(static_cast<std::size_t>(K));
        for (double& v : mu) v = 2.0 * unif(rng) * (rng() % 2);

        const PolicyResult result = decide(model, mu, p);
        // The rejected set is exactly the l_star smallest p-values.
        std::vector<double> sorted(p);
        std::sort(sorted.begin(), sorted.end());
        int count = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (result.reject[i]) {
                ++count;
                CHECK(p[i] <= sorted[static_cast<std::size_t>(result.l_star) - 1]);
            }
        }
        CHECK(count == result.l_star);
        // Permutation maps sorted ranks back to original indices.
        for (int k = 0; k < K; ++k)
            CHECK(p[static_cast<std::size_t>(result.order[static_cast<std::size_t>(k)])] ==
                  sorted[static_cast<std::size_t>(k)]);
    }
}

TEST_CASE("equal p-values break ties by original index") {
    const AlternativeModel model = AlternativeModel::beta(0.5);
    const std::vector<double> p = {0.04, 0.04, 0.04};
    const PolicyResult result = decide(model, std::vector<double>(3, 0.0), p);
    CHECK(result.order == std::vector<int>{0, 1, 2});
}

TEST_CASE("pathwise monotonicity of l_star in mu") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> logu(-2.0, 2.0);
    int checked = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        const int K = 2 + static_cast<int>(rng() % 7);
        std::vector<double> g(static_cast<std::size_t>(K));
        for (double& v : g) v = std::exp(logu(rng));
        std::vector<double> mu(static_cast<std::size_t>(K)), mu_up(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i) {
            mu[static_cast<std::size_t>(i)] = 3.0 * unif(rng);
            mu_up[static_cast<std::size_t>(i)] =
                mu[static_cast<std::size_t>(i)] + 2.0 * unif(rng);
        }
        const CoefficientBundle bundle = error_coeffs(K, g);
        const int l_lo = optimal_l_star(net_benefits(bundle, mu_up));
        const int l_hi = optimal_l_star(net_benefits(bundle, mu));
        CHECK(l_lo <= l_hi);
        ++checked;
    }
    CHECK(checked == 10000);
}
