#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "optfwer/estimator.hpp"
#include "optfwer/parallel.hpp"
#include "optfwer/rng.hpp"
#include "optfwer/stats.hpp"

using namespace optfwer;

namespace {
const AlternativeModel kBeta = AlternativeModel::beta(0.5);
}

TEST_CASE("batch layout and labelling") {
    const int K = 4;
    for (int gamma : {0, 1, 2, 4}) {
        const LabeledSampleBatch batch = make_batch(kBeta, K, gamma, 500, 99);
        CHECK(batch.N == 500);
        for (std::int64_t s = 0; s < batch.N; ++s) {
            const auto p = batch.sample_p(s);
            for (int k = 1; k < K; ++k) CHECK(p[static_cast<std::size_t>(k) - 1] <= p[static_cast<std::size_t>(k)]);
            for (double v : p) {
                CHECK(v > 0.0);
                CHECK(v < 1.0);
            }
            CHECK(std::popcount(batch.nulls(s)) == K - gamma);
        }
    }
}

TEST_CASE("gamma = 0 gives sorted uniforms, all null") {
    const LabeledSampleBatch batch = make_batch(kBeta, 3, 0, 200, 4242);
    for (std::int64_t s = 0; s < batch.N; ++s) CHECK(batch.nulls(s) == 0b111u);
    // The sorted p-values are a permutation of the raw uniform draws.
    const PhiloxStream stream(4242, 0);
    std::vector<double> expected = {stream.uniform(0), stream.uniform(1), stream.uniform(2)};
    std::sort(expected.begin(), expected.end());
    const auto got = batch.sample_p(0);
    for (int k = 0; k < 3; ++k) CHECK(got[static_cast<std::size_t>(k)] == expected[static_cast<std::size_t>(k)]);
}

TEST_CASE("batches are bit-identical across calls and thread counts") {
    for (const auto& model : {AlternativeModel::beta(0.3), AlternativeModel::trunc_normal(-2.0),
                              AlternativeModel::mixture_normal(2.0), AlternativeModel::student_t(4)}) {
        set_max_threads(1);
        const LabeledSampleBatch one = make_batch(model, 5, 3, 3000, 777);
        set_max_threads(4);
        const LabeledSampleBatch four = make_batch(model, 5, 3, 3000, 777);
        set_max_threads(0);
        CHECK(one.p == four.p);
        CHECK(one.g == four.g);
        CHECK(one.null_mask == four.null_mask);
        CHECK(one.a == four.a);
        CHECK(one.b == four.b);
    }
}

TEST_CASE("make_batch validates parameters") {
    CHECK_THROWS_AS((void)make_batch(kBeta, 1, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)make_batch(kBeta, 3, 4, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)make_batch(kBeta, 3, -1, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)make_batch(kBeta, 3, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("fwer_hat limits") {
    const int K = 3;
    const std::vector<double> zero(K, 0.0);
    for (int gamma : {0, 1, 2}) {
        const LabeledSampleBatch batch = make_batch(kBeta, K, gamma, 2000, 11);
        CHECK(fwer_hat(batch, zero) == 1.0);  // l* = K rejects every null
        std::vector<double> huge(K, 0.0);
        huge[0] = 1e6;
        if (gamma == 0) CHECK(fwer_hat(batch, huge) == 0.0);
    }
    const LabeledSampleBatch batch = make_batch(kBeta, K, 1, 2000, 12);
    CHECK_THROWS_AS((void)fwer_hat(batch, std::vector<double>{0.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)fwer_hat(batch, std::vector<double>{0.0, -1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("power_hat limits and bracketing") {
    const int K = 3;
    const LabeledSampleBatch batch = make_batch(kBeta, K, K, 3000, 21);
    const PowerEstimate full = power_hat(batch, std::vector<double>(K, 0.0));
    CHECK(full.pi_k == 1.0);
    CHECK(full.pi_any == 1.0);
    const PowerEstimate none = power_hat(batch, std::vector<double>(K, 1e9));
    CHECK(none.pi_k == 0.0);
    CHECK(none.pi_any == 0.0);
    const LabeledSampleBatch partial = make_batch(kBeta, K, 1, 100, 22);
    CHECK_THROWS_AS((void)power_hat(partial, std::vector<double>(K, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("avg_power_hat") {
    const int K = 3;
    const LabeledSampleBatch full = make_batch(kBeta, K, K, 4000, 31);
    const std::vector<double> mu = {0.5, 0.25, 0.1};
    CHECK(avg_power_hat(full, mu) == doctest::Approx(power_hat(full, mu).pi_k));
    const LabeledSampleBatch one = make_batch(kBeta, 2, 1, 4000, 32);
    CHECK(avg_power_hat(one, std::vector<double>(2, 0.0)) == 1.0);
    CHECK(avg_power_hat(one, std::vector<double>(2, 1e9)) == 0.0);
    const LabeledSampleBatch nulls = make_batch(kBeta, 2, 0, 100, 33);
    CHECK_THROWS_AS((void)avg_power_hat(nulls, std::vector<double>(2, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("fwer_hat is exactly monotone along increasing mu paths") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const int K = 2 + static_cast<int>(rng() % 5);
        const int gamma = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
        const LabeledSampleBatch batch = make_batch(kBeta, K, gamma, 2000, 1000 + rng() % 1000);
        std::vector<double> mu(static_cast<std::size_t>(K));
        for (double& v : mu) v = unif(rng);
        double prev = fwer_hat(batch, mu);
        for (int step = 0; step < 12; ++step) {
            for (double& v : mu) v += 0.4 * unif(rng);
            const double cur = fwer_hat(batch, mu);
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("evaluation is bit-stable across thread counts") {
    const LabeledSampleBatch batch = make_batch(kBeta, 4, 2, 30000, 1234);
    const std::vector<double> mu = {0.3, 0.7, 0.1, 0.0};
    set_max_threads(1);
    const double f1 = fwer_hat(batch, mu);
    set_max_threads(3);
    const double f3 = fwer_hat(batch, mu);
    set_max_threads(0);
    CHECK(f1 == f3);
}

TEST_CASE("integral oracle normalisation at mu = 0, gamma = 0") {
    const IntegralEstimate est =
        fwer_integral_oracle(kBeta, 3, 0, std::vector<double>(3, 0.0), 20000, 9);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integral oracle vanishes for huge multipliers") {
    std::vector<double> mu(3, 0.0);
    mu[1] = 1e8;
    const IntegralEstimate est = fwer_integral_oracle(kBeta, 3, 1, mu, 20000, 10);
    CHECK(std::fabs(est.value) <= 3.0 * est.se + 1e-9);
}

TEST_CASE("direct and integral estimators agree") {
    std::mt19937_64 rng(60);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        const int K = 2 + static_cast<int>(rng() % 3);
        const int gamma = static_cast<int>(rng() % static_cast<std::uint64_t>(K));
        std::vector<double> mu(static_cast<std::size_t>(K));
        for (double& v : mu) v = 1.5 * unif(rng);
        const std::int64_t n = 100000;
        const LabeledSampleBatch batch = make_batch(kBeta, K, gamma, n, 500 + rep);
        const double direct = fwer_hat(batch, mu);
        const IntegralEstimate oracle = fwer_integral_oracle(kBeta, K, gamma, mu, n, 900 + rep);
        const double se = std::sqrt(proportion_se(direct, n) * proportion_se(direct, n) +
                                    oracle.se * oracle.se);
        INFO("K=", K, " gamma=", gamma, " direct=", direct, " integral=", oracle.value);
        CHECK(std::fabs(direct - oracle.value) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("standard error formula") {
    CHECK(proportion_se(0.5, 10000) == doctest::Approx(0.005));
    CHECK(proportion_se(0.0, 100) == 0.0);
    CHECK(proportion_se(1.0, 100) == 0.0);
    CHECK_THROWS_AS((void)proportion_se(0.5, 0), std::invalid_argument);
}
