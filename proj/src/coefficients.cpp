#include "optfwer/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace optfwer {

namespace {

void check_k(int K, std::size_t n_g) {
    if (K < 2) throw std::invalid_argument("coefficients: K must be >= 2");
    if (K > kMaxHypotheses)
        throw std::invalid_argument("coefficients: K exceeds the factorial-safe limit of 20");
    if (n_g != static_cast<std::size_t>(K))
        throw std::invalid_argument("coefficients: expected K likelihood-ratio values");
}

}  // namespace

double factorial(int n) {
    if (n < 0 || n > kMaxHypotheses)
        throw std::invalid_argument("factorial: n must lie in [0, 20]");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<double> esp_all(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t m = i + 1; m >= 1; --m) {
            e[m] += values[i] * e[m - 1];
        }
    }
    return e;
}

double power_coeff(int K, std::span<const double> g_values) {
    check_k(K, g_values.size());
    double prod = 1.0;
    for (double g : g_values) prod *= g;
    return factorial(K - 1) * prod;
}

void error_coeffs_into(int K, const double* g, double* a_out, double* b_out) {
    // Suffix ESP table: suffix[k][m] = e_m(g_{k+1}, .., g_K) for 1-based k.
    double suffix[kMaxHypotheses + 1][kMaxHypotheses + 1];
    for (int m = 0; m <= K; ++m) suffix[K][m] = m == 0 ? 1.0 : 0.0;
    for (int k = K - 1; k >= 0; --k) {
        suffix[k][0] = 1.0;
        const double gk = g[k];  // g_{k+1} in 1-based indexing
        for (int m = 1; m <= K - k; ++m) {
            suffix[k][m] = suffix[k + 1][m] + gk * suffix[k + 1][m - 1];
        }
        for (int m = K - k + 1; m <= K; ++m) suffix[k][m] = 0.0;
    }

    double prefix = 1.0;  // prod_{j<k} g_j while sweeping k
    double fact_prefactor[kMaxHypotheses];
    for (int l = 0; l < K; ++l) fact_prefactor[l] = factorial(l) * factorial(K - l);

    for (int l = 0; l < K; ++l)
        for (int k = 1; k <= K; ++k) b_out[l * K + k - 1] = 0.0;

    for (int k = 1; k <= K; ++k) {
        for (int l = k - 1; l < K; ++l) {
            const int m = l - k + 1;
            if (m > K - k) break;
            b_out[l * K + k - 1] = fact_prefactor[l] * prefix * suffix[k][m];
        }
        prefix *= g[k - 1];
    }
    *a_out = factorial(K - 1) * prefix;  // prefix now holds prod_{j<=K} g_j
}

CoefficientBundle error_coeffs(int K, std::span<const double> g_values) {
    check_k(K, g_values.size());
    CoefficientBundle bundle;
    bundle.K = K;
    bundle.b.assign(static_cast<std::size_t>(K) * K, 0.0);
    error_coeffs_into(K, g_values.data(), &bundle.a, bundle.b.data());
    return bundle;
}

std::vector<double> net_benefits(const CoefficientBundle& bundle, std::span<const double> mu) {
    const int K = bundle.K;
    if (mu.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("net_benefits: mu length must equal K");
    std::vector<double> r(static_cast<std::size_t>(K), bundle.a);
    for (int l = 0; l < K; ++l) {
        const double m = mu[l];
        if (m == 0.0) continue;
        const double* row = bundle.b.data() + static_cast<std::size_t>(l) * K;
        for (int i = 0; i < K; ++i) r[i] -= m * row[i];
    }
    return r;
}

}  // namespace optfwer
