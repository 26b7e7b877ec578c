#include "optfwer/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "optfwer/coefficients.hpp"
#include "optfwer/parallel.hpp"
#include "optfwer/policy.hpp"
#include "optfwer/rng.hpp"
#include "optfwer/stats.hpp"

namespace optfwer {

namespace {

// Cap on cached likelihood ratios; keeps K-fold coefficient products finite
// for heavy-tailed models without touching the rejected-prefix decision in
// any realistic sample.
constexpr double kGCap = 1e30;

void check_batch_mu(const LabeledSampleBatch& batch, std::span<const double> mu) {
    if (mu.size() != static_cast<std::size_t>(batch.K))
        throw std::invalid_argument("estimator: mu length must equal K");
    for (double m : mu)
        if (!(m >= 0.0)) throw std::invalid_argument("estimator: multipliers must be non-negative");
}

int l_star_from_table(int K, double a, const double* b, std::span<const double> mu) {
    double r[kMaxHypotheses];
    for (int i = 0; i < K; ++i) r[i] = a;
    for (int l = 0; l < K; ++l) {
        const double m = mu[l];
        if (m == 0.0) continue;
        const double* row = b + static_cast<std::size_t>(l) * K;
        for (int i = 0; i < K; ++i) r[i] -= m * row[i];
    }
    double best = 0.0, s = 0.0;
    int l_star = 0;
    for (int i = 0; i < K; ++i) {
        s += r[i];
        if (s >= best) {
            best = s;
            l_star = i + 1;
        }
    }
    return l_star;
}

/// Integer per-sample statistics reduced over the fixed chunk grid; the
/// result is independent of the worker count.
template <class PerSample>
std::int64_t count_samples(std::int64_t n, PerSample&& stat) {
    std::vector<std::int64_t> partial(static_cast<std::size_t>(chunk_count(n)), 0);
    parallel_chunks(n, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        std::int64_t acc = 0;
        for (std::int64_t i = begin; i < end; ++i) acc += stat(i);
        partial[static_cast<std::size_t>(c)] = acc;
    });
    return std::accumulate(partial.begin(), partial.end(), std::int64_t{0});
}

}  // namespace

std::size_t LabeledSampleBatch::bytes() const {
    return sizeof(double) * (p.size() + g.size() + a.size() + b.size()) +
           sizeof(std::uint32_t) * null_mask.size();
}

LabeledSampleBatch make_batch(const AlternativeModel& model, int K, int gamma, std::int64_t n,
                              std::uint64_t seed) {
    model.validate();
    if (K < 2 || K > kMaxHypotheses)
        throw std::invalid_argument("make_batch: K must lie in [2, 20]");
    if (gamma < 0 || gamma > K)
        throw std::invalid_argument("make_batch: gamma must lie in [0, K]");
    if (n < 1) throw std::invalid_argument("make_batch: N must be >= 1");

    LabeledSampleBatch batch;
    batch.model = model;
    batch.K = K;
    batch.gamma = gamma;
    batch.N = n;
    batch.seed = seed;
    batch.p.resize(static_cast<std::size_t>(n) * K);
    batch.g.resize(static_cast<std::size_t>(n) * K);
    batch.null_mask.resize(static_cast<std::size_t>(n));
    batch.a.resize(static_cast<std::size_t>(n));
    batch.b.resize(static_cast<std::size_t>(n) * K * K);

    parallel_chunks(n, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
        double raw[kMaxHypotheses];
        int order[kMaxHypotheses];
        double g_local[kMaxHypotheses];
        for (std::int64_t s = begin; s < end; ++s) {
            const PhiloxStream stream(seed, static_cast<std::uint64_t>(s));
            // K uniforms per sample, alternatives first; fixes the coupling
            // across configurations sharing a seed.
            for (int j = 0; j < K; ++j) {
                const double v = stream.uniform(static_cast<std::uint64_t>(j));
                raw[j] = j < gamma ? sample_p(model, v) : v;
            }
            std::iota(order, order + K, 0);
            std::sort(order, order + K, [&](int x, int y) {
                return raw[x] != raw[y] ? raw[x] < raw[y] : x < y;
            });

            double* p_out = batch.p.data() + s * K;
            std::uint32_t mask = 0;
            for (int k = 0; k < K; ++k) {
                p_out[k] = raw[order[k]];
                if (order[k] >= gamma) mask |= 1u << k;
                g_local[k] = std::min(g_eval(model, p_out[k]), kGCap);
            }
            batch.null_mask[static_cast<std::size_t>(s)] = mask;
            std::copy(g_local, g_local + K, batch.g.data() + s * K);
            error_coeffs_into(K, g_local, batch.a.data() + s,
                              batch.b.data() + static_cast<std::size_t>(s) * K * K);
        }
    });
    return batch;
}

int batch_l_star(const LabeledSampleBatch& batch, std::int64_t n, std::span<const double> mu) {
    return l_star_from_table(batch.K, batch.a[static_cast<std::size_t>(n)],
                             batch.b.data() + static_cast<std::size_t>(n) * batch.K * batch.K, mu);
}

double fwer_hat(const LabeledSampleBatch& batch, std::span<const double> mu) {
    check_batch_mu(batch, mu);
    const std::int64_t violations = count_samples(batch.N, [&](std::int64_t s) -> std::int64_t {
        const int l_star = batch_l_star(batch, s, mu);
        const std::uint32_t prefix = l_star == 0 ? 0u : (1u << l_star) - 1u;
        return (batch.nulls(s) & prefix) != 0 ? 1 : 0;
    });
    return static_cast<double>(violations) / static_cast<double>(batch.N);
}

PowerEstimate power_hat(const LabeledSampleBatch& batch, std::span<const double> mu) {
    check_batch_mu(batch, mu);
    if (batch.gamma != batch.K)
        throw std::invalid_argument("power_hat: batch must be all-alternatives (gamma = K)");

    std::vector<std::int64_t> sum_l(static_cast<std::size_t>(chunk_count(batch.N)), 0);
    std::vector<std::int64_t> n_any(sum_l.size(), 0);
    parallel_chunks(batch.N, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        std::int64_t acc_l = 0, acc_any = 0;
        for (std::int64_t s = begin; s < end; ++s) {
            const int l_star = batch_l_star(batch, s, mu);
            acc_l += l_star;
            acc_any += l_star >= 1 ? 1 : 0;
        }
        sum_l[static_cast<std::size_t>(c)] = acc_l;
        n_any[static_cast<std::size_t>(c)] = acc_any;
    });
    const double total_l = static_cast<double>(std::accumulate(sum_l.begin(), sum_l.end(), std::int64_t{0}));
    const double total_any = static_cast<double>(std::accumulate(n_any.begin(), n_any.end(), std::int64_t{0}));

    PowerEstimate est;
    est.pi_k = total_l / (static_cast<double>(batch.N) * batch.K);
    est.pi_k_se = proportion_se(est.pi_k, batch.N);
    est.pi_any = total_any / static_cast<double>(batch.N);
    est.pi_any_se = proportion_se(est.pi_any, batch.N);
    return est;
}

double avg_power_hat(const LabeledSampleBatch& batch, std::span<const double> mu) {
    check_batch_mu(batch, mu);
    if (batch.gamma < 1)
        throw std::invalid_argument("avg_power_hat: batch must contain alternatives (gamma >= 1)");
    const std::uint32_t all = batch.K == 32 ? ~0u : (1u << batch.K) - 1u;
    const std::int64_t correct = count_samples(batch.N, [&](std::int64_t s) -> std::int64_t {
        const int l_star = batch_l_star(batch, s, mu);
        const std::uint32_t prefix = l_star == 0 ? 0u : (1u << l_star) - 1u;
        const std::uint32_t alt_mask = ~batch.nulls(s) & all;
        return std::popcount(alt_mask & prefix);
    });
    return static_cast<double>(correct) / (static_cast<double>(batch.N) * batch.gamma);
}

IntegralEstimate fwer_integral_oracle(const AlternativeModel& model, int K, int gamma,
                                      std::span<const double> mu, std::int64_t n,
                                      std::uint64_t seed) {
    model.validate();
    if (K < 2 || K > kMaxHypotheses)
        throw std::invalid_argument("fwer_integral_oracle: K must lie in [2, 20]");
    if (gamma < 0 || gamma >= K)
        throw std::invalid_argument("fwer_integral_oracle: gamma must lie in [0, K)");
    if (n < 1) throw std::invalid_argument("fwer_integral_oracle: N must be >= 1");
    if (mu.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("fwer_integral_oracle: mu length must equal K");

    const double inv_kfact = 1.0 / factorial(K);
    std::vector<double> sum(static_cast<std::size_t>(chunk_count(n)), 0.0);
    std::vector<double> sum_sq(sum.size(), 0.0);
    parallel_chunks(n, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        double u[kMaxHypotheses];
        double g[kMaxHypotheses];
        double a = 0.0;
        double b[kMaxHypotheses * kMaxHypotheses];
        double acc = 0.0, acc_sq = 0.0;
        for (std::int64_t s = begin; s < end; ++s) {
            const PhiloxStream stream(seed, static_cast<std::uint64_t>(s));
            for (int j = 0; j < K; ++j) u[j] = stream.uniform(static_cast<std::uint64_t>(j));
            std::sort(u, u + K);
            for (int k = 0; k < K; ++k) g[k] = std::min(g_eval(model, u[k]), kGCap);
            error_coeffs_into(K, g, &a, b);
            const int l_star = l_star_from_table(K, a, b, mu);
            double value = 0.0;
            const double* row = b + static_cast<std::size_t>(gamma) * K;
            for (int k = 0; k < l_star; ++k) value += row[k];
            value *= inv_kfact;
            acc += value;
            acc_sq += value * value;
        }
        sum[static_cast<std::size_t>(c)] = acc;
        sum_sq[static_cast<std::size_t>(c)] = acc_sq;
    });

    // Chunk-ordered reduction keeps the result bit-stable across thread counts.
    double total = 0.0, total_sq = 0.0;
    for (std::size_t c = 0; c < sum.size(); ++c) {
        total += sum[c];
        total_sq += sum_sq[c];
    }
    IntegralEstimate est;
    est.value = total / static_cast<double>(n);
    const double var = std::max(0.0, total_sq / static_cast<double>(n) - est.value * est.value);
    est.se = std::sqrt(var / static_cast<double>(n));
    return est;
}

}  // namespace optfwer
