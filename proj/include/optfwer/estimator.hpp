#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "optfwer/densities.hpp"

namespace optfwer {

/// A fixed batch of N labelled samples drawn under the configuration with
/// gamma alternatives and K - gamma nulls. Content is a pure function of
/// (model, K, gamma, N, seed); the per-sample coefficient tables are cached so
/// re-evaluating the policy at a new mu costs O(K^2) per sample.
struct LabeledSampleBatch {
    AlternativeModel model;
    int K = 0;
    int gamma = 0;
    std::int64_t N = 0;
    std::uint64_t seed = 0;

    std::vector<double> p;                 // N*K, ascending within each sample
    std::vector<double> g;                 // N*K likelihood ratios per sorted position
    std::vector<std::uint32_t> null_mask;  // bit k-1 set when sorted position k holds a null
    std::vector<double> a;                 // N power weights
    std::vector<double> b;                 // N*K*K error coefficient tables

    [[nodiscard]] std::span<const double> sample_p(std::int64_t n) const {
        return {p.data() + n * K, static_cast<std::size_t>(K)};
    }
    [[nodiscard]] std::uint32_t nulls(std::int64_t n) const {
        return null_mask[static_cast<std::size_t>(n)];
    }
    [[nodiscard]] std::size_t bytes() const;
};

[[nodiscard]] LabeledSampleBatch make_batch(const AlternativeModel& model, int K, int gamma,
                                            std::int64_t n, std::uint64_t seed);

/// Rejected prefix length of sample n under the multipliers mu, from the
/// cached coefficient table.
[[nodiscard]] int batch_l_star(const LabeledSampleBatch& batch, std::int64_t n,
                               std::span<const double> mu);

/// Fraction of samples in which at least one null-flagged sorted position is
/// rejected. Exactly non-increasing along componentwise-increasing mu paths
/// for a fixed batch.
[[nodiscard]] double fwer_hat(const LabeledSampleBatch& batch, std::span<const double> mu);

struct PowerEstimate {
    double pi_k = 0.0;
    double pi_k_se = 0.0;
    double pi_any = 0.0;
    double pi_any_se = 0.0;
};

/// Average power l*/K and the probability of at least one rejection, on an
/// all-alternatives batch (gamma = K).
[[nodiscard]] PowerEstimate power_hat(const LabeledSampleBatch& batch, std::span<const double> mu);

/// General average power: mean fraction of the gamma alternatives that land in
/// the rejected prefix; requires gamma >= 1 and coincides with pi_k at gamma = K.
[[nodiscard]] double avg_power_hat(const LabeledSampleBatch& batch, std::span<const double> mu);

struct IntegralEstimate {
    double value = 0.0;
    double se = 0.0;
};

/// Independent integral-form estimator of the error rate: sorted uniform draws
/// on [0,1]^K, averaging sum_k b(gamma,k) D_k / K!. Cross-validation oracle for
/// fwer_hat.
[[nodiscard]] IntegralEstimate fwer_integral_oracle(const AlternativeModel& model, int K, int gamma,
                                                    std::span<const double> mu, std::int64_t n,
                                                    std::uint64_t seed);

}  // namespace optfwer
