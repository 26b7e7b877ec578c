#pragma once

#include <span>
#include <vector>

#include "optfwer/densities.hpp"

namespace optfwer {

/// Decision for a vector of p-values: the hypotheses holding the l_star
/// smallest p-values are rejected.
struct PolicyResult {
    int l_star = 0;
    std::vector<int> order;    // order[k-1] = original index of the k-th smallest p-value
    std::vector<bool> reject;  // per original index
};

/// Largest l in {0..K} maximising the cumulative net benefit S_l = sum_{i<=l} R_i,
/// with S_0 = 0. The largest maximiser is the required tie-breaking convention.
[[nodiscard]] int optimal_l_star(std::span<const double> net);

/// Sorts the p-values ascending (ties by original index), evaluates the
/// likelihood ratios, builds the coefficient table and rejects the prefix of
/// sorted positions maximising cumulative net benefit under the multipliers mu.
[[nodiscard]] PolicyResult decide(const AlternativeModel& model, std::span<const double> mu,
                                  std::span<const double> p_values);

}  // namespace optfwer
