#pragma once

#include <span>
#include <vector>

namespace optfwer {

struct RejectionSet {
    std::vector<bool> rejected;  // per original hypothesis index
    int count = 0;
};

[[nodiscard]] RejectionSet bonferroni(std::span<const double> p, double alpha);
[[nodiscard]] RejectionSet holm(std::span<const double> p, double alpha);
[[nodiscard]] RejectionSet hochberg(std::span<const double> p, double alpha);
[[nodiscard]] RejectionSet hommel(std::span<const double> p, double alpha);

/// Closed testing with Simes local tests over all 2^K - 1 subsets; ground
/// truth for hommel on small K (exponential cost, K <= 12).
[[nodiscard]] RejectionSet hommel_closure_oracle(std::span<const double> p, double alpha);

/// Step rules on already sorted (ascending) p-values. Every one of the four
/// procedures rejects a prefix of the sorted order, so a count fully
/// describes the decision; these are the batch-evaluation fast paths.
[[nodiscard]] int bonferroni_count_sorted(std::span<const double> p_sorted, double alpha);
[[nodiscard]] int holm_count_sorted(std::span<const double> p_sorted, double alpha);
[[nodiscard]] int hochberg_count_sorted(std::span<const double> p_sorted, double alpha);
[[nodiscard]] int hommel_count_sorted(std::span<const double> p_sorted, double alpha);

}  // namespace optfwer
