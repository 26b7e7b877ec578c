#include "optfwer/baselines.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace optfwer {

namespace {

void check_p(std::span<const double> p) {
    if (p.empty()) throw std::invalid_argument("baselines: empty p-value vector");
    for (double v : p)
        if (!(v > 0.0 && v <= 1.0))
            throw std::domain_error("baselines: p-values must lie in (0, 1]");
}

std::vector<double> sorted_copy(std::span<const double> p) {
    std::vector<double> s(p.begin(), p.end());
    std::sort(s.begin(), s.end());
    return s;
}

/// Rejections are value-threshold based, so mapping a sorted-prefix decision
/// back to original indices never splits ties.
RejectionSet from_threshold(std::span<const double> p, std::span<const double> p_sorted, int count) {
    RejectionSet out;
    out.rejected.assign(p.size(), false);
    out.count = count;
    if (count == 0) return out;
    const double cut = p_sorted[static_cast<std::size_t>(count) - 1];
    for (std::size_t i = 0; i < p.size(); ++i) out.rejected[i] = p[i] <= cut;
    return out;
}

}  // namespace

int bonferroni_count_sorted(std::span<const double> p_sorted, double alpha) {
    const double cut = alpha / static_cast<double>(p_sorted.size());
    int count = 0;
    while (count < static_cast<int>(p_sorted.size()) && p_sorted[count] <= cut) ++count;
    return count;
}

int holm_count_sorted(std::span<const double> p_sorted, double alpha) {
    const int K = static_cast<int>(p_sorted.size());
    for (int k = 1; k <= K; ++k) {
        if (p_sorted[k - 1] > alpha / static_cast<double>(K - k + 1)) return k - 1;
    }
    return K;
}

int hochberg_count_sorted(std::span<const double> p_sorted, double alpha) {
    const int K = static_cast<int>(p_sorted.size());
    for (int k = K; k >= 1; --k) {
        if (p_sorted[k - 1] <= alpha / static_cast<double>(K - k + 1)) return k;
    }
    return 0;
}

int hommel_count_sorted(std::span<const double> p_sorted, double alpha) {
    const int K = static_cast<int>(p_sorted.size());
    // j = max{ i : p_(K-i+k) > k*alpha/i for all k = 1..i }; every candidate i
    // requires p_(K) > alpha, so reject everything when that fails.
    int j = 0;
    for (int i = 1; i <= K; ++i) {
        bool ok = true;
        for (int k = 1; k <= i; ++k) {
            if (!(p_sorted[K - i + k - 1] > static_cast<double>(k) * alpha / i)) {
                ok = false;
                break;
            }
        }
        if (ok) j = i;
    }
    if (j == 0) return K;
    const double cut = alpha / static_cast<double>(j);
    int count = 0;
    while (count < K && p_sorted[count] <= cut) ++count;
    return count;
}

RejectionSet bonferroni(std::span<const double> p, double alpha) {
    check_p(p);
    const auto s = sorted_copy(p);
    return from_threshold(p, s, bonferroni_count_sorted(s, alpha));
}

RejectionSet holm(std::span<const double> p, double alpha) {
    check_p(p);
    const auto s = sorted_copy(p);
    return from_threshold(p, s, holm_count_sorted(s, alpha));
}

RejectionSet hochberg(std::span<const double> p, double alpha) {
    check_p(p);
    const auto s = sorted_copy(p);
    return from_threshold(p, s, hochberg_count_sorted(s, alpha));
}

RejectionSet hommel(std::span<const double> p, double alpha) {
    check_p(p);
    const auto s = sorted_copy(p);
    return from_threshold(p, s, hommel_count_sorted(s, alpha));
}

RejectionSet hommel_closure_oracle(std::span<const double> p, double alpha) {
    check_p(p);
    const int K = static_cast<int>(p.size());
    if (K > 12) throw std::invalid_argument("hommel_closure_oracle: K must be <= 12");

    // A hypothesis is rejected iff every subset containing it is rejected by
    // its local Simes test, i.e. iff it appears in no Simes-accepted subset.
    std::uint32_t retained = 0;
    std::vector<double> sub;
    sub.reserve(static_cast<std::size_t>(K));
    for (std::uint32_t mask = 1; mask < (1u << K); ++mask) {
        sub.clear();
        for (int i = 0; i < K; ++i)
            if (mask & (1u << i)) sub.push_back(p[static_cast<std::size_t>(i)]);
        std::sort(sub.begin(), sub.end());
        const int m = static_cast<int>(sub.size());
        bool simes_rejects = false;
        for (int k = 1; k <= m; ++k) {
            if (sub[k - 1] * m / static_cast<double>(k) <= alpha) {
                simes_rejects = true;
                break;
            }
        }
        if (!simes_rejects) retained |= mask;
    }

    RejectionSet out;
    out.rejected.assign(p.size(), false);
    for (int i = 0; i < K; ++i) {
        if (!(retained & (1u << i))) {
            out.rejected[static_cast<std::size_t>(i)] = true;
            ++out.count;
        }
    }
    return out;
}

}  // namespace optfwer
