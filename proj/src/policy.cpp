#include "optfwer/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "optfwer/coefficients.hpp"

namespace optfwer {

int optimal_l_star(std::span<const double> net) {
    double best = 0.0;  // S_0
    double s = 0.0;
    int l_star = 0;
    for (std::size_t i = 0; i < net.size(); ++i) {
        s += net[i];
        if (s >= best) {
            best = s;
            l_star = static_cast<int>(i) + 1;
        }
    }
    return l_star;
}

PolicyResult decide(const AlternativeModel& model, std::span<const double> mu,
                    std::span<const double> p_values) {
    const int K = static_cast<int>(p_values.size());
    if (K < 2) throw std::invalid_argument("decide: need at least two p-values");
    if (K > kMaxHypotheses) throw std::invalid_argument("decide: more than 20 p-values");
    if (mu.size() != p_values.size())
        throw std::invalid_argument("decide: mu length must equal the number of p-values");
    for (double p : p_values)
        if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("decide: p-values must lie in (0, 1]");
    for (double m : mu)
        if (!(m >= 0.0)) throw std::invalid_argument("decide: multipliers must be non-negative");

    PolicyResult result;
    result.order.resize(p_values.size());
    std::iota(result.order.begin(), result.order.end(), 0);
    std::sort(result.order.begin(), result.order.end(), [&](int a, int b) {
        return p_values[a] != p_values[b] ? p_values[a] < p_values[b] : a < b;
    });

    std::vector<double> g(p_values.size());
    for (int k = 0; k < K; ++k) {
        // Same overflow cap as the batch path; keeps K-fold products finite.
        g[k] = std::min(g_eval(model, p_values[result.order[k]]), 1e30);
    }

    const CoefficientBundle bundle = error_coeffs(K, g);
    result.l_star = optimal_l_star(net_benefits(bundle, mu));
    result.reject.assign(p_values.size(), false);
    for (int k = 0; k < result.l_star; ++k) result.reject[result.order[k]] = true;
    return result;
}

}  // namespace optfwer
