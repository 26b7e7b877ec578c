#pragma once

#include <span>
#include <vector>

namespace optfwer {

/// Largest supported number of hypotheses under direct (non-log) arithmetic;
/// factorial prefactors stay exactly representable up to 20!.
inline constexpr int kMaxHypotheses = 20;

[[nodiscard]] double factorial(int n);

/// Elementary symmetric polynomials e_0..e_n of the inputs, computed by the
/// recurrence e_m(x_1..x_n) = e_m(x_1..x_{n-1}) + x_n * e_{m-1}(x_1..x_{n-1}).
/// The empty input yields {1}.
[[nodiscard]] std::vector<double> esp_all(std::span<const double> values);

/// Per-sample coefficient table. a is the power weight shared by every sorted
/// position; b(l, k) weights the contribution of rejecting sorted position k
/// to the error rate under the configuration with l alternatives.
struct CoefficientBundle {
    int K = 0;
    double a = 0.0;
    std::vector<double> b;  // K*K, row l in 0..K-1, column k-1 for k in 1..K

    [[nodiscard]] double at(int l, int k) const { return b[static_cast<std::size_t>(l) * K + k - 1]; }
};

/// Power weight (K-1)! * prod_j g_values[j].
[[nodiscard]] double power_coeff(int K, std::span<const double> g_values);

/// Error coefficients b(l, k) = l! (K-l)! * prod_{j<k} g_j * e_{l-k+1}(g_{k+1}..g_K),
/// zero whenever l < k-1, plus the shared power weight.
[[nodiscard]] CoefficientBundle error_coeffs(int K, std::span<const double> g_values);

/// Flat variant for batch precomputation; writes a and the row-major K*K table
/// into caller-provided storage. g_values must hold K entries.
void error_coeffs_into(int K, const double* g_values, double* a_out, double* b_out);

/// Net benefits R_i = a - sum_l mu[l] * b(l, i) of rejecting each sorted position.
[[nodiscard]] std::vector<double> net_benefits(const CoefficientBundle& bundle,
                                               std::span<const double> mu);

}  // namespace optfwer
