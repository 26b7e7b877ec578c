#pragma once

#include <string>
#include <string_view>

namespace optfwer {

enum class Family { trunc_normal, mixture_normal, student_t, beta };

[[nodiscard]] std::string_view family_name(Family f);

/// Parametric alternative p-value density g(u). Under the null, p-values are
/// uniform on (0,1); under the alternative they have density g.
///
///   trunc-normal : one-sided p = F0(X) with X ~ N(theta,1) truncated to
///                  [-T, T]; theta in [-T, 0].
///   mixture      : two-sided p = 2*Phi(-|X|) with X ~ 0.5 N(theta,1) + 0.5 N(-theta,1).
///   student-t    : two-sided p = 2*Phi(-|X|) with X ~ t_df.
///   beta         : p ~ Beta(theta, 1), g(u) = theta * u^(theta-1), theta in (0,1].
struct AlternativeModel {
    Family family = Family::beta;
    double theta = 1.0;        // shift (trunc-normal, mixture) or beta shape
    int df = 0;                // student-t degrees of freedom
    double trunc_bound = 6.0;  // trunc-normal truncation interval [-T, T]

    static AlternativeModel trunc_normal(double theta, double trunc_bound = 6.0);
    static AlternativeModel mixture_normal(double theta);
    static AlternativeModel student_t(int df);
    static AlternativeModel beta(double theta);

    /// Parses "trunc:-2.0[:T]", "mixture:2.0", "t:4" or "beta:0.5".
    static AlternativeModel parse(std::string_view spec);
    [[nodiscard]] std::string str() const;

    /// Throws std::invalid_argument when the parameterisation is inadmissible.
    void validate() const;
};

/// Likelihood ratio g(u) of the p-value u in (0, 1] under the alternative.
/// Inputs are clamped to u >= 1e-300 before evaluation so unbounded densities
/// stay finite.
[[nodiscard]] double g_eval(const AlternativeModel& model, double u);

/// Inverse-transform sample of an alternative p-value from a uniform draw
/// v in (0, 1). Deterministic in v.
[[nodiscard]] double sample_p(const AlternativeModel& model, double v);

}  // namespace optfwer
