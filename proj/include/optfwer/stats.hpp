#pragma once

#include <cstdint>

namespace optfwer {

[[nodiscard]] double normal_cdf(double x);
[[nodiscard]] double normal_pdf(double x);
[[nodiscard]] double normal_logpdf(double x);
/// Inverse standard normal CDF; p must lie in (0, 1).
[[nodiscard]] double normal_quantile(double p);

[[nodiscard]] double student_t_pdf(double x, int df);
[[nodiscard]] double student_t_logpdf(double x, int df);
[[nodiscard]] double student_t_quantile(double p, int df);

/// Monte-Carlo standard error of a proportion estimate, sqrt(p(1-p)/n).
[[nodiscard]] double proportion_se(double p_hat, std::int64_t n);

}  // namespace optfwer
