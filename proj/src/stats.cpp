#include "optfwer/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace optfwer {

namespace {
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))
const boost::math::normal_distribution<> kStdNormal(0.0, 1.0);
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double normal_logpdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0,1)");
    return boost::math::quantile(kStdNormal, p);
}

double student_t_pdf(double x, int df) { return std::exp(student_t_logpdf(x, df)); }

double student_t_logpdf(double x, int df) {
    if (df < 1) throw std::invalid_argument("student_t_logpdf: df must be >= 1");
    const double v = static_cast<double>(df);
    return std::lgamma(0.5 * (v + 1.0)) - std::lgamma(0.5 * v) - 0.5 * std::log(v * M_PI) -
           0.5 * (v + 1.0) * std::log1p(x * x / v);
}

double student_t_quantile(double p, int df) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("student_t_quantile: p must lie in (0,1)");
    if (df < 1) throw std::invalid_argument("student_t_quantile: df must be >= 1");
    return boost::math::quantile(boost::math::students_t_distribution<>(df), p);
}

double proportion_se(double p_hat, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("proportion_se: n must be >= 1");
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

}  // namespace optfwer
