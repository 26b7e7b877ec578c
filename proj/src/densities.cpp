#include "optfwer/densities.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "optfwer/stats.hpp"

namespace optfwer {

namespace {

constexpr double kMinU = 1e-300;

double log_cosh(double x) {
    const double ax = std::fabs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - M_LN2;
}

std::vector<std::string> split_fields(std::string_view spec) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t pos = spec.find(':', start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(spec.substr(start));
            break;
        }
        fields.emplace_back(spec.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

// Keeps sampled p-values inside the open interval; two-sided p-values of
// heavy-tailed draws can underflow to 0 and truncated-normal ones can round
// up to 1.
double clamp_open_unit(double p) {
    return std::min(std::max(p, kMinU), 1.0 - 0x1.0p-53);
}

// Quantile argument guard: normal CDF values at deep truncation bounds can
// round to exactly 0 or 1.
double safe_quantile(double p) {
    return normal_quantile(clamp_open_unit(p));
}

double parse_real(const std::string& s, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("model spec: bad ") + what + " '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument(std::string("model spec: bad ") + what + " '" + s + "'");
    return value;
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::trunc_normal: return "trunc";
        case Family::mixture_normal: return "mixture";
        case Family::student_t: return "t";
        case Family::beta: return "beta";
    }
    return "?";
}

AlternativeModel AlternativeModel::trunc_normal(double theta, double trunc_bound) {
    AlternativeModel m{Family::trunc_normal, theta, 0, trunc_bound};
    m.validate();
    return m;
}

AlternativeModel AlternativeModel::mixture_normal(double theta) {
    AlternativeModel m{Family::mixture_normal, theta, 0, 0.0};
    m.validate();
    return m;
}

AlternativeModel AlternativeModel::student_t(int df) {
    AlternativeModel m{Family::student_t, 0.0, df, 0.0};
    m.validate();
    return m;
}

AlternativeModel AlternativeModel::beta(double theta) {
    AlternativeModel m{Family::beta, theta, 0, 0.0};
    m.validate();
    return m;
}

AlternativeModel AlternativeModel::parse(std::string_view spec) {
    const auto fields = split_fields(spec);
    if (fields.empty() || fields[0].empty())
        throw std::invalid_argument("model spec: empty string");
    const std::string& name = fields[0];
    if (name == "trunc") {
        if (fields.size() < 2 || fields.size() > 3)
            throw std::invalid_argument("model spec: trunc takes theta and an optional bound");
        const double theta = parse_real(fields[1], "theta");
        const double bound = fields.size() == 3 ? parse_real(fields[2], "trunc bound") : 6.0;
        return trunc_normal(theta, bound);
    }
    if (name == "mixture") {
        if (fields.size() != 2) throw std::invalid_argument("model spec: mixture takes theta");
        return mixture_normal(parse_real(fields[1], "theta"));
    }
    if (name == "t") {
        if (fields.size() != 2) throw std::invalid_argument("model spec: t takes df");
        const double df = parse_real(fields[1], "df");
        if (df != std::floor(df))
            throw std::invalid_argument("model spec: df must be an integer");
        return student_t(static_cast<int>(df));
    }
    if (name == "beta") {
        if (fields.size() != 2) throw std::invalid_argument("model spec: beta takes theta");
        return beta(parse_real(fields[1], "theta"));
    }
    throw std::invalid_argument("model spec: unknown family '" + name + "'");
}

std::string AlternativeModel::str() const {
    std::ostringstream out;
    out << family_name(family) << ':';
    switch (family) {
        case Family::trunc_normal: out << theta << ':' << trunc_bound; break;
        case Family::mixture_normal: out << theta; break;
        case Family::student_t: out << df; break;
        case Family::beta: out << theta; break;
    }
    return out.str();
}

void AlternativeModel::validate() const {
    switch (family) {
        case Family::trunc_normal:
            if (!(trunc_bound > 0.0))
                throw std::invalid_argument("trunc-normal: truncation bound must be positive");
            if (!(theta >= -trunc_bound && theta <= 0.0))
                throw std::invalid_argument("trunc-normal: theta must lie in [-T, 0]");
            break;
        case Family::mixture_normal:
            if (!std::isfinite(theta))
                throw std::invalid_argument("mixture: theta must be finite");
            break;
        case Family::student_t:
            if (df < 1) throw std::invalid_argument("student-t: df must be >= 1");
            break;
        case Family::beta:
            if (!(theta > 0.0 && theta <= 1.0))
                throw std::invalid_argument("beta: theta must lie in (0, 1]");
            break;
    }
}

double g_eval(const AlternativeModel& model, double u) {
    if (!(u > 0.0 && u <= 1.0)) throw std::domain_error("g_eval: u must lie in (0, 1]");
    model.validate();
    u = std::max(u, kMinU);

    switch (model.family) {
        case Family::trunc_normal: {
            const double T = model.trunc_bound;
            const double theta = model.theta;
            const double z0 = normal_cdf(T) - normal_cdf(-T);
            const double za = normal_cdf(T - theta) - normal_cdf(-T - theta);
            // phi(z - theta)/phi(z) = exp(theta*z - theta^2/2)
            const double z = safe_quantile(normal_cdf(-T) + u * z0);
            return std::exp(theta * z - 0.5 * theta * theta) * z0 / za;
        }
        case Family::mixture_normal: {
            const double theta = model.theta;
            const double z = -normal_quantile(0.5 * u);  // Phi^{-1}(1 - u/2)
            return std::exp(-0.5 * theta * theta + log_cosh(theta * z));
        }
        case Family::student_t: {
            const double z = -normal_quantile(0.5 * u);
            return std::exp(student_t_logpdf(z, model.df) - normal_logpdf(z));
        }
        case Family::beta:
            return model.theta * std::pow(u, model.theta - 1.0);
    }
    throw std::logic_error("g_eval: unreachable");
}

double sample_p(const AlternativeModel& model, double v) {
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("sample_p: v must lie in (0, 1)");
    model.validate();

    switch (model.family) {
        case Family::trunc_normal: {
            const double T = model.trunc_bound;
            const double theta = model.theta;
            const double lo_a = normal_cdf(-T - theta);
            const double za = normal_cdf(T - theta) - lo_a;
            const double x = theta + safe_quantile(lo_a + v * za);
            const double lo_0 = normal_cdf(-T);
            const double z0 = normal_cdf(T) - lo_0;
            return clamp_open_unit((normal_cdf(x) - lo_0) / z0);
        }
        case Family::mixture_normal: {
            // Invert F_A(x) = 0.5 Phi(x-theta) + 0.5 Phi(x+theta) with
            // safeguarded Newton; F_A' = 0.5 phi(x-theta) + 0.5 phi(x+theta) > 0.
            const double theta = model.theta;
            const double spread = std::fabs(theta) + 10.0;
            double lo = -spread, hi = spread;
            double x = normal_quantile(v);
            if (x < lo || x > hi) x = 0.5 * (lo + hi);
            for (int it = 0; it < 100; ++it) {
                const double f = 0.5 * normal_cdf(x - theta) + 0.5 * normal_cdf(x + theta) - v;
                if (f > 0.0) hi = x; else lo = x;
                const double d = 0.5 * normal_pdf(x - theta) + 0.5 * normal_pdf(x + theta);
                double step = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
                if (!(step > lo && step < hi)) step = 0.5 * (lo + hi);
                if (std::fabs(step - x) < 1e-14 * (1.0 + std::fabs(x))) { x = step; break; }
                x = step;
            }
            return clamp_open_unit(2.0 * normal_cdf(-std::fabs(x)));
        }
        case Family::student_t: {
            const double x = student_t_quantile(v, model.df);
            return clamp_open_unit(2.0 * normal_cdf(-std::fabs(x)));
        }
        case Family::beta:
            if (model.theta == 1.0) return v;
            return std::pow(v, 1.0 / model.theta);
    }
    throw std::logic_error("sample_p: unreachable");
}

}  // namespace optfwer
