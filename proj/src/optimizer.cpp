#include "optfwer/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "optfwer/coefficients.hpp"
#include "optfwer/rng.hpp"
#include "optfwer/stats.hpp"

namespace optfwer {

namespace {

constexpr int kMaxDoublings = 10;

// Per-coordinate batches are held resident when the whole set fits the
// budget; otherwise each coordinate visit regenerates its batch, which is
// bit-identical by the determinism contract, so the common-random-number
// coupling is unaffected.
constexpr std::size_t kBatchCacheBudget = std::size_t{3} * 1024 * 1024 * 1024;

std::size_t estimated_fit_cache_bytes(int K, std::int64_t n_opt) {
    const std::size_t per_sample =
        sizeof(double) * (static_cast<std::size_t>(K) * K + 2 * K + 1) + sizeof(std::uint32_t);
    return static_cast<std::size_t>(K) * static_cast<std::size_t>(n_opt) * per_sample;
}

double l2_diff(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

void OptimizerConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("optimizer: alpha must lie in (0, 1]");
    if (!(delta > 0.0)) throw std::invalid_argument("optimizer: delta must be positive");
    if (!(epsilon >= delta))
        throw std::invalid_argument("optimizer: epsilon must be >= delta");
    if (t_max < 1) throw std::invalid_argument("optimizer: t_max must be >= 1");
    if (!(u_max > 0.0)) throw std::invalid_argument("optimizer: u_max must be positive");
    if (n_opt < 1) throw std::invalid_argument("optimizer: n_opt must be >= 1");
}

double bisect_root(const std::function<double(double)>& f, double alpha, double delta,
                   double u_max) {
    if (f(0.0) <= alpha) return 0.0;

    double lo = 0.0;
    double hi = u_max;
    int doublings = 0;
    while (f(hi) > alpha) {
        if (++doublings > kMaxDoublings)
            throw std::runtime_error(
                "bisect_root: no bracket below the level after doubling the upper bound; "
                "the constraint cannot bind (misconfigured model?)");
        lo = hi;
        hi *= 2.0;
    }

    // Invariant: f(lo) > alpha >= f(hi).
    while (hi - lo > delta) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > alpha) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double bisect_coordinate(int gamma, std::span<const double> mu, const LabeledSampleBatch& batch,
                         const OptimizerConfig& cfg) {
    cfg.validate();
    if (gamma < 0 || gamma >= batch.K)
        throw std::invalid_argument("bisect_coordinate: gamma out of range");
    if (mu.size() != static_cast<std::size_t>(batch.K))
        throw std::invalid_argument("bisect_coordinate: mu length must equal K");

    std::vector<double> trial(mu.begin(), mu.end());
    const auto target = [&](double value) {
        trial[static_cast<std::size_t>(gamma)] = value;
        return fwer_hat(batch, trial);
    };
    return bisect_root(target, cfg.alpha, cfg.delta, cfg.u_max);
}

FitResult fit(const AlternativeModel& model, int K, const OptimizerConfig& cfg) {
    model.validate();
    cfg.validate();
    if (K < 2 || K > kMaxHypotheses) throw std::invalid_argument("fit: K must lie in [2, 20]");

    const bool cache_batches = estimated_fit_cache_bytes(K, cfg.n_opt) <= kBatchCacheBudget;
    std::vector<LabeledSampleBatch> cached;
    if (cache_batches) {
        cached.reserve(static_cast<std::size_t>(K));
        for (int gamma = 0; gamma < K; ++gamma) {
            cached.push_back(make_batch(model, K, gamma, cfg.n_opt,
                                        cfg.seed ^ static_cast<std::uint64_t>(gamma)));
        }
    }

    FitResult result;
    result.mu_hat.assign(static_cast<std::size_t>(K), 0.0);
    std::vector<double> prev(result.mu_hat);

    for (int t = 1; t <= cfg.t_max; ++t) {
        prev = result.mu_hat;
        for (int gamma = 0; gamma < K; ++gamma) {
            LabeledSampleBatch scratch;
            if (!cache_batches) {
                scratch = make_batch(model, K, gamma, cfg.n_opt,
                                     cfg.seed ^ static_cast<std::uint64_t>(gamma));
            }
            const LabeledSampleBatch& batch =
                cache_batches ? cached[static_cast<std::size_t>(gamma)] : scratch;
            result.mu_hat[static_cast<std::size_t>(gamma)] =
                bisect_coordinate(gamma, result.mu_hat, batch, cfg);
        }
        result.iterations = t;
        const double diff = l2_diff(result.mu_hat, prev);
        result.trajectory.push_back(diff);
        if (diff < cfg.epsilon) {
            result.converged = true;
            break;
        }
    }

    result.coordinate_status.resize(static_cast<std::size_t>(K));
    for (int gamma = 0; gamma < K; ++gamma) {
        result.coordinate_status[static_cast<std::size_t>(gamma)] =
            result.mu_hat[static_cast<std::size_t>(gamma)] == 0.0 ? CoordinateStatus::zero
                                                                  : CoordinateStatus::root;
    }
    return result;
}

std::vector<double> contraction_diagnostic(std::span<const double> trajectory,
                                           double noise_floor) {
    if (trajectory.size() < 2)
        throw std::invalid_argument("contraction_diagnostic: trajectory too short");
    std::size_t geometric_len = trajectory.size();
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        if (trajectory[i] <= noise_floor) {
            geometric_len = i;
            break;
        }
    }
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < geometric_len; ++i) {
        ratios.push_back(trajectory[i + 1] / trajectory[i]);
    }
    return ratios;
}

std::vector<SlacknessCheck> check_slackness(const AlternativeModel& model, int K,
                                            std::span<const double> mu_hat,
                                            const OptimizerConfig& cfg, std::int64_t n_eval,
                                            std::uint64_t eval_seed) {
    cfg.validate();
    if (mu_hat.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("check_slackness: mu length must equal K");

    const double se_opt = proportion_se(cfg.alpha, cfg.n_opt);
    std::vector<SlacknessCheck> checks;
    checks.reserve(static_cast<std::size_t>(K));
    std::vector<double> trial(mu_hat.begin(), mu_hat.end());

    for (int gamma = 0; gamma < K; ++gamma) {
        const LabeledSampleBatch batch =
            make_batch(model, K, gamma, n_eval, derive_seed(eval_seed, seed_tags::kSlackness,
                                                            static_cast<std::uint64_t>(gamma)));
        SlacknessCheck check;
        check.gamma = gamma;
        check.mu_gamma = mu_hat[static_cast<std::size_t>(gamma)];
        check.binding = check.mu_gamma > 0.0;
        check.fwer = fwer_hat(batch, mu_hat);
        check.se = proportion_se(check.fwer, n_eval);
        const double band = 3.0 * std::sqrt(check.se * check.se + se_opt * se_opt);

        if (!check.binding) {
            check.ok = check.fwer <= cfg.alpha + band;
        } else {
            // The fitted coordinate sits within delta of the batch root, so the
            // level must be covered by the estimates one delta either side.
            trial[static_cast<std::size_t>(gamma)] = std::max(0.0, check.mu_gamma - cfg.delta);
            const double f_lo = fwer_hat(batch, trial);
            trial[static_cast<std::size_t>(gamma)] = check.mu_gamma + cfg.delta;
            const double f_hi = fwer_hat(batch, trial);
            trial[static_cast<std::size_t>(gamma)] = check.mu_gamma;
            check.ok = f_lo + band >= cfg.alpha && f_hi - band <= cfg.alpha;
        }
        checks.push_back(check);
    }
    return checks;
}

std::string saved_fit_to_json(const SavedFit& fit) {
    nlohmann::json doc;
    doc["k"] = fit.K;
    doc["alpha"] = fit.config.alpha;
    doc["model"] = fit.model.str();
    doc["mu"] = fit.result.mu_hat;
    doc["seed"] = fit.config.seed;
    doc["config"] = {{"delta", fit.config.delta},
                     {"epsilon", fit.config.epsilon},
                     {"t_max", fit.config.t_max},
                     {"u_max", fit.config.u_max},
                     {"n_opt", fit.config.n_opt}};
    doc["converged"] = fit.result.converged;
    doc["iterations"] = fit.result.iterations;
    doc["trajectory"] = fit.result.trajectory;
    return doc.dump(2) + "\n";
}

SavedFit saved_fit_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    SavedFit fit;
    fit.K = doc.at("k").get<int>();
    fit.model = AlternativeModel::parse(doc.at("model").get<std::string>());
    fit.config.alpha = doc.at("alpha").get<double>();
    fit.config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("config")) {
        const auto& c = doc.at("config");
        fit.config.delta = c.value("delta", fit.config.delta);
        fit.config.epsilon = c.value("epsilon", fit.config.epsilon);
        fit.config.t_max = c.value("t_max", fit.config.t_max);
        fit.config.u_max = c.value("u_max", fit.config.u_max);
        fit.config.n_opt = c.value("n_opt", fit.config.n_opt);
    }
    fit.result.mu_hat = doc.at("mu").get<std::vector<double>>();
    fit.result.converged = doc.value("converged", true);
    fit.result.iterations = doc.value("iterations", 0);
    if (doc.contains("trajectory"))
        fit.result.trajectory = doc.at("trajectory").get<std::vector<double>>();
    if (static_cast<int>(fit.result.mu_hat.size()) != fit.K)
        throw std::invalid_argument("saved fit: mu length does not match k");
    fit.result.coordinate_status.resize(fit.result.mu_hat.size());
    for (std::size_t i = 0; i < fit.result.mu_hat.size(); ++i) {
        fit.result.coordinate_status[i] =
            fit.result.mu_hat[i] == 0.0 ? CoordinateStatus::zero : CoordinateStatus::root;
    }
    return fit;
}

}  // namespace optfwer
