#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "optfwer/densities.hpp"
#include "optfwer/estimator.hpp"

namespace optfwer {

struct OptimizerConfig {
    double alpha = 0.05;
    double delta = 1e-4;    // bisection bracket tolerance
    double epsilon = 1e-2;  // outer convergence tolerance on ||mu_t - mu_{t-1}||_2
    int t_max = 20;
    double u_max = 50.0;    // initial bisection upper bound; doubles when the bracket fails
    std::int64_t n_opt = 100000;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class CoordinateStatus { zero, root };

struct FitResult {
    std::vector<double> mu_hat;
    int iterations = 0;
    std::vector<double> trajectory;  // ||mu_t - mu_{t-1}||_2 per outer iteration
    std::vector<CoordinateStatus> coordinate_status;
    bool converged = false;
};

/// Root of a non-increasing target against the level alpha: returns 0 when
/// f(0) <= alpha, else the midpoint of the final bracket [lo, hi] with
/// f(lo) > alpha >= f(hi) once hi - lo < delta. The upper bound doubles up to
/// 2^10 times before the search gives up.
[[nodiscard]] double bisect_root(const std::function<double(double)>& f, double alpha,
                                 double delta, double u_max);

/// Coordinate update: solves fwer_hat(batch, mu with coordinate gamma free) = alpha.
[[nodiscard]] double bisect_coordinate(int gamma, std::span<const double> mu,
                                       const LabeledSampleBatch& batch,
                                       const OptimizerConfig& cfg);

/// Coordinate descent for the dual multipliers. Sweeps gamma = 0..K-1 with
/// Gauss-Seidel updates against per-coordinate batches (model, K, gamma,
/// n_opt, seed ^ gamma) held fixed across all outer iterations.
[[nodiscard]] FitResult fit(const AlternativeModel& model, int K, const OptimizerConfig& cfg);

/// Successive ratios ||d mu_{t+1}|| / ||d mu_t|| over the geometric phase of a
/// trajectory, i.e. the entries before the first one at or below noise_floor.
[[nodiscard]] std::vector<double> contraction_diagnostic(std::span<const double> trajectory,
                                                         double noise_floor);

struct SlacknessCheck {
    int gamma = 0;
    double mu_gamma = 0.0;
    double fwer = 0.0;
    double se = 0.0;
    bool binding = false;
    bool ok = false;
};

/// Complementary-slackness verification on independent evaluation batches:
/// zero coordinates must satisfy fwer <= alpha + 3 se; positive coordinates
/// must bracket alpha within the bisection tolerance plus 3 combined standard
/// errors.
[[nodiscard]] std::vector<SlacknessCheck> check_slackness(const AlternativeModel& model, int K,
                                                          std::span<const double> mu_hat,
                                                          const OptimizerConfig& cfg,
                                                          std::int64_t n_eval,
                                                          std::uint64_t eval_seed);

/// Serialised fit document {K, alpha, model, mu, seed, config, converged, ...}
/// for caching and the CLI apply command.
struct SavedFit {
    AlternativeModel model;
    int K = 0;
    OptimizerConfig config;
    FitResult result;
};

[[nodiscard]] std::string saved_fit_to_json(const SavedFit& fit);
[[nodiscard]] SavedFit saved_fit_from_json(const std::string& text);

}  // namespace optfwer
