#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optfwer/densities.hpp"
#include "optfwer/optimizer.hpp"
#include "optfwer/policy.hpp"

namespace optfwer {

inline constexpr std::uint64_t kDefaultSeed = 20240614;

enum class Method { optimal, bonferroni, holm, hochberg, hommel };

[[nodiscard]] std::string_view method_name(Method m);
[[nodiscard]] Method method_from_name(std::string_view name);
[[nodiscard]] const std::vector<Method>& all_methods();

enum class Metric { pi_k, pi_any, pi_l, fwer_all };

struct ExperimentSpec {
    int K = 3;
    double alpha = 0.05;
    AlternativeModel model;
    std::int64_t n_eval = 50000;
    std::int64_t n_opt = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::vector<Method> methods = all_methods();
    std::vector<Metric> metrics = {Metric::pi_k, Metric::pi_any, Metric::fwer_all};

    void validate() const;
    [[nodiscard]] static ExperimentSpec from_json(const std::string& text);
};

struct MethodResult {
    double pi_k = 0.0, pi_k_se = 0.0;
    double pi_any = 0.0, pi_any_se = 0.0;
    std::vector<double> fwer, fwer_se;    // indexed by gamma = 0..K-1
    std::vector<double> pi_l, pi_l_se;    // indexed by l = 1..K when requested
    [[nodiscard]] double max_fwer() const;
};

struct ExperimentResult {
    ExperimentSpec spec;
    std::map<Method, MethodResult> methods;
    std::vector<double> mu_hat;  // empty when optimal was not requested
    int fit_iterations = 0;
    bool fit_converged = true;
    std::vector<double> fit_trajectory;
};

/// Disk cache of fit results keyed by (model, K, config); entries are the
/// saved-fit JSON documents the optimizer module defines.
class FitCache {
public:
    FitCache() = default;
    explicit FitCache(std::string directory);
    [[nodiscard]] FitResult fit_or_load(const AlternativeModel& model, int K,
                                        const OptimizerConfig& cfg);
    /// Inserts an externally computed result (e.g. a timed fit).
    void store(const AlternativeModel& model, int K, const OptimizerConfig& cfg,
               const FitResult& result);

private:
    std::string dir_;
    std::map<std::string, FitResult> memo_;
};

/// Fits the optimal policy (when requested), then evaluates every method on
/// shared, independent evaluation batches: one per configuration gamma plus an
/// all-alternatives batch.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentSpec& spec,
                                              FitCache* cache = nullptr);

struct CsvRow {
    std::string table;
    int K = 0;
    double alpha = 0.0;
    std::string model;
    std::string param;
    std::string method;
    std::string metric;
    double value = 0.0;
    double se = 0.0;
    std::uint64_t seed = 0;
};

void write_csv(const std::vector<CsvRow>& rows, const std::string& path);
[[nodiscard]] std::vector<CsvRow> experiment_rows(std::string_view table,
                                                  const ExperimentResult& result,
                                                  std::string_view param);

enum class TableId {
    scaling,
    alpha_sensitivity,
    n_sensitivity,
    camerer,
    camerer_sensitivity,
    sprint,
    osc,
};

[[nodiscard]] TableId table_id_from_name(std::string_view name);
[[nodiscard]] std::string_view table_name(TableId id);

struct TableOptions {
    std::uint64_t seed = kDefaultSeed;
    std::int64_t n_eval = 50000;
    std::int64_t n_opt = 100000;
    std::vector<int> k_values = {3, 6, 12};  // scaling table only
    FitCache* cache = nullptr;
};

[[nodiscard]] std::vector<CsvRow> table_rows(TableId id, const TableOptions& options);
void reproduce_table(TableId id, const TableOptions& options, const std::string& out_path);

struct GroupSpec {
    std::string name;
    AlternativeModel model;
    std::vector<double> p;
};

struct GroupDecision {
    std::string name;
    double level = 0.0;  // Bonferroni-adjusted per-group level alpha / G
    PolicyResult policy;
    bool converged = true;
};

struct HierarchicalConfig {
    std::int64_t n_opt = 100000;
    std::uint64_t seed = kDefaultSeed;
};

/// Fits and applies the optimal policy independently within each group at the
/// Bonferroni-adjusted level alpha / G.
[[nodiscard]] std::vector<GroupDecision> hierarchical_apply(const std::vector<GroupSpec>& groups,
                                                            double alpha,
                                                            const HierarchicalConfig& cfg,
                                                            FitCache* cache = nullptr);

struct GroupFile {
    double alpha = 0.05;
    std::vector<GroupSpec> groups;
};

[[nodiscard]] GroupFile groups_from_json(const std::string& text);

/// Published p-value fixtures used by the application tables.
struct StudyFixture {
    std::string name;
    double alpha = 0.05;
    AlternativeModel model;
    std::vector<std::string> labels;
    std::vector<double> p;
};

[[nodiscard]] const StudyFixture& camerer_fixture();
[[nodiscard]] const StudyFixture& sprint_fixture();
[[nodiscard]] const StudyFixture& osc_fixture();
[[nodiscard]] std::vector<GroupSpec> sprint_groups();
[[nodiscard]] StudyFixture fixture_from_json(const std::string& text);

}  // namespace optfwer
