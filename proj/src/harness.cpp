#include "optfwer/harness.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "optfwer/baselines.hpp"
#include "optfwer/coefficients.hpp"
#include "optfwer/parallel.hpp"
#include "optfwer/rng.hpp"
#include "optfwer/stats.hpp"

namespace optfwer {

namespace {

struct BatchCounts {
    std::int64_t sum_count = 0;  // rejected prefix lengths
    std::int64_t n_any = 0;      // samples with >= 1 rejection
    std::int64_t n_violation = 0;  // samples with a rejected null
    std::int64_t sum_correct = 0;  // rejected alternatives
};

int method_count(Method m, const LabeledSampleBatch& batch, std::int64_t s, double alpha,
                 std::span<const double> mu) {
    switch (m) {
        case Method::optimal: return batch_l_star(batch, s, mu);
        case Method::bonferroni: return bonferroni_count_sorted(batch.sample_p(s), alpha);
        case Method::holm: return holm_count_sorted(batch.sample_p(s), alpha);
        case Method::hochberg: return hochberg_count_sorted(batch.sample_p(s), alpha);
        case Method::hommel: return hommel_count_sorted(batch.sample_p(s), alpha);
    }
    throw std::logic_error("method_count: unreachable");
}

/// Per-method rejection statistics over one evaluation batch. Baselines read
/// the sorted sample p-values; the optimal policy reads the cached
/// coefficient tables. Integer chunk-ordered reduction.
std::vector<BatchCounts> evaluate_batch(const LabeledSampleBatch& batch,
                                        const std::vector<Method>& methods, double alpha,
                                        std::span<const double> mu) {
    const std::size_t n_methods = methods.size();
    const std::size_t chunks = static_cast<std::size_t>(chunk_count(batch.N));
    std::vector<BatchCounts> partial(chunks * n_methods);
    const std::uint32_t all = (1u << batch.K) - 1u;

    parallel_chunks(batch.N, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
        BatchCounts* acc = partial.data() + static_cast<std::size_t>(c) * n_methods;
        for (std::int64_t s = begin; s < end; ++s) {
            const std::uint32_t nulls = batch.nulls(s);
            for (std::size_t mi = 0; mi < n_methods; ++mi) {
                const int r = method_count(methods[mi], batch, s, alpha, mu);
                const std::uint32_t prefix = r == 0 ? 0u : (1u << r) - 1u;
                acc[mi].sum_count += r;
                acc[mi].n_any += r >= 1 ? 1 : 0;
                acc[mi].n_violation += (nulls & prefix) != 0 ? 1 : 0;
                acc[mi].sum_correct += std::popcount(~nulls & all & prefix);
            }
        }
    });

    std::vector<BatchCounts> totals(n_methods);
    for (std::size_t c = 0; c < chunks; ++c) {
        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            const BatchCounts& p = partial[c * n_methods + mi];
            totals[mi].sum_count += p.sum_count;
            totals[mi].n_any += p.n_any;
            totals[mi].n_violation += p.n_violation;
            totals[mi].sum_correct += p.sum_correct;
        }
    }
    return totals;
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(10) << v;
    return out.str();
}

std::uint64_t hash_string(std::uint64_t h, std::string_view s) {
    for (char c : s) h = mix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return h;
}

std::uint64_t hash_u64(std::uint64_t h, std::uint64_t v) { return mix64(h ^ v); }

std::uint64_t hash_double(std::uint64_t h, double v) {
    return hash_u64(h, std::bit_cast<std::uint64_t>(v));
}

std::string cache_key(const AlternativeModel& model, int K, const OptimizerConfig& cfg) {
    std::uint64_t h = 0x464954ull;  // "FIT"
    h = hash_string(h, model.str());
    h = hash_u64(h, static_cast<std::uint64_t>(K));
    h = hash_double(h, cfg.alpha);
    h = hash_double(h, cfg.delta);
    h = hash_double(h, cfg.epsilon);
    h = hash_u64(h, static_cast<std::uint64_t>(cfg.t_max));
    h = hash_double(h, cfg.u_max);
    h = hash_u64(h, static_cast<std::uint64_t>(cfg.n_opt));
    h = hash_u64(h, cfg.seed);
    std::ostringstream out;
    out << "fit_k" << K << '_' << family_name(model.family) << '_' << std::hex << h;
    return out.str();
}

}  // namespace

std::string_view method_name(Method m) {
    switch (m) {
        case Method::optimal: return "optimal";
        case Method::bonferroni: return "bonferroni";
        case Method::holm: return "holm";
        case Method::hochberg: return "hochberg";
        case Method::hommel: return "hommel";
    }
    return "?";
}

Method method_from_name(std::string_view name) {
    for (Method m : all_methods())
        if (method_name(m) == name) return m;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods() {
    static const std::vector<Method> methods = {Method::optimal, Method::bonferroni, Method::holm,
                                                Method::hochberg, Method::hommel};
    return methods;
}

void ExperimentSpec::validate() const {
    model.validate();
    if (K < 2 || K > kMaxHypotheses)
        throw std::invalid_argument("experiment: K must lie in [2, 20]");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("experiment: alpha must lie in (0, 1]");
    if (n_eval < 1000 || n_opt < 1000)
        throw std::invalid_argument("experiment: n_eval and n_opt must be >= 1000");
    if (methods.empty()) throw std::invalid_argument("experiment: no methods requested");
}

ExperimentSpec ExperimentSpec::from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    ExperimentSpec spec;
    spec.K = doc.at("k").get<int>();
    spec.alpha = doc.at("alpha").get<double>();
    spec.model = AlternativeModel::parse(doc.at("model").get<std::string>());
    spec.n_eval = doc.value("n_eval", spec.n_eval);
    spec.n_opt = doc.value("n_opt", spec.n_opt);
    spec.seed = doc.value("seed", spec.seed);
    if (doc.contains("methods")) {
        spec.methods.clear();
        for (const auto& name : doc.at("methods"))
            spec.methods.push_back(method_from_name(name.get<std::string>()));
    }
    if (doc.contains("metrics")) {
        spec.metrics.clear();
        for (const auto& name : doc.at("metrics")) {
            const std::string s = name.get<std::string>();
            if (s == "pi_K") spec.metrics.push_back(Metric::pi_k);
            else if (s == "pi_any") spec.metrics.push_back(Metric::pi_any);
            else if (s == "pi_l") spec.metrics.push_back(Metric::pi_l);
            else if (s == "fwer_all") spec.metrics.push_back(Metric::fwer_all);
            else throw std::invalid_argument("experiment: unknown metric '" + s + "'");
        }
    }
    spec.validate();
    return spec;
}

double MethodResult::max_fwer() const {
    double m = 0.0;
    for (double f : fwer) m = std::max(m, f);
    return m;
}

FitCache::FitCache(std::string directory) : dir_(std::move(directory)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

FitResult FitCache::fit_or_load(const AlternativeModel& model, int K, const OptimizerConfig& cfg) {
    const std::string key = cache_key(model, K, cfg);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    const std::filesystem::path file =
        dir_.empty() ? std::filesystem::path{} : std::filesystem::path(dir_) / (key + ".json");
    if (!dir_.empty() && std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        const SavedFit saved = saved_fit_from_json(buf.str());
        if (saved.K == K && saved.model.str() == model.str() && saved.config.seed == cfg.seed &&
            saved.config.alpha == cfg.alpha && saved.config.n_opt == cfg.n_opt) {
            memo_[key] = saved.result;
            return saved.result;
        }
    }

    const FitResult result = fit(model, K, cfg);
    store(model, K, cfg, result);
    return result;
}

void FitCache::store(const AlternativeModel& model, int K, const OptimizerConfig& cfg,
                     const FitResult& result) {
    const std::string key = cache_key(model, K, cfg);
    memo_[key] = result;
    if (!dir_.empty()) {
        const std::filesystem::path file = std::filesystem::path(dir_) / (key + ".json");
        // Process-unique temp name plus atomic rename; concurrent writers
        // produce identical bytes, so last-writer-wins is safe.
        const std::filesystem::path tmp =
            file.string() + "." + std::to_string(::getpid()) + ".tmp";
        {
            std::ofstream out(tmp);
            out << saved_fit_to_json({model, K, cfg, result});
        }
        std::filesystem::rename(tmp, file);
    }
}

ExperimentResult run_experiment(const ExperimentSpec& spec, FitCache* cache) {
    spec.validate();
    ExperimentResult result;
    result.spec = spec;

    const bool want_optimal =
        std::find(spec.methods.begin(), spec.methods.end(), Method::optimal) != spec.methods.end();
    const bool want_pi_l =
        std::find(spec.metrics.begin(), spec.metrics.end(), Metric::pi_l) != spec.metrics.end();

    std::vector<double> mu(static_cast<std::size_t>(spec.K), 0.0);
    if (want_optimal) {
        OptimizerConfig cfg;
        cfg.alpha = spec.alpha;
        cfg.n_opt = spec.n_opt;
        cfg.seed = derive_seed(spec.seed, seed_tags::kOptimizer);
        FitCache local;
        const FitResult fit_result =
            (cache ? *cache : local).fit_or_load(spec.model, spec.K, cfg);
        mu = fit_result.mu_hat;
        result.mu_hat = fit_result.mu_hat;
        result.fit_iterations = fit_result.iterations;
        result.fit_converged = fit_result.converged;
        result.fit_trajectory = fit_result.trajectory;
    }

    for (Method m : spec.methods) result.methods[m] = MethodResult{};
    for (auto& [m, mr] : result.methods) {
        mr.fwer.assign(static_cast<std::size_t>(spec.K), 0.0);
        mr.fwer_se.assign(static_cast<std::size_t>(spec.K), 0.0);
        if (want_pi_l) {
            mr.pi_l.assign(static_cast<std::size_t>(spec.K), 0.0);
            mr.pi_l_se.assign(static_cast<std::size_t>(spec.K), 0.0);
        }
    }

    // All-alternatives batch for power.
    {
        const LabeledSampleBatch batch =
            make_batch(spec.model, spec.K, spec.K, spec.n_eval,
                       derive_seed(spec.seed, seed_tags::kEvaluation,
                                   static_cast<std::uint64_t>(spec.K)));
        const auto counts = evaluate_batch(batch, spec.methods, spec.alpha, mu);
        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            MethodResult& mr = result.methods[spec.methods[mi]];
            mr.pi_k = static_cast<double>(counts[mi].sum_count) /
                      (static_cast<double>(spec.n_eval) * spec.K);
            mr.pi_k_se = proportion_se(mr.pi_k, spec.n_eval);
            mr.pi_any = static_cast<double>(counts[mi].n_any) / static_cast<double>(spec.n_eval);
            mr.pi_any_se = proportion_se(mr.pi_any, spec.n_eval);
            if (want_pi_l) {
                mr.pi_l[static_cast<std::size_t>(spec.K) - 1] = mr.pi_k;
                mr.pi_l_se[static_cast<std::size_t>(spec.K) - 1] = mr.pi_k_se;
            }
        }
    }

    // One batch per configuration gamma for the error rates.
    for (int gamma = 0; gamma < spec.K; ++gamma) {
        const LabeledSampleBatch batch =
            make_batch(spec.model, spec.K, gamma, spec.n_eval,
                       derive_seed(spec.seed, seed_tags::kEvaluation,
                                   static_cast<std::uint64_t>(gamma)));
        const auto counts = evaluate_batch(batch, spec.methods, spec.alpha, mu);
        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            MethodResult& mr = result.methods[spec.methods[mi]];
            const double f =
                static_cast<double>(counts[mi].n_violation) / static_cast<double>(spec.n_eval);
            mr.fwer[static_cast<std::size_t>(gamma)] = f;
            mr.fwer_se[static_cast<std::size_t>(gamma)] = proportion_se(f, spec.n_eval);
            if (want_pi_l && gamma >= 1) {
                const double pl = static_cast<double>(counts[mi].sum_correct) /
                                  (static_cast<double>(spec.n_eval) * gamma);
                mr.pi_l[static_cast<std::size_t>(gamma) - 1] = pl;
                mr.pi_l_se[static_cast<std::size_t>(gamma) - 1] = proportion_se(pl, spec.n_eval);
            }
        }
    }
    return result;
}

void write_csv(const std::vector<CsvRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
    out << "table,K,alpha,model,param,method,metric,value,se,seed\n";
    for (const CsvRow& r : rows) {
        out << r.table << ',' << r.K << ',' << format_double(r.alpha) << ',' << r.model << ','
            << r.param << ',' << r.method << ',' << r.metric << ',' << format_double(r.value)
            << ',' << format_double(r.se) << ',' << r.seed << '\n';
    }
}

std::vector<CsvRow> experiment_rows(std::string_view table, const ExperimentResult& result,
                                    std::string_view param) {
    std::vector<CsvRow> rows;
    const ExperimentSpec& spec = result.spec;
    const auto push = [&](Method m, const std::string& metric, double value, double se) {
        rows.push_back({std::string(table), spec.K, spec.alpha, spec.model.str(),
                        std::string(param), std::string(method_name(m)), metric, value, se,
                        spec.seed});
    };
    for (const auto& [m, mr] : result.methods) {
        push(m, "pi_K", mr.pi_k, mr.pi_k_se);
        push(m, "pi_any", mr.pi_any, mr.pi_any_se);
        push(m, "fwer_max", mr.max_fwer(), proportion_se(mr.max_fwer(), spec.n_eval));
        for (int gamma = 0; gamma < spec.K; ++gamma) {
            push(m, "fwer_" + std::to_string(gamma), mr.fwer[static_cast<std::size_t>(gamma)],
                 mr.fwer_se[static_cast<std::size_t>(gamma)]);
        }
        for (std::size_t l = 0; l < mr.pi_l.size(); ++l) {
            push(m, "pi_l_" + std::to_string(l + 1), mr.pi_l[l], mr.pi_l_se[l]);
        }
    }
    return rows;
}

TableId table_id_from_name(std::string_view name) {
    if (name == "scaling") return TableId::scaling;
    if (name == "alpha_sensitivity") return TableId::alpha_sensitivity;
    if (name == "n_sensitivity") return TableId::n_sensitivity;
    if (name == "camerer") return TableId::camerer;
    if (name == "camerer_sensitivity") return TableId::camerer_sensitivity;
    if (name == "sprint") return TableId::sprint;
    if (name == "osc") return TableId::osc;
    throw std::invalid_argument("unknown table id '" + std::string(name) + "'");
}

std::string_view table_name(TableId id) {
    switch (id) {
        case TableId::scaling: return "scaling";
        case TableId::alpha_sensitivity: return "alpha_sensitivity";
        case TableId::n_sensitivity: return "n_sensitivity";
        case TableId::camerer: return "camerer";
        case TableId::camerer_sensitivity: return "camerer_sensitivity";
        case TableId::sprint: return "sprint";
        case TableId::osc: return "osc";
    }
    return "?";
}

namespace {

/// Fit at the study fixture's level and decide on its p-values.
PolicyResult fit_and_decide(const StudyFixture& fixture, double alpha, std::int64_t n_opt,
                            std::uint64_t seed, FitCache* cache, bool* converged = nullptr) {
    OptimizerConfig cfg;
    cfg.alpha = alpha;
    cfg.n_opt = n_opt;
    cfg.seed = derive_seed(seed, seed_tags::kOptimizer);
    FitCache local;
    const FitResult fr =
        (cache ? *cache : local).fit_or_load(fixture.model, static_cast<int>(fixture.p.size()), cfg);
    if (converged) *converged = fr.converged;
    return decide(fixture.model, fr.mu_hat, fixture.p);
}

std::vector<CsvRow> application_rows(std::string_view table, const StudyFixture& fixture,
                                     const TableOptions& options) {
    std::vector<CsvRow> rows;
    const int K = static_cast<int>(fixture.p.size());
    const PolicyResult optimal_result =
        fit_and_decide(fixture, fixture.alpha, options.n_opt, options.seed, options.cache);

    const auto set_for = [&](Method m) -> std::vector<bool> {
        switch (m) {
            case Method::optimal: return optimal_result.reject;
            case Method::bonferroni: return bonferroni(fixture.p, fixture.alpha).rejected;
            case Method::holm: return holm(fixture.p, fixture.alpha).rejected;
            case Method::hochberg: return hochberg(fixture.p, fixture.alpha).rejected;
            case Method::hommel: return hommel(fixture.p, fixture.alpha).rejected;
        }
        throw std::logic_error("application_rows: unreachable");
    };

    for (Method m : all_methods()) {
        const std::vector<bool> rejected = set_for(m);
        int count = 0;
        for (std::size_t i = 0; i < fixture.p.size(); ++i) {
            rows.push_back({std::string(table), K, fixture.alpha, fixture.model.str(),
                            fixture.labels[i], std::string(method_name(m)), "reject",
                            rejected[i] ? 1.0 : 0.0, 0.0, options.seed});
            count += rejected[i] ? 1 : 0;
        }
        rows.push_back({std::string(table), K, fixture.alpha, fixture.model.str(), "",
                        std::string(method_name(m)), "rejections", static_cast<double>(count), 0.0,
                        options.seed});
    }
    rows.push_back({std::string(table), K, fixture.alpha, fixture.model.str(), "", "optimal",
                    "l_star", static_cast<double>(optimal_result.l_star), 0.0, options.seed});
    return rows;
}

}  // namespace

std::vector<CsvRow> table_rows(TableId id, const TableOptions& options) {
    std::vector<CsvRow> rows;
    switch (id) {
        case TableId::scaling: {
            for (int K : options.k_values) {
                ExperimentSpec spec;
                spec.K = K;
                spec.model = AlternativeModel::trunc_normal(-2.0);
                spec.n_eval = options.n_eval;
                spec.n_opt = options.n_opt;
                spec.seed = options.seed;
                const ExperimentResult res = run_experiment(spec, options.cache);
                const auto r = experiment_rows("scaling", res, "theta=-2");
                rows.insert(rows.end(), r.begin(), r.end());
            }
            break;
        }
        case TableId::alpha_sensitivity: {
            for (double alpha : {0.01, 0.05, 0.10}) {
                ExperimentSpec spec;
                spec.K = 6;
                spec.alpha = alpha;
                spec.model = AlternativeModel::trunc_normal(-2.0);
                spec.n_eval = options.n_eval;
                spec.n_opt = options.n_opt;
                spec.seed = options.seed;
                const ExperimentResult res = run_experiment(spec, options.cache);
                const auto r = experiment_rows("alpha_sensitivity", res,
                                               "alpha=" + format_double(alpha));
                rows.insert(rows.end(), r.begin(), r.end());
            }
            break;
        }
        case TableId::n_sensitivity: {
            for (std::int64_t n_opt : {std::int64_t{50000}, std::int64_t{100000},
                                       std::int64_t{200000}}) {
                ExperimentSpec spec;
                spec.K = 6;
                spec.model = AlternativeModel::trunc_normal(-2.0);
                spec.n_eval = options.n_eval;
                spec.n_opt = n_opt;
                spec.seed = options.seed;
                spec.methods = {Method::optimal};
                const ExperimentResult res = run_experiment(spec, options.cache);
                const auto r = experiment_rows("n_sensitivity", res,
                                               "n_opt=" + std::to_string(n_opt));
                rows.insert(rows.end(), r.begin(), r.end());
            }
            break;
        }
        case TableId::camerer:
            return application_rows("camerer", camerer_fixture(), options);
        case TableId::camerer_sensitivity: {
            std::vector<AlternativeModel> models;
            for (double theta : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8})
                models.push_back(AlternativeModel::beta(theta));
            for (double theta : {-1.0, -1.5, -2.0, -2.5})
                models.push_back(AlternativeModel::trunc_normal(theta));
            for (const AlternativeModel& model : models) {
                StudyFixture fixture = camerer_fixture();
                fixture.model = model;
                const PolicyResult res = fit_and_decide(fixture, fixture.alpha, options.n_opt,
                                                        options.seed, options.cache);
                rows.push_back({"camerer_sensitivity", static_cast<int>(fixture.p.size()),
                                fixture.alpha, model.str(), "theta=" + format_double(model.theta),
                                "optimal", "l_star", static_cast<double>(res.l_star), 0.0,
                                options.seed});
            }
            break;
        }
        case TableId::sprint: {
            const StudyFixture& flat = sprint_fixture();
            bool converged = true;
            const PolicyResult flat_res = fit_and_decide(flat, flat.alpha, options.n_opt,
                                                         options.seed, options.cache, &converged);
            rows.push_back({"sprint", static_cast<int>(flat.p.size()), flat.alpha,
                            flat.model.str(), "flat", "optimal", "l_star",
                            static_cast<double>(flat_res.l_star), 0.0, options.seed});
            const HierarchicalConfig hcfg{options.n_opt, options.seed};
            const auto groups = hierarchical_apply(sprint_groups(), flat.alpha, hcfg,
                                                   options.cache);
            for (const GroupDecision& g : groups) {
                rows.push_back({"sprint", static_cast<int>(g.policy.reject.size()), g.level,
                                sprint_groups()[0].model.str(), "group=" + g.name, "optimal",
                                "l_star", static_cast<double>(g.policy.l_star), 0.0,
                                options.seed});
            }
            break;
        }
        case TableId::osc:
            return application_rows("osc", osc_fixture(), options);
    }
    return rows;
}

void reproduce_table(TableId id, const TableOptions& options, const std::string& out_path) {
    write_csv(table_rows(id, options), out_path);
}

std::vector<GroupDecision> hierarchical_apply(const std::vector<GroupSpec>& groups, double alpha,
                                              const HierarchicalConfig& cfg, FitCache* cache) {
    if (groups.empty()) throw std::invalid_argument("hierarchical: need at least one group");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("hierarchical: alpha must lie in (0, 1]");
    const double level = alpha / static_cast<double>(groups.size());

    std::vector<GroupDecision> decisions;
    decisions.reserve(groups.size());
    FitCache local;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const GroupSpec& group = groups[gi];
        if (group.p.size() < 2)
            throw std::invalid_argument("hierarchical: group '" + group.name +
                                        "' needs at least two p-values");
        OptimizerConfig fit_cfg;
        fit_cfg.alpha = level;
        fit_cfg.n_opt = cfg.n_opt;
        fit_cfg.seed = derive_seed(cfg.seed, seed_tags::kGroup, gi);
        const FitResult fr = (cache ? *cache : local)
                                 .fit_or_load(group.model, static_cast<int>(group.p.size()),
                                              fit_cfg);
        GroupDecision d;
        d.name = group.name;
        d.level = level;
        d.converged = fr.converged;
        d.policy = decide(group.model, fr.mu_hat, group.p);
        decisions.push_back(std::move(d));
    }
    return decisions;
}

GroupFile groups_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    GroupFile file;
    file.alpha = doc.value("alpha", 0.05);
    for (const auto& g : doc.at("groups")) {
        GroupSpec spec;
        spec.name = g.value("name", "group" + std::to_string(file.groups.size()));
        spec.model = AlternativeModel::parse(g.at("model").get<std::string>());
        spec.p = g.at("p").get<std::vector<double>>();
        file.groups.push_back(std::move(spec));
    }
    if (file.groups.empty()) throw std::invalid_argument("groups: empty group list");
    return file;
}

const StudyFixture& camerer_fixture() {
    static const StudyFixture fixture = {
        "camerer",
        0.05,
        AlternativeModel::beta(0.5),
        {"sparrow_2011", "balafoutas_2012", "kovacs_2010", "derex_2013", "rand_2012",
         "duncan_2012"},
        {0.004, 0.006, 0.024, 0.068, 0.071, 0.090},
    };
    return fixture;
}

const StudyFixture& sprint_fixture() {
    static const StudyFixture fixture = {
        "sprint",
        0.05,
        AlternativeModel::trunc_normal(-2.0),
        {"heart_failure", "cv_death", "mi", "stroke", "acs"},
        {0.002, 0.005, 0.19, 0.50, 0.99},
    };
    return fixture;
}

const StudyFixture& osc_fixture() {
    static const StudyFixture fixture = {
        "osc",
        0.05,
        AlternativeModel::beta(0.6),
        {"berkowitz", "fischer", "shnabel_nadler", "centerbar", "gillebaart", "cox"},
        {0.079, 0.141, 0.234, 0.322, 0.374, 0.469},
    };
    return fixture;
}

std::vector<GroupSpec> sprint_groups() {
    return {
        {"A", AlternativeModel::trunc_normal(-2.0), {0.002, 0.005}},
        {"B", AlternativeModel::trunc_normal(-2.0), {0.19, 0.50, 0.99}},
    };
}

StudyFixture fixture_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    StudyFixture fixture;
    fixture.name = doc.value("name", "study");
    fixture.alpha = doc.value("alpha", 0.05);
    fixture.model = AlternativeModel::parse(doc.at("model").get<std::string>());
    for (const auto& study : doc.at("studies")) {
        fixture.labels.push_back(study.at("label").get<std::string>());
        fixture.p.push_back(study.at("p").get<double>());
    }
    if (fixture.p.empty()) throw std::invalid_argument("fixture: no studies");
    return fixture;
}

}  // namespace optfwer
