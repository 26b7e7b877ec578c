// optfwer — optimal family-wise-error-rate control for exchangeable hypotheses.
//
// Subcommands: fit, apply, experiment, table, hierarchical. Every command is
// deterministic given its flags; all randomness flows from --seed.
// Exit codes: 0 success, 2 non-convergence, 64 usage error, 65 data-format error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optfwer/baselines.hpp"
#include "optfwer/harness.hpp"
#include "optfwer/optimizer.hpp"
#include "optfwer/parallel.hpp"
#include "optfwer/policy.hpp"
#include "optfwer/rng.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoConvergence = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDataFormat = 65;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string field;
    while (std::getline(stream, field, ',')) {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument("bad p-value '" + field + "'");
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("empty p-value list");
    return values;
}

void print_decisions(const optfwer::PolicyResult& result, const std::vector<double>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::cout << "H" << i + 1 << "  p=" << p[i] << "  "
                  << (result.reject[i] ? "REJECT" : "RETAIN") << '\n';
    }
    std::cout << "l_star=" << result.l_star << '\n';
}

struct FitFlags {
    int k = 0;
    double alpha = 0.05;
    std::string model;
    std::int64_t n_opt = 100000;
    std::uint64_t seed = optfwer::kDefaultSeed;
    double delta = 1e-4;
    double epsilon = 1e-2;
    int t_max = 20;
    double u_max = 50.0;
};

optfwer::OptimizerConfig to_config(const FitFlags& flags) {
    optfwer::OptimizerConfig cfg;
    cfg.alpha = flags.alpha;
    cfg.delta = flags.delta;
    cfg.epsilon = flags.epsilon;
    cfg.t_max = flags.t_max;
    cfg.u_max = flags.u_max;
    cfg.n_opt = flags.n_opt;
    cfg.seed = flags.seed;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal family-wise-error-rate controlling multiple testing"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker cap (default: OPTFWER_THREADS or all cores)");

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "fit the dual multipliers for a model");
    FitFlags fit_flags;
    std::string fit_out;
    cmd_fit->add_option("--k", fit_flags.k, "number of hypotheses")->required();
    cmd_fit->add_option("--alpha", fit_flags.alpha, "level (default 0.05)");
    cmd_fit->add_option("--model", fit_flags.model, "model spec, e.g. trunc:-2.0, beta:0.5")->required();
    cmd_fit->add_option("--n-opt", fit_flags.n_opt, "Monte Carlo batch size (default 100000)");
    cmd_fit->add_option("--seed", fit_flags.seed, "root seed (default 20240614)");
    cmd_fit->add_option("--delta", fit_flags.delta, "bisection tolerance (default 1e-4)");
    cmd_fit->add_option("--epsilon", fit_flags.epsilon, "convergence tolerance (default 1e-2)");
    cmd_fit->add_option("--t-max", fit_flags.t_max, "max outer iterations (default 20)");
    cmd_fit->add_option("--u-max", fit_flags.u_max, "initial bisection upper bound (default 50)");
    cmd_fit->add_option("--out", fit_out, "output JSON path")->required();

    // apply
    auto* cmd_apply = app.add_subcommand("apply", "apply a fitted policy to observed p-values");
    FitFlags apply_flags;
    std::string apply_mu, apply_p;
    cmd_apply->add_option("--mu", apply_mu, "fitted multipliers JSON (from fit)");
    cmd_apply->add_option("--k", apply_flags.k, "number of hypotheses (when fitting inline)");
    cmd_apply->add_option("--alpha", apply_flags.alpha, "level (default 0.05)");
    cmd_apply->add_option("--model", apply_flags.model, "model spec (when fitting inline)");
    cmd_apply->add_option("--n-opt", apply_flags.n_opt, "Monte Carlo batch size");
    cmd_apply->add_option("--seed", apply_flags.seed, "root seed");
    cmd_apply->add_option("--p", apply_p, "comma-separated p-values")->required();

    // experiment
    auto* cmd_experiment = app.add_subcommand("experiment", "run an experiment spec");
    std::string exp_spec, exp_out, exp_cache;
    cmd_experiment->add_option("--spec", exp_spec, "experiment spec JSON")->required();
    cmd_experiment->add_option("--out", exp_out, "output CSV path")->required();
    cmd_experiment->add_option("--cache-dir", exp_cache, "fit cache directory");

    // table
    auto* cmd_table = app.add_subcommand("table", "reproduce a results table");
    std::string table_id, table_out, table_cache;
    std::vector<int> table_k;
    std::uint64_t table_seed = optfwer::kDefaultSeed;
    std::int64_t table_n_opt = 100000, table_n_eval = 50000;
    cmd_table->add_option("--id", table_id,
                          "one of scaling, alpha_sensitivity, n_sensitivity, camerer, "
                          "camerer_sensitivity, sprint, osc")
        ->required();
    cmd_table->add_option("--out", table_out, "output CSV path")->required();
    cmd_table->add_option("--k", table_k, "K values (scaling table; default 3 6 12)");
    cmd_table->add_option("--seed", table_seed, "root seed");
    cmd_table->add_option("--n-opt", table_n_opt, "optimisation batch size");
    cmd_table->add_option("--n-eval", table_n_eval, "evaluation batch size");
    cmd_table->add_option("--cache-dir", table_cache, "fit cache directory");

    // hierarchical
    auto* cmd_hier = app.add_subcommand("hierarchical", "group-wise policy at level alpha/G");
    std::string hier_groups;
    double hier_alpha = -1.0;
    std::uint64_t hier_seed = optfwer::kDefaultSeed;
    std::int64_t hier_n_opt = 100000;
    cmd_hier->add_option("--groups", hier_groups, "groups JSON")->required();
    cmd_hier->add_option("--alpha", hier_alpha, "family level (default: from the groups file)");
    cmd_hier->add_option("--seed", hier_seed, "root seed");
    cmd_hier->add_option("--n-opt", hier_n_opt, "Monte Carlo batch size");

    // lets --threads appear after the subcommand name
    for (CLI::App* sub : {cmd_fit, cmd_apply, cmd_experiment, cmd_table, cmd_hier})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    if (threads > 0) optfwer::set_max_threads(threads);

    try {
        if (cmd_fit->parsed()) {
            if (fit_flags.k < 2) {
                std::cerr << "fit: --k must be >= 2\n";
                return kExitUsage;
            }
            optfwer::AlternativeModel model;
            try {
                model = optfwer::AlternativeModel::parse(fit_flags.model);
            } catch (const std::invalid_argument& e) {
                std::cerr << "fit: " << e.what() << '\n';
                return kExitUsage;
            }
            const optfwer::OptimizerConfig cfg = to_config(fit_flags);
            const optfwer::FitResult result = optfwer::fit(model, fit_flags.k, cfg);
            std::ofstream out(fit_out);
            if (!out) throw std::runtime_error("cannot open '" + fit_out + "'");
            out << optfwer::saved_fit_to_json({model, fit_flags.k, cfg, result});
            std::cout << "mu_hat = [";
            for (std::size_t i = 0; i < result.mu_hat.size(); ++i)
                std::cout << (i ? ", " : "") << result.mu_hat[i];
            std::cout << "]\niterations = " << result.iterations
                      << "\nconverged = " << (result.converged ? "yes" : "no") << '\n';
            return result.converged ? kExitOk : kExitNoConvergence;
        }

        if (cmd_apply->parsed()) {
            std::vector<double> p;
            try {
                p = parse_p_list(apply_p);
            } catch (const std::exception& e) {
                std::cerr << "apply: " << e.what() << '\n';
                return kExitUsage;
            }
            optfwer::AlternativeModel model;
            std::vector<double> mu;
            bool converged = true;
            if (!apply_mu.empty()) {
                optfwer::SavedFit saved;
                try {
                    saved = optfwer::saved_fit_from_json(read_file(apply_mu));
                } catch (const std::exception& e) {
                    std::cerr << "apply: " << e.what() << '\n';
                    return kExitDataFormat;
                }
                if (p.size() != static_cast<std::size_t>(saved.K)) {
                    std::cerr << "apply: expected " << saved.K << " p-values, got " << p.size()
                              << '\n';
                    return kExitUsage;
                }
                model = saved.model;
                mu = saved.result.mu_hat;
                converged = saved.result.converged;
            } else {
                if (apply_flags.model.empty() || apply_flags.k < 2) {
                    std::cerr << "apply: need --mu, or --model with --k >= 2\n";
                    return kExitUsage;
                }
                if (p.size() != static_cast<std::size_t>(apply_flags.k)) {
                    std::cerr << "apply: expected " << apply_flags.k << " p-values, got "
                              << p.size() << '\n';
                    return kExitUsage;
                }
                try {
                    model = optfwer::AlternativeModel::parse(apply_flags.model);
                } catch (const std::invalid_argument& e) {
                    std::cerr << "apply: " << e.what() << '\n';
                    return kExitUsage;
                }
                const optfwer::FitResult fit_result =
                    optfwer::fit(model, apply_flags.k, to_config(apply_flags));
                mu = fit_result.mu_hat;
                converged = fit_result.converged;
            }
            print_decisions(optfwer::decide(model, mu, p), p);
            return converged ? kExitOk : kExitNoConvergence;
        }

        if (cmd_experiment->parsed()) {
            optfwer::ExperimentSpec spec;
            try {
                spec = optfwer::ExperimentSpec::from_json(read_file(exp_spec));
            } catch (const std::exception& e) {
                std::cerr << "experiment: " << e.what() << '\n';
                return kExitDataFormat;
            }
            optfwer::FitCache cache(exp_cache);
            const optfwer::ExperimentResult result = optfwer::run_experiment(spec, &cache);
            optfwer::write_csv(optfwer::experiment_rows("experiment", result, ""), exp_out);
            for (const auto& [m, mr] : result.methods) {
                std::cout << optfwer::method_name(m) << ": pi_K=" << mr.pi_k
                          << " pi_any=" << mr.pi_any << " max_fwer=" << mr.max_fwer() << '\n';
            }
            std::cout << "wrote " << exp_out << '\n';
            return result.fit_converged ? kExitOk : kExitNoConvergence;
        }

        if (cmd_table->parsed()) {
            optfwer::TableId id;
            try {
                id = optfwer::table_id_from_name(table_id);
            } catch (const std::invalid_argument& e) {
                std::cerr << "table: " << e.what() << '\n';
                return kExitUsage;
            }
            optfwer::FitCache cache(table_cache);
            optfwer::TableOptions options;
            options.seed = table_seed;
            options.n_opt = table_n_opt;
            options.n_eval = table_n_eval;
            options.cache = &cache;
            if (!table_k.empty()) options.k_values = table_k;
            optfwer::reproduce_table(id, options, table_out);
            std::cout << "wrote " << table_out << '\n';
            return kExitOk;
        }

        if (cmd_hier->parsed()) {
            optfwer::GroupFile file;
            try {
                file = optfwer::groups_from_json(read_file(hier_groups));
            } catch (const std::exception& e) {
                std::cerr << "hierarchical: " << e.what() << '\n';
                return kExitDataFormat;
            }
            const double alpha = hier_alpha > 0.0 ? hier_alpha : file.alpha;
            optfwer::HierarchicalConfig cfg{hier_n_opt, hier_seed};
            const auto decisions = optfwer::hierarchical_apply(file.groups, alpha, cfg);
            bool converged = true;
            for (std::size_t gi = 0; gi < decisions.size(); ++gi) {
                const optfwer::GroupDecision& d = decisions[gi];
                std::cout << "group " << d.name << " (level " << d.level << "):\n";
                print_decisions(d.policy, file.groups[gi].p);
                converged = converged && d.converged;
            }
            return converged ? kExitOk : kExitNoConvergence;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
