#include "fads/commands.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fads/dynamics.hpp"
#include "fads/filter.hpp"
#include "fads/log.hpp"
#include "fads/strategy.hpp"
#include "fads/textio.hpp"
#include "fads/valuation.hpp"

namespace fads {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void append_value_report(JsonWriter& w, const char* key, const ValueReport& rep) {
    w.begin_object(key);
    w.field("investor", investor_name(rep.investor));
    w.field("gamma", rep.gamma);
    w.field("x0", rep.x0);
    w.field("e_int_theta2", rep.e_int_theta2);
    w.field("u_log", rep.u_log);
    w.field("u_pow", rep.u_pow);
    w.field("psi", rep.psi);
    w.field("u_log_asym", rep.u_log_asym);
    w.field("psi_asym", rep.psi_asym);
    w.field("excess_log_asym", rep.excess_log_asym);
    w.field("excess_psi_asym", rep.excess_psi_asym);
    w.field("wealth_relative", rep.wealth_relative);
    w.end_object();
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
    const ModelParams& prm = cfg.model;
    const TimeGrid grid(prm.horizon, cfg.experiment.n_steps);
    const std::int64_t n_paths = cfg.experiment.n_paths;
    if (n_paths < 1) throw std::invalid_argument("simulate needs experiment.n_paths >= 1");

    CsvWriter paths_csv({"t", "w", "b", "u", "y", "s"});
    CsvWriter filter_csv({"t", "gamma", "b0", "upsilon0", "mu0"});
    CsvWriter wealth_csv({"t", "pi", "v", "v_tilde"});

    for (std::int64_t i = 0; i < n_paths; ++i) {
        NormalSampler normals(cfg.experiment.seed, static_cast<std::uint64_t>(i));
        const MarketPath path = simulate_market(prm, grid, normals);
        const InformedView view = informed_view(path, prm);
        const FilterPath filt = run_filter(path, prm);

        // The dumped wealth path follows the configured investor and rule.
        const std::vector<double>& mu_i =
            cfg.experiment.investor == Investor::informed ? view.mu1 : filt.mu0;
        std::vector<double> pi;
        switch (cfg.experiment.rule.kind) {
            case RuleKind::optimal:
                pi = optimal_portfolio(mu_i, prm, grid);
                break;
            case RuleKind::scaled:
                pi = optimal_portfolio(mu_i, prm, grid);
                for (double& w : pi) w *= cfg.experiment.rule.value;
                break;
            case RuleKind::constant_weight:
                pi.assign(grid.points(), cfg.experiment.rule.value);
                break;
        }
        std::vector<double> db(static_cast<std::size_t>(grid.steps()));
        for (int k = 0; k < grid.steps(); ++k) {
            db[static_cast<std::size_t>(k)] =
                cfg.experiment.investor == Investor::informed
                    ? view.b1[static_cast<std::size_t>(k) + 1] - view.b1[static_cast<std::size_t>(k)]
                    : filt.b0[static_cast<std::size_t>(k) + 1] - filt.b0[static_cast<std::size_t>(k)];
        }
        const WealthPath wealth = evolve_wealth(pi, mu_i, db, prm, grid);

        for (std::size_t k = 0; k < grid.points(); ++k) {
            const double t = grid.t(static_cast<int>(k));
            paths_csv.row({t, path.w[k], path.b[k], path.u[k], path.y[k], path.s[k]});
            filter_csv.row({t, filt.gamma_vals[k], filt.b0[k], filt.upsilon0[k], filt.mu0[k]});
            wealth_csv.row({t, wealth.pi[k], wealth.v[k], wealth.v_tilde[k]});
        }
    }

    write_file(join(cfg.out_dir, "paths.csv"), paths_csv.str());
    write_file(join(cfg.out_dir, "filter.csv"), filter_csv.str());
    write_file(join(cfg.out_dir, "wealth.csv"), wealth_csv.str());
    log_info("simulate: wrote paths.csv, filter.csv, wealth.csv to " + cfg.out_dir);
    return 0;
}

int cmd_value(const RunConfig& cfg) {
    const ValueSummary summary = value_summary(cfg.model);  // rejects nonzero r

    JsonWriter w;
    w.begin_object();
    w.begin_object("model");
    w.field("lambda", cfg.model.lambda);
    w.field("p", cfg.model.p);
    w.field("q2", 1.0 - cfg.model.p * cfg.model.p);
    w.field("gamma", cfg.model.gamma);
    w.field("T", cfg.model.horizon);
    w.field("x0", cfg.model.x0);
    w.end_object();
    append_value_report(w, "informed", summary.informed);
    append_value_report(w, "uninformed", summary.uninformed);
    w.begin_object("excess");
    w.field("e_int_theta2", summary.excess_e_int_theta2);
    w.field("u_log", summary.excess_u_log);
    w.field("psi", summary.excess_psi);
    w.field("excess_log_asym", summary.excess_log_asym);
    w.field("excess_psi_asym", summary.excess_psi_asym);
    w.field("wealth_relative", summary.wealth_relative);
    w.end_object();
    w.end_object();

    write_file(join(cfg.out_dir, "value_report.json"), w.str() + "\n");
    log_info("value: wrote value_report.json to " + cfg.out_dir);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto axis_or_point = [](const std::vector<double>& axis, double point) {
        return axis.empty() ? std::vector<double>{point} : axis;
    };
    const std::vector<double> lambdas = axis_or_point(cfg.sweep.lambda, cfg.model.lambda);
    const std::vector<double> ps = axis_or_point(cfg.sweep.p, cfg.model.p);
    const std::vector<double> gammas = axis_or_point(cfg.sweep.gamma, cfg.model.gamma);
    const std::vector<double> horizons = axis_or_point(cfg.sweep.horizon, cfg.model.horizon);

    CsvWriter csv({"lambda",        "p",
                   "gamma",         "T",
                   "inf_e_int_theta2", "inf_u_log",
                   "inf_psi",       "inf_u_pow",
                   "inf_u_log_asym", "inf_psi_asym",
                   "unf_e_int_theta2", "unf_u_log",
                   "unf_psi",       "unf_u_pow",
                   "unf_u_log_asym", "unf_psi_asym",
                   "excess_u_log",  "excess_psi",
                   "excess_log_asym", "excess_psi_asym",
                   "wealth_relative"});

    for (double lambda : lambdas) {
        for (double p : ps) {
            for (double gamma : gammas) {
                for (double horizon : horizons) {
                    ModelParams prm = cfg.model;
                    prm.lambda = lambda;
                    prm.p = p;
                    prm.gamma = gamma;
                    prm.horizon = horizon;
                    prm = validate_params(prm);
                    const ValueSummary s = value_summary(prm);
                    csv.row({lambda, p, gamma, horizon,
                             s.informed.e_int_theta2, s.informed.u_log, s.informed.psi,
                             s.informed.u_pow, s.informed.u_log_asym, s.informed.psi_asym,
                             s.uninformed.e_int_theta2, s.uninformed.u_log, s.uninformed.psi,
                             s.uninformed.u_pow, s.uninformed.u_log_asym, s.uninformed.psi_asym,
                             s.excess_u_log, s.excess_psi, s.excess_log_asym, s.excess_psi_asym,
                             s.wealth_relative});
                }
            }
        }
    }

    write_file(join(cfg.out_dir, "sweep.csv"), csv.str());
    log_info("sweep: wrote sweep.csv to " + cfg.out_dir);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    VerifyOptions opts;
    opts.seed = cfg.experiment.seed;
    opts.threads = cfg.experiment.threads;
    // Nominal scale is 1e5 paths; smaller configured runs downgrade failing
    // MC gates to inconclusive.
    opts.scale = std::min(1.0, static_cast<double>(cfg.experiment.n_paths) / 100000.0);

    const std::vector<CheckResult> checks = run_acceptance_checks(opts);
    for (const auto& c : checks) {
        std::printf("%s\n", format_check_line(c).c_str());
    }
    write_file(join(cfg.out_dir, "verify_report.json"), render_verify_report(opts, checks));
    log_info("verify: wrote verify_report.json to " + cfg.out_dir);
    return all_passed(checks) ? 0 : 1;
}

}  // namespace fads
