#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qrepsim/analytic_oracle.hpp"
#include "qrepsim/config.hpp"
#include "qrepsim/io.hpp"
#include "qrepsim/runner.hpp"

namespace {

using namespace qrepsim;

struct SharedFlags {
    std::string config_path;
    std::vector<std::string> disable;
    bool memory_disabled = false;
    int samples = 0; // total measurements across trajectories; 0 keeps the default
};

// Flags shared by every subcommand. Precedence: defaults < config file < flags.
void add_shared_options(CLI::App* cmd, StrategyConfig& cfg, SharedFlags& shared) {
    cmd->add_option("--config", shared.config_path, "JSON config file");
    cmd->add_option("--gate-error", cfg.channel.lambda_gate, "gate error parameter lambda");
    cmd->add_option("--meas-error", cfg.channel.p_meas, "measurement flip probability");
    cmd->add_option("--pdepo", cfg.channel.p_depo, "depolarizing probability per matter qubit");
    cmd->add_option("--tau", cfg.channel.tau_s, "memory lifetime in seconds");
    cmd->add_flag("--memory-disabled", shared.memory_disabled, "infinite memory lifetime");
    cmd->add_option("--loss", cfg.channel.loss_db_per_km, "fiber loss in dB/km");
    cmd->add_option("--total-km", cfg.total_km, "end-to-end chain length in km");
    cmd->add_option("--cspeed", cfg.c_fiber_km_s, "speed of light in fiber, km/s");
    cmd->add_option("--samples", shared.samples, "total measurements across trajectories");
    cmd->add_option("--trajectories", cfg.trajectories, "independent trajectories");
    cmd->add_option("--seed", cfg.seed, "master random seed (QREPSIM_SEED as fallback)");
    cmd->add_option("--link-parallelism", cfg.pools.link_parallelism,
                    "concurrent generation attempts per link");
    cmd->add_option("--bank-batches", cfg.pools.bank_batches,
                    "buffered consumer batches per resource stage");
    cmd->add_option("--qubits-per-node", cfg.pools.qubits_per_node,
                    "qubit pool size per node (0 = computed minimum)");
    cmd->add_option("--disable", shared.disable,
                    "disable noise channels: loss, dep, gate, mem, meas")
        ->delimiter(',');
}

// Applies config file, env seed, ablations and the sample count to cfg.
// Precedence: built-in defaults < config file < explicitly passed flags.
void finalize_config(const CLI::App* cmd, StrategyConfig& cfg, const SharedFlags& shared) {
    if (!shared.config_path.empty()) {
        StrategyConfig file_cfg = cfg;
        apply_config_file(file_cfg, shared.config_path);
        struct FlagField {
            const char* flag;
            void (*keep)(StrategyConfig& dst, const StrategyConfig& flags);
        };
        static const FlagField kFields[] = {
            {"--hops", [](StrategyConfig& d, const StrategyConfig& f) { d.hops = f.hops; }},
            {"--gate-error",
             [](StrategyConfig& d, const StrategyConfig& f) {
                 d.channel.lambda_gate = f.channel.lambda_gate;
             }},
            {"--meas-error",
             [](StrategyConfig& d, const StrategyConfig& f) { d.channel.p_meas = f.channel.p_meas; }},
            {"--pdepo",
             [](StrategyConfig& d, const StrategyConfig& f) { d.channel.p_depo = f.channel.p_depo; }},
            {"--tau",
             [](StrategyConfig& d, const StrategyConfig& f) { d.channel.tau_s = f.channel.tau_s; }},
            {"--loss",
             [](StrategyConfig& d, const StrategyConfig& f) {
                 d.channel.loss_db_per_km = f.channel.loss_db_per_km;
             }},
            {"--total-km",
             [](StrategyConfig& d, const StrategyConfig& f) { d.total_km = f.total_km; }},
            {"--cspeed",
             [](StrategyConfig& d, const StrategyConfig& f) { d.c_fiber_km_s = f.c_fiber_km_s; }},
            {"--trajectories",
             [](StrategyConfig& d, const StrategyConfig& f) { d.trajectories = f.trajectories; }},
            {"--seed", [](StrategyConfig& d, const StrategyConfig& f) { d.seed = f.seed; }},
            {"--link-parallelism",
             [](StrategyConfig& d, const StrategyConfig& f) {
                 d.pools.link_parallelism = f.pools.link_parallelism;
             }},
            {"--bank-batches",
             [](StrategyConfig& d, const StrategyConfig& f) {
                 d.pools.bank_batches = f.pools.bank_batches;
             }},
            {"--qubits-per-node",
             [](StrategyConfig& d, const StrategyConfig& f) {
                 d.pools.qubits_per_node = f.pools.qubits_per_node;
             }},
        };
        for (const FlagField& field : kFields) {
            if (cmd->count(field.flag) > 0) {
                field.keep(file_cfg, cfg);
            }
        }
        if (cmd->count("--strategy") > 0) {
            file_cfg.strategy = cfg.strategy;
        }
        cfg = file_cfg;
    }
    if (cmd->count("--seed") == 0) {
        cfg.seed = seed_from_env_or(cfg.seed);
    }
    if (shared.memory_disabled) {
        cfg.channel.tau_s = ChannelParams::kMemoryDisabled;
    }
    for (const std::string& name : shared.disable) {
        apply_disable(cfg.channel, name);
    }
    if (shared.samples > 0) {
        cfg.n_meas = (shared.samples + cfg.trajectories - 1) / cfg.trajectories;
    }
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0) {
            throw ConfigError("grid must be start:stop:step, got '" + text + "'");
        }
        for (double v = start; v <= stop + step * 1e-9; v += step) {
            grid.push_back(v);
        }
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            grid.push_back(std::stod(item));
        }
    }
    if (grid.empty()) {
        throw ConfigError("empty grid: '" + text + "'");
    }
    return grid;
}

void write_text_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw SimulationError("cannot write output file: " + path);
    }
    out << text;
}

int cmd_run(StrategyConfig cfg, bool as_json, const std::string& out_path) {
    RunResult r = run_strategy(cfg);
    std::string text;
    if (as_json) {
        text = result_to_json(r) + "\n";
    } else {
        std::ostringstream os;
        write_sweep_csv(os, {r});
        text = os.str();
    }
    write_text_output(out_path, text);
    return 0;
}

int cmd_sweep(const StrategyConfig& base, const std::vector<StrategyKind>& strategies,
              const std::vector<int>& hops_list, int jobs, const std::string& out_path) {
    std::vector<StrategyConfig> points;
    std::uint64_t idx = 0;
    for (StrategyKind s : strategies) {
        for (int h : hops_list) {
            for (double lambda : kLambdaGateGrid) {
                for (double pm : kPMeasGrid) {
                    StrategyConfig cfg = base;
                    cfg.strategy = s;
                    cfg.hops = h;
                    cfg.channel.lambda_gate = lambda;
                    cfg.channel.p_meas = pm;
                    cfg.seed = derive_seed(base.seed, idx++);
                    points.push_back(cfg);
                }
            }
        }
    }
    std::vector<RunResult> results = run_points(points, jobs);
    std::ostringstream os;
    write_sweep_csv(os, results);
    write_text_output(out_path, os.str());
    return 0;
}

int cmd_validate_fig2(const StrategyConfig& base, const std::vector<double>& grid, bool purify,
                      int jobs, const std::string& out_path) {
    std::vector<StrategyConfig> points;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        StrategyConfig cfg = base;
        cfg.strategy = purify ? StrategyKind::OneG : StrategyKind::ZeroG;
        cfg.hops = 2;
        cfg.channel.p_depo = grid[i];
        cfg.channel.lambda_gate = 0.0;
        cfg.channel.p_meas = 0.0;
        cfg.channel.loss_db_per_km = 0.0;
        cfg.channel.tau_s = ChannelParams::kMemoryDisabled;
        cfg.seed = derive_seed(base.seed, 1000 + i);
        points.push_back(cfg);
    }
    std::vector<RunResult> results = run_points(points, jobs);
    std::vector<Fig2Row> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double p = grid[i];
        Fig2Row row;
        row.p_depo = p;
        if (purify) {
            double fp = f_ssdp(f_link(p));
            row.analytic_e2e = f_swap(fp, fp);
        } else {
            row.analytic_e2e = f_e2e(p);
        }
        row.simulated_e2e = results[i].estimate.fidelity;
        row.std_error = results[i].estimate.fidelity_stderr;
        rows.push_back(row);
    }
    std::ostringstream os;
    write_fig2_csv(os, rows);
    write_text_output(out_path, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qrepsim: discrete-event simulator for linear quantum repeater chains"};
    app.require_subcommand(1);

    StrategyConfig base = default_config();

    // run
    auto* run = app.add_subcommand("run", "run one strategy configuration");
    StrategyConfig run_cfg = base;
    SharedFlags run_shared;
    std::string run_strategy_name = "0g";
    bool run_json = false;
    std::string run_out;
    run->add_option("--strategy", run_strategy_name, "strategy name")->required();
    run->add_option("--hops", run_cfg.hops, "number of hops (2, 4 or 8)");
    run->add_flag("--json", run_json, "emit the result as JSON");
    run->add_option("--out", run_out, "output path ('-' or empty for stdout)");
    add_shared_options(run, run_cfg, run_shared);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep the full strategy comparison grid");
    StrategyConfig sweep_cfg = base;
    sweep_cfg.n_meas = 3000;
    sweep_cfg.trajectories = 1;
    SharedFlags sweep_shared;
    std::string sweep_strategies = "all";
    std::string sweep_hops = "2,4,8";
    std::string sweep_out;
    int sweep_jobs = 0;
    sweep->add_option("--strategies", sweep_strategies, "'all' or comma list of strategy names");
    sweep->add_option("--hops", sweep_hops, "comma list of hop counts");
    sweep->add_option("--jobs", sweep_jobs, "parallel workers (0 = hardware threads)");
    sweep->add_option("--out", sweep_out, "output CSV path");
    add_shared_options(sweep, sweep_cfg, sweep_shared);

    // validate-fig2
    auto* fig2 = app.add_subcommand("validate-fig2",
                                    "compare the simulated end-to-end fidelity after one swap "
                                    "against the closed-form curves");
    StrategyConfig fig2_cfg = base;
    SharedFlags fig2_shared;
    std::string fig2_grid = "0:0.2:0.01";
    std::string fig2_out;
    bool fig2_purify = false;
    int fig2_jobs = 0;
    fig2->add_option("--pdepo-grid", fig2_grid, "depolarizing grid start:stop:step or comma list");
    fig2->add_flag("--purify", fig2_purify, "apply link purification before the swap");
    fig2->add_option("--jobs", fig2_jobs, "parallel workers (0 = hardware threads)");
    fig2->add_option("--out", fig2_out, "output CSV path");
    add_shared_options(fig2, fig2_cfg, fig2_shared);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run->parsed()) {
            auto kind = strategy_from_name(run_strategy_name);
            if (!kind) {
                throw ConfigError("unknown strategy '" + run_strategy_name + "'");
            }
            run_cfg.strategy = *kind;
            finalize_config(run, run_cfg, run_shared);
            return cmd_run(run_cfg, run_json, run_out);
        }
        if (sweep->parsed()) {
            finalize_config(sweep, sweep_cfg, sweep_shared);
            std::vector<StrategyKind> strategies;
            if (sweep_strategies == "all") {
                strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
            } else {
                std::istringstream ss(sweep_strategies);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto kind = strategy_from_name(item);
                    if (!kind) {
                        throw ConfigError("unknown strategy '" + item + "'");
                    }
                    strategies.push_back(*kind);
                }
            }
            std::vector<int> hops_list;
            for (double h : parse_grid(sweep_hops)) {
                hops_list.push_back(static_cast<int>(h));
            }
            return cmd_sweep(sweep_cfg, strategies, hops_list, sweep_jobs, sweep_out);
        }
        if (fig2->parsed()) {
            finalize_config(fig2, fig2_cfg, fig2_shared);
            return cmd_validate_fig2(fig2_cfg, parse_grid(fig2_grid), fig2_purify, fig2_jobs,
                                     fig2_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
