#include "qrepsim/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace qrepsim {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_sweep_csv(std::ostream& os, const std::vector<RunResult>& results) {
    os << "strategy,hops,lambda_gate,p_meas,fidelity,fidelity_stderr,exp_xx,exp_yy,exp_zz,"
          "throughput_pairs_per_s,simulated_s,wall_s,seed\n";
    for (const RunResult& r : results) {
        os << strategy_name(r.config.strategy) << ',' << r.config.hops << ','
           << format_double(r.config.channel.lambda_gate) << ','
           << format_double(r.config.channel.p_meas) << ','
           << format_double(r.estimate.fidelity) << ','
           << format_double(r.estimate.fidelity_stderr) << ','
           << format_double(r.estimate.exp_xx) << ',' << format_double(r.estimate.exp_yy) << ','
           << format_double(r.estimate.exp_zz) << ','
           << format_double(r.throughput_pairs_per_s) << ',' << format_double(r.simulated_s)
           << ',' << format_double(r.wall_s) << ',' << r.config.seed << '\n';
    }
}

void write_fig2_csv(std::ostream& os, const std::vector<Fig2Row>& rows) {
    os << "p_depo,analytic_e2e,simulated_e2e,stderr\n";
    for (const Fig2Row& row : rows) {
        os << format_double(row.p_depo) << ',' << format_double(row.analytic_e2e) << ','
           << format_double(row.simulated_e2e) << ',' << format_double(row.std_error) << '\n';
    }
}

namespace {

nlohmann::json counters_to_json(const SimCounters& c) {
    return nlohmann::json{
        {"link_attempts", c.link_attempts},
        {"raw_generated", c.raw_generated},
        {"raw_consumed_swap", c.raw_consumed_swap},
        {"raw_consumed_purify", c.raw_consumed_purify},
        {"raw_consumed_ncx", c.raw_consumed_ncx},
        {"purify_attempts", c.purify_attempts},
        {"purify_accepts", c.purify_accepts},
        {"purify_rejects", c.purify_rejects},
        {"swaps_physical", c.swaps_physical},
        {"swaps_logical", c.swaps_logical},
        {"ncx_encodes", c.ncx_encodes},
        {"seed_encodes", c.seed_encodes},
        {"delivered", c.delivered},
    };
}

SimCounters counters_from_json(const nlohmann::json& j) {
    SimCounters c;
    c.link_attempts = j.at("link_attempts").get<std::uint64_t>();
    c.raw_generated = j.at("raw_generated").get<std::uint64_t>();
    c.raw_consumed_swap = j.at("raw_consumed_swap").get<std::uint64_t>();
    c.raw_consumed_purify = j.at("raw_consumed_purify").get<std::uint64_t>();
    c.raw_consumed_ncx = j.at("raw_consumed_ncx").get<std::uint64_t>();
    c.purify_attempts = j.at("purify_attempts").get<std::uint64_t>();
    c.purify_accepts = j.at("purify_accepts").get<std::uint64_t>();
    c.purify_rejects = j.at("purify_rejects").get<std::uint64_t>();
    c.swaps_physical = j.at("swaps_physical").get<std::uint64_t>();
    c.swaps_logical = j.at("swaps_logical").get<std::uint64_t>();
    c.ncx_encodes = j.at("ncx_encodes").get<std::uint64_t>();
    c.seed_encodes = j.at("seed_encodes").get<std::uint64_t>();
    c.delivered = j.at("delivered").get<std::uint64_t>();
    return c;
}

} // namespace

std::string result_to_json(const RunResult& r) {
    nlohmann::json j{
        {"strategy", strategy_name(r.config.strategy)},
        {"hops", r.config.hops},
        {"lambda_gate", r.config.channel.lambda_gate},
        {"p_meas", r.config.channel.p_meas},
        {"p_depo", r.config.channel.p_depo},
        {"loss_db_per_km", r.config.channel.loss_db_per_km},
        {"total_km", r.config.total_km},
        {"c_fiber_km_s", r.config.c_fiber_km_s},
        {"n_meas", r.config.n_meas},
        {"trajectories", r.config.trajectories},
        {"seed", r.config.seed},
        {"link_parallelism", r.config.pools.link_parallelism},
        {"bank_batches", r.config.pools.bank_batches},
        {"qubits_per_node", r.config.pools.qubits_per_node},
        {"fidelity", r.estimate.fidelity},
        {"fidelity_raw", r.estimate.fidelity_raw},
        {"fidelity_stderr", r.estimate.fidelity_stderr},
        {"exp_xx", r.estimate.exp_xx},
        {"exp_yy", r.estimate.exp_yy},
        {"exp_zz", r.estimate.exp_zz},
        {"n_xx", r.estimate.n_xx},
        {"n_yy", r.estimate.n_yy},
        {"n_zz", r.estimate.n_zz},
        {"throughput_pairs_per_s", r.throughput_pairs_per_s},
        {"simulated_s", r.simulated_s},
        {"wall_s", r.wall_s},
        {"trace_hash", r.trace_hash},
        {"counters", counters_to_json(r.counters)},
    };
    if (r.config.channel.memory_disabled()) {
        j["tau_s"] = "disabled";
    } else {
        j["tau_s"] = r.config.channel.tau_s;
    }
    return j.dump(2);
}

RunResult result_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunResult r;
    auto k = strategy_from_name(j.at("strategy").get<std::string>());
    if (!k) {
        throw ConfigError("unknown strategy in JSON result");
    }
    r.config.strategy = *k;
    r.config.hops = j.at("hops").get<int>();
    r.config.channel.lambda_gate = j.at("lambda_gate").get<double>();
    r.config.channel.p_meas = j.at("p_meas").get<double>();
    r.config.channel.p_depo = j.at("p_depo").get<double>();
    r.config.channel.loss_db_per_km = j.at("loss_db_per_km").get<double>();
    if (j.at("tau_s").is_string()) {
        r.config.channel.tau_s = ChannelParams::kMemoryDisabled;
    } else {
        r.config.channel.tau_s = j.at("tau_s").get<double>();
    }
    r.config.total_km = j.at("total_km").get<double>();
    r.config.c_fiber_km_s = j.at("c_fiber_km_s").get<double>();
    r.config.n_meas = j.at("n_meas").get<int>();
    r.config.trajectories = j.at("trajectories").get<int>();
    r.config.seed = j.at("seed").get<std::uint64_t>();
    r.config.pools.link_parallelism = j.at("link_parallelism").get<int>();
    r.config.pools.bank_batches = j.at("bank_batches").get<int>();
    r.config.pools.qubits_per_node = j.at("qubits_per_node").get<int>();
    r.estimate.fidelity = j.at("fidelity").get<double>();
    r.estimate.fidelity_raw = j.at("fidelity_raw").get<double>();
    r.estimate.fidelity_stderr = j.at("fidelity_stderr").get<double>();
    r.estimate.exp_xx = j.at("exp_xx").get<double>();
    r.estimate.exp_yy = j.at("exp_yy").get<double>();
    r.estimate.exp_zz = j.at("exp_zz").get<double>();
    r.estimate.n_xx = j.at("n_xx").get<std::uint64_t>();
    r.estimate.n_yy = j.at("n_yy").get<std::uint64_t>();
    r.estimate.n_zz = j.at("n_zz").get<std::uint64_t>();
    r.throughput_pairs_per_s = j.at("throughput_pairs_per_s").get<double>();
    r.simulated_s = j.at("simulated_s").get<double>();
    r.wall_s = j.at("wall_s").get<double>();
    r.trace_hash = j.at("trace_hash").get<std::uint64_t>();
    r.counters = counters_from_json(j.at("counters"));
    return r;
}

} // namespace qrepsim
