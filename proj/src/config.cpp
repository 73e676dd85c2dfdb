#include "qrepsim/config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace qrepsim {

StrategyConfig default_config() {
    StrategyConfig cfg;
    cfg.strategy = StrategyKind::ZeroG;
    cfg.hops = 2;
    cfg.n_meas = 9000;
    cfg.trajectories = 10;
    cfg.total_km = 100.0;
    cfg.c_fiber_km_s = 300000.0;
    cfg.seed = 1;
    cfg.channel.p_depo = 0.025;
    cfg.channel.lambda_gate = 0.0;
    cfg.channel.tau_s = 0.01;
    cfg.channel.p_meas = 0.0;
    cfg.channel.loss_db_per_km = 0.3;
    return cfg;
}

namespace {

double number_field(const nlohmann::json& j, const std::string& key) {
    if (!j.at(key).is_number()) {
        throw ConfigError("config field '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

} // namespace

void apply_config_file(StrategyConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config file " + path + " must contain a JSON object");
    }

    for (auto& [key, value] : j.items()) {
        try {
            if (key == "strategy") {
                auto k = strategy_from_name(value.get<std::string>());
                if (!k) {
                    throw ConfigError("unknown strategy '" + value.get<std::string>() + "'");
                }
                cfg.strategy = *k;
            } else if (key == "hops") {
                cfg.hops = value.get<int>();
            } else if (key == "n_meas" || key == "samples") {
                cfg.n_meas = value.get<int>();
            } else if (key == "trajectories") {
                cfg.trajectories = value.get<int>();
            } else if (key == "total_km") {
                cfg.total_km = number_field(j, key);
            } else if (key == "c_fiber_km_s") {
                cfg.c_fiber_km_s = number_field(j, key);
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "p_depo") {
                cfg.channel.p_depo = number_field(j, key);
            } else if (key == "lambda_gate") {
                cfg.channel.lambda_gate = number_field(j, key);
            } else if (key == "p_meas") {
                cfg.channel.p_meas = number_field(j, key);
            } else if (key == "loss_db_per_km") {
                cfg.channel.loss_db_per_km = number_field(j, key);
            } else if (key == "tau_s" || key == "memory") {
                if (value.is_string() && value.get<std::string>() == "disabled") {
                    cfg.channel.tau_s = ChannelParams::kMemoryDisabled;
                } else {
                    cfg.channel.tau_s = number_field(j, key);
                }
            } else if (key == "link_parallelism") {
                cfg.pools.link_parallelism = value.get<int>();
            } else if (key == "bank_batches") {
                cfg.pools.bank_batches = value.get<int>();
            } else if (key == "qubits_per_node") {
                cfg.pools.qubits_per_node = value.get<int>();
            } else {
                throw ConfigError("unknown config field '" + key + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config field '" + key + "': " + e.what());
        }
    }
}

void apply_disable(ChannelParams& params, const std::string& channel_name) {
    if (channel_name == "loss") {
        params.loss_db_per_km = 0.0;
    } else if (channel_name == "dep") {
        params.p_depo = 0.0;
    } else if (channel_name == "gate") {
        params.lambda_gate = 0.0;
    } else if (channel_name == "mem") {
        params.tau_s = ChannelParams::kMemoryDisabled;
    } else if (channel_name == "meas") {
        params.p_meas = 0.0;
    } else {
        throw ConfigError("unknown noise channel '" + channel_name +
                          "' (expected loss, dep, gate, mem or meas)");
    }
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
    const char* env = std::getenv("QREPSIM_SEED");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') {
        throw ConfigError("QREPSIM_SEED must be an unsigned integer");
    }
    return static_cast<std::uint64_t>(v);
}

} // namespace qrepsim
