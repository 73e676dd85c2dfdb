#pragma once

#include <array>
#include <string>

#include "qrepsim/strategies.hpp"

namespace qrepsim {

// Fixed simulation parameters: 100 km chain, 300000 km/s fiber light speed,
// p_depo 0.025, 10 ms memory lifetime, 0.30 dB/km loss.
StrategyConfig default_config();

// Parameter grids swept by the full comparison: five gate-error values, five
// measurement-error values, three hop counts, all six strategies.
inline constexpr std::array<double, 5> kLambdaGateGrid{0.0000, 0.0005, 0.0010, 0.0015, 0.0020};
inline constexpr std::array<double, 5> kPMeasGrid{0.0000, 0.0025, 0.0050, 0.0075, 0.0100};
inline constexpr std::array<int, 3> kHopsGrid{2, 4, 8};

// Merges a JSON config file into cfg. Unknown keys and invalid values produce a
// ConfigError naming the field. "memory": "disabled" selects infinite lifetime.
void apply_config_file(StrategyConfig& cfg, const std::string& path);

// Noise-ablation switch: turns off one channel by name
// (loss | dep | gate | mem | meas).
void apply_disable(ChannelParams& params, const std::string& channel_name);

// Seed resolution fallback: QREPSIM_SEED when set, otherwise the given default.
std::uint64_t seed_from_env_or(std::uint64_t fallback);

} // namespace qrepsim
