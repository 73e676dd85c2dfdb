#pragma once

#include <stdexcept>
#include <string>

namespace qrepsim {

// Invalid user-facing configuration (bad flag, bad config file, pool too small).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Violation of an internal API precondition.
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Failure while a simulation is running.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qrepsim
