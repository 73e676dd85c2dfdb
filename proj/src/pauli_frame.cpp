#include "qrepsim/pauli_frame.hpp"

#include <cmath>

namespace qrepsim {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
}

void xor_pauli_index(PauliFrame& f, std::uint32_t idx) {
    // 0 = I, 1 = X, 2 = Y, 3 = Z
    switch (idx) {
        case 0: break;
        case 1: f.flip_x(); break;
        case 2: f.flip_y(); break;
        case 3: f.flip_z(); break;
    }
}

} // namespace

void ChannelParams::validate() const {
    check_probability(p_depo, "p_depo");
    check_probability(lambda_gate, "lambda_gate");
    check_probability(p_meas, "p_meas");
    if (!(loss_db_per_km >= 0.0)) {
        throw ConfigError("loss_db_per_km must be >= 0");
    }
    if (!(tau_s > 0.0)) {
        throw ConfigError("tau_s must be > 0 (use the disabled setting for infinite lifetime)");
    }
}

void apply_depolarizing(PauliFrame& frame, double p_depo, RandomStream& rng) {
    if (rng.bernoulli(p_depo)) {
        xor_pauli_index(frame, 1 + rng.uniform_int(3));
    }
}

void propagate_clifford(Gate gate, PauliFrame& frame) {
    switch (gate) {
        case Gate::H: {
            bool t = frame.x;
            frame.x = frame.z;
            frame.z = t;
            break;
        }
        case Gate::S:
            // X -> Y, Y -> X (phase untracked), Z -> Z
            frame.z = frame.z != frame.x;
            break;
        case Gate::X:
        case Gate::Z:
            // Paulis commute with the frame up to phase.
            break;
        default:
            throw ContractViolation("two-qubit gate passed to single-qubit propagate_clifford");
    }
}

void propagate_clifford(Gate gate, PauliFrame& control, PauliFrame& target) {
    switch (gate) {
        case Gate::CNOT:
            target.x = target.x != control.x;
            control.z = control.z != target.z;
            break;
        case Gate::CZ: {
            bool cx = control.x;
            control.z = control.z != target.x;
            target.z = target.z != cx;
            break;
        }
        default:
            throw ContractViolation("single-qubit gate passed to two-qubit propagate_clifford");
    }
}

void apply_gate(Gate gate, PauliFrame& frame, double lambda, RandomStream& rng) {
    propagate_clifford(gate, frame);
    if (rng.bernoulli(lambda)) {
        xor_pauli_index(frame, rng.uniform_int(4));
    }
}

void apply_gate(Gate gate, PauliFrame& control, PauliFrame& target, double lambda,
                RandomStream& rng) {
    propagate_clifford(gate, control, target);
    if (rng.bernoulli(lambda)) {
        std::uint32_t k = rng.uniform_int(16);
        xor_pauli_index(control, k & 3u);
        xor_pauli_index(target, k >> 2);
    }
}

double memory_error_prob(double elapsed_s, double tau_s) {
    if (elapsed_s < 0.0) {
        throw ContractViolation("memory_error_prob: negative elapsed time");
    }
    if (std::isinf(tau_s)) {
        return 0.0;
    }
    return 0.75 * (1.0 - std::exp(-elapsed_s / tau_s));
}

void apply_memory(PhysicalQubit& qubit, double now, double tau_s, RandomStream& rng) {
    double p = memory_error_prob(now - qubit.initialized_at, tau_s);
    apply_depolarizing(qubit.frame, p, rng);
}

int measure(PhysicalQubit& qubit, Basis basis, const ChannelParams& params, double now,
            RandomStream& rng) {
    if (qubit.state == QubitState::Free || qubit.state == QubitState::Emitting) {
        throw ContractViolation("measure: qubit is not entangled or in ancilla use");
    }
    apply_memory(qubit, now, params.tau_s, rng);
    bool flip = frame_flips_outcome(qubit.frame, basis);
    if (rng.bernoulli(params.p_meas)) {
        flip = !flip;
    }
    return flip ? -1 : +1;
}

} // namespace qrepsim
