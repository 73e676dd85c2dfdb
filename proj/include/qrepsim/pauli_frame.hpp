#pragma once

#include <cmath>
#include <limits>

#include "qrepsim/errors.hpp"
#include "qrepsim/random.hpp"

namespace qrepsim {

// Classical record of the Pauli error currently afflicting a qubit.
// x and z both set means a Y error; global phase is not tracked.
struct PauliFrame {
    bool x = false;
    bool z = false;

    void flip_x() { x = !x; }
    void flip_z() { z = !z; }
    void flip_y() { x = !x; z = !z; }

    bool identity() const { return !x && !z; }
    bool operator==(const PauliFrame&) const = default;
};

enum class Basis { X, Y, Z };

enum class Gate { H, S, X, Z, CNOT, CZ };

inline bool is_two_qubit(Gate g) { return g == Gate::CNOT || g == Gate::CZ; }

enum class QubitState { Free, Emitting, Entangled, AncillaInUse };

struct PhysicalQubit {
    int node = -1;
    int index = -1;
    PauliFrame frame;
    double initialized_at = 0.0;
    QubitState state = QubitState::Free;
};

// Noise-channel parameters shared by every operation in a run.
// tau_s == +infinity disables the memory channel.
struct ChannelParams {
    double p_depo = 0.025;
    double lambda_gate = 0.0;
    double tau_s = 0.01;
    double p_meas = 0.0;
    double loss_db_per_km = 0.3;

    bool memory_disabled() const { return std::isinf(tau_s); }
    void validate() const;

    static constexpr double kMemoryDisabled = std::numeric_limits<double>::infinity();
};

// Resets a qubit to the reference state for a fresh protocol role.
inline void init_qubit(PhysicalQubit& q, double now, QubitState state) {
    q.frame = PauliFrame{};
    q.initialized_at = now;
    q.state = state;
}

// Depolarizing channel: with probability p one of X, Y, Z (each p/3) is XORed in.
void apply_depolarizing(PauliFrame& frame, double p_depo, RandomStream& rng);

// Noiseless Clifford conjugation of the tracked error.
void propagate_clifford(Gate gate, PauliFrame& frame);
void propagate_clifford(Gate gate, PauliFrame& control, PauliFrame& target);

// Clifford propagation followed by a uniform Pauli draw (identity included) with
// probability lambda. Effective error rates: 3*lambda/4 single, 15*lambda/16 two-qubit.
void apply_gate(Gate gate, PauliFrame& frame, double lambda, RandomStream& rng);
void apply_gate(Gate gate, PauliFrame& control, PauliFrame& target, double lambda,
                RandomStream& rng);

// (3/4) * (1 - exp(-elapsed/tau)).
double memory_error_prob(double elapsed_s, double tau_s);

// Depolarizing action with the memory probability for the qubit's age.
// Called by measurement routines only.
void apply_memory(PhysicalQubit& qubit, double now, double tau_s, RandomStream& rng);

// True when the frame's error anticommutes with the basis operator.
inline bool frame_flips_outcome(const PauliFrame& f, Basis b) {
    switch (b) {
        case Basis::Z: return f.x;
        case Basis::X: return f.z;
        case Basis::Y: return f.x != f.z;
    }
    return false;
}

// Single-qubit measurement. The ideal reference outcome is +1; the frame and a
// Bernoulli(p_meas) readout flip decide the sign. Memory error is applied first.
int measure(PhysicalQubit& qubit, Basis basis, const ChannelParams& params, double now,
            RandomStream& rng);

} // namespace qrepsim
