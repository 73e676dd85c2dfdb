#pragma once

#include <array>
#include <span>

#include "qrepsim/pauli_frame.hpp"

namespace qrepsim {

// [[7,1,3]] Steane code layer. Stabilizer generators, with position 1 leftmost:
//
//   g1 = XIXIXIX   g2 = IXXIIXX   g3 = IIIXXXX
//   g4 = ZIZIZIZ   g5 = IZZIIZZ   g6 = IIIZZZZ
//
// so the three check sets {1,3,5,7}, {2,3,6,7}, {4,5,6,7} are exactly the parity
// checks of the [7,4,3] classical Hamming code with position = s1 + 2*s2 + 4*s3.

// One logical qubit: an ordered block of seven physical qubits on one node.
struct LogicalQubit {
    int node = -1;
    std::array<PhysicalQubit*, 7> data{};
};

// Generator measurement outcomes. x_bits come from the Z-type generators
// g4..g6 (they detect X errors); z_bits from the X-type generators g1..g3.
struct Syndrome {
    std::array<bool, 3> x_bits{};
    std::array<bool, 3> z_bits{};

    bool trivial() const {
        return !x_bits[0] && !x_bits[1] && !x_bits[2] && !z_bits[0] && !z_bits[1] && !z_bits[2];
    }
};

// Check sets shared by the X- and Z-type generators, 0-indexed.
inline constexpr std::array<std::array<int, 4>, 3> kSteaneCheckSets{{
    {0, 2, 4, 6},
    {1, 2, 5, 6},
    {3, 4, 5, 6},
}};

// Encoding circuit, seed qubit at block position 3 (positions 1-indexed):
//
//   CNOT 3->5, 3->6; H 1, 2, 4; CNOT 1->3, 1->5, 1->7;
//   CNOT 2->3, 2->6, 2->7; CNOT 4->5, 4->6, 4->7
//
// It maps seed-X to the logical X representative X3 X5 X6 and seed-Z to Z1 Z2 Z3,
// and carries Z1,Z2,...,Z7 on the fresh qubits into the stabilizer group. Any
// Clifford encoder with those mappings is equivalent at the syndrome level.
struct EncoderGate {
    Gate gate;
    int a;      // block index of the single qubit, or the control
    int b = -1; // block index of the target for two-qubit gates
};

std::span<const EncoderGate> steane_encoder_circuit();

// Block position (0-indexed) the seed qubit occupies.
inline constexpr int kSeedPosition = 2;

// Runs the encoding circuit gate by gate through apply_gate so the seed frame
// propagates into the block and gate errors accumulate. fresh must contain six
// qubits on the seed's node; they are taken in order for positions 1,2,4,5,6,7.
LogicalQubit encode_from_physical(PhysicalQubit* seed, std::span<PhysicalQubit* const> fresh,
                                  double lambda_gate, RandomStream& rng);

// Measures all six generators using six ancillas (prepared in the +1 X-eigenstate,
// coupled with controlled-X for g1..g3 and controlled-Z for g4..g6, measured in X).
// Generators are serialized g1..g6 with ascending data position, in zero simulated
// time. Memory and measurement errors apply to the ancilla readouts.
Syndrome extract_syndrome(LogicalQubit& lq, std::span<PhysicalQubit* const> ancillas,
                          const ChannelParams& params, double now, RandomStream& rng);

// Interprets x_bits (and z_bits) as the Hamming position of an X (Z) error and
// XORs the indicated Pauli onto that position's frame. No gate error is charged.
void correct(LogicalQubit& lq, const Syndrome& s);

// Transversal single-qubit gate on all seven positions.
void transversal_gate(Gate gate, LogicalQubit& lq, double lambda_gate, RandomStream& rng);

// Transversal CNOT between two same-node blocks.
void transversal_gate(Gate gate, LogicalQubit& control, LogicalQubit& target,
                      double lambda_gate, RandomStream& rng);

struct HammingResult {
    std::array<bool, 7> bits{};
    int parity = 0;
};

// Single-bit correction to the nearest [7,4,3] Hamming codeword, plus the parity
// of the corrected bits.
HammingResult hamming_correct(const std::array<bool, 7>& bits);

// Full logical measurement: error correction (consuming the six ancillas), then a
// transversal measurement in the given basis, classical Hamming correction of the
// outcome bitstring, and the parity as the logical +-1 outcome.
int logical_measure(LogicalQubit& lq, Basis basis, std::span<PhysicalQubit* const> ancillas,
                    const ChannelParams& params, double now, RandomStream& rng);

// Logical Pauli byproduct as a frame update on all seven positions.
void apply_logical_pauli_frame(LogicalQubit& lq, bool x, bool z);

} // namespace qrepsim
