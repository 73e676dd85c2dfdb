#include "qrepsim/steane.hpp"

namespace qrepsim {

namespace {

constexpr EncoderGate kEncoder[] = {
    {Gate::CNOT, 2, 4}, {Gate::CNOT, 2, 5},
    {Gate::H, 0},       {Gate::H, 1},       {Gate::H, 3},
    {Gate::CNOT, 0, 2}, {Gate::CNOT, 0, 4}, {Gate::CNOT, 0, 6},
    {Gate::CNOT, 1, 2}, {Gate::CNOT, 1, 5}, {Gate::CNOT, 1, 6},
    {Gate::CNOT, 3, 4}, {Gate::CNOT, 3, 5}, {Gate::CNOT, 3, 6},
};

int hamming_position(bool b0, bool b1, bool b2) {
    return (b0 ? 1 : 0) + (b1 ? 2 : 0) + (b2 ? 4 : 0);
}

} // namespace

std::span<const EncoderGate> steane_encoder_circuit() {
    return kEncoder;
}

LogicalQubit encode_from_physical(PhysicalQubit* seed, std::span<PhysicalQubit* const> fresh,
                                  double lambda_gate, RandomStream& rng) {
    if (fresh.size() != 6) {
        throw ContractViolation("encode_from_physical: exactly six fresh qubits required");
    }
    LogicalQubit lq;
    lq.node = seed->node;
    int fi = 0;
    for (int pos = 0; pos < 7; ++pos) {
        lq.data[pos] = (pos == kSeedPosition) ? seed : fresh[fi++];
    }
    for (PhysicalQubit* q : lq.data) {
        if (q->node != lq.node) {
            throw ContractViolation("encode_from_physical: qubits span multiple nodes");
        }
        q->state = QubitState::Entangled;
    }
    for (const EncoderGate& g : kEncoder) {
        if (is_two_qubit(g.gate)) {
            apply_gate(g.gate, lq.data[g.a]->frame, lq.data[g.b]->frame, lambda_gate, rng);
        } else {
            apply_gate(g.gate, lq.data[g.a]->frame, lambda_gate, rng);
        }
    }
    return lq;
}

Syndrome extract_syndrome(LogicalQubit& lq, std::span<PhysicalQubit* const> ancillas,
                          const ChannelParams& params, double now, RandomStream& rng) {
    if (ancillas.size() != 6) {
        throw ContractViolation("extract_syndrome: exactly six ancillas required");
    }
    for (PhysicalQubit* a : ancillas) {
        if (a->node != lq.node) {
            throw ContractViolation("extract_syndrome: ancilla on a different node");
        }
    }

    Syndrome s;
    // X-type generators g1..g3: controlled-X coupling, detect Z errors.
    for (int g = 0; g < 3; ++g) {
        PhysicalQubit* anc = ancillas[g];
        init_qubit(*anc, now, QubitState::AncillaInUse);
        for (int pos : kSteaneCheckSets[g]) {
            apply_gate(Gate::CNOT, anc->frame, lq.data[pos]->frame, params.lambda_gate, rng);
        }
        s.z_bits[g] = measure(*anc, Basis::X, params, now, rng) < 0;
    }
    // Z-type generators g4..g6: controlled-Z coupling, detect X errors.
    for (int g = 0; g < 3; ++g) {
        PhysicalQubit* anc = ancillas[3 + g];
        init_qubit(*anc, now, QubitState::AncillaInUse);
        for (int pos : kSteaneCheckSets[g]) {
            apply_gate(Gate::CZ, anc->frame, lq.data[pos]->frame, params.lambda_gate, rng);
        }
        s.x_bits[g] = measure(*anc, Basis::X, params, now, rng) < 0;
    }
    return s;
}

void correct(LogicalQubit& lq, const Syndrome& s) {
    int xpos = hamming_position(s.x_bits[0], s.x_bits[1], s.x_bits[2]);
    if (xpos > 0) {
        lq.data[xpos - 1]->frame.flip_x();
    }
    int zpos = hamming_position(s.z_bits[0], s.z_bits[1], s.z_bits[2]);
    if (zpos > 0) {
        lq.data[zpos - 1]->frame.flip_z();
    }
}

void transversal_gate(Gate gate, LogicalQubit& lq, double lambda_gate, RandomStream& rng) {
    if (is_two_qubit(gate)) {
        throw ContractViolation("transversal_gate: two-qubit gate needs two blocks");
    }
    for (PhysicalQubit* q : lq.data) {
        apply_gate(gate, q->frame, lambda_gate, rng);
    }
}

void transversal_gate(Gate gate, LogicalQubit& control, LogicalQubit& target,
                      double lambda_gate, RandomStream& rng) {
    if (!is_two_qubit(gate)) {
        throw ContractViolation("transversal_gate: single-qubit gate given two blocks");
    }
    if (control.node != target.node) {
        throw ContractViolation("transversal_gate: blocks on different nodes");
    }
    for (int i = 0; i < 7; ++i) {
        apply_gate(gate, control.data[i]->frame, target.data[i]->frame, lambda_gate, rng);
    }
}

HammingResult hamming_correct(const std::array<bool, 7>& bits) {
    HammingResult r;
    r.bits = bits;
    bool s[3] = {false, false, false};
    for (int g = 0; g < 3; ++g) {
        for (int pos : kSteaneCheckSets[g]) {
            s[g] = s[g] != bits[pos];
        }
    }
    int pos = hamming_position(s[0], s[1], s[2]);
    if (pos > 0) {
        r.bits[pos - 1] = !r.bits[pos - 1];
    }
    for (bool b : r.bits) {
        r.parity ^= b ? 1 : 0;
    }
    return r;
}

int logical_measure(LogicalQubit& lq, Basis basis, std::span<PhysicalQubit* const> ancillas,
                    const ChannelParams& params, double now, RandomStream& rng) {
    Syndrome s = extract_syndrome(lq, ancillas, params, now, rng);
    correct(lq, s);

    std::array<bool, 7> bits{};
    for (int i = 0; i < 7; ++i) {
        bits[i] = measure(*lq.data[i], basis, params, now, rng) < 0;
    }
    HammingResult h = hamming_correct(bits);
    return h.parity ? -1 : +1;
}

void apply_logical_pauli_frame(LogicalQubit& lq, bool x, bool z) {
    for (PhysicalQubit* q : lq.data) {
        if (x) q->frame.flip_x();
        if (z) q->frame.flip_z();
    }
}

} // namespace qrepsim
