#pragma once

#include <span>

#include "qrepsim/sim_context.hpp"

namespace qrepsim {

// Protocol circuits and the discrete-event processes that drive them. The
// circuit kernels mutate frames and perform measurements synchronously; the
// worker processes add resource acquisition, classical delays and registration.

// Ss-Dp purification: at each node CNOT(resource -> aux1), CNOT(aux2 -> resource),
// aux1 measured in Z and aux2 in X. Returns true when both checks agree across
// the two nodes. Aux qubits are consumed (measured); the resource pair keeps its
// updated frames.
bool ssdp_check(BellResource& res, BellResource& aux1, BellResource& aux2,
                const ChannelParams& params, double now, RandomStream& rng);

struct SwapFlips {
    bool z_flip = false; // from the Hadamard-rotated qubit's Z readout
    bool x_flip = false; // from the partner qubit's Z readout
};

// Bell measurement at the swapper: CNOT(q1 -> q2), H(q1), both measured in Z.
SwapFlips swap_circuit_physical(PhysicalQubit& q1, PhysicalQubit& q2,
                                const ChannelParams& params, double now, RandomStream& rng);

// Logical Bell measurement with error correction before and after the CNOT, and
// once more after the Hadamard on the first block only, then logical Z readouts.
SwapFlips swap_circuit_logical(LogicalQubit& l1, LogicalQubit& l2,
                               std::span<PhysicalQubit* const> ancillas,
                               const ChannelParams& params, double now, RandomStream& rng);

// Teleported transversal CNOT phases. Left: CNOT(data -> pair half), Z readout.
// Right: X byproduct, CNOT(pair half -> data), H, Z readout. Finish: Z byproduct
// on the left block.
std::array<bool, 7> ncx_left_phase(LogicalQubit& left_block, std::span<BellResource> pairs,
                                   const ChannelParams& params, double now, RandomStream& rng);
std::array<bool, 7> ncx_right_phase(LogicalQubit& right_block, std::span<BellResource> pairs,
                                    const std::array<bool, 7>& left_flips,
                                    const ChannelParams& params, double now, RandomStream& rng);
void ncx_finish_left(LogicalQubit& left_block, const std::array<bool, 7>& right_flips);

// Repeat-until-success heralded link generation between two adjacent nodes. Each
// attempt costs one photon flight plus the heralding reply; on success both
// matter qubits pass the depolarizing channel and the pair is banked.
Process link_worker(SimContext& ctx, int left, int right, Stage out_stage);

// Consumes three pairs (oldest becomes the purification target), runs Ss-Dp and
// banks the accepted survivor.
Process purify_worker(SimContext& ctx, int left, int right, Stage in_stage, Stage out_stage);

// Splices (a,m) and (m,b) pairs; the longer classical delay gates registration
// and byproduct corrections land on the b-side frames.
Process swap_worker(SimContext& ctx, int a, int m, int b, Stage in_left, Stage in_right,
                    Stage out_stage);

// Builds one logical link pair from seven physical pairs via teleported
// transversal CNOT between freshly encoded blocks.
Process ncx_worker(SimContext& ctx, int left, int right, Stage out_stage);

// Encodes both halves of one physical pair into logical blocks (six fresh qubits
// per side), producing a logical pair.
Process encode_worker(SimContext& ctx, int left, int right, Stage in_stage, Stage out_stage);

} // namespace qrepsim
