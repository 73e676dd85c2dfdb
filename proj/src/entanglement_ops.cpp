#include "qrepsim/entanglement_ops.hpp"

#include <algorithm>

namespace qrepsim {

namespace {

void require_same_span(const BellResource& a, const BellResource& b, const char* what) {
    if (a.left_node != b.left_node || a.right_node != b.right_node) {
        throw ContractViolation(std::string(what) + ": pairs span different node pairs");
    }
}

void run_qec(LogicalQubit& lq, std::span<PhysicalQubit* const> ancillas,
             const ChannelParams& params, double now, RandomStream& rng) {
    Syndrome s = extract_syndrome(lq, ancillas, params, now, rng);
    correct(lq, s);
}

} // namespace

bool ssdp_check(BellResource& res, BellResource& aux1, BellResource& aux2,
                const ChannelParams& params, double now, RandomStream& rng) {
    require_same_span(res, aux1, "ssdp_check");
    require_same_span(res, aux2, "ssdp_check");

    // Left node circuit and checks.
    apply_gate(Gate::CNOT, res.left[0]->frame, aux1.left[0]->frame, params.lambda_gate, rng);
    apply_gate(Gate::CNOT, aux2.left[0]->frame, res.left[0]->frame, params.lambda_gate, rng);
    int z_left = measure(*aux1.left[0], Basis::Z, params, now, rng);
    int x_left = measure(*aux2.left[0], Basis::X, params, now, rng);

    // Right node circuit and checks.
    apply_gate(Gate::CNOT, res.right[0]->frame, aux1.right[0]->frame, params.lambda_gate, rng);
    apply_gate(Gate::CNOT, aux2.right[0]->frame, res.right[0]->frame, params.lambda_gate, rng);
    int z_right = measure(*aux1.right[0], Basis::Z, params, now, rng);
    int x_right = measure(*aux2.right[0], Basis::X, params, now, rng);

    return z_left == z_right && x_left == x_right;
}

SwapFlips swap_circuit_physical(PhysicalQubit& q1, PhysicalQubit& q2,
                                const ChannelParams& params, double now, RandomStream& rng) {
    apply_gate(Gate::CNOT, q1.frame, q2.frame, params.lambda_gate, rng);
    apply_gate(Gate::H, q1.frame, params.lambda_gate, rng);
    SwapFlips f;
    f.z_flip = measure(q1, Basis::Z, params, now, rng) < 0;
    f.x_flip = measure(q2, Basis::Z, params, now, rng) < 0;
    return f;
}

SwapFlips swap_circuit_logical(LogicalQubit& l1, LogicalQubit& l2,
                               std::span<PhysicalQubit* const> ancillas,
                               const ChannelParams& params, double now, RandomStream& rng) {
    run_qec(l1, ancillas, params, now, rng);
    run_qec(l2, ancillas, params, now, rng);
    transversal_gate(Gate::CNOT, l1, l2, params.lambda_gate, rng);
    run_qec(l1, ancillas, params, now, rng);
    run_qec(l2, ancillas, params, now, rng);
    transversal_gate(Gate::H, l1, params.lambda_gate, rng);
    run_qec(l1, ancillas, params, now, rng);

    SwapFlips f;
    f.z_flip = logical_measure(l1, Basis::Z, ancillas, params, now, rng) < 0;
    f.x_flip = logical_measure(l2, Basis::Z, ancillas, params, now, rng) < 0;
    return f;
}

std::array<bool, 7> ncx_left_phase(LogicalQubit& left_block, std::span<BellResource> pairs,
                                   const ChannelParams& params, double now, RandomStream& rng) {
    std::array<bool, 7> flips{};
    for (int i = 0; i < 7; ++i) {
        apply_gate(Gate::CNOT, left_block.data[i]->frame, pairs[i].left[0]->frame,
                   params.lambda_gate, rng);
        flips[i] = measure(*pairs[i].left[0], Basis::Z, params, now, rng) < 0;
    }
    return flips;
}

std::array<bool, 7> ncx_right_phase(LogicalQubit& right_block, std::span<BellResource> pairs,
                                    const std::array<bool, 7>& left_flips,
                                    const ChannelParams& params, double now, RandomStream& rng) {
    std::array<bool, 7> flips{};
    for (int i = 0; i < 7; ++i) {
        PhysicalQubit* half = pairs[i].right[0];
        if (left_flips[i]) {
            half->frame.flip_x();
        }
        apply_gate(Gate::CNOT, half->frame, right_block.data[i]->frame, params.lambda_gate, rng);
        apply_gate(Gate::H, half->frame, params.lambda_gate, rng);
        flips[i] = measure(*half, Basis::Z, params, now, rng) < 0;
    }
    return flips;
}

void ncx_finish_left(LogicalQubit& left_block, const std::array<bool, 7>& right_flips) {
    for (int i = 0; i < 7; ++i) {
        if (right_flips[i]) {
            left_block.data[i]->frame.flip_z();
        }
    }
}

Process link_worker(SimContext& ctx, int left, int right, Stage out_stage) {
    auto& out = ctx.pool(left, right, out_stage);
    const double d = ctx.topo.delay_s(left, right);
    const double p_succ = link_success_prob(ctx.params.loss_db_per_km, ctx.topo.link_km());
    for (;;) {
        co_await out.reserve_slot();
        auto lv = co_await ctx.qubits(left).acquire(1);
        auto rv = co_await ctx.qubits(right).acquire(1);
        PhysicalQubit* a = lv[0];
        PhysicalQubit* b = rv[0];
        for (;;) {
            ctx.note_link_attempt();
            init_qubit(*a, ctx.now(), QubitState::Emitting);
            co_await ctx.delay(d); // photon flight to the BSA at the right node
            init_qubit(*b, ctx.now(), QubitState::Emitting);
            bool success = ctx.rng.bernoulli(p_succ);
            co_await ctx.delay(d); // heralding reply
            if (success) {
                break;
            }
        }
        a->state = QubitState::Entangled;
        b->state = QubitState::Entangled;
        apply_depolarizing(a->frame, ctx.params.p_depo, ctx.rng);
        apply_depolarizing(b->frame, ctx.params.p_depo, ctx.rng);
        ++ctx.counters.raw_generated;
        out.commit(make_physical_pair(out_stage, left, right, a, b, ctx.now()));
    }
}

Process purify_worker(SimContext& ctx, int left, int right, Stage in_stage, Stage out_stage) {
    auto& in = ctx.pool(left, right, in_stage);
    auto& out = ctx.pool(left, right, out_stage);
    const double d = ctx.topo.delay_s(left, right);
    for (;;) {
        co_await out.reserve_slot();
        auto got = co_await in.acquire(3);
        if (in_stage == Stage::Raw) {
            ctx.counters.raw_consumed_purify += 3;
        }
        ++ctx.counters.purify_attempts;
        BellResource res = std::move(got[0]); // oldest pair is the purification target
        BellResource aux1 = std::move(got[1]);
        BellResource aux2 = std::move(got[2]);
        bool accept = ssdp_check(res, aux1, aux2, ctx.params, ctx.now(), ctx.rng);
        co_await ctx.delay(d); // exchange of check outcomes
        ctx.release_resource(aux1);
        ctx.release_resource(aux2);
        if (accept) {
            ++ctx.counters.purify_accepts;
            res.stage = out_stage;
            res.created_at = ctx.now();
            out.commit(std::move(res));
        } else {
            ++ctx.counters.purify_rejects;
            ctx.release_resource(res);
            out.abort_slot();
        }
    }
}

Process swap_worker(SimContext& ctx, int a, int m, int b, Stage in_left, Stage in_right,
                    Stage out_stage) {
    auto& in_l = ctx.pool(a, m, in_left);
    auto& in_r = ctx.pool(m, b, in_right);
    auto& out = ctx.pool(a, b, out_stage);
    const bool logical = stage_kind(in_left) == ResKind::Logical;
    const double d = std::max(ctx.topo.delay_s(m, a), ctx.topo.delay_s(m, b));
    for (;;) {
        co_await out.reserve_slot();
        auto lv = co_await in_l.acquire(1);
        auto rv = co_await in_r.acquire(1);
        BellResource lp = std::move(lv[0]);
        BellResource rp = std::move(rv[0]);
        if (in_left == Stage::Raw) {
            ctx.counters.raw_consumed_swap += 2;
        }

        SwapFlips flips;
        if (logical) {
            auto anc = co_await ctx.qubits(m).acquire(6);
            LogicalQubit l1 = lp.right_block();
            LogicalQubit l2 = rp.left_block();
            flips = swap_circuit_logical(l1, l2, anc, ctx.params, ctx.now(), ctx.rng);
            for (auto* q : anc) {
                ctx.release_qubit(q);
            }
            ++ctx.counters.swaps_logical;
        } else {
            flips = swap_circuit_physical(*lp.right[0], *rp.left[0], ctx.params, ctx.now(),
                                          ctx.rng);
            ++ctx.counters.swaps_physical;
        }
        // Measured swapper qubits go straight back to the pool.
        for (int i = 0; i < lp.width(); ++i) {
            ctx.release_qubit(lp.right[i]);
            ctx.release_qubit(rp.left[i]);
        }

        co_await ctx.delay(d); // the longer heralding delay gates the next step

        BellResource merged;
        if (logical) {
            LogicalQubit far = rp.right_block();
            apply_logical_pauli_frame(far, flips.x_flip, flips.z_flip);
            merged = make_logical_pair(out_stage, lp.left_block(), far, ctx.now());
        } else {
            if (flips.z_flip) rp.right[0]->frame.flip_z();
            if (flips.x_flip) rp.right[0]->frame.flip_x();
            merged = make_physical_pair(out_stage, a, b, lp.left[0], rp.right[0], ctx.now());
        }
        out.commit(std::move(merged));
    }
}

Process ncx_worker(SimContext& ctx, int left, int right, Stage out_stage) {
    auto& in = ctx.pool(left, right, Stage::Raw);
    auto& out = ctx.pool(left, right, out_stage);
    const double d = ctx.topo.delay_s(left, right);
    for (;;) {
        co_await out.reserve_slot();
        auto pairs = co_await in.acquire(7);
        ctx.counters.raw_consumed_ncx += 7;
        auto ql = co_await ctx.qubits(left).acquire(7);
        auto qr = co_await ctx.qubits(right).acquire(7);
        for (auto* q : ql) init_qubit(*q, ctx.now(), QubitState::Entangled);
        for (auto* q : qr) init_qubit(*q, ctx.now(), QubitState::Entangled);

        // Plus-reference seed on the left block, zero-reference on the right.
        LogicalQubit bl = encode_from_physical(ql[0], std::span(ql).subspan(1),
                                               ctx.params.lambda_gate, ctx.rng);
        LogicalQubit br = encode_from_physical(qr[0], std::span(qr).subspan(1),
                                               ctx.params.lambda_gate, ctx.rng);

        auto left_flips = ncx_left_phase(bl, pairs, ctx.params, ctx.now(), ctx.rng);
        co_await ctx.delay(d);
        auto right_flips = ncx_right_phase(br, pairs, left_flips, ctx.params, ctx.now(), ctx.rng);
        co_await ctx.delay(d);
        ncx_finish_left(bl, right_flips);

        for (auto& p : pairs) {
            ctx.release_qubit(p.left[0]);
            ctx.release_qubit(p.right[0]);
        }
        ++ctx.counters.ncx_encodes;
        out.commit(make_logical_pair(out_stage, bl, br, ctx.now()));
    }
}

Process encode_worker(SimContext& ctx, int left, int right, Stage in_stage, Stage out_stage) {
    auto& in = ctx.pool(left, right, in_stage);
    auto& out = ctx.pool(left, right, out_stage);
    for (;;) {
        co_await out.reserve_slot();
        auto got = co_await in.acquire(1);
        BellResource seed_pair = std::move(got[0]);
        auto fl = co_await ctx.qubits(left).acquire(6);
        auto fr = co_await ctx.qubits(right).acquire(6);
        for (auto* q : fl) init_qubit(*q, ctx.now(), QubitState::Entangled);
        for (auto* q : fr) init_qubit(*q, ctx.now(), QubitState::Entangled);

        LogicalQubit bl =
            encode_from_physical(seed_pair.left[0], fl, ctx.params.lambda_gate, ctx.rng);
        LogicalQubit br =
            encode_from_physical(seed_pair.right[0], fr, ctx.params.lambda_gate, ctx.rng);
        ++ctx.counters.seed_encodes;
        out.commit(make_logical_pair(out_stage, bl, br, ctx.now()));
    }
}

} // namespace qrepsim
