#pragma once

namespace qrepsim {

// Closed-form fidelity expressions for the depolarizing-only validation scenario,
// plus a combinatoric enumerator for the Ss-Dp purification protocol. These are
// the independent reference the Monte Carlo simulator is checked against.

// Fidelity of a link-level pair after both matter qubits pass the depolarizing
// channel: p^2/3 + (1-p)^2.
double f_link(double p_depo);

// Fidelity after swapping two Werner pairs: F1*F2 + (1-F1)(1-F2)/3.
double f_swap(double f1, double f2);

// Output fidelity of Ss-Dp purification on three Werner pairs of fidelity f:
// (14f^2 - 7f + 2) / (16f^2 - 14f + 7).
double f_ssdp(double f);

// End-to-end fidelity after one swap of two equal depolarized links.
double f_e2e(double p_depo);

struct SsdpEnumeration {
    double fidelity = 0.0;
    double acceptance = 0.0;
};

// Enumerates all 64 Pauli-error assignments on three Werner pairs, pushes each
// branch through the Ss-Dp circuit's frame algebra and tallies accepted and
// target-preserving branches. Agrees with f_ssdp to machine precision.
SsdpEnumeration enumerate_ssdp(double f);

} // namespace qrepsim
