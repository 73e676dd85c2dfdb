#include "qrepsim/analytic_oracle.hpp"

namespace qrepsim {

double f_link(double p_depo) {
    double q = 1.0 - p_depo;
    return p_depo * p_depo / 3.0 + q * q;
}

double f_swap(double f1, double f2) {
    return f1 * f2 + (1.0 - f1) * (1.0 - f2) / 3.0;
}

double f_ssdp(double f) {
    return (14.0 * f * f - 7.0 * f + 2.0) / (16.0 * f * f - 14.0 * f + 7.0);
}

double f_e2e(double p_depo) {
    double fl = f_link(p_depo);
    return f_swap(fl, fl);
}

SsdpEnumeration enumerate_ssdp(double f) {
    // Werner weights for the Pauli error on the noisy half of each pair,
    // indexed I, X, Y, Z.
    const double w[4] = {f, (1.0 - f) / 3.0, (1.0 - f) / 3.0, (1.0 - f) / 3.0};
    const int px[4] = {0, 1, 1, 0};
    const int pz[4] = {0, 0, 1, 1};

    double accepted = 0.0;
    double accepted_target = 0.0;

    for (int r = 0; r < 4; ++r) {
        for (int a1 = 0; a1 < 4; ++a1) {
            for (int a2 = 0; a2 < 4; ++a2) {
                int xr = px[r], zr = pz[r];
                int x1 = px[a1], z1 = pz[a1];
                int x2 = px[a2], z2 = pz[a2];

                // CNOT resource -> aux1: x copies down, z copies up.
                x1 ^= xr;
                zr ^= z1;
                // CNOT aux2 -> resource.
                xr ^= x2;
                z2 ^= zr;

                // aux1 measured in Z (flip from x flag), aux2 in X (flip from z
                // flag). The clean halves report the reference outcome, so the
                // checks agree exactly when neither flip fires.
                bool accept = (x1 == 0) && (z2 == 0);
                if (!accept) {
                    continue;
                }
                double weight = w[r] * w[a1] * w[a2];
                accepted += weight;
                if (xr == 0 && zr == 0) {
                    accepted_target += weight;
                }
            }
        }
    }

    SsdpEnumeration out;
    out.acceptance = accepted;
    out.fidelity = accepted > 0.0 ? accepted_target / accepted : 0.0;
    return out;
}

} // namespace qrepsim
