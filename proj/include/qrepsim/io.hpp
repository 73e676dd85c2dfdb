#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qrepsim/strategies.hpp"

namespace qrepsim {

// Shortest round-trippable decimal representation, identical across runs.
std::string format_double(double v);

// One sweep row per result:
// strategy,hops,lambda_gate,p_meas,fidelity,fidelity_stderr,exp_xx,exp_yy,exp_zz,
// throughput_pairs_per_s,simulated_s,wall_s,seed
void write_sweep_csv(std::ostream& os, const std::vector<RunResult>& results);

struct Fig2Row {
    double p_depo = 0.0;
    double analytic_e2e = 0.0;
    double simulated_e2e = 0.0;
    double std_error = 0.0;
};

// Columns: p_depo,analytic_e2e,simulated_e2e,stderr
void write_fig2_csv(std::ostream& os, const std::vector<Fig2Row>& rows);

// Full result as JSON, mirroring the CSV schema plus the configuration echo and
// the audited counters. Parses back without loss.
std::string result_to_json(const RunResult& r);
RunResult result_from_json(const std::string& text);

} // namespace qrepsim
