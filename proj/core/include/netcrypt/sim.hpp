#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "netcrypt/controller.hpp"
#include "netcrypt/keyring.hpp"
#include "netcrypt/plant.hpp"
#include "netcrypt/synthesis.hpp"

namespace netcrypt {

struct RunFlags {
    bool shadow = true;             // run the plaintext reference loop alongside
    bool abort_on_mismatch = true;  // equivalence breach is a bug, not a report
    bool rerandomize = false;       // re-randomize homomorphic products
    bool record_timings = true;     // zeroes the timing columns when off
    bool trace_ciphertexts = false;
};

struct RunConfig {
    PlantMatrices plant;
    ControllerGains gains;
    GridParams grid;
    unsigned paillier_bits = 64;
    unsigned rsa_bits = 256;
    RVec x0;
    std::vector<mpq_class> zeta0;  // must lie on the grid
    unsigned horizon = 51;
    std::uint64_t seed = 1;
    RunFlags flags;
};

struct TrajectoryRow {
    unsigned long k = 0;
    RVec x;
    std::vector<FixedPointValue> zeta;  // shadow observer state
    std::vector<FixedPointValue> ua, ub;
    RVec ya, yb;                    // pre-quantization outputs
    std::vector<mpq_class> delta;   // col(delta^a, delta^b)
    double bound = 0;               // M rho^k ||x_c(0)|| + M sigma 2^{-m}/(1-rho)
    double norm_xc = 0;
    bool equiv = true;
    long t_quant_us = 0, t_enc_us = 0, t_ctrl_us = 0, t_dec_us = 0;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    unsigned nx = 0, nu = 0, ny = 0;  // column counts for the CSV schema
    StabilityBounds bounds;
    double norm_xc0 = 0;
    bool initial_within_region = true;  // warning flag, the bound is sufficient not necessary
    std::vector<std::string> cipher_trace;
};

// Runs the full closed loop: measure -> quantize -> double-layer encrypt ->
// homomorphic control -> double-layer decrypt -> actuate, with the
// plaintext shadow loop on the same quantized measurements.
Trajectory run(const RunConfig& config);

struct BoundReport {
    bool all_ok = true;
    std::vector<unsigned long> failed_steps;
    double max_ratio = 0;  // max over k of ||x_c(k)|| / bound(k)
};

BoundReport bound_check(const Trajectory& traj);

struct EquivalenceReport {
    bool all_ok = true;
    unsigned long steps_checked = 0;
    std::vector<unsigned long> mismatched_steps;
};

EquivalenceReport equivalence_audit(const Trajectory& traj);

// CSV export with the fixed column schema; columns are sized from the
// first row's dimensions.
void write_csv(const Trajectory& traj, std::ostream& os);

// Parse a trajectory CSV back into the numeric columns needed by the
// plot exporter (values as doubles).
struct PlotData {
    std::vector<unsigned long> k;
    std::vector<std::vector<double>> x;  // per step
    std::vector<double> norm_xc;
    std::vector<double> bound;
};
PlotData read_csv_for_plots(std::istream& is);

}  // namespace netcrypt
