#include "netcrypt/sim.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "netcrypt/codec.hpp"

namespace netcrypt {

namespace {

using Clock = std::chrono::steady_clock;

class PhaseTimer {
public:
    explicit PhaseTimer(bool enabled) : enabled_(enabled) {}
    template <class F>
    auto measure(long& slot, F&& f) {
        if (!enabled_) return f();
        auto start = Clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            slot += std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start)
                        .count();
        } else {
            auto r = f();
            slot += std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start)
                        .count();
            return r;
        }
    }

private:
    bool enabled_;
};

RVec grid_to_rational(const std::vector<FixedPointValue>& v) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].to_rational();
    return r;
}

double norm_xc_of(const RVec& x, const std::vector<FixedPointValue>& zeta) {
    double s = 0;
    for (const auto& q : x) s += q.get_d() * q.get_d();
    for (const auto& z : zeta) {
        double d = z.to_double();
        s += d * d;
    }
    return std::sqrt(s);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

Trajectory run(const RunConfig& config) {
    const PlantMatrices& plant = config.plant;
    const ControllerGains& gains = config.gains;
    const GridParams grid = config.grid;
    plant.validate();
    gains.validate();
    grid.validate();
    if (plant.gamma1 != gains.gamma1 || plant.gamma2 != gains.gamma2)
        throw ConfigError("plant and gains disagree on gamma1/gamma2");
    if (config.x0.size() != plant.nx() || config.zeta0.size() != plant.nx())
        throw ConfigError("initial condition dimensions do not match the plant");

    Rng rng(config.seed);

    ProvisionParams prov;
    prov.paillier_bits = config.paillier_bits;
    prov.rsa_bits = config.rsa_bits;
    prov.grid = grid;
    prov.required_np_bound = required_paillier_bound(gains, grid.n);
    Keyring ring = Keyring::provision(plant.N(), prov, rng);
    const PaillierPublicKey& ppk = ring.paillier_public();
    const PaillierPrivateKey& psk = ring.paillier().priv;

    Trajectory traj;

    // Stability certificate for the bound column. R_o may be unavailable
    // (too small a word length); the run still proceeds, the admissibility
    // flag just reports false.
    ClosedLoop cl = build_closed_loop(plant, gains);
    DecayEnvelope env = decay_envelope(cl.A_c);
    try {
        traj.bounds = operating_region(env, gains, plant, grid);
    } catch (const ConfigError&) {
        traj.bounds.M = env.M;
        traj.bounds.rho = env.rho;
        traj.bounds.d = static_cast<unsigned>(plant.ny() + plant.nx());
        traj.bounds.sigma = induced_norm(cl.B_c) * traj.bounds.d;
        traj.bounds.beta = 0;
        traj.bounds.R_o = 0;
        traj.initial_within_region = false;
    }

    // zeta(0) must already lie on the grid.
    std::vector<FixedPointValue> zeta0;
    for (const auto& q : config.zeta0) {
        FixedPointValue v = FixedPointValue::quantize(q, grid);
        if (v.to_rational() != q) throw ConfigError("zeta(0) is not a grid point");
        zeta0.push_back(v);
    }

    traj.nx = static_cast<unsigned>(plant.nx());
    traj.nu = static_cast<unsigned>(plant.nu());
    traj.ny = static_cast<unsigned>(plant.ny());
    traj.norm_xc0 = norm_xc_of(config.x0, zeta0);
    if (traj.bounds.R_o <= 0 || traj.norm_xc0 > traj.bounds.R_o)
        traj.initial_within_region = false;

    const double residual =
        traj.bounds.M * traj.bounds.sigma * std::ldexp(1.0, -static_cast<int>(grid.m)) /
        (1.0 - traj.bounds.rho);

    PlainControllerState shadow{zeta0};
    EncryptedControllerState enc{inner_encrypt(zeta0, ppk, rng)};
    RVec x = config.x0;

    PhaseTimer timer(config.flags.record_timings);
    auto trace = [&](const OuterCiphertext& c) {
        if (config.flags.trace_ciphertexts) traj.cipher_trace.push_back(wire_encode(c));
    };

    for (unsigned long k = 0; k < config.horizon; ++k) {
        TrajectoryRow row;
        row.k = k;
        row.x = x;

        try {
            // Controller -> entities: current state slices (the u^b channel).
            std::vector<FixedPointValue> ub(plant.nx(), FixedPointValue::zero(grid));
            {
                unsigned off = 0;
                for (unsigned i = 1; i <= plant.N(); ++i) {
                    unsigned si = plant.state_dims[i - 1];
                    std::vector<PaillierCiphertext> slice;
                    for (unsigned j = 0; j < si; ++j) slice.push_back(enc.z[off + j].plus);
                    auto wire = timer.measure(row.t_enc_us, [&] {
                        return entity_encrypt(i, slice, ring.rsa_entity_public(i), grid);
                    });
                    for (const auto& c : wire) trace(c);
                    auto vals = timer.measure(row.t_dec_us, [&] {
                        return entity_decrypt(i, wire, ring.rsa_entity(i), psk);
                    });
                    for (unsigned j = 0; j < si; ++j) ub[off + j] = vals[j];
                    off += si;
                }
            }

            // Measure and quantize.
            RVec ya = plant.gamma1 * (plant.C * x);
            RVec yb = plant.gamma2 * grid_to_rational(ub);
            std::vector<FixedPointValue> ya_q, yb_q;
            timer.measure(row.t_quant_us, [&] {
                for (const auto& q : ya) ya_q.push_back(FixedPointValue::quantize(q, grid));
                for (const auto& q : yb) yb_q.push_back(FixedPointValue::quantize(q, grid));
            });
            for (std::size_t i = 0; i < ya.size(); ++i)
                row.delta.push_back(ya_q[i].to_rational() - ya[i]);
            for (std::size_t i = 0; i < yb.size(); ++i)
                row.delta.push_back(yb_q[i].to_rational() - yb[i]);

            // Entities -> controller: per-entity double-layer encryption of
            // col(y^a_i, y^b_i), then the outer strip at the control units.
            std::vector<DualCiphertext> ya_duals(plant.ny(),
                                                 DualCiphertext{{}, {}, grid});
            std::vector<DualCiphertext> yb_duals(plant.nx(), DualCiphertext{{}, {}, grid});
            {
                unsigned ya_off = 0, yb_off = 0;
                for (unsigned i = 1; i <= plant.N(); ++i) {
                    unsigned qi = plant.output_dims[i - 1];
                    unsigned si = plant.state_dims[i - 1];
                    std::vector<FixedPointValue> channel;
                    for (unsigned j = 0; j < qi; ++j) channel.push_back(ya_q[ya_off + j]);
                    for (unsigned j = 0; j < si; ++j) channel.push_back(yb_q[yb_off + j]);
                    auto wire = timer.measure(row.t_enc_us, [&] {
                        auto duals = inner_encrypt(channel, ppk, rng);
                        return outer_encrypt(i, duals, ring.rsa_controller_public(i));
                    });
                    for (const auto& d : wire) {
                        trace(d.plus);
                        trace(d.minus);
                    }
                    auto duals = timer.measure(row.t_dec_us, [&] {
                        return outer_decrypt(i, wire, ring.rsa_controller(i));
                    });
                    for (unsigned j = 0; j < qi; ++j) ya_duals[ya_off + j] = duals[j];
                    for (unsigned j = 0; j < si; ++j) yb_duals[yb_off + j] = duals[qi + j];
                    ya_off += qi;
                    yb_off += si;
                }
            }

            // Homomorphic control.
            auto step = timer.measure(row.t_ctrl_us, [&] {
                return encrypted_stabilizer_step(enc, ya_duals, yb_duals, gains, ppk);
            });
            if (config.flags.rerandomize) {
                for (auto& c : step.va) c = paillier_rerandomize(ppk, c, rng);
                for (auto& z : step.next.z) {
                    z.plus = paillier_rerandomize(ppk, z.plus, rng);
                    z.minus = paillier_rerandomize(ppk, z.minus, rng);
                }
            }

            // Controller -> entities: u^a slices.
            std::vector<FixedPointValue> ua(plant.nu(), FixedPointValue::zero(grid));
            {
                unsigned off = 0;
                for (unsigned i = 1; i <= plant.N(); ++i) {
                    unsigned pi = plant.input_dims[i - 1];
                    std::vector<PaillierCiphertext> slice(step.va.begin() + off,
                                                          step.va.begin() + off + pi);
                    auto wire = timer.measure(row.t_enc_us, [&] {
                        return entity_encrypt(i, slice, ring.rsa_entity_public(i), grid);
                    });
                    for (const auto& c : wire) trace(c);
                    auto vals = timer.measure(row.t_dec_us, [&] {
                        return entity_decrypt(i, wire, ring.rsa_entity(i), psk);
                    });
                    for (unsigned j = 0; j < pi; ++j) ua[off + j] = vals[j];
                    off += pi;
                }
            }

            // Shadow loop on the same quantized measurements.
            row.equiv = true;
            if (config.flags.shadow) {
                PlainStepResult ref = plain_step(shadow, ya_q, yb_q, gains);
                bool same = ua == ref.ua && ub == ref.ub;
                // Core invariant: the stored state ciphertexts decrypt to
                // (zeta, -zeta) of the shadow.
                for (std::size_t i = 0; same && i < step.next.z.size(); ++i) {
                    FixedPointValue zp = inner_decrypt_one(step.next.z[i].plus, psk, grid);
                    FixedPointValue zm = inner_decrypt_one(step.next.z[i].minus, psk, grid);
                    same = zp == ref.next.zeta[i] && zm == -ref.next.zeta[i];
                }
                row.equiv = same;
                if (!same && config.flags.abort_on_mismatch)
                    throw EquivalenceError(
                        "encrypted loop diverged from the plaintext shadow at step " +
                            std::to_string(k),
                        k);
                shadow = std::move(ref.next);
            }

            row.zeta = ub;  // zeta(k) as decrypted by the entities
            row.ua = ua;
            row.ub = ub;
            row.ya = ya;
            row.yb = yb;
            row.norm_xc = norm_xc_of(x, row.zeta);
            row.bound = traj.bounds.M * std::pow(traj.bounds.rho, static_cast<double>(k)) *
                            traj.norm_xc0 +
                        residual;

            // Actuate and advance.
            x = plant.A * x + plant.B * grid_to_rational(ua);
            enc = std::move(step.next);
        } catch (const OverflowError& e) {
            throw OverflowError("step " + std::to_string(k) + ": " + e.what());
        }

        traj.rows.push_back(std::move(row));
    }
    return traj;
}

BoundReport bound_check(const Trajectory& traj) {
    BoundReport report;
    for (const auto& row : traj.rows) {
        if (row.bound > 0) report.max_ratio = std::max(report.max_ratio, row.norm_xc / row.bound);
        if (row.norm_xc > row.bound) {
            report.all_ok = false;
            report.failed_steps.push_back(row.k);
        }
    }
    return report;
}

EquivalenceReport equivalence_audit(const Trajectory& traj) {
    EquivalenceReport report;
    for (const auto& row : traj.rows) {
        ++report.steps_checked;
        if (!row.equiv) {
            report.all_ok = false;
            report.mismatched_steps.push_back(row.k);
        }
    }
    return report;
}

void write_csv(const Trajectory& traj, std::ostream& os) {
    auto cols = [&](const char* base, unsigned count) {
        for (unsigned i = 1; i <= count; ++i) os << ',' << base << '_' << i;
    };
    os << 'k';
    cols("x", traj.nx);
    cols("zeta", traj.nx);
    cols("ua", traj.nu);
    cols("ub", traj.nx);
    cols("ya", traj.ny);
    cols("yb", traj.nx);
    cols("delta", traj.ny + traj.nx);
    os << ",bound,norm_xc,equiv,t_quant_us,t_enc_us,t_ctrl_us,t_dec_us\n";

    for (const auto& row : traj.rows) {
        os << row.k;
        for (const auto& v : row.x) os << ',' << fmt(v.get_d());
        for (const auto& v : row.zeta) os << ',' << fmt(v.to_double());
        for (const auto& v : row.ua) os << ',' << fmt(v.to_double());
        for (const auto& v : row.ub) os << ',' << fmt(v.to_double());
        for (const auto& v : row.ya) os << ',' << fmt(v.get_d());
        for (const auto& v : row.yb) os << ',' << fmt(v.get_d());
        for (const auto& v : row.delta) os << ',' << fmt(v.get_d());
        os << ',' << fmt(row.bound) << ',' << fmt(row.norm_xc) << ',' << (row.equiv ? 1 : 0)
           << ',' << row.t_quant_us << ',' << row.t_enc_us << ',' << row.t_ctrl_us << ','
           << row.t_dec_us << '\n';
    }
}

PlotData read_csv_for_plots(std::istream& is) {
    PlotData data;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("trajectory CSV is empty");

    std::vector<std::string> header;
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);

    std::vector<std::size_t> x_idx;
    std::size_t norm_idx = header.size(), bound_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i].rfind("x_", 0) == 0) x_idx.push_back(i);
        if (header[i] == "norm_xc") norm_idx = i;
        if (header[i] == "bound") bound_idx = i;
    }
    if (norm_idx == header.size() || bound_idx == header.size())
        throw ConfigError("trajectory CSV missing norm_xc/bound columns");

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (cells.size() != header.size()) throw ConfigError("trajectory CSV row width mismatch");
        data.k.push_back(std::stoul(cells[0]));
        std::vector<double> xs;
        for (std::size_t i : x_idx) xs.push_back(std::stod(cells[i]));
        data.x.push_back(std::move(xs));
        data.norm_xc.push_back(std::stod(cells[norm_idx]));
        data.bound.push_back(std::stod(cells[bound_idx]));
    }
    return data;
}

}  // namespace netcrypt
