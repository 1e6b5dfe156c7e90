#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "netcrypt/config.hpp"
#include "netcrypt/keyring.hpp"
#include "netcrypt/sim.hpp"

namespace netcrypt {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kKeyError = 3;
constexpr int kOverflow = 4;
constexpr int kVerifyFailed = 5;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> horizon;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "run configuration (JSON)")->required();
    cmd->add_option("--set", o.overrides, "override a config value, e.g. --set grid.m=9");
    cmd->add_option("--seed", o.seed, "override the RNG seed");
    cmd->add_option("--horizon", o.horizon, "override the number of steps");
}

RunConfig effective_config(const CommonOpts& o) {
    json j = load_json_file(o.config_path);
    for (const auto& kv : o.overrides) apply_override(j, kv);
    RunConfig c = config_from_json(j);
    if (o.seed) c.seed = *o.seed;
    if (o.horizon) c.horizon = *o.horizon;
    return c;
}

Keyring provision_from(const RunConfig& c, Rng& rng) {
    ProvisionParams p;
    p.paillier_bits = c.paillier_bits;
    p.rsa_bits = c.rsa_bits;
    p.grid = c.grid;
    p.required_np_bound = required_paillier_bound(c.gains, c.grid.n);
    return Keyring::provision(c.plant.N(), p, rng);
}

json bounds_to_json(const StabilityBounds& b) {
    return {{"M", b.M},     {"rho", b.rho}, {"sigma", b.sigma},
            {"beta", b.beta}, {"R_o", b.R_o}, {"d", b.d}};
}

int cmd_keygen(const CommonOpts& o, const std::string& out_dir) {
    RunConfig c = effective_config(o);
    Rng rng(c.seed);
    Keyring ring = provision_from(c, rng);

    std::filesystem::create_directories(out_dir);
    auto path = [&](const std::string& name) {
        return (std::filesystem::path(out_dir) / (name + ".key")).string();
    };
    auto dump = [&](const std::string& name, const std::string& text) {
        std::ofstream f(path(name));
        if (!f) throw ConfigError("cannot write " + path(name));
        f << text;
    };

    dump("paillier_public", serialize_key(ring.paillier_public()));
    for (Party p : ring.parties()) dump(party_name(p), export_party_keys(ring, p));

    std::cout << "wrote " << (1 + ring.parties().size()) << " key files to " << out_dir << "\n";
    return kOk;
}

int cmd_synth(const CommonOpts& o) {
    RunConfig c = effective_config(o);
    ClosedLoop cl = build_closed_loop(c.plant, c.gains);
    DecayEnvelope env = decay_envelope(cl.A_c);
    StabilityBounds b = operating_region(env, c.gains, c.plant, c.grid);

    json out = bounds_to_json(b);
    out["spectral_radius"] = spectral_radius(cl.A_c);
    out["required_paillier_bound"] = required_paillier_bound(c.gains, c.grid.n).get_str();
    out["min_paillier_bits"] =
        mpz_sizeinbase(required_paillier_bound(c.gains, c.grid.n).get_mpz_t(), 2) + 1;
    std::cout << out.dump(2) << "\n";
    return kOk;
}

json run_summary(const Trajectory& traj) {
    BoundReport br = bound_check(traj);
    EquivalenceReport er = equivalence_audit(traj);
    return {{"steps", traj.rows.size()},
            {"equivalence_ok", er.all_ok},
            {"bound_ok", br.all_ok},
            {"max_bound_ratio", br.max_ratio},
            {"initial_within_region", traj.initial_within_region},
            {"norm_xc0", traj.norm_xc0},
            {"bounds", bounds_to_json(traj.bounds)}};
}

int cmd_run(const CommonOpts& o, const std::string& out_path, const std::string& trace_path) {
    RunConfig c = effective_config(o);
    if (!trace_path.empty()) c.flags.trace_ciphertexts = true;
    Trajectory traj = run(c);

    if (out_path.empty()) {
        write_csv(traj, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write " + out_path);
        write_csv(traj, out);
        // Snapshot of the config the run actually used, overrides included.
        std::ofstream eff(out_path + ".effective.json");
        eff << config_to_json(c).dump(2) << '\n';
        std::cout << run_summary(traj).dump(2) << "\n";
    }
    if (!trace_path.empty()) {
        std::ofstream tf(trace_path);
        if (!tf) throw ConfigError("cannot write " + trace_path);
        for (const auto& line : traj.cipher_trace) tf << line << '\n';
    }
    return kOk;
}

int cmd_verify(const CommonOpts& o) {
    RunConfig c = effective_config(o);
    c.flags.shadow = true;
    c.flags.abort_on_mismatch = false;
    Trajectory traj = run(c);
    BoundReport br = bound_check(traj);
    EquivalenceReport er = equivalence_audit(traj);

    std::cout << (er.all_ok ? "PASS" : "FAIL") << " encrypted/plaintext equivalence over "
              << er.steps_checked << " steps\n";
    std::cout << (br.all_ok ? "PASS" : "FAIL") << " trajectory bound (max ratio "
              << br.max_ratio << ")\n";
    std::cout << (traj.initial_within_region ? "PASS" : "WARN")
              << " initial condition inside admissible region (R_o " << traj.bounds.R_o
              << ", ||x_c(0)|| " << traj.norm_xc0 << ")\n";
    return (er.all_ok && br.all_ok) ? kOk : kVerifyFailed;
}

int cmd_audit(const CommonOpts& o) {
    RunConfig c = effective_config(o);
    Rng rng(c.seed);
    Keyring ring = provision_from(c, rng);
    AccessReport report = audit(ring);

    for (const auto& e : report.entries) {
        if (!e.can_recover) continue;
        std::cout << party_name(e.party) << " can recover " << signal_name(e.signal) << "\n";
    }
    for (const auto& v : report.violations)
        std::cout << "VIOLATION clause " << v.clause << ": " << party_name(v.party) << " on "
                  << signal_name(v.signal) << "\n";
    std::cout << (report.violations.empty() ? "PASS" : "FAIL") << " key-distribution audit ("
              << report.entries.size() << " pairs checked)\n";
    return report.violations.empty() ? kOk : kVerifyFailed;
}

int cmd_export_plot(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw ConfigError("cannot open " + in_path);
    PlotData data = read_csv_for_plots(in);

    json out = {{"k", data.k}, {"x", data.x}, {"norm_xc", data.norm_xc}, {"bound", data.bound}};
    if (out_path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw ConfigError("cannot write " + out_path);
        f << out.dump(2) << '\n';
    }
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"double-layer encrypted networked control toolkit"};
    app.require_subcommand(1);

    CommonOpts keygen_o, synth_o, run_o, verify_o, audit_o;
    std::string keygen_out = ".", run_out, run_trace, plot_in, plot_out;

    auto* keygen = app.add_subcommand("keygen", "provision and export per-party key files");
    add_common(keygen, keygen_o);
    keygen->add_option("--out", keygen_out, "output directory");

    auto* synth = app.add_subcommand("synth", "print the stability certificate and key sizing");
    add_common(synth, synth_o);

    auto* runc = app.add_subcommand("run", "run the encrypted closed loop, write the trajectory");
    add_common(runc, run_o);
    runc->add_option("--out", run_out, "trajectory CSV path (default stdout)");
    runc->add_option("--trace", run_trace, "also dump the wire ciphertext trace");

    auto* verify = app.add_subcommand("verify", "run and check equivalence and the bound");
    add_common(verify, verify_o);

    auto* auditc = app.add_subcommand("audit", "static access audit of the key distribution");
    add_common(auditc, audit_o);

    auto* plot = app.add_subcommand("export-plot", "convert a trajectory CSV to plot JSON");
    plot->add_option("--in", plot_in, "trajectory CSV")->required();
    plot->add_option("--out", plot_out, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(keygen_o, keygen_out);
        if (synth->parsed()) return cmd_synth(synth_o);
        if (runc->parsed()) return cmd_run(run_o, run_out, run_trace);
        if (verify->parsed()) return cmd_verify(verify_o);
        if (auditc->parsed()) return cmd_audit(audit_o);
        if (plot->parsed()) return cmd_export_plot(plot_in, plot_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOverflow;
    } catch (const EquivalenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const ProvisionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kKeyError;
    } catch (const KeyMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kKeyError;
    } catch (const AccessDenied& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kKeyError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace netcrypt
