// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "netcrypt/config.hpp"
#include "netcrypt/controller.hpp"
#include "netcrypt/sim.hpp"

using namespace netcrypt;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " [" << idx << "] " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

RunConfig example_config() { return load_config_file(NETCRYPT_EXAMPLE_CONFIG); }

double residual_term(const Trajectory& t, unsigned m) {
    return t.bounds.M * t.bounds.sigma * std::ldexp(1.0, -static_cast<int>(m)) /
           (1.0 - t.bounds.rho);
}

// 1: the encrypted loop and the plaintext shadow agree bit-exactly over the
//    full 51-step run, within a one-minute budget.
Trajectory criterion_1() {
    auto start = std::chrono::steady_clock::now();
    RunConfig c = example_config();
    Trajectory t = run(c);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EquivalenceReport er = equivalence_audit(t);
    bool ok = er.all_ok && er.steps_checked == 51 && secs < 60.0;
    std::ostringstream d;
    d << er.steps_checked << " steps, " << secs << " s";
    report(1, ok, "encrypted loop matches the plaintext loop bit-exactly", d.str());
    return t;
}

// 2: the certified decay bound holds at every step and the final state has
//    entered the steady-state residual ball.
void criterion_2(const Trajectory& t) {
    BoundReport br = bound_check(t);
    double final_norm = t.rows.back().norm_xc;
    double residual = residual_term(t, 6);
    bool ok = br.all_ok && final_norm <= residual;
    std::ostringstream d;
    d << "max ratio " << br.max_ratio << ", ||x_c(50)|| = " << final_norm
      << " <= " << residual;
    report(2, ok, "trajectory bound holds and the run converges", d.str());
}

// 3: refining the grid from m=6 to m=9 shrinks the observed steady state and
//    scales the analytic residual term by exactly 2^-3.
void criterion_3(const Trajectory& t6) {
    RunConfig c = example_config();
    c.grid.m = 9;
    Trajectory t9 = run(c);
    double final6 = t6.rows.back().norm_xc;
    double final9 = t9.rows.back().norm_xc;
    double r6 = residual_term(t6, 6);
    double r9 = residual_term(t9, 9);
    bool exact_ratio = r9 * 8.0 == r6;
    bool ok = equivalence_audit(t9).all_ok && final9 < final6 && exact_ratio;
    std::ostringstream d;
    d << "final residual " << final9 << " < " << final6 << ", analytic term ratio "
      << r9 / r6;
    report(3, ok, "finer quantization shrinks the steady-state error", d.str());
}

// 4: Paillier round-trips 1000 random plaintexts at production size and
//    every residue of a tiny forced-prime key.
void criterion_4() {
    Rng rng(404);
    bool ok = true;
    PaillierKeypair big = paillier_keygen(64, rng);
    for (int i = 0; i < 1000 && ok; ++i) {
        mpz_class m = rng.below(big.pub.n);
        ok = paillier_decrypt(big.priv, paillier_encrypt(big.pub, m, rng)) == m;
    }
    PaillierKeypair tiny = paillier_from_primes(5, 7);
    for (int i = 0; i < 1000 && ok; ++i) {
        mpz_class m = rng.below(tiny.pub.n);
        ok = paillier_decrypt(tiny.priv, paillier_encrypt(tiny.pub, m, rng)) == m;
    }
    report(4, ok, "Paillier encrypt/decrypt round-trips 1000 cases at both key sizes");
}

// 5: the homomorphic signed-combination engine agrees with the exact integer
//    oracle on 200 randomized instances.
void criterion_5() {
    Rng rng(505);
    GridParams grid{24, 6};
    PaillierKeypair kp = paillier_keygen(64, rng);
    auto rnd = [&](long lim) {
        return static_cast<long>(mpz_get_si(rng.below(2 * lim + 1).get_mpz_t())) - lim;
    };

    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        std::size_t cols = 1 + static_cast<std::size_t>(rnd(2) + 2);  // 1..5
        RMat coeffs(2, cols);
        std::vector<FixedPointValue> v;
        for (std::size_t j = 0; j < cols; ++j) {
            coeffs(0, j) = rnd(100);
            coeffs(1, j) = rnd(100);
            v.push_back(FixedPointValue::from_raw(rnd(8000), grid));
        }
        auto expect = int_combine(coeffs, v);
        auto duals = inner_encrypt(v, kp.pub, rng);
        for (std::size_t r = 0; r < 2 && ok; ++r) {
            auto c = hom_combine(coeffs, r, duals, kp.pub);
            ok = inner_decrypt_one(c, kp.priv, grid) == expect[r];
        }
    }
    report(5, ok, "homomorphic combinations match the exact integer oracle (200 cases)");
}

// 6: the static key audit is clean for N = 1, 2, 3 and pinpoints exactly the
//    leaks introduced by two key-grant mutations.
void criterion_6() {
    auto make_ring = [](unsigned N) {
        Rng rng(600 + N);
        ProvisionParams p;
        p.paillier_bits = 48;
        p.rsa_bits = 128;
        p.grid = GridParams{16, 4};
        return Keyring::provision(N, p, rng);
    };

    bool ok = true;
    for (unsigned N : {1u, 2u, 3u}) ok = ok && audit(make_ring(N)).violations.empty();

    // mutation A: control unit 1 obtains the shared Paillier key -> it can
    // read the inner signals of every entity and its own wire
    {
        Keyring ring = make_ring(2);
        Party c1{PartyKind::kControlUnit, 1};
        ring.grant(c1, {PrivKeyRef::Kind::kPaillier, 0});
        auto r = audit(ring);
        auto has = [&](SignalRef s, int clause) {
            return std::find(r.violations.begin(), r.violations.end(),
                             Violation{c1, s, clause}) != r.violations.end();
        };
        ok = ok && r.violations.size() == 5;
        for (unsigned i = 1; i <= 2; ++i) {
            ok = ok && has({SignalRef::Kind::kControllerInnerY, i}, 2);
            ok = ok && has({SignalRef::Kind::kControllerV, i}, 2);
        }
        ok = ok && has({SignalRef::Kind::kWireY, 1}, 1);
    }

    // mutation B: entity 2 obtains entity 1's RSA key -> exactly the wire
    // back to entity 1 leaks
    {
        Keyring ring = make_ring(2);
        Party e2{PartyKind::kEntity, 2};
        ring.grant(e2, {PrivKeyRef::Kind::kRsaEntity, 1});
        auto r = audit(ring);
        ok = ok && r.violations.size() == 1 &&
             r.violations[0] == Violation{e2, {SignalRef::Kind::kWireV, 1}, 1};
    }
    report(6, ok, "key audit is clean when intended and flags exactly the planted leaks");
}

// 7: provisioning refuses moduli at or below the gain-row-sum bound and
//    accepts one above it; the bound itself is 115 * 2^24 for these gains.
void criterion_7() {
    RunConfig c = example_config();
    mpz_class bound = required_paillier_bound(c.gains, c.grid.n);
    bool ok = bound == mpz_class(115) * (mpz_class(1) << 24);

    ProvisionParams p;
    p.grid = c.grid;
    p.required_np_bound = bound;
    p.rsa_bits = 128;
    p.paillier_bits = 28;  // n_P < 2^28 < 115 * 2^24: must be refused
    {
        Rng rng(700);
        bool threw = false;
        try {
            Keyring::provision(1, p, rng);
        } catch (const ProvisionError&) {
            threw = true;
        }
        ok = ok && threw;
    }
    {
        Rng rng(701);
        p.paillier_bits = 64;
        p.rsa_bits = 256;
        Keyring ring = Keyring::provision(1, p, rng);
        ok = ok && ring.paillier_public().n > bound;
    }
    report(7, ok, "key sizing enforces the gain-row-sum bound (115 * 2^24)");
}

// 8: the integer image is a bijection (exhaustive at n=6, m=2; sampled at
//    the production grid) and the quantizer error stays in (-2^-m, 0].
void criterion_8() {
    bool ok = true;
    GridParams small{6, 2};
    for (long z = 0; z < 64 && ok; ++z)
        ok = FixedPointValue::from_integer(z, small).to_integer() == z;
    for (long raw = -32; raw <= 31 && ok; ++raw) {
        FixedPointValue v = FixedPointValue::from_raw(raw, small);
        ok = FixedPointValue::from_integer(v.to_integer(), small) == v;
    }

    GridParams prod{24, 6};
    Rng rng(808);
    for (int i = 0; i < 10000 && ok; ++i) {
        mpz_class z = rng.below(prod.modulus());
        ok = FixedPointValue::from_integer(z, prod).to_integer() == z;
    }

    mpq_class step(1, 64);
    for (int i = 0; i < 10000 && ok; ++i) {
        mpq_class x(mpz_class(rng.below(1 << 17)) - (1 << 16), rng.below(997) + 1);
        x.canonicalize();
        mpq_class err = FixedPointValue::quantize(x, prod).to_rational() - x;
        ok = err <= 0 && err > -step;
    }
    report(8, ok, "fixed-point image is bijective and the quantizer error is in (-2^-m, 0]");
}

// 9: with timing capture off, repeated runs are byte-identical, including
//    the full ciphertext trace.
void criterion_9() {
    RunConfig c = example_config();
    c.horizon = 10;
    c.flags.record_timings = false;
    c.flags.trace_ciphertexts = true;

    Trajectory a = run(c);
    Trajectory b = run(c);
    std::ostringstream sa, sb;
    write_csv(a, sa);
    write_csv(b, sb);
    bool ok = sa.str() == sb.str() && a.cipher_trace == b.cipher_trace &&
              !a.cipher_trace.empty();
    report(9, ok, "repeat runs are byte-identical (CSV and ciphertext trace)");
}

}  // namespace

int main() {
    try {
        Trajectory t = criterion_1();
        criterion_2(t);
        criterion_3(t);
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
    } catch (const std::exception& e) {
        std::cout << "FAIL [fatal] unexpected exception: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASSED"
                                : "ACCEPTANCE FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
