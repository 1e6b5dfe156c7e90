#pragma once

#include <span>
#include <string>
#include <vector>

#include "netcrypt/codec.hpp"
#include "netcrypt/synthesis.hpp"

namespace netcrypt {

// ---------------------------------------------------------------------------
// Plaintext quantized reference engine (the shadow loop).
// ---------------------------------------------------------------------------

struct PlainControllerState {
    std::vector<FixedPointValue> zeta;
};

struct PlainStepResult {
    std::vector<FixedPointValue> ua;
    std::vector<FixedPointValue> ub;  // = zeta(k), the echo channel
    PlainControllerState next;
};

// Integer-coefficient linear combination in the raw scaled-integer domain;
// integer coefficients keep every result on the grid. Throws OverflowError
// on a C_{n,m} breach.
std::vector<FixedPointValue> int_combine(const RMat& coeffs,
                                         std::span<const FixedPointValue> values);

// u^a = phi y^b_q, u^b = zeta, zeta+ = varphi_o y^b_q + varphi y^a_q.
PlainStepResult plain_step(const PlainControllerState& state,
                           std::span<const FixedPointValue> ya_q,
                           std::span<const FixedPointValue> yb_q, const ControllerGains& gains);

// ---------------------------------------------------------------------------
// Encrypted homomorphic engine.
// ---------------------------------------------------------------------------

struct EncryptedControllerState {
    std::vector<DualCiphertext> z;
};

// Exponent-and-select: the plus component for a > 0, the minus component
// for a < 0, raised to |a|; a = 0 contributes the trivial encryption 1.
PaillierCiphertext dual_power(const DualCiphertext& c, const mpz_class& a,
                              const PaillierPublicKey& pk);

// One row of the homomorphic product: prod_j dual_power(inputs[j], a_j)
// mod n_P^2. With negate set, every sign selection flips (the z^- update).
PaillierCiphertext hom_combine(const RMat& coeffs, std::size_t row,
                               std::span<const DualCiphertext> inputs,
                               const PaillierPublicKey& pk, bool negate = false);

struct EncryptedStepResult {
    std::vector<PaillierCiphertext> va;  // decrypts (via D_o) to u^a
    std::vector<PaillierCiphertext> vb;  // state slices, decrypt to zeta(k)
    EncryptedControllerState next;
};

// The stabilizer's homomorphic step: u^a rows are phi-products over the
// y^b duals, the state update is the [varphi_o varphi] product over
// (y^b, y^a) duals, maintained for both signs.
EncryptedStepResult encrypted_stabilizer_step(const EncryptedControllerState& state,
                                              std::span<const DualCiphertext> ya,
                                              std::span<const DualCiphertext> yb,
                                              const ControllerGains& gains,
                                              const PaillierPublicKey& pk);

// The general dynamic controller: coefficient columns are ordered
// [state | inputs], with state columns selecting between z^+/z^- by sign.
// The stored state plaintext is only congruent to I(zeta) mod 2^n, so
// repeated state exponentiation grows the plaintext toward n_P; callers
// stepping this form repeatedly must account for that headroom.
struct GeneralStepResult {
    std::vector<PaillierCiphertext> v;
    EncryptedControllerState next;
};

GeneralStepResult encrypted_general_step(const EncryptedControllerState& state,
                                         std::span<const DualCiphertext> inputs, const RMat& phi,
                                         const RMat& varphi, const PaillierPublicKey& pk);

// ---------------------------------------------------------------------------
// C_{n,m} membership check.
// ---------------------------------------------------------------------------

struct RangeBreach {
    std::string output;  // which controller output left the range
    std::size_t row;
};

struct RangeReport {
    bool ok = true;
    std::vector<RangeBreach> breaches;
};

// Evaluates the controller maps on (zeta, y^q) and reports any output
// outside [-2^{n-m-1}, 2^{n-m-1}); report-style, never throws.
RangeReport range_guard(std::span<const FixedPointValue> zeta,
                        std::span<const FixedPointValue> ya_q,
                        std::span<const FixedPointValue> yb_q, const ControllerGains& gains);

}  // namespace netcrypt
