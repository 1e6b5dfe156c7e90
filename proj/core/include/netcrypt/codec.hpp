#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netcrypt/crypto.hpp"
#include "netcrypt/fixedpoint.hpp"

namespace netcrypt {

// Paired encryptions of (v, -v). Signed integer coefficients become
// exponent-and-select on the pair, so the homomorphic controller never
// needs subtraction.
struct DualCiphertext {
    PaillierCiphertext plus;   // E_P(I_{n,m}(v))
    PaillierCiphertext minus;  // E_P(I_{n,m}(-v))
    GridParams grid;
};

// Which outer RSA keypair a wire ciphertext is under.
enum class LayerTag : std::uint8_t {
    kToController = 1,  // E_{R,i}: entity i -> control unit i
    kToEntity = 2,      // Ebar_{R,i}: control unit -> entity i
};

// One Paillier ciphertext wrapped in an outer RSA layer, plus the public
// metadata needed to detect mismatched keys instead of producing garbage.
struct OuterCiphertext {
    mpz_class value;  // in Z_{n_R}
    unsigned party = 0;
    LayerTag layer = LayerTag::kToController;
    std::uint64_t rsa_key_id = 0;
    std::uint64_t paillier_key_id = 0;
    GridParams grid;
};

struct OuterDual {
    OuterCiphertext plus;
    OuterCiphertext minus;
};

// E_o: quantized grid vector -> dual Paillier ciphertexts. Requires
// 2^n < n_P; rejects the most negative grid point, whose negation is not
// representable.
std::vector<DualCiphertext> inner_encrypt(std::span<const FixedPointValue> v,
                                          const PaillierPublicKey& pk, Rng& rng);

// E_i: outer RSA layer applied component-wise to both dual components,
// bound for control unit `party`.
std::vector<OuterDual> outer_encrypt(unsigned party, std::span<const DualCiphertext> v,
                                     const RsaPublicKey& pk);

// D_i: strips the outer layer only (the control-unit-side operation).
std::vector<DualCiphertext> outer_decrypt(unsigned party, std::span<const OuterDual> c,
                                          const RsaKeypair& kp);

// Ebar_i: wraps controller-side Paillier ciphertexts for transport back to
// entity `party`.
std::vector<OuterCiphertext> entity_encrypt(unsigned party, std::span<const PaillierCiphertext> v,
                                            const RsaPublicKey& pk, GridParams grid);

// D_o: Paillier-decrypt, reduce mod 2^n, invert I_{n,m}. The mod-2^n
// reduction is what makes signed homomorphic sums land on the right grid
// point.
std::vector<FixedPointValue> inner_decrypt(std::span<const PaillierCiphertext> c,
                                           const PaillierPrivateKey& sk, GridParams grid);
FixedPointValue inner_decrypt_one(const PaillierCiphertext& c, const PaillierPrivateKey& sk,
                                  GridParams grid);

// Dbar_i: full two-layer decryption back to the grid at entity `party`.
std::vector<FixedPointValue> entity_decrypt(unsigned party, std::span<const OuterCiphertext> c,
                                            const RsaKeypair& kp, const PaillierPrivateKey& sk);

// Wire format: one-byte layer tag, one-byte party index, then a
// length-prefixed hex big integer. Used by the trace dump.
std::string wire_encode(const OuterCiphertext& c);
OuterCiphertext wire_decode(const std::string& line);

}  // namespace netcrypt
