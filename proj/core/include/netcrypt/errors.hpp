#pragma once

#include <stdexcept>
#include <string>

namespace netcrypt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Key-size rules violated at provisioning time.
struct ProvisionError : Error {
    using Error::Error;
};

// A signal left the representable range [-2^{n-m-1}, 2^{n-m-1}) or an
// integer left its modular domain.
struct OverflowError : Error {
    using Error::Error;
};

// Ciphertext and key disagree on modulus, layer, or party.
struct KeyMismatchError : Error {
    using Error::Error;
};

// A party attempted a decryption it lacks the private key for.
struct AccessDenied : Error {
    AccessDenied(const std::string& what, std::string missing)
        : Error(what), missing_key(std::move(missing)) {}
    std::string missing_key;
};

// The encrypted loop and the plaintext shadow loop diverged.
struct EquivalenceError : Error {
    EquivalenceError(const std::string& what, unsigned long step)
        : Error(what), step(step) {}
    unsigned long step;
};

}  // namespace netcrypt
