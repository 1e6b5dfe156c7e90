#pragma once

#include <gmpxx.h>

#include <string>

#include "netcrypt/errors.hpp"

namespace netcrypt {

// The signed fixed-point grid: rationals in [-2^{n-m-1}, 2^{n-m-1} - 2^{-m}]
// with spacing 2^{-m}, stored as scaled integers v with value = v * 2^{-m}.
struct GridParams {
    unsigned n = 24;  // word length
    unsigned m = 6;   // fractional bits

    void validate() const {
        if (m < 1 || n <= m) throw ConfigError("grid requires n > m >= 1");
    }

    mpz_class modulus() const { return mpz_class(1) << n; }      // 2^n
    mpz_class scale() const { return mpz_class(1) << m; }        // 2^m
    mpz_class raw_min() const { return -(mpz_class(1) << (n - 1)); }
    mpz_class raw_max() const { return (mpz_class(1) << (n - 1)) - 1; }

    bool operator==(const GridParams&) const = default;
};

class FixedPointValue {
public:
    FixedPointValue() = default;

    // Scaled-integer constructor; rejects values off the grid.
    static FixedPointValue from_raw(mpz_class raw, GridParams grid) {
        grid.validate();
        if (raw < grid.raw_min() || raw > grid.raw_max())
            throw OverflowError("fixed-point value outside the grid");
        FixedPointValue v;
        v.raw_ = std::move(raw);
        v.grid_ = grid;
        return v;
    }

    static FixedPointValue zero(GridParams grid) { return from_raw(0, grid); }

    // Floor-to-grid quantizer: result = floor(x * 2^m) / 2^m, so the error
    // delta = result - x satisfies -2^{-m} < delta <= 0.
    static FixedPointValue quantize(const mpq_class& x, GridParams grid) {
        grid.validate();
        mpz_class raw;
        mpz_class num = x.get_num() * grid.scale();
        mpz_fdiv_q(raw.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
        if (raw < grid.raw_min() || raw > grid.raw_max())
            throw OverflowError("quantize: signal outside [-2^{n-m-1}, 2^{n-m-1})");
        return from_raw(std::move(raw), grid);
    }

    // I_{n,m}: the two's-complement-style image 2^m * value mod 2^n.
    mpz_class to_integer() const {
        mpz_class z = raw_ % grid_.modulus();
        if (z < 0) z += grid_.modulus();
        return z;
    }

    // Inverse of I_{n,m} on Z_{2^n}.
    static FixedPointValue from_integer(const mpz_class& z, GridParams grid) {
        grid.validate();
        if (z < 0 || z >= grid.modulus()) throw OverflowError("from_integer: value outside Z_{2^n}");
        mpz_class half = mpz_class(1) << (grid.n - 1);
        return from_raw(z >= half ? mpz_class(z - grid.modulus()) : z, grid);
    }

    mpq_class to_rational() const {
        mpq_class q(raw_, grid_.scale());
        q.canonicalize();
        return q;
    }

    double to_double() const { return to_rational().get_d(); }

    const mpz_class& raw() const { return raw_; }
    GridParams grid() const { return grid_; }

    FixedPointValue operator-() const { return from_raw(-raw_, grid_); }

    FixedPointValue operator+(const FixedPointValue& o) const {
        require_same_grid(o);
        return from_raw(raw_ + o.raw_, grid_);
    }

    FixedPointValue operator-(const FixedPointValue& o) const {
        require_same_grid(o);
        return from_raw(raw_ - o.raw_, grid_);
    }

    // Scale by an integer coefficient; integer coefficients keep values on
    // the grid, which is what makes the encrypted controller exact.
    FixedPointValue scaled(const mpz_class& k) const { return from_raw(raw_ * k, grid_); }

    bool operator==(const FixedPointValue& o) const {
        return grid_ == o.grid_ && raw_ == o.raw_;
    }

    std::string str() const { return to_rational().get_str(); }

private:
    void require_same_grid(const FixedPointValue& o) const {
        if (!(grid_ == o.grid_)) throw Error("fixed-point grid mismatch");
    }

    mpz_class raw_;
    GridParams grid_;
};

}  // namespace netcrypt
