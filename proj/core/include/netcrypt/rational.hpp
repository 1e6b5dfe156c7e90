#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "netcrypt/errors.hpp"

namespace netcrypt {

using RVec = std::vector<mpq_class>;

// Dense matrix over exact rationals. Small systems only; everything the
// control path touches stays exact so the shadow oracle can be bit-exact.
class RMat {
public:
    RMat() = default;
    RMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    // Row-major literal, e.g. RMat::from_rows({{1, 1}, {0, 1}}).
    static RMat from_rows(std::initializer_list<std::initializer_list<mpq_class>> rows);

    static RMat identity(std::size_t n);
    static RMat zero(std::size_t rows, std::size_t cols) { return RMat(rows, cols); }

    // Assemble [[tl, tr], [bl, br]] with consistent block dimensions.
    static RMat from_blocks(const RMat& tl, const RMat& tr, const RMat& bl, const RMat& br);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpq_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RMat operator+(const RMat& o) const;
    RMat operator-(const RMat& o) const;
    RMat operator*(const RMat& o) const;
    RMat operator*(const mpq_class& s) const;

    RVec operator*(const RVec& v) const;

    RMat transpose() const;
    RMat block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const;

    // Exact inverse by Gaussian elimination; throws on singular input.
    RMat inverse() const;

    bool is_integer() const;
    mpz_class lcm_of_denominators() const;

    bool operator==(const RMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpq_class> a_;
};

RVec operator+(const RVec& a, const RVec& b);
RVec operator-(const RVec& a, const RVec& b);
RVec operator*(const mpq_class& s, const RVec& v);

// Euclidean norm after conversion to double (bounds are certificates, not
// control-path values).
double vec_norm(const RVec& v);

}  // namespace netcrypt
