#include "netcrypt/rational.hpp"

#include <cmath>

namespace netcrypt {

RMat RMat::from_rows(std::initializer_list<std::initializer_list<mpq_class>> rows) {
    RMat r(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != r.cols_) throw Error("RMat::from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& v : row) r(i, j++) = v;
        ++i;
    }
    return r;
}

RMat RMat::identity(std::size_t n) {
    RMat r(n, n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
    return r;
}

RMat RMat::from_blocks(const RMat& tl, const RMat& tr, const RMat& bl, const RMat& br) {
    if (tl.rows_ != tr.rows_ || bl.rows_ != br.rows_ || tl.cols_ != bl.cols_ ||
        tr.cols_ != br.cols_)
        throw Error("RMat::from_blocks: inconsistent block dimensions");
    RMat r(tl.rows_ + bl.rows_, tl.cols_ + tr.cols_);
    for (std::size_t i = 0; i < tl.rows_; ++i) {
        for (std::size_t j = 0; j < tl.cols_; ++j) r(i, j) = tl(i, j);
        for (std::size_t j = 0; j < tr.cols_; ++j) r(i, tl.cols_ + j) = tr(i, j);
    }
    for (std::size_t i = 0; i < bl.rows_; ++i) {
        for (std::size_t j = 0; j < bl.cols_; ++j) r(tl.rows_ + i, j) = bl(i, j);
        for (std::size_t j = 0; j < br.cols_; ++j) r(tl.rows_ + i, tl.cols_ + j) = br(i, j);
    }
    return r;
}

RMat RMat::operator+(const RMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("RMat: dimension mismatch in +");
    RMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

RMat RMat::operator-(const RMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("RMat: dimension mismatch in -");
    RMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

RMat RMat::operator*(const RMat& o) const {
    if (cols_ != o.rows_) throw Error("RMat: dimension mismatch in *");
    RMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& aik = (*this)(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

RMat RMat::operator*(const mpq_class& s) const {
    RMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

RVec RMat::operator*(const RVec& v) const {
    if (cols_ != v.size()) throw Error("RMat: dimension mismatch in mat-vec");
    RVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

RMat RMat::transpose() const {
    RMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

RMat RMat::block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const {
    if (row + nrows > rows_ || col + ncols > cols_) throw Error("RMat::block out of range");
    RMat r(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) r(i, j) = (*this)(row + i, col + j);
    return r;
}

RMat RMat::inverse() const {
    if (rows_ != cols_) throw Error("RMat::inverse: not square");
    RMat a = *this;
    RMat inv = identity(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t pivot = c;
        while (pivot < rows_ && a(pivot, c) == 0) ++pivot;
        if (pivot == rows_) throw Error("RMat::inverse: singular matrix");
        if (pivot != c)
            for (std::size_t j = 0; j < cols_; ++j) {
                swap(a(pivot, j), a(c, j));
                swap(inv(pivot, j), inv(c, j));
            }
        mpq_class p = a(c, c);
        for (std::size_t j = 0; j < cols_; ++j) {
            a(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == c || a(i, c) == 0) continue;
            mpq_class f = a(i, c);
            for (std::size_t j = 0; j < cols_; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

bool RMat::is_integer() const {
    for (const auto& v : a_)
        if (v.get_den() != 1) return false;
    return true;
}

mpz_class RMat::lcm_of_denominators() const {
    mpz_class l = 1;
    for (const auto& v : a_) l = lcm(l, v.get_den());
    return l;
}

RVec operator+(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw Error("RVec: dimension mismatch in +");
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RVec operator-(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw Error("RVec: dimension mismatch in -");
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RVec operator*(const mpq_class& s, const RVec& v) {
    RVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

double vec_norm(const RVec& v) {
    double s = 0;
    for (const auto& q : v) {
        double d = q.get_d();
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace netcrypt
