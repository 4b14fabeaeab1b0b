#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/gf.hpp"

namespace liemod {

// Row-major dense matrix with entries encoded per FieldContext. E is the
// storage type: uint8_t when q <= 256, uint16_t up to q = 2^16. All arithmetic
// routes through an explicit FieldContext so a matrix is just a bag of codes.
template <std::unsigned_integral E>
class DenseMat {
public:
    DenseMat() : rows_(0), cols_(0) {}
    DenseMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static DenseMat identity(size_t n) {
        DenseMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    E& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    E at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    E* row(size_t r) { return data_.data() + r * cols_; }
    const E* row(size_t r) const { return data_.data() + r * cols_; }
    const std::vector<E>& data() const { return data_; }

    bool operator==(const DenseMat&) const = default;

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        E* ra = row(a);
        E* rb = row(b);
        for (size_t j = 0; j < cols_; ++j) std::swap(ra[j], rb[j]);
    }

private:
    size_t rows_, cols_;
    std::vector<E> data_;
};

template <std::unsigned_integral E>
void check_element_fits(const FieldContext& F) {
    if (F.order() - 1 > std::numeric_limits<E>::max())
        throw ValidationError("matrix: element type too narrow for field order");
}

template <std::unsigned_integral E>
DenseMat<E> mat_add(const FieldContext& F, const DenseMat<E>& a, const DenseMat<E>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("mat_add: shape mismatch");
    DenseMat<E> c(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = static_cast<E>(F.add(a.at(i, j), b.at(i, j)));
    return c;
}

template <std::unsigned_integral E>
DenseMat<E> mat_sub(const FieldContext& F, const DenseMat<E>& a, const DenseMat<E>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("mat_sub: shape mismatch");
    DenseMat<E> c(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            c.at(i, j) = static_cast<E>(F.sub(a.at(i, j), b.at(i, j)));
    return c;
}

template <std::unsigned_integral E>
DenseMat<E> mat_scale(const FieldContext& F, const DenseMat<E>& a, uint32_t c) {
    DenseMat<E> out(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            out.at(i, j) = static_cast<E>(F.mul(c, a.at(i, j)));
    return out;
}

template <std::unsigned_integral E>
DenseMat<E> mat_transpose(const DenseMat<E>& a) {
    DenseMat<E> t(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            t.at(j, i) = a.at(i, j);
    return t;
}

// c = a*b. Prime fields accumulate machine-integer dot products and reduce
// once per entry; extension fields go through the log/exp tables.
template <std::unsigned_integral E>
DenseMat<E> mat_mul(const FieldContext& F, const DenseMat<E>& a, const DenseMat<E>& b) {
    if (a.cols() != b.rows()) throw ValidationError("mat_mul: shape mismatch");
    check_element_fits<E>(F);
    DenseMat<E> c(a.rows(), b.cols());
    const size_t n = b.cols();
    if (F.degree() == 1) {
        const uint64_t p = F.characteristic();
        std::vector<uint64_t> acc(n);
        for (size_t i = 0; i < a.rows(); ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            const E* arow = a.row(i);
            for (size_t k = 0; k < a.cols(); ++k) {
                const uint64_t v = arow[k];
                if (!v) continue;
                const E* brow = b.row(k);
                for (size_t j = 0; j < n; ++j) acc[j] += v * brow[j];
            }
            E* crow = c.row(i);
            for (size_t j = 0; j < n; ++j) crow[j] = static_cast<E>(acc[j] % p);
        }
    } else {
        for (size_t i = 0; i < a.rows(); ++i) {
            E* crow = c.row(i);
            for (size_t k = 0; k < a.cols(); ++k) {
                const uint32_t v = a.at(i, k);
                if (!v) continue;
                const E* brow = b.row(k);
                for (size_t j = 0; j < n; ++j)
                    crow[j] = static_cast<E>(F.add(crow[j], F.mul(v, brow[j])));
            }
        }
    }
    return c;
}

template <std::unsigned_integral E>
DenseMat<E> mat_pow(const FieldContext& F, DenseMat<E> a, uint64_t k) {
    if (a.rows() != a.cols()) throw ValidationError("mat_pow: matrix not square");
    DenseMat<E> r = DenseMat<E>::identity(a.rows());
    while (k) {
        if (k & 1) r = mat_mul(F, r, a);
        k >>= 1;
        if (k) a = mat_mul(F, a, a);
    }
    return r;
}

namespace matdetail {

// Prime-field elimination over byte/short entries. The pivot row is
// normalized to leading 1 and rows below are cleared with a branch-light
// subtract; scaled copies of the pivot row are cached per factor, which pays
// off for small p where only p-1 distinct factors ever occur.
template <std::unsigned_integral E>
size_t rank_prime_field(const FieldContext& F, DenseMat<E>& m) {
    const uint32_t p = F.characteristic();
    const size_t rows = m.rows(), cols = m.cols();
    size_t rank = 0;
    std::vector<std::vector<E>> scaled(p);
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m.at(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        m.swap_rows(piv, rank);
        E* prow = m.row(rank);
        const size_t tail = cols - col;
        if (prow[col] != 1) {
            const uint32_t s = F.inv(prow[col]);
            for (size_t j = col; j < cols; ++j)
                prow[j] = static_cast<E>(static_cast<uint32_t>(prow[j]) * s % p);
        }
        for (auto& v : scaled) v.clear();
        for (size_t r = rank + 1; r < rows; ++r) {
            const uint32_t f = m.at(r, col);
            if (!f) continue;
            E* rrow = m.row(r) + col;
            const E* sub;
            if (f == 1) {
                sub = prow + col;
            } else {
                auto& cache = scaled[f];
                if (cache.empty()) {
                    cache.resize(tail);
                    for (size_t j = 0; j < tail; ++j)
                        cache[j] = static_cast<E>(f * static_cast<uint32_t>(prow[col + j]) % p);
                }
                sub = cache.data();
            }
            for (size_t j = 0; j < tail; ++j) {
                const E a = rrow[j], b = sub[j];
                E d = static_cast<E>(a - b);
                if (a < b) d = static_cast<E>(d + p);
                rrow[j] = d;
            }
        }
        ++rank;
    }
    return rank;
}

// Extension fields reuse the scaled-pivot-row cache; in characteristic 2 the
// codes are bit-packed coefficient vectors, so row subtraction is a plain XOR.
template <std::unsigned_integral E>
size_t rank_extension_field(const FieldContext& F, DenseMat<E>& m) {
    const size_t rows = m.rows(), cols = m.cols();
    const bool char2 = F.characteristic() == 2;
    size_t rank = 0;
    std::vector<std::vector<E>> scaled(F.order());
    std::vector<uint32_t> dirty;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && m.at(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        m.swap_rows(piv, rank);
        E* prow = m.row(rank);
        const size_t tail = cols - col;
        if (prow[col] != 1) {
            const uint32_t s = F.inv(prow[col]);
            for (size_t j = col; j < cols; ++j)
                prow[j] = static_cast<E>(F.mul(s, prow[j]));
        }
        for (uint32_t f : dirty) scaled[f].clear();
        dirty.clear();
        for (size_t r = rank + 1; r < rows; ++r) {
            const uint32_t f = m.at(r, col);
            if (!f) continue;
            E* rrow = m.row(r) + col;
            const E* sub;
            if (f == 1) {
                sub = prow + col;
            } else {
                auto& cache = scaled[f];
                if (cache.empty()) {
                    cache.resize(tail);
                    for (size_t j = 0; j < tail; ++j)
                        cache[j] = static_cast<E>(F.mul(f, prow[col + j]));
                    dirty.push_back(f);
                }
                sub = cache.data();
            }
            if (char2) {
                for (size_t j = 0; j < tail; ++j) rrow[j] = static_cast<E>(rrow[j] ^ sub[j]);
            } else {
                for (size_t j = 0; j < tail; ++j) rrow[j] = static_cast<E>(F.sub(rrow[j], sub[j]));
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace matdetail

// Bit-packed matrix over GF(2); 64 columns per word.
class BitMatrix {
public:
    BitMatrix() : rows_(0), cols_(0), wpr_(0) {}
    BitMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    static BitMatrix identity(size_t n) {
        BitMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    bool get(size_t r, size_t c) const {
        return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1;
    }
    void set(size_t r, size_t c, bool v) {
        uint64_t& w = data_[r * wpr_ + c / 64];
        const uint64_t mask = uint64_t(1) << (c % 64);
        if (v) w |= mask;
        else w &= ~mask;
    }

    uint64_t* row(size_t r) { return data_.data() + r * wpr_; }
    const uint64_t* row(size_t r) const { return data_.data() + r * wpr_; }
    size_t words_per_row() const { return wpr_; }

    bool operator==(const BitMatrix&) const = default;

    size_t rank() const {
        BitMatrix m(*this);
        size_t rank = 0;
        for (size_t col = 0; col < cols_ && rank < rows_; ++col) {
            const size_t w = col / 64;
            const uint64_t mask = uint64_t(1) << (col % 64);
            size_t piv = rank;
            while (piv < rows_ && !(m.row(piv)[w] & mask)) ++piv;
            if (piv == rows_) continue;
            if (piv != rank)
                for (size_t k = w; k < wpr_; ++k) std::swap(m.row(piv)[k], m.row(rank)[k]);
            const uint64_t* prow = m.row(rank);
            for (size_t r = rank + 1; r < rows_; ++r) {
                uint64_t* rrow = m.row(r);
                if (rrow[w] & mask)
                    for (size_t k = w; k < wpr_; ++k) rrow[k] ^= prow[k];
            }
            ++rank;
        }
        return rank;
    }

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("BitMatrix mul: shape mismatch");
        BitMatrix c(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i) {
            uint64_t* crow = c.row(i);
            const uint64_t* arow = a.row(i);
            for (size_t k = 0; k < a.cols_; ++k)
                if ((arow[k / 64] >> (k % 64)) & 1) {
                    const uint64_t* brow = b.row(k);
                    for (size_t j = 0; j < b.wpr_; ++j) crow[j] ^= brow[j];
                }
        }
        return c;
    }

    friend BitMatrix operator^(const BitMatrix& a, const BitMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ValidationError("BitMatrix xor: shape mismatch");
        BitMatrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] ^ b.data_[i];
        return c;
    }

private:
    size_t rows_, cols_, wpr_;
    std::vector<uint64_t> data_;
};

template <std::unsigned_integral E>
BitMatrix to_bits(const DenseMat<E>& a) {
    BitMatrix b(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j)) b.set(i, j, true);
    return b;
}

template <std::unsigned_integral E = uint8_t>
DenseMat<E> from_bits(const BitMatrix& b) {
    DenseMat<E> a(b.rows(), b.cols());
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j)
            if (b.get(i, j)) a.at(i, j) = 1;
    return a;
}

// Rank by Gaussian elimination with deterministic first-nonzero pivoting.
// GF(2) work is rerouted through the bit-packed representation.
template <std::unsigned_integral E>
size_t mat_rank(const FieldContext& F, const DenseMat<E>& a) {
    check_element_fits<E>(F);
    if (F.order() == 2) return to_bits(a).rank();
    DenseMat<E> m(a);
    if (F.degree() == 1) return matdetail::rank_prime_field(F, m);
    return matdetail::rank_extension_field(F, m);
}

// rank(n^k) for nilpotent-style arguments; k = 0 gives rank of identity.
template <std::unsigned_integral E>
size_t nilpotent_power_rank(const FieldContext& F, const DenseMat<E>& n, unsigned k) {
    if (n.rows() != n.cols()) throw ValidationError("nilpotent_power_rank: matrix not square");
    if (k == 0) return n.rows();
    if (F.order() == 2) {
        BitMatrix acc = to_bits(n);
        BitMatrix base = acc;
        for (unsigned i = 1; i < k; ++i) acc = acc * base;
        return acc.rank();
    }
    DenseMat<E> acc = n;
    for (unsigned i = 1; i < k; ++i) acc = mat_mul(F, acc, n);
    return mat_rank(F, acc);
}

}  // namespace liemod
