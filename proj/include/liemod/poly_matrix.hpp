#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/matrix.hpp"
#include "liemod/poly.hpp"

namespace liemod {

// Dense matrix of polynomials, used to take the rank of a matrix whose
// entries depend on indeterminate coordinates (a "generic point").
class PolyMatrix {
public:
    PolyMatrix(const FieldContext& F, unsigned nvars, size_t rows, size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, MultiPoly(F, nvars)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    MultiPoly& at(size_t r, size_t c) { return entries_[r * cols_ + c]; }
    const MultiPoly& at(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }

private:
    size_t rows_, cols_;
    std::vector<MultiPoly> entries_;
};

inline PolyMatrix poly_mat_mul(const PolyMatrix& a, const PolyMatrix& b,
                               unsigned max_degree = 0) {
    if (a.cols() != b.rows()) throw ValidationError("poly_mat_mul: shape mismatch");
    if (a.rows() == 0 || a.cols() == 0 || b.cols() == 0)
        throw ValidationError("poly_mat_mul: empty operand");
    const MultiPoly& probe = a.at(0, 0);
    PolyMatrix c(probe.field(), probe.nvars(), a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            const MultiPoly& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < b.cols(); ++j) {
                const MultiPoly& y = b.at(k, j);
                if (y.is_zero()) continue;
                c.at(i, j) = poly_add(c.at(i, j), poly_mul(x, y, max_degree));
            }
        }
    return c;
}

template <std::unsigned_integral E>
DenseMat<E> poly_mat_evaluate(const PolyMatrix& m, const std::vector<uint32_t>& point) {
    DenseMat<E> out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            out.at(i, j) = static_cast<E>(m.at(i, j).evaluate(point));
    return out;
}

// Rank over the rational function field by fraction-free (Bareiss) one-step
// elimination: every intermediate entry is a minor of the input, and the
// division by the previous pivot is exact. Pivots are chosen as the
// lowest-total-degree nonzero entry of the remaining submatrix (row-major
// tie-break) to slow degree growth. Intermediate degrees beyond max_degree
// abort with BlowUpError; a failed exact division means the input violated
// the algorithm's contract and raises InternalError.
inline size_t generic_rank(PolyMatrix m, unsigned max_degree = 64) {
    const size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    const MultiPoly& probe = m.at(0, 0);
    MultiPoly prev = MultiPoly::constant(probe.field(), probe.nvars(), 1);
    size_t rank = 0;
    while (rank < rows && rank < cols) {
        size_t pr = rows, pc = cols;
        unsigned best = 0;
        for (size_t i = rank; i < rows; ++i)
            for (size_t j = rank; j < cols; ++j) {
                const MultiPoly& e = m.at(i, j);
                if (e.is_zero()) continue;
                if (pr == rows || e.total_degree() < best) {
                    pr = i;
                    pc = j;
                    best = e.total_degree();
                }
            }
        if (pr == rows) break;  // remaining block is identically zero
        m.swap_rows(rank, pr);
        m.swap_cols(rank, pc);
        const MultiPoly pivot = m.at(rank, rank);
        for (size_t i = rank + 1; i < rows; ++i) {
            const MultiPoly& li = m.at(i, rank);
            for (size_t j = rank + 1; j < cols; ++j) {
                MultiPoly num = poly_sub(poly_mul(pivot, m.at(i, j), max_degree),
                                         poly_mul(li, m.at(rank, j), max_degree));
                m.at(i, j) = num.is_zero() ? std::move(num) : poly_div_exact(num, prev);
            }
            m.at(i, rank) = MultiPoly(probe.field(), probe.nvars());
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

}  // namespace liemod
