#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/perm.hpp"

namespace liemod {

inline bool is_prime(unsigned v) {
    if (v < 2) return false;
    for (unsigned d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline uint64_t ipow(uint64_t base, unsigned exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// Shape (r_1,...,r_t) of a product of regular elementary abelian factors:
// factor j is a regular (C_p)^{r_j} on an interval of p^{r_j} points.
struct SubgroupShape {
    std::vector<unsigned> parts;  // weakly decreasing, all >= 1
    unsigned prime = 2;

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts[i]);
        }
        return s;
    }

    unsigned rank() const {
        unsigned k = 0;
        for (unsigned r : parts) k += r;
        return k;
    }

    uint64_t moved_points() const {
        uint64_t s = 0;
        for (unsigned r : parts) s += ipow(prime, r);
        return s;
    }

    // Parses "r1,r2,..." and validates the weakly decreasing requirement.
    static SubgroupShape parse(const std::string& text, unsigned p) {
        SubgroupShape shape;
        shape.prime = p;
        unsigned v = 0;
        bool have = false;
        for (char c : text) {
            if (c >= '0' && c <= '9') {
                v = v * 10 + static_cast<unsigned>(c - '0');
                have = true;
            } else if (c == ',') {
                if (!have) throw ValidationError("shape: empty component");
                shape.parts.push_back(v);
                v = 0;
                have = false;
            } else if (c != ' ') {
                throw ValidationError("shape: unexpected character");
            }
        }
        if (have) shape.parts.push_back(v);
        if (shape.parts.empty()) throw ValidationError("shape: empty");
        for (size_t i = 0; i < shape.parts.size(); ++i) {
            if (shape.parts[i] == 0) throw ValidationError("shape: parts must be positive");
            if (i && shape.parts[i] > shape.parts[i - 1])
                throw ValidationError("shape: parts must be weakly decreasing");
        }
        return shape;
    }

    friend bool operator==(const SubgroupShape&, const SubgroupShape&) = default;
};

struct ElemAbelianSubgroup {
    unsigned degree = 1;  // ambient n
    SubgroupShape shape;
    std::vector<Permutation> generators;
    std::vector<std::pair<unsigned, unsigned>> support_blocks;  // 1-based inclusive intervals

    unsigned rank() const { return static_cast<unsigned>(generators.size()); }
};

// a_p = (1,2,...,p).
inline Permutation standard_cycle(unsigned p) {
    std::vector<uint32_t> v(p);
    for (uint32_t j = 0; j < p; ++j) v[j] = (j + 1) % p;
    return Permutation(std::move(v));
}

// E_r = < Delta_{p^{r-1}} a_p, Delta_{p^{r-2}} a_p^[p], ..., a_p^[p^{r-1}] >,
// the regular (C_p)^r inside S_{p^r}. Generators are listed coarsest diagonal
// first, fixing the coordinate system for everything downstream.
inline ElemAbelianSubgroup regular_elem_abelian(unsigned r, unsigned p) {
    if (r < 1) throw ValidationError("regular_elem_abelian: r must be positive");
    if (!is_prime(p)) throw ValidationError("regular_elem_abelian: p must be prime");
    const uint64_t deg64 = ipow(p, r);
    if (deg64 > (1u << 20)) throw ResourceLimitError("regular_elem_abelian: p^r too large");
    const unsigned degree = static_cast<unsigned>(deg64);

    ElemAbelianSubgroup E;
    E.degree = degree;
    E.shape.parts = {r};
    E.shape.prime = p;
    E.support_blocks = {{1u, degree}};
    const Permutation a = standard_cycle(p);
    for (unsigned j = 1; j <= r; ++j) {
        const unsigned inner = static_cast<unsigned>(ipow(p, j - 1));
        const unsigned copies = static_cast<unsigned>(ipow(p, r - j));
        E.generators.push_back(delta(copies, outer_perm(a, inner)));
    }
    return E;
}

namespace detail {

// Weakly decreasing sequences (r_1,...,r_m) of positive integers with
// sum of p^{r_i} equal to `target`.
inline void enumerate_shapes(uint64_t target, unsigned max_r, unsigned p,
                             std::vector<unsigned>& current,
                             std::vector<std::vector<unsigned>>& out) {
    if (target == 0) {
        out.push_back(current);
        return;
    }
    for (unsigned r = max_r; r >= 1; --r) {
        const uint64_t pr = ipow(p, r);
        if (pr <= target) {
            current.push_back(r);
            enumerate_shapes(target - pr, r, p, current, out);
            current.pop_back();
        }
        if (r == 1) break;
    }
}

}  // namespace detail

// Representatives of the conjugacy classes of maximal elementary abelian
// p-subgroups of S_n: one product of block-embedded regular factors per
// weakly decreasing shape with sum of p^{r_i} equal to p*floor(n/p). The
// factors sit left-packed on disjoint intervals; points beyond p*floor(n/p)
// are fixed.
inline std::vector<ElemAbelianSubgroup> maximal_elem_abelians(unsigned n, unsigned p) {
    if (!is_prime(p)) throw ValidationError("maximal_elem_abelians: p must be prime");
    std::vector<ElemAbelianSubgroup> result;
    const uint64_t pk = static_cast<uint64_t>(p) * (n / p);
    if (pk == 0) return result;

    unsigned max_r = 1;
    while (ipow(p, max_r + 1) <= pk) ++max_r;

    std::vector<std::vector<unsigned>> shapes;
    std::vector<unsigned> scratch;
    detail::enumerate_shapes(pk, max_r, p, scratch, shapes);

    for (const auto& parts : shapes) {
        ElemAbelianSubgroup E;
        E.degree = n;
        E.shape.parts = parts;
        E.shape.prime = p;
        uint64_t s = 0;
        for (unsigned r : parts) {
            const uint64_t block = ipow(p, r);
            const unsigned index = static_cast<unsigned>((s + block) / block);
            ElemAbelianSubgroup factor = regular_elem_abelian(r, p);
            for (const Permutation& g : factor.generators)
                E.generators.push_back(embed_block(g, index, n));
            E.support_blocks.emplace_back(static_cast<unsigned>(s) + 1,
                                          static_cast<unsigned>(s + block));
            s += block;
        }
        result.push_back(std::move(E));
    }
    return result;
}

// Finds the representative with the given shape among maximal_elem_abelians(n, p).
inline ElemAbelianSubgroup subgroup_for_shape(unsigned n, unsigned p, const SubgroupShape& shape) {
    for (auto& E : maximal_elem_abelians(n, p))
        if (E.shape.parts == shape.parts) return E;
    throw ValidationError("shape \"" + shape.to_string() + "\" is not a maximal shape for n=" +
                          std::to_string(n) + ", p=" + std::to_string(p));
}

}  // namespace liemod
