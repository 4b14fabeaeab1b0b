#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "liemod/errors.hpp"

namespace liemod {

// A permutation of {1,...,n}. Points are 1-based in the public interface and
// in the textual cycle format; storage is a 0-based image table. Products are
// composed right to left: (a*b)(x) = a(b(x)).
class Permutation {
public:
    Permutation() : img_{0} {}

    // 0-based image table; must be a bijection of {0,...,n-1}.
    explicit Permutation(std::vector<uint32_t> images) : img_(std::move(images)) {
        if (img_.empty()) throw ValidationError("permutation: empty image table");
        std::vector<bool> seen(img_.size(), false);
        for (uint32_t v : img_) {
            if (v >= img_.size() || seen[v])
                throw ValidationError("permutation: image table is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(unsigned n) {
        if (n == 0) throw ValidationError("permutation: degree must be positive");
        std::vector<uint32_t> v(n);
        std::iota(v.begin(), v.end(), 0u);
        Permutation p;
        p.img_ = std::move(v);
        return p;
    }

    // 1-based transposition (a b) in S_n.
    static Permutation transposition(unsigned a, unsigned b, unsigned n) {
        if (a < 1 || b < 1 || a > n || b > n || a == b)
            throw ValidationError("transposition: bad points");
        Permutation p = identity(n);
        std::swap(p.img_[a - 1], p.img_[b - 1]);
        return p;
    }

    unsigned degree() const { return static_cast<unsigned>(img_.size()); }

    // Image of a 1-based point.
    unsigned image(unsigned point) const {
        if (point < 1 || point > img_.size()) throw ValidationError("image: point out of range");
        return img_[point - 1] + 1;
    }

    // 1-based preimage.
    unsigned preimage(unsigned point) const {
        if (point < 1 || point > img_.size()) throw ValidationError("preimage: point out of range");
        for (unsigned x = 0; x < img_.size(); ++x)
            if (img_[x] + 1 == point) return x + 1;
        throw InternalError("preimage: not found");  // unreachable for a bijection
    }

    uint32_t raw(uint32_t x) const { return img_[x]; }
    const std::vector<uint32_t>& images() const { return img_; }

    bool is_identity() const {
        for (uint32_t x = 0; x < img_.size(); ++x)
            if (img_[x] != x) return false;
        return true;
    }

    bool fixes(unsigned point) const { return img_[point - 1] == point - 1; }

    Permutation inverse() const {
        std::vector<uint32_t> inv(img_.size());
        for (uint32_t x = 0; x < img_.size(); ++x) inv[img_[x]] = x;
        Permutation p;
        p.img_ = std::move(inv);
        return p;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) = default;
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
        if (auto c = a.img_.size() <=> b.img_.size(); c != 0) return c;
        for (size_t i = 0; i < a.img_.size(); ++i)
            if (auto c = a.img_[i] <=> b.img_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    std::vector<uint32_t> img_;
};

// result(x) = a(b(x)); degrees must match.
inline Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
        throw ValidationError("compose: degree mismatch (" + std::to_string(a.degree()) +
                              " vs " + std::to_string(b.degree()) + ")");
    std::vector<uint32_t> v(a.degree());
    for (uint32_t x = 0; x < v.size(); ++x) v[x] = a.raw(b.raw(x));
    return Permutation(std::move(v));
}

// Natural embedding of S_m into S_n, fixing m+1,...,n.
inline Permutation extend(const Permutation& p, unsigned n) {
    if (n < p.degree()) throw ValidationError("extend: target degree too small");
    if (n == p.degree()) return p;
    std::vector<uint32_t> v(n);
    for (uint32_t x = 0; x < p.degree(); ++x) v[x] = p.raw(x);
    for (uint32_t x = p.degree(); x < n; ++x) v[x] = x;
    return Permutation(std::move(v));
}

// d_i = (i, i-1, ..., 1): maps i -> i-1, ..., 2 -> 1, 1 -> i; fixes points > i.
inline Permutation descending_cycle(unsigned i, unsigned n) {
    if (i < 2 || i > n) throw ValidationError("descending_cycle: need 2 <= i <= n");
    std::vector<uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    for (unsigned x = 2; x <= i; ++x) v[x - 1] = x - 2;
    v[0] = i - 1;
    return Permutation(std::move(v));
}

// sigma[i]: sigma of degree r acting on the i-th block {(i-1)r+1, ..., ir} of
// {1,...,n}, fixing everything else.
inline Permutation embed_block(const Permutation& sigma, unsigned i, unsigned n) {
    const unsigned r = sigma.degree();
    if (i < 1 || static_cast<uint64_t>(i) * r > n)
        throw ValidationError("embed_block: block exceeds ambient degree");
    std::vector<uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    const uint32_t off = (i - 1) * r;
    for (uint32_t j = 0; j < r; ++j) v[off + j] = off + sigma.raw(j);
    return Permutation(std::move(v));
}

// Delta_s sigma = sigma[1] sigma[2] ... sigma[s], an element of S_{rs}.
inline Permutation delta(unsigned s, const Permutation& sigma) {
    if (s == 0) throw ValidationError("delta: s must be positive");
    const unsigned r = sigma.degree();
    std::vector<uint32_t> v(static_cast<size_t>(r) * s);
    for (unsigned i = 0; i < s; ++i) {
        const uint32_t off = i * r;
        for (uint32_t j = 0; j < r; ++j) v[off + j] = off + sigma.raw(j);
    }
    return Permutation(std::move(v));
}

// tau^[r]: permutes the s blocks of size r rigidly, sending (i-1)r+j to
// (tau(i)-1)r+j. An element of S_{rs}.
inline Permutation outer_perm(const Permutation& tau, unsigned r) {
    if (r == 0) throw ValidationError("outer_perm: r must be positive");
    const unsigned s = tau.degree();
    std::vector<uint32_t> v(static_cast<size_t>(r) * s);
    for (uint32_t i = 0; i < s; ++i) {
        const uint32_t src = i * r, dst = tau.raw(i) * r;
        for (uint32_t j = 0; j < r; ++j) v[src + j] = dst + j;
    }
    return Permutation(std::move(v));
}

// Disjoint cycle notation with 1-based points, e.g. "(1,2)(3,4)"; identity is "()".
inline std::string cycle_string(const Permutation& p) {
    std::string out;
    std::vector<bool> done(p.degree(), false);
    for (uint32_t start = 0; start < p.degree(); ++start) {
        if (done[start] || p.raw(start) == start) continue;
        out += '(';
        uint32_t x = start;
        bool first = true;
        do {
            if (!first) out += ',';
            out += std::to_string(x + 1);
            done[x] = true;
            x = p.raw(x);
            first = false;
        } while (x != start);
        out += ')';
    }
    if (out.empty()) out = "()";
    return out;
}

// Parses the cycle format produced by cycle_string into an element of S_n.
inline Permutation parse_cycles(const std::string& text, unsigned n) {
    Permutation result = Permutation::identity(n);
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(') throw ValidationError("parse_cycles: expected '('");
        ++pos;
        std::vector<unsigned> cycle;
        skip_ws();
        while (pos < text.size() && text[pos] != ')') {
            unsigned v = 0;
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw ValidationError("parse_cycles: expected digit");
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                v = v * 10 + (text[pos++] - '0');
            if (v < 1 || v > n) throw ValidationError("parse_cycles: point out of range");
            cycle.push_back(v);
            skip_ws();
            if (pos < text.size() && text[pos] == ',') { ++pos; skip_ws(); }
        }
        if (pos >= text.size()) throw ValidationError("parse_cycles: unterminated cycle");
        ++pos;  // ')'
        skip_ws();
        if (cycle.size() >= 2) {
            std::vector<uint32_t> v(n);
            std::iota(v.begin(), v.end(), 0u);
            for (size_t i = 0; i < cycle.size(); ++i) {
                unsigned from = cycle[i], to = cycle[(i + 1) % cycle.size()];
                v[from - 1] = to - 1;
            }
            // factors read left to right multiply right to left, like the group
            result = compose(result, Permutation(std::move(v)));
        }
    }
    return result;
}

// Multiplicative order; group degrees here are tiny.
inline uint64_t perm_order(const Permutation& p) {
    Permutation q = p;
    uint64_t k = 1;
    while (!q.is_identity()) {
        q = compose(q, p);
        ++k;
    }
    return k;
}

// Lexicographic rank of the full image tuple among all of S_n.
inline uint64_t lehmer_rank(const Permutation& p) {
    const unsigned n = p.degree();
    uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;  // n!
    uint64_t rank = 0;
    std::vector<uint32_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0u);
    for (unsigned i = 0; i < n; ++i) {
        f /= (n - i);
        auto it = std::find(remaining.begin(), remaining.end(), p.raw(i));
        rank += static_cast<uint64_t>(it - remaining.begin()) * f;
        remaining.erase(it);
    }
    return rank;
}

inline Permutation lehmer_unrank(uint64_t rank, unsigned n) {
    uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    if (rank >= f) throw ValidationError("lehmer_unrank: rank out of range");
    std::vector<uint32_t> remaining(n), v(n);
    std::iota(remaining.begin(), remaining.end(), 0u);
    for (unsigned i = 0; i < n; ++i) {
        f /= (n - i);
        size_t idx = rank / f;
        rank %= f;
        v[i] = remaining[idx];
        remaining.erase(remaining.begin() + static_cast<ptrdiff_t>(idx));
    }
    return Permutation(std::move(v));
}

}  // namespace liemod
