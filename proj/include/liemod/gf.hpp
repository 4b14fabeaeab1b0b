#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/subgroups.hpp"

namespace liemod {

namespace gfdetail {

// Dense coefficient vectors over GF(p), constant term first. Only used at
// context construction time (modulus search, table building).
using Poly = std::vector<uint32_t>;

inline void normalize(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    normalize(c);
    return c;
}

// Remainder of a modulo the monic polynomial m.
inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    normalize(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const uint32_t lead = a.back();
        const size_t shift = a.size() - 1 - dm;
        if (lead) {
            for (size_t i = 0; i <= dm; ++i) {
                uint64_t v = a[shift + i] + static_cast<uint64_t>(p) * p -
                             static_cast<uint64_t>(lead) * m[i] % p;
                a[shift + i] = static_cast<uint32_t>(v % p);
            }
        }
        a.pop_back();
        normalize(a);
        if (a.size() <= dm) break;
    }
    return a;
}

// Monic f irreducible over GF(p): no monic divisor of degree 1..deg(f)/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
    const size_t deg = f.size() - 1;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        const uint64_t count = [&] {
            uint64_t c = 1;
            for (size_t i = 0; i < d; ++i) c *= p;
            return c;
        }();
        for (uint64_t enc = 0; enc < count; ++enc) {
            Poly g(d + 1, 0);
            uint64_t v = enc;
            for (size_t i = 0; i < d; ++i) {
                g[i] = static_cast<uint32_t>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace gfdetail

// GF(p^e) with elements encoded as integers in [0, q): the encoding of
// c_0 + c_1 x + ... + c_{e-1} x^{e-1} is sum c_i p^i. The prime subfield is
// the encodings 0..p-1. The modulus is the least irreducible monic polynomial
// of degree e in that same encoding order; the choices for the common small
// fields are pinned and checked at construction.
class FieldContext {
public:
    explicit FieldContext(unsigned p, unsigned e = 1) : p_(p), e_(e) {
        if (!is_prime(p) || p > 251) throw ValidationError("FieldContext: p must be a prime <= 251");
        if (e < 1) throw ValidationError("FieldContext: extension degree must be >= 1");
        uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) {
            q *= p;
            if (q > 65536) throw ResourceLimitError("FieldContext: q = p^e exceeds 2^16");
        }
        q_ = static_cast<uint32_t>(q);
        if (e_ == 1) {
            modulus_ = {0, 1};  // x
        } else {
            find_modulus();
            verify_pinned_modulus();
        }
        build_tables();
    }

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return e_; }
    uint32_t order() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (e_ == 1) {
            uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        uint32_t r = 0, mult = 1;
        for (unsigned i = 0; i < e_; ++i) {
            uint32_t s = a % p_ + b % p_;
            if (s >= p_) s -= p_;
            r += s * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return r;
    }

    uint32_t neg(uint32_t a) const {
        if (e_ == 1) return a ? p_ - a : 0;
        uint32_t r = 0, mult = 1;
        for (unsigned i = 0; i < e_; ++i) {
            uint32_t d = a % p_;
            r += (d ? p_ - d : 0) * mult;
            a /= p_;
            mult *= p_;
        }
        return r;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        if (e_ == 1) return a * b % p_;
        return exp_[log_[a] + log_[b]];
    }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw ValidationError("FieldContext: inversion of zero");
        return exp_[q_ - 1 - log_[a]];
    }

    uint32_t pow(uint32_t a, uint64_t k) const {
        if (a == 0) return k == 0 ? 1u : 0u;
        uint64_t l = static_cast<uint64_t>(log_[a]) * (k % (q_ - 1)) % (q_ - 1);
        return exp_[l];
    }

    // Elements of the prime subfield keep their encoding under extension.
    uint32_t from_prime(uint32_t v) const { return v % p_; }

    std::string elem_to_string(uint32_t a) const {
        if (e_ == 1 || a < p_) return std::to_string(a);
        std::string s;
        uint32_t v = a;
        for (unsigned i = 0; i < e_ && v; ++i, v /= p_) {
            uint32_t c = v % p_;
            if (!c) continue;
            std::string term = i == 0 ? std::to_string(c)
                             : (c == 1 ? "" : std::to_string(c) + "*") + "x" +
                                   (i > 1 ? "^" + std::to_string(i) : "");
            if (!s.empty()) s = term + "+" + s;
            else s = term;
        }
        return s;
    }

private:
    void find_modulus() {
        const uint64_t count = [&] {
            uint64_t c = 1;
            for (unsigned i = 0; i < e_; ++i) c *= p_;
            return c;
        }();
        for (uint64_t enc = 0; enc < count; ++enc) {
            gfdetail::Poly f(e_ + 1, 0);
            uint64_t v = enc;
            for (unsigned i = 0; i < e_; ++i) {
                f[i] = static_cast<uint32_t>(v % p_);
                v /= p_;
            }
            f[e_] = 1;
            if (gfdetail::is_irreducible(f, p_)) {
                modulus_.assign(f.begin(), f.end());
                return;
            }
        }
        throw InternalError("FieldContext: no irreducible modulus found");
    }

    void verify_pinned_modulus() const {
        struct Pin { unsigned p, e; std::array<uint32_t, 5> coeffs; };
        // constant term first, degree-e coefficient last
        static constexpr Pin pins[] = {
            {2, 2, {1, 1, 1, 0, 0}},  // x^2+x+1
            {2, 3, {1, 1, 0, 1, 0}},  // x^3+x+1
            {2, 4, {1, 1, 0, 0, 1}},  // x^4+x+1
            {3, 2, {1, 0, 1, 0, 0}},  // x^2+1
            {3, 3, {1, 2, 0, 1, 0}},  // x^3+2x+1
            {5, 2, {2, 0, 1, 0, 0}},  // x^2+2
        };
        for (const Pin& pin : pins) {
            if (pin.p != p_ || pin.e != e_) continue;
            for (unsigned i = 0; i <= e_; ++i)
                if (modulus_[i] != pin.coeffs[i])
                    throw InternalError("FieldContext: modulus search disagrees with pinned table");
        }
    }

    uint32_t slow_mul(uint32_t a, uint32_t b) const {
        gfdetail::Poly fa, fb;
        for (uint32_t v = a; v; v /= p_) fa.push_back(v % p_);
        for (uint32_t v = b; v; v /= p_) fb.push_back(v % p_);
        gfdetail::Poly m(modulus_.begin(), modulus_.end());
        gfdetail::Poly c = gfdetail::poly_mod(gfdetail::poly_mul(fa, fb, p_), m, p_);
        uint32_t r = 0, mult = 1;
        for (uint32_t coeff : c) {
            r += coeff * mult;
            mult *= p_;
        }
        return r;
    }

    void build_tables() {
        log_.assign(q_, 0);
        exp_.assign(2 * (q_ - 1), 0);
        // factor q-1 to test candidate generators by maximal proper orders
        std::vector<uint32_t> prime_factors;
        uint32_t m = q_ - 1;
        for (uint32_t d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                if (prime_factors.empty() || prime_factors.back() != d) prime_factors.push_back(d);
                m /= d;
            }
        if (m > 1) prime_factors.push_back(m);

        auto slow_pow = [&](uint32_t a, uint32_t k) {
            uint32_t r = 1;
            while (k) {
                if (k & 1) r = slow_mul(r, a);
                a = slow_mul(a, a);
                k >>= 1;
            }
            return r;
        };

        uint32_t g = 0;
        for (uint32_t cand = 2; cand < q_; ++cand) {
            bool primitive = true;
            for (uint32_t f : prime_factors)
                if (slow_pow(cand, (q_ - 1) / f) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                g = cand;
                break;
            }
        }
        if (g == 0 && q_ == 2) g = 1;
        if (g == 0) throw InternalError("FieldContext: no primitive element found");

        uint32_t acc = 1;
        for (uint32_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = acc;
            log_[acc] = i;
            acc = slow_mul(acc, g);
        }
        if (acc != 1) throw InternalError("FieldContext: primitive element has wrong order");
        for (uint32_t i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];
    }

    unsigned p_, e_;
    uint32_t q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> log_, exp_;
};

}  // namespace liemod
