#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/gf.hpp"
#include "liemod/perm.hpp"

namespace liemod {

// Sparse element of the group algebra F[S_n]: permutation -> nonzero
// coefficient code. Term order (and hence printing) follows the image-table
// ordering of Permutation, so everything downstream is deterministic.
class GroupAlgebraElement {
public:
    GroupAlgebraElement(const FieldContext& field, unsigned degree)
        : field_(&field), degree_(degree) {}

    unsigned degree() const { return degree_; }
    const FieldContext& field() const { return *field_; }
    const std::map<Permutation, uint32_t>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    uint32_t coeff(const Permutation& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const Permutation& g, uint32_t c) {
        if (g.degree() != degree_)
            throw ValidationError("GroupAlgebraElement: term degree mismatch");
        if (c >= field_->order())
            throw ValidationError("GroupAlgebraElement: coefficient is not a field code");
        if (!c) return;
        auto [it, inserted] = terms_.emplace(g, c);
        if (!inserted) {
            it->second = field_->add(it->second, c);
            if (!it->second) terms_.erase(it);
        }
    }

    bool operator==(const GroupAlgebraElement& o) const {
        return degree_ == o.degree_ && terms_ == o.terms_;
    }

private:
    const FieldContext* field_;
    unsigned degree_;
    std::map<Permutation, uint32_t> terms_;
};

inline GroupAlgebraElement ga_unit(const FieldContext& F, unsigned degree) {
    GroupAlgebraElement e(F, degree);
    e.add_term(Permutation::identity(degree), 1);
    return e;
}

inline GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    if (a.degree() != b.degree()) throw ValidationError("ga_add: degree mismatch");
    GroupAlgebraElement c = a;
    for (const auto& [g, v] : b.terms()) c.add_term(g, v);
    return c;
}

inline GroupAlgebraElement ga_scale(const GroupAlgebraElement& a, uint32_t s) {
    GroupAlgebraElement c(a.field(), a.degree());
    for (const auto& [g, v] : a.terms()) c.add_term(g, a.field().mul(s, v));
    return c;
}

// Convolution product: (sum a_g g)(sum b_h h) = sum a_g b_h (g h), where
// (g h)(x) = g(h(x)).
inline GroupAlgebraElement ga_multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    if (a.degree() != b.degree()) throw ValidationError("ga_multiply: degree mismatch");
    GroupAlgebraElement c(a.field(), a.degree());
    for (const auto& [g, x] : a.terms())
        for (const auto& [h, y] : b.terms())
            c.add_term(compose(g, h), a.field().mul(x, y));
    return c;
}

inline GroupAlgebraElement ga_left_mul(const Permutation& g, const GroupAlgebraElement& a) {
    GroupAlgebraElement c(a.field(), a.degree());
    for (const auto& [h, v] : a.terms()) c.add_term(compose(g, h), v);
    return c;
}

inline GroupAlgebraElement ga_right_mul(const GroupAlgebraElement& a, const Permutation& g) {
    GroupAlgebraElement c(a.field(), a.degree());
    for (const auto& [h, v] : a.terms()) c.add_term(compose(h, g), v);
    return c;
}

inline std::string ga_to_string(const GroupAlgebraElement& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [g, v] : a.terms()) {
        if (!s.empty()) s += " + ";
        s += std::to_string(v) + "*" + cycle_string(g);
    }
    return s;
}

namespace gadetail {

// Integer-coefficient expansion of the iterated commutator idempotent-like
// element; memoized per degree and shared by every field. Coefficient
// magnitudes are bounded by the number of sign patterns, far below 2^63 for
// any degree this library accepts.
using ZElement = std::map<Permutation, long long>;

inline const ZElement& dsw_z(unsigned n, unsigned max_n) {
    static std::mutex mu;
    static std::map<unsigned, ZElement> memo;
    if (n == 0) throw ValidationError("dsw: degree must be >= 1");
    if (n > max_n)
        throw ResourceLimitError("dsw: degree " + std::to_string(n) + " exceeds limit " +
                                 std::to_string(max_n) + " (raise the limit explicitly if intended)");
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // build every level up to n; each is the previous times (1 - d_k)
    if (memo.empty()) memo[1] = {{Permutation::identity(1), 1}};
    const unsigned have = memo.rbegin()->first;
    ZElement cur = memo.rbegin()->second;
    for (unsigned k = have + 1; k <= n; ++k) {
        ZElement next;
        const Permutation dk = descending_cycle(k, k);
        for (const auto& [g, c] : cur) {
            const Permutation ge = extend(g, k);
            next[ge] += c;
            next[compose(ge, dk)] -= c;
        }
        for (auto it2 = next.begin(); it2 != next.end();)
            it2 = it2->second == 0 ? next.erase(it2) : std::next(it2);
        memo[k] = std::move(next);
        cur = memo[k];
    }
    return memo.at(n);
}

// Integers land in the prime subfield, whose codes are 0..p-1.
inline uint32_t reduce_z(const FieldContext& F, long long c) {
    long long r = c % static_cast<long long>(F.characteristic());
    if (r < 0) r += F.characteristic();
    return static_cast<uint32_t>(r);
}

}  // namespace gadetail

inline constexpr unsigned kDswDefaultMaxN = 12;

// omega_n = (1 - d_2)(1 - d_3)...(1 - d_n) in F[S_n], d_i the descending
// i-cycle. Satisfies omega_n^2 = n*omega_n; right-multiplying the group
// algebra by it carves out the module this library studies.
inline GroupAlgebraElement dsw_element(unsigned n, const FieldContext& F,
                                       unsigned max_n = kDswDefaultMaxN) {
    const auto& z = gadetail::dsw_z(n, max_n);
    GroupAlgebraElement e(F, n);
    for (const auto& [g, c] : z) e.add_term(g, gadetail::reduce_z(F, c));
    return e;
}

// Checks omega_n^2 == n * omega_n by direct convolution.
inline bool omega_square_check(unsigned n, const FieldContext& F,
                               unsigned max_n = kDswDefaultMaxN) {
    const GroupAlgebraElement w = dsw_element(n, F, max_n);
    return ga_multiply(w, w) == ga_scale(w, F.from_prime(n % F.characteristic()));
}

// Rewrites rho * omega_n as a combination of sigma * omega_n with every sigma
// fixing 1. For rho(1) != 1 and r = rho^{-1}(1) the rewrite is
//   rho omega_n = - (rho . omega_{r-1} . d_r) omega_n,
// and each expanded term fixes 1 in a single step because the support of
// omega_{r-1} is disjoint from r while d_r sends 1 to r. The returned element
// is the cofactor (the part left of omega_n).
inline GroupAlgebraElement straighten(const Permutation& rho, const FieldContext& F,
                                      unsigned max_n = kDswDefaultMaxN) {
    const unsigned n = rho.degree();
    GroupAlgebraElement out(F, n);
    if (rho.image(1) == 1) {
        out.add_term(rho, 1);
        return out;
    }
    const unsigned r = rho.preimage(1);
    const Permutation dr = descending_cycle(r, n);
    const auto& wz = gadetail::dsw_z(r - 1, max_n);
    for (const auto& [tau, c] : wz) {
        const Permutation term = compose(compose(rho, extend(tau, n)), dr);
        if (term.image(1) != 1) throw InternalError("straighten: rewrite term moved 1");
        out.add_term(term, gadetail::reduce_z(F, -c));
    }
    return out;
}

// Straightens every term of a general element.
inline GroupAlgebraElement straighten(const GroupAlgebraElement& a,
                                      unsigned max_n = kDswDefaultMaxN) {
    GroupAlgebraElement out(a.field(), a.degree());
    for (const auto& [g, c] : a.terms()) {
        GroupAlgebraElement part = straighten(g, a.field(), max_n);
        for (const auto& [h, v] : part.terms()) out.add_term(h, a.field().mul(c, v));
    }
    return out;
}

}  // namespace liemod
