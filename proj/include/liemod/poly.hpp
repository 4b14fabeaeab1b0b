#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/gf.hpp"

namespace liemod {

inline constexpr unsigned kMaxPolyVars = 6;

using PolyExp = std::array<uint16_t, kMaxPolyVars>;

inline unsigned exp_total(const PolyExp& e) {
    unsigned t = 0;
    for (uint16_t v : e) t += v;
    return t;
}

// Graded lexicographic order: higher total degree first, then lex.
inline bool exp_grlex_greater(const PolyExp& a, const PolyExp& b) {
    const unsigned ta = exp_total(a), tb = exp_total(b);
    if (ta != tb) return ta > tb;
    return a > b;
}

// Sparse multivariate polynomial with coefficients in a fixed field. Terms
// are kept sorted grlex-descending with no zero coefficients, so the first
// term is the leading term and equality is term-wise.
class MultiPoly {
public:
    struct Term {
        PolyExp exp;
        uint32_t coeff;
        bool operator==(const Term&) const = default;
    };

    MultiPoly(const FieldContext& field, unsigned nvars) : field_(&field), nvars_(nvars) {
        if (nvars > kMaxPolyVars)
            throw ValidationError("MultiPoly: at most " + std::to_string(kMaxPolyVars) + " variables");
    }

    static MultiPoly constant(const FieldContext& F, unsigned nvars, uint32_t c) {
        MultiPoly p(F, nvars);
        if (c) p.terms_.push_back({PolyExp{}, c});
        return p;
    }

    static MultiPoly variable(const FieldContext& F, unsigned nvars, unsigned i) {
        if (i >= nvars) throw ValidationError("MultiPoly: variable index out of range");
        MultiPoly p(F, nvars);
        PolyExp e{};
        e[i] = 1;
        p.terms_.push_back({e, 1});
        return p;
    }

    const FieldContext& field() const { return *field_; }
    unsigned nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    unsigned total_degree() const { return terms_.empty() ? 0 : exp_total(terms_.front().exp); }
    const Term& leading() const {
        if (terms_.empty()) throw ValidationError("MultiPoly: zero polynomial has no leading term");
        return terms_.front();
    }

    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    friend MultiPoly poly_add(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        MultiPoly c(*a.field_, a.nvars_);
        c.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && exp_grlex_greater(a.terms_[i].exp, b.terms_[j].exp))) {
                c.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || exp_grlex_greater(b.terms_[j].exp, a.terms_[i].exp)) {
                c.terms_.push_back(b.terms_[j++]);
            } else {
                const uint32_t s = a.field_->add(a.terms_[i].coeff, b.terms_[j].coeff);
                if (s) c.terms_.push_back({a.terms_[i].exp, s});
                ++i;
                ++j;
            }
        }
        return c;
    }

    friend MultiPoly poly_neg(const MultiPoly& a) {
        MultiPoly c = a;
        for (Term& t : c.terms_) t.coeff = a.field_->neg(t.coeff);
        return c;
    }

    friend MultiPoly poly_sub(const MultiPoly& a, const MultiPoly& b) {
        return poly_add(a, poly_neg(b));
    }

    // max_degree = 0 means unbounded; otherwise a product term exceeding it
    // aborts with BlowUpError so callers can fall back to another strategy.
    friend MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b, unsigned max_degree = 0) {
        a.check_compatible(b);
        MultiPoly c(*a.field_, a.nvars_);
        if (a.is_zero() || b.is_zero()) return c;
        if (max_degree && a.total_degree() + b.total_degree() > max_degree)
            throw BlowUpError("poly_mul: degree " +
                              std::to_string(a.total_degree() + b.total_degree()) +
                              " exceeds cap " + std::to_string(max_degree));
        std::map<PolyExp, uint32_t, decltype(&exp_grlex_greater)> acc(&exp_grlex_greater);
        for (const Term& x : a.terms_)
            for (const Term& y : b.terms_) {
                PolyExp e;
                for (unsigned v = 0; v < kMaxPolyVars; ++v)
                    e[v] = static_cast<uint16_t>(x.exp[v] + y.exp[v]);
                auto [it, inserted] = acc.emplace(e, 0u);
                it->second = a.field_->add(it->second, a.field_->mul(x.coeff, y.coeff));
            }
        for (const auto& [e, v] : acc)
            if (v) c.terms_.push_back({e, v});
        return c;
    }

    // Exact quotient a / b; throws InternalError if b does not divide a.
    // Used by fraction-free elimination where divisibility is guaranteed.
    friend MultiPoly poly_div_exact(const MultiPoly& a, const MultiPoly& b) {
        a.check_compatible(b);
        if (b.is_zero()) throw ValidationError("poly_div_exact: division by zero");
        MultiPoly q(*a.field_, a.nvars_);
        MultiPoly r = a;
        const Term& lb = b.leading();
        while (!r.is_zero()) {
            const Term& lr = r.leading();
            PolyExp e;
            for (unsigned v = 0; v < kMaxPolyVars; ++v) {
                if (lr.exp[v] < lb.exp[v])
                    throw InternalError("poly_div_exact: division is not exact");
                e[v] = static_cast<uint16_t>(lr.exp[v] - lb.exp[v]);
            }
            MultiPoly t(*a.field_, a.nvars_);
            t.terms_.push_back({e, a.field_->mul(lr.coeff, a.field_->inv(lb.coeff))});
            q.terms_.push_back(t.terms_.front());
            r = poly_sub(r, poly_mul(t, b));
        }
        return q;
    }

    uint32_t evaluate(const std::vector<uint32_t>& point) const {
        if (point.size() < nvars_) throw ValidationError("MultiPoly: evaluation point too short");
        uint32_t acc = 0;
        for (const Term& t : terms_) {
            uint32_t m = t.coeff;
            for (unsigned v = 0; v < nvars_; ++v)
                if (t.exp[v]) m = field_->mul(m, field_->pow(point[v], t.exp[v]));
            acc = field_->add(acc, m);
        }
        return acc;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const Term& t : terms_) {
            if (!s.empty()) s += " + ";
            std::string mono;
            for (unsigned v = 0; v < nvars_; ++v) {
                if (!t.exp[v]) continue;
                if (!mono.empty()) mono += "*";
                mono += "a" + std::to_string(v + 1);
                if (t.exp[v] > 1) mono += "^" + std::to_string(t.exp[v]);
            }
            if (mono.empty()) s += field_->elem_to_string(t.coeff);
            else if (t.coeff == 1) s += mono;
            else s += field_->elem_to_string(t.coeff) + "*" + mono;
        }
        return s;
    }

private:
    void check_compatible(const MultiPoly& o) const {
        if (nvars_ != o.nvars_) throw ValidationError("MultiPoly: variable count mismatch");
    }

    const FieldContext* field_;
    unsigned nvars_;
    std::vector<Term> terms_;
};

}  // namespace liemod
