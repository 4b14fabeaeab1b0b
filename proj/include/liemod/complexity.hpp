#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/lie_module.hpp"
#include "liemod/parallel.hpp"
#include "liemod/subgroups.hpp"
#include "liemod/variety.hpp"

namespace liemod {

// Largest m with p^m dividing n.
inline unsigned valuation_bound(uint64_t n, unsigned p) {
    if (n < 1) throw ValidationError("valuation_bound: n must be positive");
    if (!is_prime(p)) throw ValidationError("valuation_bound: p must be prime");
    unsigned m = 0;
    while (n % p == 0) {
        n /= p;
        ++m;
    }
    return m;
}

// One full variety run for the maximal elementary abelian subgroup of the
// given shape, with the product cap checked on the way out: all block factors
// except the last fix the points of the later blocks, the module is free over
// each point stabilizer, so the variety dimension is at most the last rank.
inline VarietyReport subgroup_complexity(unsigned n, unsigned p, const SubgroupShape& shape,
                                         const VarietyOptions& opts = {}) {
    const uint64_t builds_before = action_matrix_builds();
    VarietyReport rep = run_variety(n, p, shape, opts);
    if (n % p != 0 && action_matrix_builds() != builds_before)
        throw InternalError("subgroup_complexity: shortcut path built a matrix");
    if (n % p == 0 && rep.dimension.hi > shape.parts.back())
        throw InternalError("subgroup_complexity: summary exceeds the last-factor cap");
    return rep;
}

struct SubgroupResult {
    SubgroupShape shape;
    VarietyReport report;
};

struct ComplexityCertificate {
    unsigned n = 0;
    unsigned p = 0;
    unsigned m = 0;  // p-adic valuation of n; proven upper bound for the value
    uint64_t dim = 0;
    std::vector<SubgroupResult> subgroups;
    unsigned lo = 0;
    unsigned hi = 0;
    bool certified = false;
    unsigned value = 0;  // exact when certified, best estimate otherwise
    std::string method;
    std::vector<std::string> notes;
};

// Complexity of the degree-n module as the maximum over the distinguished
// maximal elementary abelian subgroups. Subgroup runs are independent; they
// are scheduled concurrently and merged in shape order, and max() makes the
// merge order immaterial. Heuristic inputs propagate as brackets.
inline ComplexityCertificate assemble(unsigned n, unsigned p, const VarietyOptions& opts = {}) {
    if (n < 1) throw ValidationError("assemble: n must be positive");
    if (!is_prime(p)) throw ValidationError("assemble: p must be prime");
    ComplexityCertificate cert;
    cert.n = n;
    cert.p = p;
    cert.m = valuation_bound(n, p);
    cert.dim = factorial(n - 1);

    const std::vector<ElemAbelianSubgroup> subs = maximal_elem_abelians(n, p);
    if (subs.empty()) {
        cert.certified = true;
        cert.method = "exact";
        cert.notes.push_back("no elementary abelian p-subgroups: the group order is prime to p");
        return cert;
    }

    const uint64_t builds_before = action_matrix_builds();
    const size_t jobs = subs.size();
    cert.subgroups.resize(jobs);
    const unsigned outer = std::min<unsigned>(opts.threads ? opts.threads : 1,
                                              static_cast<unsigned>(jobs));
    VarietyOptions inner = opts;
    inner.threads = std::max(1u, (opts.threads ? opts.threads : 1) / std::max(outer, 1u));
    parallel_for(jobs, outer, [&](size_t i) {
        cert.subgroups[i].shape = subs[i].shape;
        cert.subgroups[i].report = subgroup_complexity(n, p, subs[i].shape, inner);
    });
    if (n % p != 0 && action_matrix_builds() != builds_before)
        throw InternalError("assemble: shortcut certificate built a matrix");

    unsigned lo = 0, hi = 0, estimate = 0;
    for (const SubgroupResult& s : cert.subgroups) {
        lo = std::max(lo, s.report.dimension.lo);
        hi = std::max(hi, s.report.dimension.hi);
        estimate = std::max(estimate, s.report.dimension.value);
        if (!s.report.dimension.certified)
            cert.notes.push_back("shape " + s.shape.to_string() + " is heuristic (" +
                                 s.report.dimension.method + ")");
    }
    if (lo > cert.m)
        throw InternalError("assemble: certified lower bound exceeds the divisibility bound");
    hi = std::min(hi, cert.m);
    cert.lo = lo;
    cert.hi = hi;
    cert.certified = lo == hi;
    if (cert.certified) {
        cert.value = lo;
        cert.method = "exact";
    } else {
        cert.value = std::clamp(estimate, lo, hi);
        cert.method = "bracket+heuristic";
    }
    return cert;
}

struct ConjectureRecord {
    unsigned m = 0;
    unsigned p = 0;
    unsigned n = 0;  // p^m
    std::string verdict;  // certified-true | certified-false | evidence
    VarietyReport report;
};

// Checks whether the rank variety of the degree-p^m module over the regular
// elementary abelian subgroup of rank m is the whole space, i.e. whether the
// divisibility bound is attained there.
inline ConjectureRecord conjecture_check(unsigned m, unsigned p, const VarietyOptions& opts = {}) {
    if (m < 1) throw ValidationError("conjecture_check: m must be at least 1");
    if (!is_prime(p)) throw ValidationError("conjecture_check: p must be prime");
    const uint64_t n64 = ipow(p, m);
    if (n64 > 64) throw ResourceLimitError("conjecture_check: p^m is far beyond desk scale");
    ConjectureRecord rec;
    rec.m = m;
    rec.p = p;
    rec.n = static_cast<unsigned>(n64);
    SubgroupShape regular;
    regular.prime = p;
    regular.parts = {m};
    rec.report = subgroup_complexity(rec.n, p, regular, opts);

    const DimensionSummary& d = rec.report.dimension;
    bool exact_nonmember = false;
    for (const GenericOutcome& g : rec.report.generic)
        if (g.exact && g.outcome == "nonmember") exact_nonmember = true;
    if (d.certified && d.value == m)
        rec.verdict = "certified-true";
    else if (exact_nonmember || (d.certified && d.value < m))
        rec.verdict = "certified-false";
    else
        rec.verdict = "evidence";
    return rec;
}

struct ConsistencyRecord {
    unsigned n = 0;
    unsigned p = 0;
    unsigned m = 0;
    uint64_t cofactor = 0;  // n / p^m, coprime to p
    ComplexityCertificate whole;
    std::vector<ComplexityCertificate> powers;  // one per p^i, i = 1..m
    unsigned expected_lo = 0;
    unsigned expected_hi = 0;
    bool agree = false;      // brackets intersect
    bool certified = false;  // both sides exact and equal
};

// Cross-checks the degree-n value against max over i of the degree-p^i
// values, which a reduction theorem says must coincide. Disagreement flags a
// bug in this engine, not new mathematics.
inline ConsistencyRecord p_power_consistency(unsigned n, unsigned p,
                                             const VarietyOptions& opts = {}) {
    ConsistencyRecord rec;
    rec.n = n;
    rec.p = p;
    rec.m = valuation_bound(n, p);
    if (rec.m < 1)
        throw ValidationError("p_power_consistency: p must divide n");
    rec.cofactor = n / ipow(p, rec.m);
    if (rec.cofactor <= 1)
        throw ValidationError("p_power_consistency: n must be a p-power times a cofactor > 1");
    rec.whole = assemble(n, p, opts);
    for (unsigned i = 1; i <= rec.m; ++i)
        rec.powers.push_back(assemble(static_cast<unsigned>(ipow(p, i)), p, opts));
    bool powers_exact = true;
    for (const ComplexityCertificate& c : rec.powers) {
        rec.expected_lo = std::max(rec.expected_lo, c.lo);
        rec.expected_hi = std::max(rec.expected_hi, c.hi);
        powers_exact = powers_exact && c.certified;
    }
    rec.agree = rec.whole.lo <= rec.expected_hi && rec.expected_lo <= rec.whole.hi;
    rec.certified =
        rec.whole.certified && powers_exact && rec.whole.value == rec.expected_hi;
    if (!rec.agree)
        throw InternalError("p_power_consistency: degree-n and p-power values disagree");
    return rec;
}

}  // namespace liemod
