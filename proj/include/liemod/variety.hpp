#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liemod/errors.hpp"
#include "liemod/gf.hpp"
#include "liemod/lie_module.hpp"
#include "liemod/matrix.hpp"
#include "liemod/parallel.hpp"
#include "liemod/poly_matrix.hpp"
#include "liemod/subgroups.hpp"

namespace liemod {

// A nonzero coordinate vector for a shifted unit u_alpha = 1 + sum alpha_i
// (g_i - 1); codes live in GF(p^e). Normalized means the first nonzero
// coordinate is 1, the representative of the projective point.
struct ShiftedUnitPoint {
    std::vector<uint32_t> alpha;
    unsigned e = 1;
    bool normalized = false;
};

struct PointRecord {
    std::vector<uint32_t> alpha;
    unsigned e = 1;
    uint64_t rank = 0;  // rank of (u_alpha - 1)^{p-1}
    bool member = false;
};

struct GenericOutcome {
    unsigned chart = 0;      // 1-based index j of the coordinate pinned to 1
    std::string outcome;     // "member" | "nonmember" | "aborted"
    std::string method;      // "numeric" | "degenerate" | "witness" | "symbolic" | "exhaustive" | "sampled"
    bool exact = false;
};

struct SigmaResult {
    uint64_t free_count = 0;
    uint64_t pf_dim = 0;
    uint64_t group_order = 0;
};

struct DimensionSummary {
    unsigned lo = 0;
    unsigned hi = 0;
    bool certified = false;
    unsigned value = 0;           // certified value, or the heuristic estimate
    bool heuristic = false;       // value came from point-count slopes
    double slope_estimate = -1.0; // raw slope+1 estimate before rounding, -1 if unavailable
    std::string method;
};

struct VarietyReport {
    unsigned n = 0;
    unsigned p = 0;
    SubgroupShape shape;
    unsigned k = 0;
    uint64_t dim = 0;
    bool shortcut_projective = false;
    std::string shortcut_reason;
    std::vector<PointRecord> points;
    std::optional<SigmaResult> sigma;
    std::vector<GenericOutcome> generic;
    DimensionSummary dimension;
};

struct VarietyOptions {
    std::string mode = "full";  // point | scan | generic | sigma | full
    unsigned e_max = 2;
    std::vector<uint32_t> point_alpha;  // for mode = point
    unsigned point_e = 1;
    uint64_t point_budget = 65536;
    uint64_t group_budget = 512;
    unsigned degree_cap = 64;
    unsigned symbolic_dim_cap = 64;
    uint64_t exhaustive_budget = 8192;
    uint64_t witness_budget = 256;
    uint64_t sample_budget = 32;
    unsigned threads = 1;
    bool force = false;
    std::filesystem::path cache_dir;
};

namespace vdetail {

// Deterministic splittable generator for sampled evidence points.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

inline uint64_t ipow64(uint64_t b, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Number of projective points of GF(q)^k: (q^k - 1)/(q - 1).
inline uint64_t projective_count(uint64_t q, unsigned k) {
    uint64_t total = 0;
    for (unsigned lead = 0; lead < k; ++lead) total += ipow64(q, k - 1 - lead);
    return total;
}

// Normalized representatives in lexicographic order of the code vectors:
// leading zeros, then a 1, then free coordinates counting up in base q.
inline std::vector<uint32_t> projective_point_at(uint64_t q, unsigned k, uint64_t index) {
    for (unsigned lead = k; lead-- > 0;) {
        // lead counts leading zeros; vectors with more leading zeros are smaller
        const unsigned zeros = lead;
        const uint64_t block = ipow64(q, k - 1 - zeros);
        if (index >= block) {
            index -= block;
            continue;
        }
        std::vector<uint32_t> alpha(k, 0);
        alpha[zeros] = 1;
        for (unsigned pos = k; pos-- > zeros + 1;) {
            alpha[pos] = static_cast<uint32_t>(index % q);
            index /= q;
        }
        return alpha;
    }
    throw ValidationError("projective_point_at: index out of range");
}

}  // namespace vdetail

// N = sum alpha_i (A_i - I) over the field carrying alpha.
template <std::unsigned_integral E>
DenseMat<E> u_alpha_minus_one(const FieldContext& F, const std::vector<DenseMat<E>>& gens,
                              const std::vector<uint32_t>& alpha) {
    if (gens.empty()) throw ValidationError("u_alpha_minus_one: no generators");
    if (alpha.size() != gens.size())
        throw ValidationError("u_alpha_minus_one: alpha length != generator count");
    for (uint32_t a : alpha)
        if (a >= F.order()) throw ValidationError("u_alpha_minus_one: alpha code not in the field");
    const size_t dim = gens[0].rows();
    for (const auto& g : gens)
        if (g.rows() != dim || g.cols() != dim)
            throw ValidationError("u_alpha_minus_one: generator matrices not square of equal size");
    DenseMat<E> n(dim, dim);
    uint32_t diag = 0;
    for (size_t i = 0; i < gens.size(); ++i) {
        const uint32_t a = alpha[i];
        if (!a) continue;
        diag = F.add(diag, a);
        const DenseMat<E>& g = gens[i];
        for (size_t r = 0; r < dim; ++r) {
            E* nrow = n.row(r);
            const E* grow = g.row(r);
            for (size_t c = 0; c < dim; ++c)
                nrow[c] = static_cast<E>(F.add(nrow[c], F.mul(a, grow[c])));
        }
    }
    for (size_t r = 0; r < dim; ++r) n.at(r, r) = static_cast<E>(F.sub(n.at(r, r), diag));
    return n;
}

struct MemberVerdict {
    bool member = false;
    uint64_t rank_pm1 = 0;  // rank of N^{p-1}
};

// alpha is in the rank variety iff the module is NOT free over <u_alpha>:
// p divides dim and rank(N^{p-1}) = dim/p is the freeness criterion (all
// Jordan blocks of the nilpotent N have size p). The equivalent rank(N) =
// dim (p-1)/p form is computed as well and the two are cross-checked.
template <std::unsigned_integral E>
MemberVerdict is_member(const FieldContext& F, const std::vector<DenseMat<E>>& gens,
                        const std::vector<uint32_t>& alpha, unsigned p) {
    bool all_zero = true;
    for (uint32_t a : alpha)
        if (a) all_zero = false;
    if (all_zero)
        throw ValidationError("is_member: alpha = 0 is in the variety by fiat, not a test point");
    const DenseMat<E> n = u_alpha_minus_one(F, gens, alpha);
    const uint64_t dim = n.rows();
    const uint64_t rank1 = mat_rank(F, n);
    const uint64_t rankp = p == 2 ? rank1 : nilpotent_power_rank(F, n, p - 1);
    // nullity of a p-nilpotent is at least dim/p, so rank(N) <= floor(dim(p-1)/p)
    if (rank1 > dim - (dim + p - 1) / p)
        throw InternalError("is_member: rank(N) exceeds the p-nilpotent bound");
    if (dim % p == 0) {
        const bool crit_blocks = rankp == dim / p;
        const bool crit_rank = rank1 == dim / p * (p - 1);
        if (crit_blocks != crit_rank)
            throw InternalError("is_member: the two freeness criteria disagree");
    }
    MemberVerdict v;
    v.rank_pm1 = rankp;
    v.member = !(dim % p == 0 && rankp == dim / p);
    return v;
}

// All projective points of GF(p^e)^k in normalized lexicographic order,
// evaluated independently and aggregated by index (thread-count invariant).
template <std::unsigned_integral E>
std::vector<PointRecord> scan(const FieldContext& F, const std::vector<DenseMat<E>>& gens,
                              unsigned p, unsigned e, uint64_t point_budget = 65536,
                              unsigned threads = 1) {
    if (e < 1 || e > 4) throw ValidationError("scan: extension degree must be 1..4");
    if (F.characteristic() != p || F.degree() != e)
        throw ValidationError("scan: field context does not match (p, e)");
    const unsigned k = static_cast<unsigned>(gens.size());
    const uint64_t q = F.order();
    const uint64_t count = vdetail::projective_count(q, k);
    if (count > point_budget)
        throw ResourceLimitError("scan: " + std::to_string(count) +
                                 " projective points exceed budget " + std::to_string(point_budget));
    std::vector<PointRecord> records(count);
    parallel_for(count, threads, [&](size_t idx) {
        PointRecord& rec = records[idx];
        rec.alpha = vdetail::projective_point_at(q, k, idx);
        rec.e = e;
        const MemberVerdict v = is_member(F, gens, rec.alpha, p);
        rec.rank = v.rank_pm1;
        rec.member = v.member;
    });
    return records;
}

// sigma = sum of all group elements. Over a p-group algebra (local, with
// socle spanned by sigma) the rank of sigma on M equals the number of free
// summands, so pf_dim = dim - |E| * free_count is the dimension of the
// projective-free part. Enumerates the group by brute-force closure over
// the generator matrices; use sigma_rank_rep when permutations are at hand.
template <std::unsigned_integral E>
SigmaResult sigma_rank(const FieldContext& F, const std::vector<DenseMat<E>>& gens, unsigned p,
                       uint64_t group_budget = 512) {
    if (gens.empty()) throw ValidationError("sigma_rank: no generators");
    const size_t dim = gens[0].rows();
    std::vector<DenseMat<E>> elements{DenseMat<E>::identity(dim)};
    // breadth-first closure; fine for the small groups this test budget allows
    for (size_t scanned = 0; scanned < elements.size(); ++scanned) {
        for (const auto& g : gens) {
            DenseMat<E> prod = mat_mul(F, elements[scanned], g);
            bool known = false;
            for (const auto& h : elements)
                if (h == prod) {
                    known = true;
                    break;
                }
            if (!known) {
                if (elements.size() >= group_budget)
                    throw ResourceLimitError("sigma_rank: group order exceeds budget " +
                                             std::to_string(group_budget));
                elements.push_back(std::move(prod));
            }
        }
    }
    DenseMat<E> sigma(dim, dim);
    for (const auto& h : elements) sigma = mat_add(F, sigma, h);
    SigmaResult r;
    r.group_order = elements.size();
    r.free_count = mat_rank(F, sigma);
    if (r.group_order * r.free_count > dim)
        throw InternalError("sigma_rank: free part exceeds module dimension");
    r.pf_dim = dim - r.group_order * r.free_count;
    return r;
}

// Engine path: checks independence of the generators on the cheap
// permutation side, then uses the factorization
//   sigma = prod_i (1 + g_i + ... + g_i^{p-1})
// valid for independent commuting generators, so only k matrix products of
// full size are needed. GF(2) work runs bit-packed.
inline SigmaResult sigma_rank_rep(const FieldContext& F, const LieRepresentation& rep,
                                  uint64_t group_budget = 512) {
    const unsigned p = rep.p;
    const unsigned k = static_cast<unsigned>(rep.gen_actions.size());
    if (k == 0) throw ValidationError("sigma_rank_rep: no generators");
    uint64_t expected = 1;
    for (unsigned i = 0; i < k; ++i) expected *= p;
    if (expected > group_budget)
        throw ResourceLimitError("sigma_rank_rep: group order " + std::to_string(expected) +
                                 " exceeds budget " + std::to_string(group_budget));
    // permutation-side closure: cheap and certifies |E| = p^k
    {
        std::vector<Permutation> elems{Permutation::identity(rep.subgroup.degree)};
        for (size_t s = 0; s < elems.size(); ++s)
            for (const Permutation& g : rep.subgroup.generators) {
                Permutation prod = compose(elems[s], g);
                bool known = false;
                for (const auto& h : elems)
                    if (h == prod) {
                        known = true;
                        break;
                    }
                if (!known) elems.push_back(std::move(prod));
            }
        if (elems.size() != expected)
            throw InternalError("sigma_rank_rep: generators are not independent");
    }
    const uint64_t dim = rep.dim();
    SigmaResult r;
    r.group_order = expected;
    if (F.order() == 2) {
        BitMatrix acc;
        bool first = true;
        for (const auto& a : rep.gen_actions) {
            const BitMatrix ab = to_bits(a);
            BitMatrix factor = BitMatrix::identity(dim) ^ ab;  // I + A at p = 2
            acc = first ? std::move(factor) : acc * factor;
            first = false;
        }
        r.free_count = acc.rank();
    } else {
        DenseMat<uint8_t> acc;
        bool first = true;
        for (const auto& a : rep.gen_actions) {
            DenseMat<uint8_t> factor = DenseMat<uint8_t>::identity(dim);
            DenseMat<uint8_t> power = DenseMat<uint8_t>::identity(dim);
            for (unsigned j = 1; j < p; ++j) {
                power = mat_mul(F, power, a);
                factor = mat_add(F, factor, power);
            }
            acc = first ? std::move(factor) : mat_mul(F, acc, factor);
            first = false;
        }
        r.free_count = mat_rank(F, acc);
    }
    if (r.group_order * r.free_count > dim)
        throw InternalError("sigma_rank_rep: free part exceeds module dimension");
    r.pf_dim = dim - r.group_order * r.free_count;
    return r;
}

namespace vdetail {

// Widen byte matrices into the element type required by the target field.
template <std::unsigned_integral E>
std::vector<DenseMat<E>> widen_all(const std::vector<DenseMat<uint8_t>>& gens) {
    std::vector<DenseMat<E>> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(mat_widen<E>(g));
    return out;
}

// Chart point: coordinate j-1 pinned to 1, free coordinates filled from
// `free_vals` in order.
inline std::vector<uint32_t> chart_point(unsigned k, unsigned chart,
                                         const std::vector<uint32_t>& free_vals) {
    std::vector<uint32_t> alpha(k);
    unsigned fi = 0;
    for (unsigned i = 0; i < k; ++i) alpha[i] = (i + 1 == chart) ? 1 : free_vals[fi++];
    return alpha;
}

struct ChartProbe {
    bool found_witness = false;   // some point had full projective rank
    bool all_member = true;
    uint64_t tested = 0;
};

// Tests chart points over GF(p^e) and reports whether any is projective
// (a witness that the generic point of the chart is non-member).
inline ChartProbe probe_points(unsigned p, unsigned e,
                               const std::vector<DenseMat<uint8_t>>& gens_bytes, unsigned chart,
                               const std::vector<std::vector<uint32_t>>& free_points) {
    const FieldContext F(p, e);
    ChartProbe probe;
    const unsigned k = static_cast<unsigned>(gens_bytes.size());
    auto run = [&](const auto& gens) {
        for (const auto& fv : free_points) {
            const std::vector<uint32_t> alpha = chart_point(k, chart, fv);
            const MemberVerdict v = is_member(F, gens, alpha, p);
            ++probe.tested;
            if (!v.member) {
                probe.found_witness = true;
                probe.all_member = false;
                return;
            }
        }
    };
    if (F.order() <= 256) {
        run(gens_bytes);
    } else {
        const std::vector<DenseMat<uint16_t>> wide = widen_all<uint16_t>(gens_bytes);
        run(wide);
    }
    return probe;
}

inline std::vector<std::vector<uint32_t>> all_tuples(uint64_t q, unsigned len, uint64_t cap) {
    std::vector<std::vector<uint32_t>> out;
    const uint64_t total = ipow64(q, len);
    for (uint64_t idx = 0; idx < total && idx < cap; ++idx) {
        std::vector<uint32_t> t(len);
        uint64_t v = idx;
        for (unsigned i = len; i-- > 0;) {
            t[i] = static_cast<uint32_t>(v % q);
            v /= q;
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace vdetail

// Decides whether the generic point of the affine chart {alpha_j = 1} lies
// in the variety, exactly when possible. Strategy ladder:
//   1. p does not divide dim: no specialization is ever projective.
//   2. witness search: any chart point with rank(N^{p-1}) = dim/p proves the
//      generic rank is dim/p (specialization can only drop rank), so the
//      chart is generically non-member -- exact from a single point.
//   3. symbolic fraction-free elimination on N(t)^{p-1} for small modules.
//   4. exhaustive evaluation over GF(p^e) with q above the total degree of
//      the relevant minors: a nonzero polynomial of total degree < q cannot
//      vanish on all of GF(q)^s, so "no witness anywhere" is exact.
//   5. sampled evidence only: outcome "aborted", exact = false.
inline GenericOutcome generic_membership(unsigned p, const std::vector<DenseMat<uint8_t>>& gens,
                                         unsigned chart, const VarietyOptions& opts = {}) {
    if (gens.empty()) throw ValidationError("generic_membership: no generators");
    const unsigned k = static_cast<unsigned>(gens.size());
    if (chart < 1 || chart > k) throw ValidationError("generic_membership: chart index out of range");
    const uint64_t dim = gens[0].rows();
    GenericOutcome out;
    out.chart = chart;

    if (dim % p != 0) {
        out.outcome = "member";
        out.method = "degenerate";
        out.exact = true;
        return out;
    }

    const FieldContext Fp(p);
    if (k == 1) {
        const std::vector<uint32_t> alpha{1};
        const MemberVerdict v = is_member(Fp, gens, alpha, p);
        out.outcome = v.member ? "member" : "nonmember";
        out.method = "numeric";
        out.exact = true;
        return out;
    }

    const unsigned nvars = k - 1;

    // --- witness search over small extensions, then pseudorandom points ---
    for (unsigned e = 1; e <= 2; ++e) {
        const uint64_t q = vdetail::ipow64(p, e);
        if (vdetail::ipow64(q, nvars) > opts.witness_budget) break;
        const auto pts = vdetail::all_tuples(q, nvars, opts.witness_budget);
        const auto probe = vdetail::probe_points(p, e, gens, chart, pts);
        if (probe.found_witness) {
            out.outcome = "nonmember";
            out.method = "witness";
            out.exact = true;
            return out;
        }
    }
    {
        vdetail::SplitMix64 rng(0x5eedULL + chart);
        const unsigned e = 4;
        const uint64_t q = vdetail::ipow64(p, e);
        std::vector<std::vector<uint32_t>> pts;
        for (uint64_t s = 0; s < opts.sample_budget; ++s) {
            std::vector<uint32_t> t(nvars);
            for (unsigned i = 0; i < nvars; ++i) t[i] = static_cast<uint32_t>(rng.next() % q);
            pts.push_back(std::move(t));
        }
        const auto probe = vdetail::probe_points(p, e, gens, chart, pts);
        if (probe.found_witness) {
            out.outcome = "nonmember";
            out.method = "witness";
            out.exact = true;
            return out;
        }
    }

    // --- exact symbolic elimination for small modules ---
    if (dim <= opts.symbolic_dim_cap) {
        try {
            PolyMatrix N(Fp, nvars, dim, dim);
            unsigned var = 0;
            for (unsigned i = 0; i < k; ++i) {
                const bool pinned = (i + 1 == chart);
                const MultiPoly coeff = pinned
                                            ? MultiPoly::constant(Fp, nvars, 1)
                                            : MultiPoly::variable(Fp, nvars, var++);
                for (size_t r = 0; r < dim; ++r)
                    for (size_t c = 0; c < dim; ++c) {
                        uint32_t entry = gens[i].at(r, c);
                        if (r == c) entry = Fp.sub(entry, 1);
                        if (!entry) continue;
                        N.at(r, c) = poly_add(
                            N.at(r, c),
                            poly_mul(coeff, MultiPoly::constant(Fp, nvars, entry)));
                    }
            }
            PolyMatrix Npow = N;
            for (unsigned t = 2; t < p; ++t) Npow = poly_mat_mul(Npow, N, opts.degree_cap);
            const size_t grank = generic_rank(std::move(Npow), opts.degree_cap);
            out.outcome = grank == dim / p ? "nonmember" : "member";
            out.method = "symbolic";
            out.exact = true;
            return out;
        } catch (const BlowUpError&) {
            // fall through to exhaustive evaluation
        }
    }

    // --- exhaustive evaluation with a Nullstellensatz-sized field ---
    {
        const uint64_t minor_degree = (dim / p) * (p - 1);
        uint64_t q = p;
        unsigned e = 1;
        while (q <= minor_degree && q * p <= 65536) {
            q *= p;
            ++e;
        }
        if (q > minor_degree && vdetail::ipow64(q, nvars) <= opts.exhaustive_budget) {
            const FieldContext Fq(p, e);
            const uint64_t total = vdetail::ipow64(q, nvars);
            uint64_t max_rank = 0;
            auto run = [&](const auto& wide) {
                for (uint64_t idx = 0; idx < total; ++idx) {
                    std::vector<uint32_t> fv(nvars);
                    uint64_t v = idx;
                    for (unsigned i = nvars; i-- > 0;) {
                        fv[i] = static_cast<uint32_t>(v % q);
                        v /= q;
                    }
                    const std::vector<uint32_t> alpha = vdetail::chart_point(k, chart, fv);
                    const MemberVerdict mv = is_member(Fq, wide, alpha, p);
                    if (mv.rank_pm1 > max_rank) max_rank = mv.rank_pm1;
                    if (max_rank == dim / p) break;
                }
            };
            if (q <= 256) {
                run(gens);
            } else {
                const auto wide = vdetail::widen_all<uint16_t>(gens);
                run(wide);
            }
            out.outcome = max_rank == dim / p ? "nonmember" : "member";
            out.method = max_rank == dim / p ? "witness" : "exhaustive";
            out.exact = true;
            return out;
        }
    }

    // --- evidence only ---
    out.outcome = "aborted";
    out.method = "sampled";
    out.exact = false;
    return out;
}

// Aggregates scans, the sigma test, and the per-chart generic outcomes into
// the certified-or-bracketed dimension statement for one subgroup.
inline DimensionSummary dimension_summary(unsigned k, unsigned p, uint64_t dim,
                                          const std::vector<PointRecord>& points,
                                          const std::optional<SigmaResult>& sigma,
                                          const std::vector<GenericOutcome>& generic,
                                          unsigned cap = 0) {
    if (cap == 0 || cap > k) cap = k;
    DimensionSummary s;

    // exact projectivity certificate: no free-complement left
    if (sigma && sigma->pf_dim == 0) {
        for (const PointRecord& r : points)
            if (r.member)
                throw InternalError("dimension_summary: projective module with a member point");
        for (const GenericOutcome& g : generic)
            if (g.exact && g.outcome == "member")
                throw InternalError("dimension_summary: projective module with a member chart");
        s.lo = s.hi = s.value = 0;
        s.certified = true;
        s.method = "sigma-projective";
        return s;
    }

    bool any_member_evidence = false;
    for (const PointRecord& r : points)
        if (r.member) any_member_evidence = true;

    bool chart_member = false, chart_nonmember = false;
    for (const GenericOutcome& g : generic) {
        if (!g.exact) continue;
        if (g.outcome == "member") chart_member = true;
        else if (g.outcome == "nonmember") chart_nonmember = true;
    }
    if (chart_member && chart_nonmember)
        throw InternalError("dimension_summary: charts certify both full and proper variety");

    if (chart_member) {
        // one full chart plus the cone property pins V = F^k
        if (cap < k)
            throw InternalError("dimension_summary: generic member chart above the product cap");
        s.lo = s.hi = s.value = k;
        s.certified = true;
        s.method = "generic-charts";
        return s;
    }

    // the variety is a cone: nonzero (sigma says non-projective) means dim >= 1
    s.lo = (sigma && sigma->pf_dim > 0) || any_member_evidence ? 1 : 0;
    s.hi = k;
    // one certified-proper chart already rules out V = F^k, a k-dimensional cone
    if (chart_nonmember) s.hi = k - 1;
    if (s.hi > cap) s.hi = cap;
    if (s.lo > s.hi)
        throw InternalError("dimension_summary: bracket inverted (lo > hi)");

    if (s.lo == s.hi) {
        s.value = s.lo;
        s.certified = true;
        s.method = (sigma && sigma->pf_dim > 0) ? "sigma+cap" : "charts+cap";
        return s;
    }

    // heuristic: member point counts grow like q^(dim-1) on the projective level
    std::map<unsigned, uint64_t> member_counts;
    for (const PointRecord& r : points)
        if (r.member) ++member_counts[r.e];
    if (member_counts.size() >= 2) {
        const auto first = *member_counts.begin();
        const auto last = *member_counts.rbegin();
        if (first.first != last.first && first.second > 0) {
            // log q = e log p, so the q-ratio in logs is (e2 - e1) log p
            const double dq = (last.first - first.first) * std::log(static_cast<double>(p));
            const double dm = std::log(static_cast<double>(last.second)) -
                              std::log(static_cast<double>(first.second));
            s.slope_estimate = dm / dq + 1.0;
        }
    }
    s.heuristic = true;
    const double est = s.slope_estimate >= 0 ? s.slope_estimate : static_cast<double>(s.lo);
    long rounded = std::lround(est);
    if (rounded < static_cast<long>(s.lo)) rounded = s.lo;
    if (rounded > static_cast<long>(s.hi)) rounded = s.hi;
    s.value = static_cast<unsigned>(rounded);
    s.method = "bracket+heuristic";
    (void)dim;
    return s;
}

// Full pipeline for the module of degree n restricted to the maximal
// elementary abelian subgroup with the given shape. For p not dividing n the
// subgroup fixes a point, the module is free over that point's stabilizer,
// and the report certifies dimension 0 without building a single matrix.
inline VarietyReport run_variety(unsigned n, unsigned p, const SubgroupShape& shape,
                                 const VarietyOptions& opts = {}) {
    if (!is_prime(p)) throw ValidationError("run_variety: p must be prime");
    if (shape.prime != p) throw ValidationError("run_variety: shape/prime mismatch");
    if (opts.e_max < 1 || opts.e_max > 4)
        throw ValidationError("run_variety: extension bound must be 1..4");
    const ElemAbelianSubgroup sub = subgroup_for_shape(n, p, shape);

    VarietyReport rep;
    rep.n = n;
    rep.p = p;
    rep.shape = shape;
    rep.k = shape.rank();
    rep.dim = factorial(n - 1);

    if (n % p != 0) {
        rep.shortcut_projective = true;
        rep.shortcut_reason =
            "p does not divide n, so every maximal elementary abelian subgroup fixes a point "
            "and the module is free over that point's stabilizer, hence projective";
        rep.dimension.lo = rep.dimension.hi = rep.dimension.value = 0;
        rep.dimension.certified = true;
        rep.dimension.method = "stabilizer-shortcut";
        return rep;
    }

    check_action_budget(n, p, opts.force);
    const FieldContext Fp(p);
    const LieRepresentation lrep =
        restrict_to_subgroup(Fp, n, sub, opts.cache_dir, opts.threads, opts.force);

    const bool do_point = opts.mode == "point";
    const bool do_scan = opts.mode == "scan" || opts.mode == "full";
    const bool do_sigma = opts.mode == "sigma" || opts.mode == "full";
    const bool do_generic = opts.mode == "generic" || opts.mode == "full";
    if (!do_point && !do_scan && !do_sigma && !do_generic)
        throw ValidationError("run_variety: unknown mode '" + opts.mode + "'");

    if (do_point) {
        const FieldContext Fe(p, opts.point_e);
        PointRecord r;
        r.alpha = opts.point_alpha;
        r.e = opts.point_e;
        const MemberVerdict v =
            Fe.order() <= 256
                ? is_member(Fe, lrep.gen_actions, r.alpha, p)
                : is_member(Fe, vdetail::widen_all<uint16_t>(lrep.gen_actions), r.alpha, p);
        r.rank = v.rank_pm1;
        r.member = v.member;
        rep.points.push_back(std::move(r));
    }

    if (do_scan) {
        for (unsigned e = 1; e <= opts.e_max; ++e) {
            const FieldContext Fe(p, e);
            std::vector<PointRecord> recs =
                Fe.order() <= 256
                    ? scan(Fe, lrep.gen_actions, p, e, opts.point_budget, opts.threads)
                    : scan(Fe, vdetail::widen_all<uint16_t>(lrep.gen_actions), p, e,
                           opts.point_budget, opts.threads);
            rep.points.insert(rep.points.end(), recs.begin(), recs.end());
        }
    }

    if (do_sigma) rep.sigma = sigma_rank_rep(Fp, lrep, opts.group_budget);

    if (do_generic) {
        rep.generic.resize(rep.k);
        for (unsigned j = 1; j <= rep.k; ++j)
            rep.generic[j - 1] = generic_membership(p, lrep.gen_actions, j, opts);
    }

    // product cap: the factors other than the last one fix the points beyond
    // their support, so the module is projective over them and the variety
    // dimension is at most the rank of the last (smallest) factor.
    const unsigned cap = shape.parts.back();
    rep.dimension = dimension_summary(rep.k, p, rep.dim, rep.points, rep.sigma, rep.generic, cap);
    return rep;
}

}  // namespace liemod
