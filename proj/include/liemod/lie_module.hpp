#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "liemod/cache.hpp"
#include "liemod/errors.hpp"
#include "liemod/group_algebra.hpp"
#include "liemod/matrix.hpp"
#include "liemod/parallel.hpp"
#include "liemod/perm.hpp"
#include "liemod/subgroups.hpp"

namespace liemod {

inline uint64_t factorial(unsigned n) {
    uint64_t f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

// Basis of the module F[S_n] * omega_n: the elements sigma * omega_n with
// sigma(1) = 1, ordered lexicographically on (sigma(2), ..., sigma(n)).
// Index i corresponds to the i-th such sigma in that order.
class LieBasis {
public:
    explicit LieBasis(unsigned n) : n_(n) {
        if (n < 1) throw ValidationError("LieBasis: degree must be >= 1");
        size_ = factorial(n - 1);
    }

    unsigned degree() const { return n_; }
    uint64_t size() const { return size_; }

    Permutation perm_at(uint64_t index) const {
        if (index >= size_) throw ValidationError("LieBasis: index out of range");
        if (n_ == 1) return Permutation::identity(1);
        const Permutation tau = lehmer_unrank(index, n_ - 1);
        std::vector<uint32_t> img(n_);
        img[0] = 0;
        for (unsigned i = 1; i < n_; ++i) img[i] = tau.raw(i - 1) + 1;
        return Permutation(std::move(img));
    }

    uint64_t index_of(const Permutation& sigma) const {
        if (sigma.degree() != n_) throw ValidationError("LieBasis: degree mismatch");
        if (sigma.image(1) != 1) throw ValidationError("LieBasis: permutation does not fix 1");
        if (n_ == 1) return 0;
        std::vector<uint32_t> img(n_ - 1);
        for (unsigned i = 1; i < n_; ++i) img[i - 1] = sigma.raw(i) - 1;
        return lehmer_rank(Permutation(std::move(img)));
    }

private:
    unsigned n_;
    uint64_t size_;
};

// Counts how many action matrices were actually computed (cache hits and
// theory shortcuts do not count). Lets tests pin down that certain paths do
// no matrix work at all.
inline std::atomic<uint64_t>& action_matrix_builds() {
    static std::atomic<uint64_t> count{0};
    return count;
}

// Largest n whose (n-1)!-dimensional matrices we build without an explicit
// override: the byte count of one matrix at n = 9 is already ~1.5 GiB.
inline unsigned action_budget_max_n(unsigned p) { return p == 2 ? 8 : 7; }

inline void check_action_budget(unsigned n, unsigned p, bool force) {
    if (force || n <= action_budget_max_n(p)) return;
    const uint64_t d = factorial(n - 1);
    throw ResourceLimitError(
        "module dimension (n-1)! = " + std::to_string(d) + " for n = " + std::to_string(n) +
        ", p = " + std::to_string(p) + " exceeds the default bound n <= " +
        std::to_string(action_budget_max_n(p)) + " (one matrix is " +
        std::to_string(d * d / (1 << 20)) + " MiB and each rank costs on the order of " +
        std::to_string(d) + "^3 field operations); pass --force to proceed");
}

// Matrix of v -> g.v on the module in the LieBasis ordering: column j holds
// the expansion of g * sigma_j * omega_n. Entries lie in the prime field, so
// byte storage always suffices and the same matrix serves any extension of
// GF(p) without change of codes.
inline DenseMat<uint8_t> action_matrix(const FieldContext& F, unsigned n, const Permutation& g,
                                       unsigned threads = 1, bool force = false) {
    if (F.degree() != 1)
        throw ValidationError("action_matrix: pass the prime field; extension codes embed as-is");
    if (g.degree() != n) throw ValidationError("action_matrix: permutation degree mismatch");
    check_action_budget(n, F.characteristic(), force);
    const LieBasis basis(n);
    const uint64_t dim = basis.size();
    DenseMat<uint8_t> a(dim, dim);
    parallel_for(dim, threads, [&](size_t j) {
        const Permutation rho = compose(g, basis.perm_at(j));
        const GroupAlgebraElement part = straighten(rho, F);
        for (const auto& [h, c] : part.terms()) a.at(basis.index_of(h), j) = static_cast<uint8_t>(c);
    });
    action_matrix_builds().fetch_add(1, std::memory_order_relaxed);
    return a;
}

inline std::string cache_file_name(unsigned p, unsigned n, const Permutation& g) {
    std::string tag;
    for (char ch : cycle_string(g)) {
        if (ch == '(') tag += 'c';
        else if (ch == ',') tag += '_';
        else if (ch != ')') tag += ch;
    }
    if (tag.empty()) tag = "id";
    return "lie_n" + std::to_string(n) + "_p" + std::to_string(p) + "_" + tag + ".liem";
}

// action_matrix with a read-through disk cache (see cache.hpp for the file
// format). A corrupt or mismatched file is treated as absent and rebuilt.
inline DenseMat<uint8_t> cached_action_matrix(const FieldContext& F, unsigned n,
                                              const Permutation& g,
                                              const std::filesystem::path& cache_dir,
                                              unsigned threads = 1, bool force = false,
                                              bool* cache_hit = nullptr) {
    if (cache_hit) *cache_hit = false;
    if (cache_dir.empty()) return action_matrix(F, n, g, threads, force);
    const uint64_t dim = factorial(n - 1);
    const std::filesystem::path file = cache_dir / cache_file_name(F.characteristic(), n, g);
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
        try {
            DenseMat<uint8_t> m = cache_load(file, F.characteristic(), n, dim, dim);
            if (cache_hit) *cache_hit = true;
            return m;
        } catch (const CacheError&) {
            // fall through to rebuild
        }
    }
    DenseMat<uint8_t> a = action_matrix(F, n, g, threads, force);
    cache_store(file, F.characteristic(), 1, n, a);
    return a;
}

// The module restricted to a fixed elementary abelian subgroup: one action
// matrix per generator, all over the prime field.
struct LieRepresentation {
    unsigned n = 0;
    unsigned p = 0;
    ElemAbelianSubgroup subgroup;
    std::vector<DenseMat<uint8_t>> gen_actions;
    std::vector<bool> from_cache;  // provenance, parallel to gen_actions

    uint64_t dim() const { return gen_actions.empty() ? factorial(n - 1) : gen_actions[0].rows(); }
};

inline LieRepresentation restrict_to_subgroup(const FieldContext& F, unsigned n,
                                              const ElemAbelianSubgroup& sub,
                                              const std::filesystem::path& cache_dir = {},
                                              unsigned threads = 1, bool force = false) {
    if (F.degree() != 1)
        throw ValidationError("restrict_to_subgroup: pass the prime field");
    if (sub.degree > n)
        throw ValidationError("restrict_to_subgroup: subgroup degree exceeds n");
    LieRepresentation rep;
    rep.n = n;
    rep.p = F.characteristic();
    rep.subgroup = sub;
    rep.gen_actions.reserve(sub.generators.size());
    for (const Permutation& g : sub.generators) {
        const Permutation ge = g.degree() == n ? g : extend(g, n);
        bool hit = false;
        rep.gen_actions.push_back(cached_action_matrix(F, n, ge, cache_dir, threads, force, &hit));
        rep.from_cache.push_back(hit);
    }
    return rep;
}

// Independent dimension check: the rank of { rho * omega_n : rho in S_n }
// inside the group algebra itself (n! coordinates) must be (n-1)!. This
// never touches LieBasis or straightening, so it cross-validates both.
inline uint64_t verify_dimension_rank(unsigned n, const FieldContext& F, unsigned threads = 1) {
    if (n < 1) throw ValidationError("verify_dimension: degree must be >= 1");
    if (n > 7)
        throw ResourceLimitError(
            "verify_dimension: n = " + std::to_string(n) + " needs a " + std::to_string(factorial(n)) +
            "^2 matrix (" + std::to_string(factorial(n) * factorial(n) / (1 << 20)) +
            " MiB); capped at n = 7");
    const uint64_t nf = factorial(n);
    const GroupAlgebraElement w = dsw_element(n, F);
    DenseMat<uint8_t> m(nf, nf);
    parallel_for(nf, threads, [&](size_t i) {
        const Permutation rho = lehmer_unrank(i, n);
        for (const auto& [h, c] : w.terms())
            m.at(i, lehmer_rank(compose(rho, h))) = static_cast<uint8_t>(c);
    });
    return mat_rank(F, m);
}

inline bool verify_dimension(unsigned n, const FieldContext& F, unsigned threads = 1) {
    return verify_dimension_rank(n, F, threads) == factorial(n - 1);
}

// Rank-1 freeness over the stabilizer of the last letter: the map
// y -> y * (1,n) * omega_n from F[S_{n-1}] must be injective, i.e. the
// (n-1)! images must be linearly independent in the module.
inline bool verify_free_over_point_stabilizer(unsigned n, const FieldContext& F,
                                              unsigned threads = 1) {
    if (n < 2) throw ValidationError("verify_free_over_point_stabilizer: degree must be >= 2");
    if (n > 8)
        throw ResourceLimitError("verify_free_over_point_stabilizer: capped at n = 8");
    const LieBasis basis(n);
    const uint64_t dim = basis.size();
    const Permutation swap1n = Permutation::transposition(1, n, n);
    DenseMat<uint8_t> m(dim, dim);
    parallel_for(dim, threads, [&](size_t i) {
        const Permutation rho = extend(lehmer_unrank(i, n - 1), n);
        const GroupAlgebraElement part = straighten(compose(rho, swap1n), F);
        for (const auto& [h, c] : part.terms())
            m.at(i, basis.index_of(h)) = static_cast<uint8_t>(c);
    });
    return mat_rank(F, m) == dim;
}

template <std::unsigned_integral E>
DenseMat<E> mat_widen(const DenseMat<uint8_t>& a) {
    DenseMat<E> out(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            out.at(i, j) = a.at(i, j);
    return out;
}

}  // namespace liemod
