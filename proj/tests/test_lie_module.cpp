#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "liemod/cache.hpp"
#include "liemod/lie_module.hpp"

using namespace liemod;
namespace fs = std::filesystem;

namespace {

// rho * omega_n as a plain group-algebra element, no straightening involved.
GroupAlgebraElement left_image(const Permutation& rho, const GroupAlgebraElement& w) {
    return ga_left_mul(rho, w);
}

// Oracle for one column: the column of A(g) at j must expand g*sigma_j*omega
// over the basis images sigma_i*omega inside F[S_n] itself.
void check_column(const FieldContext& F, unsigned n, const Permutation& g,
                  const DenseMat<uint8_t>& a, uint64_t j, const LieBasis& basis,
                  const GroupAlgebraElement& w) {
    GroupAlgebraElement lhs(F, n);
    for (uint64_t i = 0; i < basis.size(); ++i) {
        const uint32_t c = a.at(i, j);
        if (c == 0) continue;
        lhs = ga_add(lhs, ga_scale(left_image(basis.perm_at(i), w), c));
    }
    CHECK(lhs == left_image(compose(g, basis.perm_at(j)), w));
}

fs::path fresh_temp_dir() {
    static std::mt19937_64 rng(std::random_device{}());
    fs::path dir = fs::temp_directory_path() / ("liemod_test_" + std::to_string(rng()));
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("basis indexing is a lex-ordered bijection onto the point stabilizer") {
    for (unsigned n = 1; n <= 6; ++n) {
        LieBasis basis(n);
        CHECK(basis.size() == factorial(n - 1));
        Permutation prev = Permutation::identity(1);
        for (uint64_t i = 0; i < basis.size(); ++i) {
            Permutation s = basis.perm_at(i);
            CHECK(s.degree() == n);
            CHECK(s.image(1) == 1);
            CHECK(basis.index_of(s) == i);
            if (i > 0) CHECK(prev < s);  // image-table lex order
            prev = s;
        }
        CHECK_THROWS_AS(basis.perm_at(basis.size()), ValidationError);
    }
    LieBasis b4(4);
    CHECK_THROWS_AS(b4.index_of(Permutation::identity(5)), ValidationError);
    CHECK_THROWS_AS(b4.index_of(Permutation::transposition(1, 2, 4)), ValidationError);
}

TEST_CASE("action matrices expand columns correctly in the group algebra") {
    for (unsigned p : {2u, 3u}) {
        FieldContext F(p);
        for (unsigned n = 2; n <= 5; ++n) {
            const LieBasis basis(n);
            const GroupAlgebraElement w = dsw_element(n, F);
            std::vector<Permutation> sample;
            if (n <= 4) {
                for (uint64_t r = 0; r < factorial(n); ++r) sample.push_back(lehmer_unrank(r, n));
            } else {
                std::mt19937_64 rng(n * 10 + p);
                for (int t = 0; t < 8; ++t)
                    sample.push_back(lehmer_unrank(rng() % factorial(n), n));
            }
            for (const Permutation& g : sample) {
                DenseMat<uint8_t> a = action_matrix(F, n, g);
                for (uint64_t j = 0; j < basis.size(); ++j) check_column(F, n, g, a, j, basis, w);
            }
        }
    }
}

TEST_CASE("action is a group homomorphism") {
    std::mt19937_64 rng(424242);
    for (unsigned p : {2u, 3u}) {
        FieldContext F(p);
        for (unsigned n = 3; n <= 5; ++n) {
            CHECK(action_matrix(F, n, Permutation::identity(n)) ==
                  DenseMat<uint8_t>::identity(factorial(n - 1)));
            for (int t = 0; t < 10; ++t) {
                Permutation g = lehmer_unrank(rng() % factorial(n), n);
                Permutation h = lehmer_unrank(rng() % factorial(n), n);
                CHECK(action_matrix(F, n, compose(g, h)) ==
                      mat_mul(F, action_matrix(F, n, g), action_matrix(F, n, h)));
            }
        }
    }
}

TEST_CASE("module dimension cross-check from the regular representation") {
    for (unsigned p : {2u, 3u, 5u}) {
        FieldContext F(p);
        for (unsigned n = 1; n <= 6; ++n) CHECK(verify_dimension(n, F, 2));
    }
    CHECK_THROWS_AS(verify_dimension(8, FieldContext(2)), ResourceLimitError);
}

TEST_CASE("module is free of rank one over a point stabilizer") {
    for (unsigned p : {2u, 3u}) {
        FieldContext F(p);
        for (unsigned n = 2; n <= 6; ++n) CHECK(verify_free_over_point_stabilizer(n, F, 2));
    }
    CHECK_THROWS_AS(verify_free_over_point_stabilizer(9, FieldContext(2)), ResourceLimitError);
}

TEST_CASE("restriction collects one action per generator") {
    FieldContext F(2);
    auto sub = subgroup_for_shape(6, 2, SubgroupShape::parse("2,1", 2));
    LieRepresentation rep = restrict_to_subgroup(F, 6, sub);
    CHECK(rep.n == 6);
    CHECK(rep.p == 2);
    CHECK(rep.dim() == 120);
    REQUIRE(rep.gen_actions.size() == 3);
    for (size_t i = 0; i < rep.gen_actions.size(); ++i) {
        CHECK(rep.gen_actions[i] ==
              action_matrix(F, 6, extend(sub.generators[i], 6)));
        CHECK_FALSE(rep.from_cache[i]);
    }
    // generators commute, so must their actions
    CHECK(mat_mul(F, rep.gen_actions[0], rep.gen_actions[1]) ==
          mat_mul(F, rep.gen_actions[1], rep.gen_actions[0]));
    CHECK_THROWS_AS(restrict_to_subgroup(FieldContext(2, 2), 6, sub), ValidationError);
}

TEST_CASE("cache round trip and provenance flags") {
    const fs::path dir = fresh_temp_dir();
    FieldContext F(2);
    const Permutation g = parse_cycles("(1,2)(3,4)", 5);

    const uint64_t before = action_matrix_builds().load();
    bool hit = true;
    DenseMat<uint8_t> first = cached_action_matrix(F, 5, g, dir, 1, false, &hit);
    CHECK_FALSE(hit);
    CHECK(action_matrix_builds().load() == before + 1);

    DenseMat<uint8_t> second = cached_action_matrix(F, 5, g, dir, 1, false, &hit);
    CHECK(hit);
    CHECK(second == first);
    CHECK(action_matrix_builds().load() == before + 1);  // served from disk

    // empty cache_dir bypasses the cache entirely
    DenseMat<uint8_t> third = cached_action_matrix(F, 5, g, {}, 1, false, &hit);
    CHECK_FALSE(hit);
    CHECK(third == first);

    fs::remove_all(dir);
}

TEST_CASE("cache rejects tampered files with precise kinds") {
    const fs::path dir = fresh_temp_dir();
    FieldContext F(3);
    const Permutation g = parse_cycles("(1,2,3)", 4);
    const fs::path file = dir / cache_file_name(3, 4, g);
    cached_action_matrix(F, 4, g, dir);
    REQUIRE(fs::exists(file));

    auto kind_of = [&](auto&& fn) {
        try {
            fn();
        } catch (const CacheError& e) {
            return e.kind;
        }
        return CacheError::Kind::io;  // placeholder meaning "did not throw"
    };

    SECTION("bad magic") {
        auto blob = [&] {
            std::ifstream in(file, std::ios::binary);
            return std::string(std::istreambuf_iterator<char>(in),
                               std::istreambuf_iterator<char>());
        }();
        blob[0] = 'X';
        std::ofstream(file, std::ios::binary | std::ios::trunc).write(blob.data(), blob.size());
        CHECK(kind_of([&] { cache_load(file, 3, 4, 6, 6); }) == CacheError::Kind::bad_magic);
        // the read-through path silently rebuilds instead
        bool hit = true;
        CHECK(cached_action_matrix(F, 4, g, dir, 1, false, &hit) == action_matrix(F, 4, g));
        CHECK_FALSE(hit);
    }
    SECTION("bad version") {
        std::fstream io(file, std::ios::binary | std::ios::in | std::ios::out);
        io.seekp(4);
        io.put(static_cast<char>(9));
        io.close();
        CHECK(kind_of([&] { cache_load(file, 3, 4, 6, 6); }) == CacheError::Kind::bad_version);
    }
    SECTION("truncated") {
        fs::resize_file(file, kCacheHeaderSize + 7);
        CHECK(kind_of([&] { cache_load(file, 3, 4, 6, 6); }) == CacheError::Kind::truncated);
        fs::resize_file(file, 10);
        CHECK(kind_of([&] { cache_load(file, 3, 4, 6, 6); }) == CacheError::Kind::truncated);
    }
    SECTION("parameter mismatch") {
        CHECK(kind_of([&] { cache_load(file, 2, 4, 6, 6); }) == CacheError::Kind::mismatch);
        CHECK(kind_of([&] { cache_load(file, 3, 5, 6, 6); }) == CacheError::Kind::mismatch);
        CHECK(kind_of([&] { cache_load(file, 3, 4, 7, 6); }) == CacheError::Kind::mismatch);
    }
    SECTION("store rejects extension matrices") {
        DenseMat<uint8_t> m(2, 2);
        CHECK(kind_of([&] { cache_store(dir / "x.liem", 2, 2, 4, m); }) == CacheError::Kind::io);
    }
    fs::remove_all(dir);
}

TEST_CASE("resource budget guards the big builds") {
    CHECK_NOTHROW(check_action_budget(8, 2, false));
    CHECK_THROWS_AS(check_action_budget(9, 2, false), ResourceLimitError);
    CHECK_THROWS_AS(check_action_budget(8, 3, false), ResourceLimitError);
    CHECK_NOTHROW(check_action_budget(9, 2, true));
    try {
        check_action_budget(9, 2, false);
        FAIL("expected ResourceLimitError");
    } catch (const ResourceLimitError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("--force") != std::string::npos);
        CHECK(msg.find("MiB") != std::string::npos);
    }
}

TEST_CASE("action matrix argument validation") {
    CHECK_THROWS_AS(action_matrix(FieldContext(2, 2), 4, Permutation::identity(4)),
                    ValidationError);
    CHECK_THROWS_AS(action_matrix(FieldContext(2), 4, Permutation::identity(5)), ValidationError);
}

TEST_CASE("widening preserves entries") {
    FieldContext F(3);
    DenseMat<uint8_t> a = action_matrix(F, 4, parse_cycles("(1,2)", 4));
    DenseMat<uint16_t> w = mat_widen<uint16_t>(a);
    REQUIRE(w.rows() == a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) CHECK(w.at(i, j) == a.at(i, j));
}
