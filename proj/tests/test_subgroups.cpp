#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "liemod/subgroups.hpp"

using namespace liemod;

namespace {

// Oracle: all weakly decreasing tuples (r_1,...,r_m) with sum of p^{r_i} <= n
// and fewer than p points left over, found by filtering every descending
// p-power partition.
void oracle_rec(uint64_t remaining, unsigned max_part, unsigned p,
                std::vector<unsigned>& cur, std::set<std::vector<unsigned>>& out) {
    if (remaining < p) {
        // no further part fits, so the tuple is maximal exactly here
        if (!cur.empty()) out.insert(cur);
        return;
    }
    for (unsigned r = 1; r <= max_part; ++r) {
        const uint64_t cost = ipow(p, r);
        if (cost > remaining) break;
        cur.push_back(r);
        oracle_rec(remaining - cost, r, p, cur, out);
        cur.pop_back();
    }
}

std::set<std::vector<unsigned>> shape_oracle(unsigned n, unsigned p) {
    std::set<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    oracle_rec(n, n, p, cur, out);
    return out;
}

// Closure of the generators under composition, by BFS.
std::set<Permutation> span_of(const std::vector<Permutation>& gens, unsigned degree) {
    std::set<Permutation> closure{Permutation::identity(degree)};
    std::vector<Permutation> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Permutation y = compose(x, g);
                if (closure.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return closure;
}

}  // namespace

TEST_CASE("maximal shapes match the partition oracle") {
    for (unsigned p : {2u, 3u, 5u}) {
        for (unsigned n = 1; n <= 12; ++n) {
            auto subs = maximal_elem_abelians(n, p);
            std::set<std::vector<unsigned>> got;
            for (const auto& E : subs) {
                CHECK(got.insert(E.shape.parts).second);  // no duplicate shapes
                CHECK(E.shape.prime == p);
                CHECK(std::is_sorted(E.shape.parts.rbegin(), E.shape.parts.rend()));
            }
            CHECK(got == shape_oracle(n, p));
        }
    }
}

TEST_CASE("known shape lists") {
    auto parts_of = [](unsigned n, unsigned p) {
        std::vector<std::vector<unsigned>> v;
        for (const auto& E : maximal_elem_abelians(n, p)) v.push_back(E.shape.parts);
        std::sort(v.begin(), v.end());
        return v;
    };
    using VV = std::vector<std::vector<unsigned>>;
    CHECK(parts_of(4, 2) == VV{{1, 1}, {2}});
    CHECK(parts_of(5, 2) == VV{{1, 1}, {2}});
    CHECK(parts_of(6, 2) == VV{{1, 1, 1}, {2, 1}});
    CHECK(parts_of(8, 2) == VV{{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3}});
    CHECK(parts_of(6, 3) == VV{{1, 1}});
    CHECK(parts_of(9, 3) == VV{{1, 1, 1}, {2}});
    CHECK(parts_of(12, 2).size() == 6);
    CHECK(maximal_elem_abelians(3, 5).empty());
    CHECK(maximal_elem_abelians(1, 2).empty());
    CHECK_THROWS_AS(maximal_elem_abelians(6, 4), ValidationError);
}

TEST_CASE("generators form an elementary abelian group of the stated rank") {
    for (unsigned p : {2u, 3u, 5u}) {
        const unsigned n_max = p == 2 ? 10 : p == 3 ? 12 : 11;
        for (unsigned n = p; n <= n_max; ++n) {
            for (const auto& E : maximal_elem_abelians(n, p)) {
                CHECK(E.degree == n);
                CHECK(E.rank() == E.shape.rank());
                for (const auto& g : E.generators) CHECK(perm_order(g) == p);
                for (size_t i = 0; i < E.generators.size(); ++i)
                    for (size_t j = i + 1; j < E.generators.size(); ++j)
                        CHECK(compose(E.generators[i], E.generators[j]) ==
                              compose(E.generators[j], E.generators[i]));
                CHECK(span_of(E.generators, n).size() == ipow(p, E.rank()));
            }
        }
    }
}

TEST_CASE("support blocks tile the moved points") {
    for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{
             {8, 2}, {10, 2}, {9, 3}, {12, 3}, {11, 5}}) {
        for (const auto& E : maximal_elem_abelians(n, p)) {
            REQUIRE(E.support_blocks.size() == E.shape.parts.size());
            unsigned expect_lo = 1;
            for (size_t i = 0; i < E.support_blocks.size(); ++i) {
                auto [lo, hi] = E.support_blocks[i];
                CHECK(lo == expect_lo);
                CHECK(hi - lo + 1 == ipow(p, E.shape.parts[i]));
                expect_lo = hi + 1;
            }
            const unsigned moved_max = expect_lo - 1;
            CHECK(moved_max == E.shape.moved_points());
            CHECK(moved_max == p * (n / p));
            // every generator fixes the tail beyond the blocks
            for (const auto& g : E.generators)
                for (unsigned x = moved_max + 1; x <= n; ++x) CHECK(g.fixes(x));
        }
    }
}

TEST_CASE("regular factor acts freely and transitively on its block") {
    for (auto [r, p] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}, {1, 5}}) {
        ElemAbelianSubgroup E = regular_elem_abelian(r, p);
        const unsigned deg = static_cast<unsigned>(ipow(p, r));
        CHECK(E.degree == deg);
        auto closure = span_of(E.generators, deg);
        CHECK(closure.size() == ipow(p, r));
        // transitivity: the orbit of 1 is everything; freeness: only id fixes 1
        std::set<unsigned> orbit;
        for (const auto& g : closure) {
            orbit.insert(g.image(1));
            if (g.fixes(1)) CHECK(g.is_identity());
        }
        CHECK(orbit.size() == deg);
    }
    CHECK_THROWS_AS(regular_elem_abelian(0, 2), ValidationError);
    CHECK_THROWS_AS(regular_elem_abelian(2, 6), ValidationError);
    CHECK_THROWS_AS(regular_elem_abelian(25, 2), ResourceLimitError);
}

TEST_CASE("shape parsing and lookup") {
    SubgroupShape s = SubgroupShape::parse("2,1,1", 2);
    CHECK(s.parts == std::vector<unsigned>{2, 1, 1});
    CHECK(s.rank() == 4);
    CHECK(s.moved_points() == 8);
    CHECK(s.to_string() == "2,1,1");
    CHECK(SubgroupShape::parse(" 3 , 2 ", 2).parts == std::vector<unsigned>{3, 2});
    CHECK_THROWS_AS(SubgroupShape::parse("", 2), ValidationError);
    CHECK_THROWS_AS(SubgroupShape::parse("1,2", 2), ValidationError);
    CHECK_THROWS_AS(SubgroupShape::parse("2,,1", 2), ValidationError);
    CHECK_THROWS_AS(SubgroupShape::parse("2;1", 2), ValidationError);
    CHECK_THROWS_AS(SubgroupShape::parse("0", 2), ValidationError);

    CHECK(subgroup_for_shape(8, 2, SubgroupShape::parse("2,2", 2)).rank() == 4);
    CHECK_THROWS_AS(subgroup_for_shape(8, 2, SubgroupShape::parse("3,1", 2)), ValidationError);
    CHECK_THROWS_AS(subgroup_for_shape(4, 3, SubgroupShape::parse("2", 3)), ValidationError);
    CHECK_THROWS_AS(subgroup_for_shape(2, 5, SubgroupShape::parse("1", 5)), ValidationError);
}
