// Stratification posets checked against a set-partition oracle built from
// restricted growth strings, plus generator dedup, Möbius, covers, intervals,
// and avoiding counts.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <strata/poset.hpp>

using namespace strata;

namespace {

subset_of_power diagonal(const ground_set& g, const index_set& idx) {
    subset_of_power d(g, idx);
    std::vector<int> t(static_cast<std::size_t>(idx.arity()));
    for (int v = 0; v < g.size(); ++v) {
        std::fill(t.begin(), t.end(), v);
        d.set_tuple(t);
    }
    return d;
}

arrangement diagonal_arrangement(int n) {
    ground_set g(n);
    arrangement arr(g);
    arr.add_piece("diag", diagonal(g, index_set({"u", "v"})));
    return arr;
}

/// All set partitions of {0..n-1} as block-assignment vectors, enumerated as
/// restricted growth strings.
std::vector<std::vector<int>> all_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int maxv) -> void {
        if (pos == n) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            a[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, std::max(maxv, v));
        }
    };
    if (n == 0)
        out.push_back({});
    else
        rec(rec, 1, 0);
    return out;
}

/// Subset of X^n where coordinates sharing a block are equal.
subset_of_power partition_subset(const std::vector<int>& blocks, const ground_set& g,
                                 const index_set& idx) {
    subset_of_power s(g, idx);
    std::vector<int> t(blocks.size());
    for (std::uint64_t c = 0; c < s.cells(); ++c) {
        decode_tuple(c, g, std::span<int>(t));
        bool ok = true;
        for (std::size_t i = 0; i < blocks.size() && ok; ++i)
            for (std::size_t j = i + 1; j < blocks.size() && ok; ++j)
                if (blocks[i] == blocks[j] && t[i] != t[j]) ok = false;
        if (ok) s.set(c);
    }
    return s;
}

bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
    for (std::size_t i = 0; i < fine.size(); ++i)
        for (std::size_t j = i + 1; j < fine.size(); ++j)
            if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
    return true;
}

}  // namespace

TEST_CASE("injection enumeration counts and order") {
    index_set uv({"u", "v"}), abc({"a", "b", "c"});
    auto inj = enumerate_injections(uv, abc);
    REQUIRE(inj.size() == 6);
    CHECK(inj[0].to_string() == "u->a,v->b");
    CHECK(inj[1].to_string() == "u->a,v->c");
    CHECK(inj[2].to_string() == "u->b,v->a");
    CHECK(inj[5].to_string() == "u->c,v->b");
    CHECK(enumerate_injections(abc, uv).empty());
    CHECK(enumerate_injections(index_set(), abc).size() == 1);
}

TEST_CASE("diagonal piece into a singleton gives no generators") {
    auto arr = diagonal_arrangement(2);
    auto gens = enumerate_generators(arr, index_set({"a"}));
    CHECK(gens.empty());
    strat_poset p(arr, index_set({"a"}));
    CHECK(p.size() == 1);
    CHECK(p.element(0).is_full());
}

TEST_CASE("diagonal generators into three coordinates collapse in pairs") {
    ground_set g(3);
    arrangement arr(g);
    arr.add_piece("diag", diagonal(g, index_set({"u", "v"})));
    auto gens = enumerate_generators(arr, index_set({"a", "b", "c"}));
    REQUIRE(gens.size() == 3);
    for (const auto& gen : gens) {
        CHECK(gen.sources.size() == 2);
        CHECK(gen.subset.count() == 9);
    }
}

TEST_CASE("transposed singleton pullbacks stay distinct") {
    ground_set g(2);
    subset_of_power a(g, index_set({"u", "v"}));
    a.set_tuple(std::vector<int>{0, 1});
    arrangement arr(g);
    arr.add_piece("pt", a);
    auto gens = enumerate_generators(arr, index_set({"a", "b"}));
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].sources.size() == 1);
    CHECK(gens[1].sources.size() == 1);
    CHECK(gens[0].subset.test_tuple(std::vector<int>{0, 1}));
    CHECK(gens[1].subset.test_tuple(std::vector<int>{1, 0}));
}

TEST_CASE("partition lattice oracle for three and four coordinates") {
    for (int n : {3, 4}) {
        ground_set g(n);
        index_set T = index_set::alphabet(n);
        arrangement arr(g);
        arr.add_piece("diag", diagonal(g, index_set({"u", "v"})));
        strat_poset p(arr, T);

        auto parts = all_partitions(n);
        std::size_t bell = (n == 3) ? 5 : 15;
        REQUIRE(parts.size() == bell);
        REQUIRE(p.size() == static_cast<int>(bell));

        std::vector<int> elt_of_part;
        for (const auto& blocks : parts) {
            int e = p.find(partition_subset(blocks, g, T));
            REQUIRE(e >= 0);
            elt_of_part.push_back(e);
        }
        std::set<int> distinct(elt_of_part.begin(), elt_of_part.end());
        CHECK(distinct.size() == bell);

        for (std::size_t a = 0; a < parts.size(); ++a)
            for (std::size_t b = 0; b < parts.size(); ++b)
                CHECK(p.leq(elt_of_part[a], elt_of_part[b]) == refines(parts[a], parts[b]));

        auto top = p.top();
        REQUIRE(top.has_value());
        CHECK(p.element(*top).count() == static_cast<std::uint64_t>(n));
        CHECK(p.mobius(0, *top) == ((n == 3) ? 2 : -6));

        std::size_t expected_covers = (n == 3) ? 6 : 31;
        CHECK(p.cover_relations().size() == expected_covers);

        auto open = p.open_interval(0, *top);
        CHECK(open.size() == ((n == 3) ? 3u : 13u));
    }
}

TEST_CASE("element numbering is a linear extension with the full set first") {
    auto arr = diagonal_arrangement(3);
    strat_poset p(arr, index_set::alphabet(3));
    CHECK(p.element(0).is_full());
    for (int i = 0; i < p.size(); ++i) {
        CHECK(p.leq(0, i));
        for (int j = 0; j < p.size(); ++j) {
            if (p.leq(i, j) && i != j) CHECK(i < j);
        }
    }
    for (int i = 0; i + 1 < p.size(); ++i) {
        bool card_drop = p.element(i).count() > p.element(i + 1).count();
        bool lex_up = subset_of_power::lex_compare(p.element(i), p.element(i + 1)) < 0;
        CHECK((card_drop || (p.element(i).count() == p.element(i + 1).count() && lex_up)));
    }
}

TEST_CASE("closure is idempotent: intersections of elements are elements") {
    ground_set g(2);
    arrangement arr(g);
    subset_of_power a(g, index_set({"u", "v"}));
    a.set_tuple(std::vector<int>{0, 0});
    a.set_tuple(std::vector<int>{0, 1});
    a.set_tuple(std::vector<int>{1, 0});
    arr.add_piece("l", a);
    strat_poset p(arr, index_set::alphabet(3));
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j) {
            auto meet = p.element(i).intersect(p.element(j));
            if (!meet.is_empty()) CHECK(p.find(meet) >= 0);
        }
}

TEST_CASE("empty intersections are dropped by default and kept on request") {
    ground_set g(2);
    arrangement arr(g);
    subset_of_power zero(g, index_set({"u"})), one(g, index_set({"u"}));
    zero.set_tuple(std::vector<int>{0});
    one.set_tuple(std::vector<int>{1});
    arr.add_piece("z", zero);
    arr.add_piece("o", one);

    strat_poset p(arr, index_set({"a"}));
    CHECK(p.size() == 3);
    CHECK_FALSE(p.top().has_value());

    strat_poset pe(arr, index_set({"a"}), {.include_empty = true});
    CHECK(pe.size() == 4);
    auto top = pe.top();
    REQUIRE(top.has_value());
    CHECK(pe.element(*top).is_empty());
    CHECK(pe.mobius(0, *top) == 1);
}

TEST_CASE("contributing generators realize each element") {
    auto arr = diagonal_arrangement(3);
    strat_poset p(arr, index_set::alphabet(3));
    CHECK(p.contributing_generators(0).empty());
    auto top = p.top();
    REQUIRE(top.has_value());
    CHECK(p.contributing_generators(*top).size() == 3);
    for (int i = 1; i < p.size(); ++i) {
        const auto& contrib = p.contributing_generators(i);
        REQUIRE_FALSE(contrib.empty());
        subset_of_power meet = p.generators()[contrib[0]].subset;
        for (std::size_t k = 1; k < contrib.size(); ++k)
            meet = meet.intersect(p.generators()[contrib[k]].subset);
        CHECK(meet == p.element(i));
    }
}

TEST_CASE("mobius rows sum to zero on closed intervals") {
    auto arr = diagonal_arrangement(4);
    strat_poset p(arr, index_set::alphabet(4));
    for (int hi = 1; hi < p.size(); ++hi) {
        if (!p.leq(0, hi)) continue;
        long long total = 0;
        for (int k = 0; k <= hi; ++k)
            if (p.leq(0, k) && p.leq(k, hi)) total += p.mobius(0, k);
        CHECK(total == 0);
    }
}

TEST_CASE("mobius row matches per-pair mobius values") {
    std::mt19937_64 rng(909);
    std::bernoulli_distribution bit(0.4);
    for (int rep = 0; rep < 40; ++rep) {
        ground_set g(2 + static_cast<int>(rng() % 2));
        arrangement arr(g);
        int pieces = 1 + static_cast<int>(rng() % 2);
        for (int pi = 0; pi < pieces; ++pi) {
            int arity = 1 + static_cast<int>(rng() % 2);
            subset_of_power s(g, index_set::alphabet(arity, 20));
            for (std::uint64_t c = 0; c < s.cells(); ++c)
                if (bit(rng)) s.set(c);
            arr.add_piece("p" + std::to_string(pi), s);
        }
        strat_poset p(arr, index_set::alphabet(2));
        for (int lo = 0; lo < p.size(); ++lo) {
            auto row = p.mobius_row(lo);
            REQUIRE(row.size() == static_cast<std::size_t>(p.size()));
            for (int k = 0; k < p.size(); ++k) {
                if (p.leq(lo, k))
                    CHECK(row[static_cast<std::size_t>(k)] == p.mobius(lo, k));
                else
                    CHECK(row[static_cast<std::size_t>(k)] == 0);
            }
        }
    }
}

TEST_CASE("avoiding count matches falling factorials on the diagonal") {
    for (int m : {2, 3, 4}) {
        auto arr = diagonal_arrangement(m);
        for (int k = 1; k <= 3; ++k) {
            long long expect = 1;
            for (int i = 0; i < k; ++i) expect *= (m - i);
            if (expect < 0) expect = 0;
            index_set T = index_set::alphabet(k);
            CHECK(avoiding_count(arr, T) == static_cast<std::uint64_t>(std::max(expect, 0ll)));
            CHECK(inclusion_exclusion_count(arr, T) == std::max(expect, 0ll));
        }
    }
}

TEST_CASE("avoiding count agrees with mobius inversion without full pieces") {
    std::mt19937_64 rng(777);
    std::bernoulli_distribution bit(0.4);
    int checked = 0;
    for (int rep = 0; rep < 120; ++rep) {
        ground_set g(2 + static_cast<int>(rng() % 2));
        arrangement arr(g);
        int pieces = 1 + static_cast<int>(rng() % 2);
        bool any_full = false;
        for (int pi = 0; pi < pieces; ++pi) {
            int arity = 1 + static_cast<int>(rng() % 2);
            subset_of_power s(g, index_set::alphabet(arity, 20));
            for (std::uint64_t c = 0; c < s.cells(); ++c)
                if (bit(rng)) s.set(c);
            any_full = any_full || s.is_full();
            arr.add_piece("p" + std::to_string(pi), s);
        }
        if (any_full) continue;
        index_set T = index_set::alphabet(1 + static_cast<int>(rng() % 3));
        CHECK(static_cast<long long>(avoiding_count(arr, T)) ==
              inclusion_exclusion_count(arr, T));
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("a full piece breaks the inversion identity by design") {
    ground_set g(2);
    arrangement arr(g);
    arr.add_piece("all", subset_of_power::full(g, index_set({"u"})));
    index_set T({"a"});
    CHECK(avoiding_count(arr, T) == 0);
    CHECK(inclusion_exclusion_count(arr, T) == 2);
}

TEST_CASE("dot export lists every element and cover relation") {
    auto arr = diagonal_arrangement(3);
    strat_poset p(arr, index_set::alphabet(3));
    std::string dot = p.to_dot();
    for (int i = 0; i < p.size(); ++i)
        CHECK(dot.find("e" + std::to_string(i) + " [label=") != std::string::npos);
    std::size_t edges = 0, pos = 0;
    while ((pos = dot.find(" -> ", pos)) != std::string::npos) {
        ++edges;
        pos += 4;
    }
    CHECK(edges == p.cover_relations().size());
}
