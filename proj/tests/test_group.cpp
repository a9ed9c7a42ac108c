#include "doctest.h"

#include <algorithm>
#include <random>

#include "hurwitz/errors.hpp"
#include "hurwitz/group.hpp"

using namespace hurwitz;

namespace {

Group make(const char* spec) { return build_group(parse_group_spec(spec)); }

// Oracle: compose the stored permutations directly, never touching the table.
Permutation compose_naive(const Permutation& a, const Permutation& b)
{
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = b[a[i]];
    return r;
}

// Oracle: every subset of G that contains 1 and is closed under products.
std::vector<std::vector<Elem>> brute_subgroups(const Group& G)
{
    std::vector<std::vector<Elem>> out;
    const std::size_t n = G.size();
    REQUIRE(n <= 16);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & 1))
            continue;
        bool closed = true;
        for (Elem a = 0; a < n && closed; ++a)
            for (Elem b = 0; b < n && closed; ++b)
                if ((mask >> a & 1) && (mask >> b & 1) && !(mask >> G.mul(a, b) & 1))
                    closed = false;
        if (!closed)
            continue;
        std::vector<Elem> h;
        for (Elem a = 0; a < n; ++a)
            if (mask >> a & 1)
                h.push_back(a);
        out.push_back(h);
    }
    return out;
}

bool brute_nonsplitting(const Group& G, const ConjClass& c)
{
    if (generated_subgroup(G, c.members).size() != G.size())
        return false;
    for (const auto& h : brute_subgroups(G)) {
        std::vector<Elem> inter;
        for (Elem x : h)
            if (c.contains(x))
                inter.push_back(x);
        if (inter.empty())
            continue;
        for (Elem y : inter) {
            bool conj = false;
            for (Elem k : h)
                conj = conj || G.conj(inter[0], k) == y;
            if (!conj)
                return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("closure sizes")
{
    CHECK(make("S3").size() == 6);
    CHECK(make("S4").size() == 24);
    CHECK(make("S5").size() == 120);
    CHECK(make("A4").size() == 12);
    CHECK(make("D5").size() == 10);
    CHECK(make("dihedral(9)").size() == 18);
    CHECK(make("dihedral(3;1,1)").size() == 18);
    CHECK(make("cyclic(4)").size() == 4);
    CHECK(build_group(std::vector<Permutation>{}).size() == 1);

    auto g = make("perm: (1 2)\nperm: (1 2 3)");
    CHECK(g.size() == 6);
    // Z/3 acting on itself together with x -> -x.
    auto d3 = build_group({Permutation{1, 2, 0}, Permutation{0, 2, 1}});
    CHECK(d3.size() == 6);
    CHECK(conjugacy_classes(d3).size() == 3);
}

TEST_CASE("size cap")
{
    CHECK_THROWS_AS(build_group(preset_group("S5"), 100), BudgetError);
}

TEST_CASE("table agrees with permutation composition")
{
    for (const char* name : {"S3", "A4", "S4", "D5", "dihedral(3,3)"}) {
        auto G = make(name);
        for (Elem a = 0; a < G.size(); ++a) {
            CHECK(G.mul(a, G.inv(a)) == 0);
            for (Elem b = 0; b < G.size(); ++b)
                REQUIRE(G.permutation(G.mul(a, b)) ==
                        compose_naive(G.permutation(a), G.permutation(b)));
        }
    }
}

TEST_CASE("associativity and orders")
{
    auto G = make("A4");
    for (Elem a = 0; a < G.size(); ++a) {
        for (Elem b = 0; b < G.size(); ++b)
            for (Elem c = 0; c < G.size(); ++c)
                REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
        std::uint32_t k = 1;
        while (G.pow(a, k) != 0)
            ++k;
        CHECK(G.order_of(a) == k);
    }
    auto S5 = make("S5");
    std::mt19937 rng(7);
    std::uniform_int_distribution<Elem> pick(0, Elem(S5.size() - 1));
    for (int t = 0; t < 2000; ++t) {
        Elem a = pick(rng), b = pick(rng), c = pick(rng);
        REQUIRE(S5.mul(S5.mul(a, b), c) == S5.mul(a, S5.mul(b, c)));
        REQUIRE(S5.order_of(S5.conj(a, b)) == S5.order_of(a));
    }
}

TEST_CASE("element ordering is breadth-first with sorted layers")
{
    auto G = make("S3");
    CHECK(G.permutation(0) == Permutation{0, 1, 2});
    // layer 1 holds the two generators, sorted lexicographically
    CHECK(G.permutation(1) == Permutation{1, 0, 2});
    CHECK(G.permutation(2) == Permutation{1, 2, 0});
    auto again = make("S3");
    for (Elem a = 0; a < G.size(); ++a)
        CHECK(G.permutation(a) == again.permutation(a));
}

TEST_CASE("conjugacy classes")
{
    auto S3 = make("S3");
    auto t = conjugacy_class(S3, *S3.find(parse_cycles("(1 2)", 3)));
    CHECK(t.size() == 3);
    CHECK(t.class_order == 2);
    CHECK(conjugacy_class(S3, 0).size() == 1);

    auto A4 = make("A4");
    auto c = conjugacy_class(A4, *A4.find(parse_cycles("(1 2 3)", 4)));
    CHECK(c.size() == 4);
    for (Elem x : c.members)
        for (Elem h = 0; h < A4.size(); ++h)
            CHECK(c.contains(A4.conj(x, h)));

    std::size_t total = 0;
    for (const auto& k : conjugacy_classes(make("S4")))
        total += k.size();
    CHECK(total == 24);
}

TEST_CASE("subgroup lattice")
{
    CHECK(subgroups(make("S3")).size() == 6);
    CHECK(subgroups(build_group(std::vector<Permutation>{})).size() == 1);
    CHECK(subgroups(make("cyclic(4)")).size() == 3);
    CHECK(subgroups(make("S4")).size() == 30);
    for (const char* name : {"S3", "A4", "cyclic(4)", "D5"}) {
        auto G = make(name);
        auto brute = brute_subgroups(G);
        auto subs = subgroups(G);
        std::sort(brute.begin(), brute.end());
        auto mine = subs.subgroups;
        std::sort(mine.begin(), mine.end());
        CHECK(brute == mine);
        CHECK(subs.subgroups.front().size() == 1);
        CHECK(subs.subgroups.back().size() == G.size());
        for (std::size_t i = 0; i < subs.size(); ++i)
            CHECK(subs.index_of(subs.subgroups[i]) == int(i));
    }
}

TEST_CASE("non-splitting")
{
    auto S3 = make("S3");
    auto cS3 = resolve_class(S3, "(1 2)");
    CHECK(is_nonsplitting(S3, cS3).holds);
    CHECK(is_rational_class(S3, cS3));
    CHECK(is_rational_class(S3, conjugacy_class(S3, 0)));

    auto S4 = make("S4");
    auto r = is_nonsplitting(S4, resolve_class(S4, "(1 2)"));
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->kind == NonsplittingWitness::Kind::splits_in_subgroup);
    CHECK(r.witness->representatives.size() == 2);
    CHECK_FALSE(r.witness->describe(S4).empty());

    auto A4 = make("A4");
    auto c3 = resolve_class(A4, "(1 2 3)");
    CHECK(is_nonsplitting(A4, c3).holds);
    CHECK_FALSE(is_rational_class(A4, c3));

    for (const char* name : {"S3", "A4", "D5"}) {
        auto G = make(name);
        for (const auto& c : conjugacy_classes(G))
            CHECK(is_nonsplitting(G, c).holds == brute_nonsplitting(G, c));
    }

    // a class inside a proper subgroup is reported as non-generating
    auto v = is_nonsplitting(A4, resolve_class(A4, "(1 2)(3 4)"));
    CHECK_FALSE(v.holds);
    CHECK(v.witness->kind == NonsplittingWitness::Kind::not_generating);
}

TEST_CASE("groups of order 2s with s odd have one involution class, and it does not split")
{
    for (const char* name : {"S3", "D5", "dihedral(9)", "dihedral(3,3)", "dihedral(3;2,1)",
                             "dihedral(15)"}) {
        auto G = make(name);
        REQUIRE(G.size() % 4 == 2);
        int involution_classes = 0;
        for (const auto& c : conjugacy_classes(G))
            involution_classes += c.class_order == 2;
        CHECK(involution_classes == 1);
        auto c = resolve_class(G, "");
        auto r = is_nonsplitting(G, c);
        CHECK(r.holds);
        if (r.holds)
            CHECK(generated_subgroup(G, c.members).size() == G.size());
        CHECK(is_rational_class(G, c));
    }
}

TEST_CASE("text formats")
{
    CHECK(format_cycles(parse_cycles("(1 2)(3 4 5)")) == "(1 2)(3 4 5)");
    CHECK(format_cycles(parse_cycles("()", 3)) == "()");
    CHECK(parse_cycles("(1,3)", 4) == Permutation{2, 1, 0, 3});
    CHECK_THROWS_AS(parse_cycles("(1 1)"), ValidationError);
    CHECK_THROWS_AS(parse_cycles("1 2"), ValidationError);
    CHECK_THROWS_AS(preset_group("Q8x"), ValidationError);
    CHECK_THROWS_AS(parse_group_spec("S3\nperm: (1 2)"), ValidationError);

    auto spec = parse_group_spec("# comment\nperm: (1 2 3) # rotation\nperm: (1 2)\n");
    CHECK(spec.generators.size() == 2);
    CHECK(build_group(spec).size() == 6);
    CHECK(parse_group_spec("preset: dihedral(3;2,1)").label == "dihedral(3;2,1)");
    CHECK(parse_group_spec("perm: (1 2); perm: (2 3)").generators.size() == 2);

    auto S3 = make("S3");
    CHECK_THROWS_AS(resolve_class(S3, "(1 4)"), ValidationError);
    CHECK_THROWS_AS(resolve_class(make("S4"), "(1 2)(3 4 5)"), ValidationError);
    CHECK_THROWS_AS(resolve_class(make("cyclic(4)"), "(1 2)"), ValidationError);
}
