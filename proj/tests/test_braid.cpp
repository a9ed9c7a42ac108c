#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "hurwitz/braid.hpp"
#include "hurwitz/errors.hpp"

using namespace hurwitz;

namespace {

BraidContext context(const char* group, const char* rep)
{
    auto G = build_group(parse_group_spec(group));
    return BraidContext(G, resolve_class(G, rep));
}

// Oracle: union-find over all of c^n using sigma_j^{+-1}, with products
// taken directly on permutations rather than through the table.
std::vector<std::size_t> oracle_orbit_sizes(const BraidContext& ctx, std::size_t n)
{
    const auto& G = ctx.group();
    const std::size_t k = ctx.k();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i)
        total *= k;
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto perm_of = [&](Local a) { return G.permutation(ctx.element(a)); };
    auto compose = [](const Permutation& a, const Permutation& b) {
        Permutation r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[i] = b[a[i]];
        return r;
    };
    auto inverse = [](const Permutation& a) {
        Permutation r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            r[a[i]] = std::uint32_t(i);
        return r;
    };
    for (std::size_t code = 0; code < total; ++code) {
        auto t = decode_tuple(code, n, k);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            auto a = perm_of(t[j]), b = perm_of(t[j + 1]);
            auto s = t;
            s[j] = ctx.local(*G.find(compose(compose(a, b), inverse(a))));
            s[j + 1] = t[j];
            parent[find(code)] = find(encode_tuple(s, k));
        }
    }
    std::map<std::size_t, std::size_t> sizes;
    for (std::size_t code = 0; code < total; ++code)
        ++sizes[find(code)];
    std::vector<std::size_t> out;
    for (auto& [r, s] : sizes)
        out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

Tuple random_tuple(std::mt19937& rng, std::size_t n, std::size_t k)
{
    Tuple t(n);
    for (auto& x : t)
        x = static_cast<Local>(rng() % k);
    return t;
}

}  // namespace

TEST_CASE("braid action")
{
    auto ctx = context("S3", "(1 2)");
    auto a = ctx.local(*ctx.group().find(parse_cycles("(1 2)", 3)));
    auto b = ctx.local(*ctx.group().find(parse_cycles("(1 3)", 3)));
    auto c = ctx.local(*ctx.group().find(parse_cycles("(2 3)", 3)));
    CHECK(braid_act(ctx, 1, +1, {a, b}) == Tuple{c, a});
    CHECK(braid_act(ctx, 1, +1, {a, a}) == Tuple{a, a});
    CHECK(braid_act(ctx, 1, -1, braid_act(ctx, 1, +1, {a, b})) == Tuple{a, b});
    CHECK_THROWS_AS(braid_act(ctx, 0, 1, {a, b}), ValidationError);
    CHECK_THROWS_AS(braid_act(ctx, 2, 1, {a, b}), ValidationError);
}

TEST_CASE("braid relations and invariants on random tuples")
{
    std::mt19937 rng(1);
    for (auto [g, rep] : {std::pair{"S3", ""}, {"A4", "(1 2 3)"}, {"D5", ""}, {"S4", "(1 2)"}}) {
        auto ctx = context(g, rep);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = 3 + rng() % 10;
            auto t = random_tuple(rng, n, ctx.k());
            std::size_t i = 1 + rng() % (n - 2);
            auto lhs = braid_act(ctx, i, 1, braid_act(ctx, i + 1, 1, braid_act(ctx, i, 1, t)));
            auto rhs = braid_act(ctx, i + 1, 1, braid_act(ctx, i, 1, braid_act(ctx, i + 1, 1, t)));
            REQUIRE(lhs == rhs);
            if (n >= 4) {
                std::size_t j = 1 + rng() % (n - 1);
                if (j + 1 < i || i + 1 < j)
                    REQUIRE(braid_act(ctx, i, 1, braid_act(ctx, j, 1, t)) ==
                            braid_act(ctx, j, 1, braid_act(ctx, i, 1, t)));
            }
            std::size_t j = 1 + rng() % (n - 1);
            int sign = rng() % 2 ? 1 : -1;
            auto s = braid_act(ctx, j, sign, t);
            CHECK(ctx.boundary(s) == ctx.boundary(t));
            CHECK(ctx.monodromy(s) == ctx.monodromy(t));
            CHECK(braid_act(ctx, j, -sign, s) == t);
        }
    }
}

TEST_CASE("orbit enumeration")
{
    auto ctx = context("S3", "(1 2)");
    auto T2 = enumerate_orbits(ctx, 2);
    CHECK(T2.size() == 5);
    std::vector<std::uint64_t> sizes;
    for (const auto& o : T2.orbits)
        sizes.push_back(o.size);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::uint64_t>{1, 1, 1, 3, 3});
    CHECK(enumerate_orbits(ctx, 0).size() == 1);
    CHECK(enumerate_orbits(ctx, 1).size() == 3);

    auto z2 = context("Z2", "");
    for (std::size_t n = 0; n <= 8; ++n)
        CHECK(enumerate_orbits(z2, n).size() == 1);

    CHECK_THROWS_AS(enumerate_orbits(ctx, 10, 1000), BudgetError);

    for (const char* g : {"S3", "A4", "D5"}) {
        auto c = std::string(g) == "A4" ? context(g, "(1 2 3)") : context(g, "");
        for (std::size_t n = 0; n <= 5; ++n) {
            auto T = enumerate_orbits(c, n);
            std::vector<std::size_t> mine;
            std::uint64_t total = 0;
            for (const auto& o : T.orbits) {
                mine.push_back(o.size);
                total += o.size;
            }
            std::sort(mine.begin(), mine.end());
            CHECK(total == T.orbit_of.size());
            if (n > 0)
                CHECK(mine == oracle_orbit_sizes(c, n));
            // canonical representative is the least member, ids ascend with it
            std::vector<std::uint64_t> least(T.size(), ~0ull);
            for (std::uint64_t code = 0; code < T.orbit_of.size(); ++code)
                least[T.orbit_of[code]] = std::min(least[T.orbit_of[code]], code);
            for (std::size_t o = 0; o < T.size(); ++o) {
                CHECK(least[o] == T.orbits[o].rep_code);
                if (o)
                    CHECK(T.orbits[o - 1].rep_code < T.orbits[o].rep_code);
            }
        }
    }
}

TEST_CASE("orbit labels are constant on orbits")
{
    auto ctx = context("A4", "(1 2 3)");
    auto T = enumerate_orbits(ctx, 5);
    std::mt19937 rng(4);
    for (int trial = 0; trial < 500; ++trial) {
        auto code = rng() % T.orbit_of.size();
        auto t = decode_tuple(code, 5, ctx.k());
        const auto& rec = T.orbits[T.orbit_of[code]];
        CHECK(ctx.boundary(t) == rec.boundary);
        CHECK(ctx.subgroup_id(ctx.monodromy(t)) == rec.monodromy_subgroup);
        CHECK(rec.nielsen_id == 0);
    }
}

TEST_CASE("ring product")
{
    auto ctx = context("S3", "(1 2)");
    ComponentRing R(ctx, 6);
    std::mt19937 rng(2);
    // well defined: any members of the two orbits give the same product orbit
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t m = rng() % 4, n = rng() % 3;
        auto s = random_tuple(rng, m, 3), t = random_tuple(rng, n, 3);
        auto a = R.table(m).orbit_of_tuple(s), b = R.table(n).orbit_of_tuple(t);
        Tuple st = s;
        st.insert(st.end(), t.begin(), t.end());
        CHECK(R.multiply(m, a, n, b) == R.table(m + n).orbit_of_tuple(st));
    }
    // unit
    for (std::uint32_t b = 0; b < R.dim(3); ++b)
        CHECK(R.multiply(0, 0, 3, b) == b);
    // r_g r_h = r_{g h g^-1} r_g
    for (Local g = 0; g < 3; ++g)
        for (Local h = 0; h < 3; ++h)
            CHECK(R.multiply(R.generator(g), R.generator(h)) ==
                  R.multiply(R.generator(ctx.push(g, h)), R.generator(g)));
    Local a = 0, b = 1;
    CHECK(R.multiply(R.power(a, 2), R.power(b, 2)) ==
          R.basis(4, R.table(4).orbit_of_tuple({a, a, b, b})));
    CHECK_THROWS_AS(R.multiply(R.basis(4, 0), R.basis(3, 0)), ValidationError);
}

TEST_CASE("stabilizer for Z/2 is the square of the generator")
{
    auto ctx = context("Z2", "");
    StabilizerOptions opt;
    opt.N_max = 10;
    auto d = find_stabilizer_U(ctx, opt);
    CHECK(d.found);
    CHECK(d.D == 1);
    CHECK(d.deg_U == 2);
    CHECK(d.n0 == 2);
    std::vector<std::size_t> expect(11, 0);
    expect[0] = expect[1] = 1;
    CHECK(d.quotient_dims == expect);
}

TEST_CASE("stabilizer for S3 transpositions")
{
    auto ctx = context("S3", "(1 2)");
    StabilizerOptions opt;
    opt.N_max = 12;
    auto d = find_stabilizer_U(ctx, opt);
    CHECK(d.found);
    CHECK(d.D <= 4);
    CHECK(d.N_max + 1 - d.n0 >= 2 * d.deg_U);
    for (std::size_t n = d.n0; n <= d.N_max; ++n)
        CHECK(d.quotient_dims[n] == 0);
    CHECK(d.component_counts_stable);
    CHECK(d.orbit_counts[2] == 5);

    ComponentRing R(ctx, 8);
    CHECK(central_check(R, R.u_element(d.D), 8));
    // a single r_g does not commute with everything
    CHECK_FALSE(central_check(R, R.generator(0), 8));
    auto th = first_letter_threshold(R);
    REQUIRE(th);
    CHECK(*th <= 8);
}

TEST_CASE("abelian groups: everything is central")
{
    auto ctx = context("cyclic(3)", "(1 2 3)");
    ComponentRing R(ctx, 6);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::uint32_t s = 0; s < R.dim(n); ++s)
            CHECK(central_check(R, R.basis(n, s), 6));
}

TEST_CASE("stabilizer precondition")
{
    auto ctx = context("S4", "(1 2)");
    CHECK_THROWS_AS(find_stabilizer_U(ctx), ValidationError);
}
