#include "doctest.h"

#include "hurwitz/errors.hpp"
#include "hurwitz/kcomplex.hpp"

using namespace hurwitz;

namespace {

BraidContext context(const char* group, const char* rep)
{
    auto G = build_group(parse_group_spec(group));
    return BraidContext(G, resolve_class(G, rep));
}

}  // namespace

TEST_CASE("differential in low homological degree")
{
    auto ctx = context("S3", "(1 2)");
    ComponentRing R(ctx, 4);
    auto M = module_R(R);
    const auto& G = ctx.group();
    const std::size_t n = 3;
    auto K = build_k_complex(ctx, M, n);
    REQUIRE(K.terms.size() == n + 1);
    CHECK(K.terms[1] == 3 * R.dim(2));

    // q = 0 row: d(g_0; m) = r(g_0) m
    const auto& d1 = K.differentials[0];
    for (Local g = 0; g < 3; ++g)
        for (std::uint32_t m = 0; m < R.dim(2); ++m) {
            auto col = g * R.dim(2) + m;
            CHECK(d1.col_rows(col).size() == 1);
            CHECK(d1.at(R.left_mul(g, 2, m), col) == 1);
        }

    // d(g_0, g_1; m) = (g_1; r(g_0^{g_1}) m) - (g_0; r(g_1) m), expanded by hand
    const auto& d2 = K.differentials[1];
    const std::size_t d1m = R.dim(1), d2m = R.dim(2);
    for (Local g0 = 0; g0 < 3; ++g0)
        for (Local g1 = 0; g1 < 3; ++g1)
            for (std::uint32_t m = 0; m < d1m; ++m) {
                auto col = (g0 * 3 + g1) * d1m + m;
                Local conj = ctx.local(G.mul(G.mul(G.inv(ctx.element(g1)), ctx.element(g0)),
                                             ctx.element(g1)));
                std::map<std::uint32_t, long> expect;
                expect[g1 * d2m + R.left_mul(conj, 1, m)] += 1;
                expect[g0 * d2m + R.left_mul(g1, 1, m)] -= 1;
                for (auto it = expect.begin(); it != expect.end();)
                    it = it->second == 0 ? expect.erase(it) : std::next(it);
                std::map<std::uint32_t, long> got;
                auto rows = d2.col_rows(col);
                auto vals = d2.col_values(col);
                for (std::size_t e = 0; e < rows.size(); ++e)
                    got[rows[e]] = vals[e];
                CHECK(got == expect);
            }
}

TEST_CASE("d squared vanishes and the module relation holds")
{
    for (auto [g, rep, N] : {std::tuple{"S3", "", 7}, {"Z2", "", 10}, {"A4", "(1 2 3)", 4}}) {
        auto ctx = context(g, rep);
        ComponentRing R(ctx, N);
        for (const auto& M : {module_R(R), module_free(R, 2), module_truncated(R, 2)}) {
            CHECK(check_module_relation(ctx, M));
            for (std::size_t n = 0; n <= std::size_t(N); ++n)
                CHECK_NOTHROW(build_k_complex(ctx, M, n).validate());
        }
        CHECK_THROWS_AS(build_k_complex(ctx, module_R(R), N + 1), ValidationError);
    }
}

TEST_CASE("K(R) for Z/2 is the Koszul complex of a polynomial ring")
{
    // R = Q[x]; d is multiplication by x on odd q and zero on even q, so
    // H_q = Q in total degree q for even q and nothing else.
    auto ctx = context("Z2", "");
    ComponentRing R(ctx, 10);
    auto rep = k_homology(ctx, module_R(R), 10);
    for (std::size_t n = 0; n <= 10; ++n)
        for (std::size_t q = 0; q <= n; ++q)
            CHECK(rep.dims[n][q] == ((q == n && q % 2 == 0) ? 1u : 0u));
    CHECK(rep.slope_one_offset() == 0);
    for (std::size_t n = 0; n <= 8; ++n)
        for (std::size_t q = 0; q <= n; ++q)
            CHECK(homotopy_check(R, 0, n, q).holds);
}

TEST_CASE("H_0 of K(R) is R modulo decomposables")
{
    for (auto [g, rep, N] : {std::tuple{"S3", "", 7}, {"Z2", "", 8}, {"D5", "", 4}}) {
        auto ctx = context(g, rep);
        ComponentRing R(ctx, N);
        auto k = k_homology(ctx, module_R(R), N);
        auto ind = indecomposable_dims(R, N);
        for (std::size_t n = 0; n <= std::size_t(N); ++n)
            CHECK(k.dims[n][0] == ind[n]);
    }
}

TEST_CASE("homotopy identity for S3")
{
    auto ctx = context("S3", "(1 2)");
    ComponentRing R(ctx, 7);
    for (std::size_t n = 0; n <= 6; ++n)
        for (std::size_t q = 0; q <= n; ++q)
            for (Local g = 0; g < 3; ++g)
                CHECK(homotopy_check(R, g, n, q).holds);
    CHECK_THROWS_AS(homotopy_check(R, 0, 7, 0), ValidationError);
}

TEST_CASE("free modules multiply homology")
{
    auto ctx = context("S3", "(1 2)");
    ComponentRing R(ctx, 6);
    auto one = k_homology(ctx, module_R(R), 6);
    auto two = k_homology(ctx, module_free(R, 2), 6);
    for (std::size_t n = 0; n <= 6; ++n)
        for (std::size_t q = 0; q <= n; ++q)
            CHECK(two.dims[n][q] == 2 * one.dims[n][q]);
}

TEST_CASE("report bookkeeping")
{
    KHomologyReport r;
    r.n_max = 3;
    r.dims = {{1}, {0, 0}, {0, 0, 2}, {0, 1, 0, 4}};
    r.h = {0, 3, 2, 3};
    r.censored = {false, true, false, true};
    CHECK(r.slope_one_offset() == 2);
    auto w = r.offset_by_window();
    CHECK(w[0] == 0);
    CHECK(w[2] == 0);
    CHECK(w[3] == 2);
    CHECK(r.any_censored());
}
