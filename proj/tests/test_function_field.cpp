#include "doctest.h"

#include <map>
#include <optional>
#include <set>

#include "hurwitz/census.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/hyperelliptic.hpp"

using namespace hurwitz;

namespace {

// squarefree iff no monic g of positive degree has g^2 | f
bool squarefree_by_divisors(const PolyRing& R, const Poly& f)
{
    const unsigned n = static_cast<unsigned>(PolyRing::degree(f));
    for (unsigned d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= R.F->q();
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Poly g = R.monic_from_index(d, idx);
            if (R.mod(f, R.mul(g, g)).empty())
                return false;
        }
    }
    return true;
}

// all reduced divisors by direct divisibility tests
std::vector<MumfordDivisor> brute_divisors(const HyperellipticCurve& C)
{
    PolyRing R = C.ring();
    std::vector<MumfordDivisor> out;
    const std::uint64_t q = C.F->q();
    for (unsigned d = 0; d <= C.genus(); ++d) {
        std::uint64_t m = 1;
        for (unsigned i = 0; i < d; ++i)
            m *= q;
        for (std::uint64_t ui = 0; ui < m; ++ui)
            for (std::uint64_t vi = 0; vi < m; ++vi) {
                Poly v(d);
                std::uint64_t x = vi;
                for (unsigned i = 0; i < d; ++i) {
                    v[i] = FElem(x % q);
                    x /= q;
                }
                PolyRing::trim(v);
                MumfordDivisor D{R.monic_from_index(d, ui), v};
                if (is_reduced_divisor(C, D))
                    out.push_back(D);
            }
    }
    return out;
}

// affine chord-tangent law on y^2 = x^3 + a x + b over F_p; nullopt is O
using Pt = std::optional<std::pair<long, long>>;
Pt chord_tangent(Pt P, Pt Q, long a, long p)
{
    auto md = [p](long x) { return ((x % p) + p) % p; };
    auto inv = [&](long x) {
        for (long y = 1; y < p; ++y)
            if (md(x * y) == 1)
                return y;
        return 0L;
    };
    if (!P)
        return Q;
    if (!Q)
        return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    long lam;
    if (x1 == x2) {
        if (md(y1 + y2) == 0)
            return std::nullopt;
        lam = md((3 * x1 * x1 + a) * inv(md(2 * y1)));
    } else {
        lam = md((y2 - y1) * inv(md(x2 - x1)));
    }
    long x3 = md(lam * lam - x1 - x2);
    long y3 = md(lam * (x1 - x3) - y1);
    return std::make_pair(x3, y3);
}

}  // namespace

TEST_CASE("finite field axioms on F_9 and F_25")
{
    for (std::uint32_t q : {9u, 25u, 7u}) {
        FiniteField F(q);
        std::set<FElem> squares;
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(F.add(FElem(a), 0) == a);
            CHECK(F.mul(FElem(a), 1) == a);
            CHECK(F.add(FElem(a), F.neg(FElem(a))) == 0);
            if (a)
                CHECK(F.mul(FElem(a), F.inv(FElem(a))) == 1);
            squares.insert(F.mul(FElem(a), FElem(a)));
            for (std::uint32_t b = 0; b < q; b += 3)
                for (std::uint32_t c = 0; c < q; c += 2) {
                    CHECK(F.mul(FElem(a), F.add(FElem(b), FElem(c))) ==
                          F.add(F.mul(FElem(a), FElem(b)), F.mul(FElem(a), FElem(c))));
                    CHECK(F.mul(F.mul(FElem(a), FElem(b)), FElem(c)) ==
                          F.mul(FElem(a), F.mul(FElem(b), FElem(c))));
                }
        }
        CHECK(squares.size() == (q + 1) / 2);
        CHECK_FALSE(F.is_square(F.nonsquare()));
        // Euler's criterion
        for (std::uint32_t a = 1; a < q; ++a)
            CHECK((F.pow(FElem(a), (q - 1) / 2) == 1) == F.is_square(FElem(a)));
    }
    CHECK_THROWS_AS(FiniteField(8), ValidationError);
    CHECK_THROWS_AS(FiniteField(12), ValidationError);
}

TEST_CASE("quadratic extension character matches Euler's criterion in F_{q^2}")
{
    for (std::uint32_t q : {3u, 5u, 9u}) {
        FiniteField F(q);
        QuadraticExtension E{&F};
        const std::uint64_t e = (std::uint64_t(q) * q - 1) / 2;
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                if (!a && !b)
                    continue;
                QuadraticExtension::Elem z{FElem(a), FElem(b)}, r{1, 0}, base = z;
                for (std::uint64_t k = e; k; k >>= 1) {
                    if (k & 1)
                        r = E.mul(r, base);
                    base = E.mul(base, base);
                }
                const int expected = (r.a == 1 && r.b == 0) ? 1 : -1;
                CHECK(E.chi(z) == expected);
            }
    }
}

TEST_CASE("squarefree counts")
{
    for (std::uint32_t q : {3u, 5u, 7u}) {
        FiniteField F(q);
        PolyRing R{&F};
        for (unsigned n = 1; n <= (q == 3 ? 5u : 3u); ++n) {
            std::uint64_t qn = 1;
            for (unsigned i = 0; i < n; ++i)
                qn *= q;
            std::uint64_t oracle = 0;
            for (std::uint64_t idx = 0; idx < qn; ++idx)
                oracle += squarefree_by_divisors(R, R.monic_from_index(n, idx));
            CHECK(count_sf(F, n) == oracle);
            CHECK(oracle == (n == 1 ? q : qn - qn / q));
        }
    }
    FiniteField F3(3), F5(5);
    CHECK(count_sf(F3, 2) == 6);
    CHECK(enumerate_sf(F5, 1, Leading::monic).size() == 5);
    CHECK(enumerate_sf(F5, 3, Leading::monic).size() == 100);
    auto both = enumerate_sf(F5, 3, Leading::both_square_classes);
    REQUIRE(both.size() == 200);
    CHECK(both[100].back() == F5.nonsquare());
}

TEST_CASE("Cantor addition matches chord-tangent on y^2 = x^3 + x over F_5")
{
    FiniteField F(5);
    HyperellipticCurve C(F, {0, 1, 0, 1});
    std::vector<Pt> pts = {std::nullopt};
    for (long x = 0; x < 5; ++x)
        for (long y = 0; y < 5; ++y)
            if ((y * y - x * x * x - x) % 5 == 0)
                pts.push_back(std::make_pair(x, y));
    REQUIRE(pts.size() == 4);
    auto to_div = [&](const Pt& P) {
        return P ? point_divisor(C, FElem(P->first), FElem(P->second)) : MumfordDivisor{};
    };
    for (const auto& P : pts)
        for (const auto& Q : pts)
            CHECK(cantor_add(to_div(P), to_div(Q), C) == to_div(chord_tangent(P, Q, 1, 5)));
    CHECK(jacobian_order(C) == 4);
    ReducedDivisorTables tables(F, 1);
    CHECK(tables.count(C) == 4);
    CounterRng rng(1, 0);
    CHECK(l_part_structure(C, 3, 4, tables, rng).is_trivial());
}

TEST_CASE("Cantor group laws and Lagrange on genus-2 curves")
{
    FiniteField F(5);
    ReducedDivisorTables tables(F, 2);
    auto curves = enumerate_sf(F, 5, Leading::both_square_classes);
    for (std::size_t i = 0; i < curves.size(); i += 97) {
        HyperellipticCurve C(F, curves[i]);
        ZetaData z = zeta_numerator(C);
        CHECK(z.coefficients.size() == 5);
        CHECK(z.coefficients[4] == 25);
        CHECK(z.coefficients[3] == 5 * z.coefficients[1]);
        CHECK(z.weil_interval);
        auto all = brute_divisors(C);
        CHECK(long(all.size()) == z.h);
        CHECK(tables.count(C) == all.size());
        CounterRng rng(3, i);
        for (int t = 0; t < 5; ++t) {
            auto a = all[rng.below(all.size())], b = all[rng.below(all.size())],
                 c = all[rng.below(all.size())];
            CHECK(cantor_add(a, MumfordDivisor{}, C) == a);
            CHECK(cantor_add(a, negate(C, a), C).is_identity());
            CHECK(cantor_add(a, b, C) == cantor_add(b, a, C));
            CHECK(cantor_add(cantor_add(a, b, C), c, C) == cantor_add(a, cantor_add(b, c, C), C));
            CHECK(is_reduced_divisor(C, cantor_add(a, b, C)));
        }
        for (int t = 0; t < 20; ++t)
            CHECK(scalar_mul(std::uint64_t(z.h), tables.random_divisor(C, rng), C).is_identity());
    }
    HyperellipticCurve C(F, curves[0]);
    CHECK_THROWS_AS(cantor_add(MumfordDivisor{{0, 1}, {3}}, MumfordDivisor{}, C), ValidationError);
    CHECK_THROWS_AS(HyperellipticCurve(F, {0, 0, 1, 1}), ValidationError);  // x^2 (x + 1)
    CHECK_THROWS_AS(HyperellipticCurve(F, {1, 0, 0, 0, 1}), ValidationError);  // even degree
}

TEST_CASE("genus-1 class numbers equal point counts and twist by the monic model")
{
    FiniteField F(7);
    PolyRing R{&F};
    const FElem c = F.nonsquare();
    for (const auto& f : enumerate_sf(F, 3, Leading::monic)) {
        HyperellipticCurve C(F, f);
        long pts = 1;
        for (long x = 0; x < 7; ++x)
            for (long y = 0; y < 7; ++y)
                pts += F.mul(FElem(y), FElem(y)) == R.eval(f, FElem(x));
        CHECK(jacobian_order(C) == pts);
        // c f(x) is isomorphic to the monic c^n f(x / c)
        HyperellipticCurve twist(F, R.scale(f, c));
        Poly monic_model(f.size());
        const FElem ci = F.inv(c);
        for (std::size_t i = 0; i < f.size(); ++i)
            monic_model[i] = F.mul(F.pow(c, 3), F.mul(f[i], F.pow(ci, i)));
        CHECK(monic_model.back() == 1);
        CHECK(jacobian_order(twist) == jacobian_order(HyperellipticCurve(F, monic_model)));
    }
}

TEST_CASE("l-part structure against torsion counts of the enumerated Jacobian")
{
    FiniteField F(5);
    ReducedDivisorTables tables(F, 2);
    auto curves = enumerate_sf(F, 5, Leading::monic);
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < curves.size(); i += 7) {
        HyperellipticCurve C(F, curves[i]);
        const long h = jacobian_order(C);
        CounterRng rng(11, i);
        AbelianLGroup A = l_part_structure(C, 3, h, tables, rng);
        CHECK(A.order() == mpz_class(static_cast<unsigned long>(l_power_part(h, 3))));
        // |J[3^k]| determines the partition
        auto all = tables.enumerate(C);
        for (unsigned k = 1; k <= 3; ++k) {
            std::uint64_t lk = 1, expected = 1;
            for (unsigned j = 0; j < k; ++j)
                lk *= 3;
            for (unsigned e : A.partition)
                for (unsigned j = 0; j < std::min(e, k); ++j)
                    expected *= 3;
            std::uint64_t killed = 0;
            for (const auto& D : all)
                killed += scalar_mul(lk, D, C).is_identity();
            CHECK(killed == expected);
        }
        ++seen[A.to_string()];
    }
    CHECK(seen.size() >= 2);
}

TEST_CASE("census on q = 5, n = 3")
{
    CensusOptions opt;
    opt.q = 5;
    opt.n = 3;
    opt.l = 3;
    opt.targets = {AbelianLGroup::make(3, {}), AbelianLGroup::make(3, {1}), AbelianLGroup::make(3, {1, 1})};
    opt.seed = 7;
    auto rep = cl_census(opt);
    CHECK(rep.curve_count == 200);
    CHECK(rep.failures.empty());
    CHECK_FALSE(rep.failed());
    CHECK(rep.warnings.empty());
    CHECK(rep.averages[0].average == 1.0);
    CHECK(rep.averages[1].odd_counts == 0);
    // genus 1: the 3-part is cyclic, so no surjection onto (Z/3)^2
    CHECK(rep.averages[2].total == 0);
    double mass = 0;
    for (const auto& row : rep.distribution)
        mass += row.empirical;
    CHECK(mass == doctest::Approx(1.0));
    for (const auto& r : rep.records)
        if (r.h % 3 != 0)
            CHECK(r.m_A[1] == 0);

    opt.jobs = 4;
    auto par = cl_census(opt);
    REQUIRE(par.records.size() == rep.records.size());
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        CHECK(par.records[i].h == rep.records[i].h);
        CHECK(par.records[i].l_part == rep.records[i].l_part);
    }
    CHECK(par.tv_distance == rep.tv_distance);
}

TEST_CASE("census validation and warnings")
{
    CensusOptions opt;
    opt.q = 7;
    opt.n = 3;
    opt.l = 3;
    opt.targets = {AbelianLGroup::make(3, {1})};
    auto rep = cl_census(opt);
    CHECK(rep.curve_count == 588);
    CHECK(rep.warnings.size() == 1);
    CHECK(rep.failures.empty());

    opt.n = 4;
    CHECK_THROWS_AS(cl_census(opt), ValidationError);
    opt.n = 7;
    CHECK_THROWS_AS(cl_census(opt), ValidationError);
    opt.n = 3;
    opt.q = 9;
    CHECK_THROWS_AS(cl_census(opt), ValidationError);  // 3 | 9
    opt.q = 11;
    CHECK_THROWS_AS(cl_census(opt), ValidationError);
    opt.q = 7;
    opt.targets = {AbelianLGroup::make(5, {1})};
    CHECK_THROWS_AS(cl_census(opt), ValidationError);
}
