#include "doctest.h"

#include <cmath>
#include <numeric>

#include "hurwitz/cohen_lenstra.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/linalg.hpp"
#include "hurwitz/rng.hpp"
#include "hurwitz/symplectic.hpp"

using namespace hurwitz;

namespace {

AbelianLGroup grp(std::vector<unsigned> p, std::uint32_t l = 3) { return AbelianLGroup::make(l, p); }

long gcd_l(long a, long b) { return b ? gcd_l(b, a % b) : a; }

// number of tuples (x_i) with x_i in A[l^{b_i}], counted coordinatewise
long hom_oracle(const AbelianLGroup& B, const AbelianLGroup& A)
{
    long total = 1;
    for (auto b : B.partition)
        for (auto a : A.partition) {
            long m = std::lround(std::pow(A.l, a)), killed = 0;
            long lb = std::lround(std::pow(A.l, b));
            for (long x = 0; x < m; ++x)
                if (x * lb % m == 0)
                    ++killed;
            total *= killed;
        }
    return total;
}

}  // namespace

TEST_CASE("group types")
{
    auto A = AbelianLGroup::parse(3, "Z/9 x Z/3");
    CHECK(A.partition == std::vector<unsigned>{2, 1});
    CHECK(A.order() == 27);
    CHECK(A.to_string() == "Z/9 x Z/3");
    CHECK(AbelianLGroup::parse(3, "(Z/3)^2") == grp({1, 1}));
    CHECK(AbelianLGroup::parse(3, "1,2") == grp({2, 1}));
    CHECK(AbelianLGroup::parse(3, "1").is_trivial());
    CHECK_THROWS_AS(AbelianLGroup::parse(3, "Z/6"), ValidationError);
    CHECK_THROWS_AS(AbelianLGroup::make(4, {1}), ValidationError);
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(6).size() == 11);
    CHECK(groups_up_to(3, 3).size() == 1 + 1 + 2 + 3);
}

TEST_CASE("automorphism counts")
{
    CHECK(aut_order(grp({})) == 1);
    // units mod 9
    long units = 0;
    for (long k = 1; k < 9; ++k)
        units += gcd_l(k, 9) == 1;
    CHECK(aut_order(grp({2})) == units);
    // invertible 2x2 matrices mod 3
    long inv = 0;
    for (int a = 0; a < 81; ++a) {
        int m[4] = {a % 3, a / 3 % 3, a / 9 % 3, a / 27};
        inv += ((m[0] * m[3] - m[1] * m[2]) % 3 + 3) % 3 != 0;
    }
    CHECK(aut_order(grp({1, 1})) == inv);
    CHECK(inv == 48);

    // closed form against enumeration where it is affordable, and against
    // the surjection count Sur(A, A) for every partition of size <= 6
    for (std::uint32_t l : {2u, 3u, 5u})
        for (const auto& A : groups_up_to(l, l == 3 ? 4 : 3)) {
            if (hom_count(A, A) * A.order() > 20'000'000)
                continue;
            CHECK(aut_order(A) == aut_order_brute(A));
        }
    for (const auto& A : groups_up_to(3, 6))
        CHECK(aut_order(A) == sur_count(A, A));
}

TEST_CASE("homomorphism and surjection counts")
{
    CHECK(sur_count(grp({2}), grp({1})) == 2);
    CHECK(sur_count(grp({1}), grp({2})) == 0);
    for (const auto& B : groups_up_to(3, 4))
        CHECK(sur_count(B, grp({})) == 1);

    for (std::uint32_t l : {2u, 3u})
        for (const auto& B : groups_up_to(l, 4))
            for (const auto& A : groups_up_to(l, 3)) {
                CHECK(hom_count(B, A) == hom_oracle(B, A));
                auto s = sur_count(B, A);
                CHECK(s <= hom_count(B, A));
                CHECK((s == hom_count(B, A)) == A.is_trivial());
                if (hom_count(B, A) * A.order() <= 2'000'000)
                    CHECK(s == sur_count_brute(B, A));
            }
}

TEST_CASE("mu masses")
{
    auto m = mu_mass(grp({}), 40);
    CHECK(m.value == doctest::Approx(0.5601260779279484).epsilon(1e-12));
    CHECK(1 - m.value == doctest::Approx(0.440).epsilon(1e-3));
    CHECK(m.error < 1e-18);
    CHECK(mu_mass(grp({1}), 40).value == doctest::Approx(0.5601260779279484 / 2).epsilon(1e-12));
    auto one = mu_mass(grp({}), 1);
    CHECK(one.value == doctest::Approx(2.0 / 3));
    // the limit lies inside the bracket
    CHECK(one.value - one.error <= 0.5601260779279484);
    CHECK(one.value >= 0.5601260779279484);
    for (std::uint32_t l : {2u, 5u}) {
        auto e = euler_product(l, 1);
        CHECK(e.value == doctest::Approx(1 - 1.0 / l));
    }

    // total mass over |A| <= l^k increases to 1
    double prev = 0;
    for (unsigned k = 0; k <= 8; ++k) {
        double total = 0;
        for (const auto& A : groups_up_to(3, k))
            total += mu_mass(A, 200).value;
        CHECK(total > prev);
        CHECK(total < 1 + 1e-12);
        prev = total;
    }
    CHECK(prev > 0.999);
}

TEST_CASE("Smith form over Z/l^e matches the integer Smith form")
{
    CounterRng rng(7, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng.below(4);
        std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
        std::vector<std::vector<mpz_class>> z(n, std::vector<mpz_class>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                // bias towards multiples of 3
                std::uint64_t x = rng.below(4) == 0 ? rng.below(81) : 3 * rng.below(27);
                m[i][j] = x % 81;
                z[i][j] = static_cast<unsigned long>(x % 81);
            }
        auto local = smith_mod_prime_power(m, 3, 4);
        auto d = smith_diagonal(z);
        // l-adic valuations of the integer invariant factors, capped at 4
        std::vector<unsigned> expect;
        unsigned saturated = static_cast<unsigned>(n - d.size());
        for (const auto& x : d) {
            mpz_class y = x;
            unsigned v = 0;
            while (v < 4 && y % 3 == 0) {
                y /= 3;
                ++v;
            }
            if (v == 4)
                ++saturated;
            else if (v > 0)
                expect.push_back(v);
        }
        auto got = local.exponents;
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        CHECK(got == expect);
        CHECK(local.saturated == saturated);
    }
}

TEST_CASE("random cokernels")
{
    SamplerOptions opt;
    opt.N = 1;
    opt.e_cap = 2;
    auto run = run_sampler(opt, 11, 20000);
    auto [p, se] = empirical_mass(run, grp({}));
    CHECK(std::abs(p - 2.0 / 3) < 4 * se);
    for (const auto& s : run.samples)
        CHECK(s.precision >= 2);
    CHECK(run.escalated > 0);

    // trivial target: exactly one surjection from every group
    auto m = moment_estimate(run, grp({}));
    CHECK(m.mean == 1.0);
    CHECK(m.standard_error == 0.0);

    // the draw depends only on (seed, index)
    SamplerOptions big;
    auto a = run_sampler(big, 5, 300, 1);
    auto b = run_sampler(big, 5, 300, 4);
    for (std::size_t i = 0; i < 300; ++i)
        CHECK(a.samples[i].group == b.samples[i].group);
    CHECK(sample_cokernel(big, 5, 17).group == a.samples[17].group);

    opt.max_escalations = 0;
    opt.e_cap = 1;
    opt.N = 6;
    bool threw = false;
    for (std::uint64_t s = 0; s < 200 && !threw; ++s) {
        try {
            sample_cokernel(opt, 3, s);
        } catch (const ComputationError&) {
            threw = true;
        }
    }
    CHECK(threw);
}

TEST_CASE("surjection moments and stability in N")
{
    SamplerOptions opt;
    opt.N = 8;
    auto run = run_sampler(opt, 2024, 20000, 2);
    for (auto A : {grp({1}), grp({2}), grp({1, 1})}) {
        auto m = moment_estimate(run, A);
        CHECK(std::abs(m.mean - 1) < 3 * m.standard_error);
    }
    auto [p, se] = empirical_mass(run, grp({}));
    CHECK(std::abs(p - 0.5601) < 4 * se);

    SamplerOptions opt2 = opt;
    opt2.N = 10;
    auto run2 = run_sampler(opt2, 2025, 20000, 2);
    for (const auto& A : groups_up_to(3, 3)) {
        auto [p1, s1] = empirical_mass(run, A);
        auto [p2, s2] = empirical_mass(run2, A);
        CHECK(std::abs(p1 - p2) <= 4 * std::sqrt(s1 * s1 + s2 * s2) + 1e-3);
    }
}

TEST_CASE("truncated moment identity")
{
    auto t = truncated_moment_identity(grp({1}), 5);
    CHECK(t.value > 0.9);
    CHECK(t.value <= 1.0);
    CHECK(t.beta_limit == doctest::Approx(0.7853123419985357).epsilon(1e-10));
    double prev_val = 0, prev_beta = 0;
    for (unsigned cap = 1; cap <= 7; ++cap) {
        auto u = truncated_moment_identity(grp({}), cap);
        CHECK(u.value > prev_val);
        CHECK(u.value <= 1.0 + 1e-12);
        CHECK(u.beta_partial > prev_beta);
        CHECK(u.beta_partial <= u.beta_limit + 1e-12);
        prev_val = u.value;
        prev_beta = u.beta_partial;
    }
    // beta does not depend on A
    auto a = truncated_moment_identity(grp({1}), 8);
    CHECK(std::abs(a.beta_partial - a.beta_limit) < 0.01);
    CHECK(a.beta_partial <= a.beta_limit);
}

TEST_CASE("enhom bound")
{
    auto A = grp({1});
    CHECK(enhom_family(A, 1).size() == 2);
    CHECK(enhom_s(A, 0.5) == 2);
    auto ok = enhom_bound_check(A, 0.5, 2, 7);
    CHECK(ok.holds);
    CHECK(ok.c == 9);
    CHECK(ok.checked > 0);
    auto bad = enhom_bound_check(A, 0.5, 1, 7);
    CHECK_FALSE(bad.holds);
    CHECK(bad.counterexample == "Z/9");
    CHECK(enhom_bound_check(grp({}), 1.0, 1, 6).holds);
}

TEST_CASE("symplectic groups and the orbit lemma")
{
    CHECK(symplectic_group(SymplecticSpace{1, 3, 1}).size() == 24);
    CHECK(symplectic_group(SymplecticSpace{1, 3, 2}).size() == 648);
    CHECK(symplectic_group_order(SymplecticSpace{2, 3, 1}) == 51840);
    SymplecticSpace V{2, 3, 1};
    CHECK(V.scales_form(V.standard_similitude(2), 2));
    CHECK_FALSE(V.scales_form(V.standard_similitude(2), 1));
    CHECK(V.scales_form(V.transvection({1, 0, 1, 1}), 1));

    auto triv = symplectic_orbit_check(1, 3, 1, grp({}), 2);
    CHECK(triv.fixed == 1);
    CHECK(triv.transitive);

    auto r = symplectic_orbit_check(2, 3, 1, grp({1}), 2);
    CHECK(r.surjections == 80);
    CHECK(r.sp_order == 51840);
    CHECK(r.sp_order == r.sp_order_expected);
    CHECK(r.nonempty);
    CHECK(r.transitive);
    CHECK(r.orbit_criterion_agrees);

    // boundary case g = dim A/lA: outcome recorded, not presumed
    auto edge = symplectic_orbit_check(1, 3, 1, grp({1, 1}), 2);
    CHECK(edge.surjections == 48);
    CHECK(edge.orbit_criterion_agrees);

    CHECK_THROWS_AS(symplectic_orbit_check(2, 3, 1, grp({1}), 1), ValidationError);
    CHECK_THROWS_AS(symplectic_orbit_check(2, 3, 1, grp({1}), 3), ValidationError);
}
