#include "doctest.h"

#include <random>
#include <sstream>

#include "hurwitz/errors.hpp"
#include "hurwitz/linalg.hpp"

using namespace hurwitz;

namespace {

SparseIntMatrix dense(const std::vector<std::vector<long>>& a)
{
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j])
                t.push_back({std::uint32_t(i), std::uint32_t(j), a[i][j]});
    return SparseIntMatrix::from_triplets(a.size(), a.empty() ? 0 : a[0].size(), t);
}

// Oracle: textbook dense Gaussian elimination over Q.
std::size_t oracle_rank(const SparseIntMatrix& m)
{
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
    for (const auto& t : m.triplets())
        a[t.row][t.col] = mpq_class(static_cast<long>(t.value));
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && a[p][c] == 0)
            ++p;
        if (p == m.rows())
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            mpq_class f = a[i][c] / a[r][c];
            for (std::size_t k = c; k < m.cols(); ++k)
                a[i][k] -= f * a[r][k];
        }
        ++r;
    }
    return r;
}

// Oracle: determinant by cofactor expansion.
mpz_class det(const std::vector<std::vector<mpz_class>>& a)
{
    if (a.size() == 1)
        return a[0][0];
    mpz_class s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t i = 1; i < a.size(); ++i) {
            std::vector<mpz_class> row;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (k != j)
                    row.push_back(a[i][k]);
            minor.push_back(row);
        }
        s += (j % 2 ? -1 : 1) * a[0][j] * det(minor);
    }
    return s;
}

// Oracle: determinantal divisors D_k = gcd of k x k minors; d_k = D_k / D_{k-1}.
std::vector<mpz_class> oracle_smith(const std::vector<std::vector<long>>& a)
{
    const std::size_t R = a.size(), C = a[0].size();
    std::vector<mpz_class> D{1};
    for (std::size_t k = 1; k <= std::min(R, C); ++k) {
        mpz_class g = 0;
        for (std::uint32_t rm = 0; rm < (1u << R); ++rm) {
            if (std::size_t(__builtin_popcount(rm)) != k)
                continue;
            for (std::uint32_t cm = 0; cm < (1u << C); ++cm) {
                if (std::size_t(__builtin_popcount(cm)) != k)
                    continue;
                std::vector<std::vector<mpz_class>> sub;
                for (std::size_t i = 0; i < R; ++i) {
                    if (!(rm >> i & 1))
                        continue;
                    std::vector<mpz_class> row;
                    for (std::size_t j = 0; j < C; ++j)
                        if (cm >> j & 1)
                            row.push_back(a[i][j]);
                    sub.push_back(row);
                }
                mpz_class d = det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        }
        if (g == 0)
            break;
        D.push_back(g);
    }
    std::vector<mpz_class> out;
    for (std::size_t k = 1; k < D.size(); ++k)
        out.push_back(D[k] / D[k - 1]);
    return out;
}

SparseIntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, double density,
                              int range)
{
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> v(-range, range);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (u(rng) < density)
                t.push_back({std::uint32_t(i), std::uint32_t(j), v(rng)});
    return SparseIntMatrix::from_triplets(r, c, t);
}

// Product of a random r x k and k x c matrix: rank at most k.
SparseIntMatrix low_rank(std::mt19937& rng, std::size_t r, std::size_t c, std::size_t k)
{
    return random_matrix(rng, r, k, 0.5, 3).multiply(random_matrix(rng, k, c, 0.5, 3));
}

}  // namespace

TEST_CASE("storage invariants")
{
    auto m = SparseIntMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 0, 2}, {1, 1, 5}, {1, 1, -5}});
    CHECK(m.nnz() == 1);
    CHECK(m.at(0, 0) == 3);
    CHECK(m.at(1, 1) == 0);
    CHECK_THROWS_AS(SparseIntMatrix::from_triplets(2, 2, {{2, 0, 1}}), ValidationError);
    CHECK(m.transpose().transpose() == m);

    std::stringstream ss;
    auto r = dense({{1, 0, -2}, {0, 7, 0}});
    write_triplets(ss, r);
    CHECK(ss.str() == "2 3 3\n0 0 1\n1 1 7\n0 2 -2\n");
    CHECK(read_triplets(ss) == r);
}

TEST_CASE("rank examples")
{
    CHECK(rank(SparseIntMatrix::identity(3)).rank == 3);
    CHECK(rank(SparseIntMatrix(4, 5)).rank == 0);
    CHECK(rank(dense({{1, 2, 3}, {2, 4, 6}})).rank == 1);
    CHECK(rank_mod_p(dense({{1, 2, 3}, {2, 4, 6}}), 2147483647u) == 1);
    // singular mod 3 only
    CHECK(rank_exact(dense({{1, 1}, {1, 4}})) == 2);
    CHECK(rank_mod_p(dense({{1, 1}, {1, 4}}), 3) == 1);
}

TEST_CASE("rank against dense oracle")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
        auto m = trial % 2 ? random_matrix(rng, r, c, 0.3, 4) : low_rank(rng, r, c, 1 + rng() % 4);
        auto expect = oracle_rank(m);
        CHECK(rank_exact(m) == expect);
        CHECK(rank_mod_p(m, default_primes()[0]) == expect);
        RankOptions modular;
        modular.exact_nnz_limit = 0;
        auto res = rank(m, modular);
        CHECK(res.rank == expect);
        if (!m.is_zero())
            CHECK(res.certification == Certification::modular);
    }
}

TEST_CASE("rank plus nullity equals column count")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 10, c = 1 + rng() % 14;
        auto m = low_rank(rng, r, c, 1 + rng() % 5);
        auto ker = kernel_basis(m);
        CHECK(rank_exact(m) + ker.size() == c);
        for (const auto& v : ker)
            for (std::size_t i = 0; i < r; ++i) {
                mpq_class s = 0;
                for (std::size_t j = 0; j < c; ++j)
                    s += mpq_class(static_cast<long>(m.at(i, j))) * v[j];
                CHECK(s == 0);
            }
    }
    CHECK_THROWS_AS(kernel_basis(SparseIntMatrix(1, 600)), BudgetError);
}

TEST_CASE("echelon normal form is unique modulo the span")
{
    Rational Q;
    EchelonBasis<Rational> b(Q, 4);
    CHECK(b.insert({{0, 1}, {2, 1}}));
    CHECK(b.insert({{1, 1}, {2, 2}}));
    CHECK_FALSE(b.insert({{0, 2}, {1, 2}, {2, 6}}));
    auto x = b.reduce({{2, 1}, {3, 5}});
    auto y = b.reduce({{0, -1}, {3, 5}});
    CHECK(x == y);
    CHECK(b.contains({{0, 1}, {1, 1}, {2, 3}}));
}

TEST_CASE("smith diagonal")
{
    auto d = smith_diagonal(dense({{2, 0}, {0, 3}}));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == 6);
    CHECK(smith_diagonal(SparseIntMatrix::identity(4)) == std::vector<mpz_class>(4, 1));
    CHECK(smith_diagonal(SparseIntMatrix(3, 3)).empty());

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> v(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        std::vector<std::vector<long>> a(r, std::vector<long>(c));
        for (auto& row : a)
            for (auto& x : row)
                x = v(rng) * (trial % 3 == 0 ? 3 : 1);
        auto got = smith_diagonal(dense(a));
        CHECK(got == oracle_smith(a));
        for (std::size_t i = 1; i < got.size(); ++i)
            CHECK(got[i] % got[i - 1] == 0);
    }
}

TEST_CASE("homology of small complexes")
{
    GradedChainComplex circle;
    circle.terms = {1, 1};
    circle.differentials = {SparseIntMatrix(1, 1)};
    CHECK(homology_dims(circle).dims == std::vector<std::size_t>{1, 1});

    GradedChainComplex zero;
    zero.terms = {0, 0, 0};
    zero.differentials = {SparseIntMatrix(0, 0), SparseIntMatrix(0, 0)};
    CHECK(homology_dims(zero).dims == std::vector<std::size_t>{0, 0, 0});

    GradedChainComplex single;
    single.terms = {4};
    CHECK(homology_dims(single).dims == std::vector<std::size_t>{4});

    // boundary of a tetrahedron: a 2-sphere
    std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::vector<Triplet> d1;
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        d1.push_back({std::uint32_t(edges[e].first), e, -1});
        d1.push_back({std::uint32_t(edges[e].second), e, 1});
    }
    auto edge = [&](int a, int b) {
        for (std::uint32_t e = 0; e < edges.size(); ++e)
            if (edges[e] == std::make_pair(a, b))
                return e;
        return 99u;
    };
    std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    std::vector<Triplet> d2;
    for (std::uint32_t f = 0; f < faces.size(); ++f) {
        auto [a, b, c] = faces[f];
        d2.push_back({edge(b, c), f, 1});
        d2.push_back({edge(a, c), f, -1});
        d2.push_back({edge(a, b), f, 1});
    }
    GradedChainComplex sphere;
    sphere.terms = {4, 6, 4};
    sphere.differentials = {SparseIntMatrix::from_triplets(4, 6, d1),
                            SparseIntMatrix::from_triplets(6, 4, d2)};
    CHECK(homology_dims(sphere).dims == std::vector<std::size_t>{1, 0, 1});

    auto broken = sphere;
    broken.differentials[1] = SparseIntMatrix::from_triplets(6, 4, {{0, 0, 1}});
    CHECK_THROWS_AS(homology_dims(broken), ComputationError);
    broken.differentials[1] = SparseIntMatrix(5, 4);
    CHECK_THROWS_AS(broken.validate(), ComputationError);
}

TEST_CASE("Euler characteristic of a complex and its dual agree")
{
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        // d2 = random, d1 = random matrix killing the image of d2
        std::size_t c0 = 2 + rng() % 5, c1 = 3 + rng() % 6, c2 = 1 + rng() % 5;
        auto d2 = low_rank(rng, c1, c2, 1 + rng() % 3);
        // rows of d1 span a subspace of the left kernel of d2
        auto left = kernel_basis(d2.transpose(), 500);
        std::vector<Triplet> t;
        std::uniform_int_distribution<int> pick(-2, 2);
        for (std::size_t i = 0; i < c0; ++i) {
            std::vector<mpq_class> row(c1);
            for (const auto& v : left) {
                int k = pick(rng);
                for (std::size_t j = 0; j < c1; ++j)
                    row[j] += k * v[j];
            }
            mpz_class den = 1;
            for (auto& x : row)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
            for (std::size_t j = 0; j < c1; ++j) {
                mpq_class y = row[j] * den;
                if (y != 0)
                    t.push_back({std::uint32_t(i), std::uint32_t(j), y.get_num().get_si()});
            }
        }
        GradedChainComplex c;
        c.terms = {c0, c1, c2};
        c.differentials = {SparseIntMatrix::from_triplets(c0, c1, t), d2};
        GradedChainComplex dual;
        dual.terms = {c2, c1, c0};
        dual.differentials = {d2.transpose(), c.differentials[0].transpose()};
        auto h = homology_dims(c).dims;
        auto hd = homology_dims(dual).dims;
        long chi_c = long(c0) - long(c1) + long(c2);
        CHECK(long(h[0]) - long(h[1]) + long(h[2]) == chi_c);
        CHECK(long(hd[0]) - long(hd[1]) + long(hd[2]) == chi_c);
        CHECK(h[1] == hd[1]);
    }
}
