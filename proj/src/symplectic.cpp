#include "hurwitz/symplectic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "hurwitz/errors.hpp"
#include "hurwitz/rng.hpp"

namespace hurwitz {

namespace {

std::uint64_t power64(std::uint64_t l, unsigned e)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= l;
    return r;
}

struct MatrixHash {
    std::size_t operator()(const SymplecticSpace::Matrix& m) const
    {
        std::uint64_t h = 0;
        for (auto x : m)
            h = splitmix64(h ^ x);
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

std::uint64_t SymplecticSpace::modulus() const { return power64(l, e); }

std::int64_t SymplecticSpace::form(const std::vector<std::uint64_t>& x,
                                   const std::vector<std::uint64_t>& y) const
{
    const std::uint64_t M = modulus();
    std::uint64_t s = 0;
    for (unsigned i = 0; i < g; ++i) {
        s = (s + x[i] * y[g + i]) % M;
        s = (s + M - x[g + i] * y[i] % M) % M;
    }
    return static_cast<std::int64_t>(s);
}

SymplecticSpace::Matrix SymplecticSpace::identity() const
{
    Matrix m(dim() * dim(), 0);
    for (unsigned i = 0; i < dim(); ++i)
        m[i * dim() + i] = 1;
    return m;
}

SymplecticSpace::Matrix SymplecticSpace::multiply(const Matrix& a, const Matrix& b) const
{
    const unsigned n = dim();
    const std::uint64_t M = modulus();
    Matrix c(n * n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            std::uint64_t x = a[i * n + k];
            if (!x)
                continue;
            for (unsigned j = 0; j < n; ++j)
                c[i * n + j] = static_cast<std::uint32_t>((c[i * n + j] + x * b[k * n + j]) % M);
        }
    return c;
}

SymplecticSpace::Matrix SymplecticSpace::transvection(const std::vector<std::uint64_t>& v) const
{
    const unsigned n = dim();
    const std::uint64_t M = modulus();
    Matrix m = identity();
    for (unsigned j = 0; j < n; ++j) {
        std::vector<std::uint64_t> ej(n, 0);
        ej[j] = 1;
        std::uint64_t w = static_cast<std::uint64_t>(form(ej, v));
        for (unsigned i = 0; i < n; ++i)
            m[i * n + j] = static_cast<std::uint32_t>((m[i * n + j] + w * v[i]) % M);
    }
    return m;
}

SymplecticSpace::Matrix SymplecticSpace::standard_similitude(std::uint64_t q) const
{
    Matrix m = identity();
    for (unsigned i = 0; i < g; ++i)
        m[i * dim() + i] = static_cast<std::uint32_t>(q % modulus());
    return m;
}

bool SymplecticSpace::scales_form(const Matrix& F, std::uint64_t multiplier) const
{
    const unsigned n = dim();
    const std::uint64_t M = modulus();
    auto column = [&](unsigned j) {
        std::vector<std::uint64_t> c(n);
        for (unsigned i = 0; i < n; ++i)
            c[i] = F[i * n + j];
        return c;
    };
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b) {
            std::vector<std::uint64_t> ea(n, 0), eb(n, 0);
            ea[a] = eb[b] = 1;
            auto lhs = static_cast<std::uint64_t>(form(column(a), column(b)));
            auto rhs = static_cast<std::uint64_t>(form(ea, eb)) * (multiplier % M) % M;
            if (lhs != rhs)
                return false;
        }
    return true;
}

std::uint64_t symplectic_group_order(const SymplecticSpace& V)
{
    std::uint64_t r = power64(V.l, V.g * V.g);
    for (unsigned i = 1; i <= V.g; ++i)
        r *= power64(V.l, 2 * i) - 1;
    return r * power64(V.l, (V.e - 1) * V.g * (2 * V.g + 1));
}

std::vector<SymplecticSpace::Matrix> symplectic_group(const SymplecticSpace& V, std::size_t cap)
{
    const unsigned n = V.dim();
    std::vector<SymplecticSpace::Matrix> gens;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::uint64_t> v(n);
        for (unsigned i = 0; i < n; ++i)
            v[i] = (mask >> i) & 1u;
        gens.push_back(V.transvection(v));
    }
    std::vector<SymplecticSpace::Matrix> elems{V.identity()};
    std::unordered_set<SymplecticSpace::Matrix, MatrixHash> seen{elems.front()};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (const auto& t : gens) {
            auto m = V.multiply(elems[head], t);
            if (seen.insert(m).second) {
                if (elems.size() >= cap)
                    throw BudgetError("symplectic group exceeds " + std::to_string(cap) +
                                      " elements");
                elems.push_back(std::move(m));
            }
        }
    return elems;
}

namespace {

// Homomorphisms V -> A stored as the images of the basis vectors, each an
// element of A in coordinates mod l^{a_j}.
struct HomSpace {
    std::vector<std::uint64_t> mod;  // per coordinate of A
    std::vector<std::vector<std::uint64_t>> torsion;  // elements of A[l^e]
    unsigned n = 0;

    std::uint64_t code(const std::vector<std::uint32_t>& image_idx) const
    {
        std::uint64_t c = 0;
        for (auto i : image_idx)
            c = c * torsion.size() + i;
        return c;
    }
};

std::vector<std::uint64_t> compose(const HomSpace& H, const std::vector<std::uint32_t>& f,
                                   const SymplecticSpace::Matrix& F)
{
    // (f F)(e_i) = sum_j F[j][i] f(e_j)
    const unsigned n = H.n;
    std::vector<std::uint64_t> out;
    for (unsigned i = 0; i < n; ++i) {
        std::vector<std::uint64_t> acc(H.mod.size(), 0);
        for (unsigned j = 0; j < n; ++j) {
            std::uint64_t c = F[j * n + i];
            if (!c)
                continue;
            const auto& x = H.torsion[f[j]];
            for (std::size_t k = 0; k < acc.size(); ++k)
                acc[k] = (acc[k] + c % H.mod[k] * x[k]) % H.mod[k];
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return out;
}

}  // namespace

SymplecticOrbitResult symplectic_orbit_check(unsigned g, std::uint32_t l, unsigned e,
                                             const AbelianLGroup& A, std::uint64_t q_residue,
                                             std::uint64_t hom_budget, std::size_t group_cap)
{
    if (g < 1 || e < 1)
        throw ValidationError("need g >= 1 and e >= 1");
    if (!is_prime(l))
        throw ValidationError(std::to_string(l) + " is not prime");
    if (A.l != l)
        throw ValidationError("target group is not an " + std::to_string(l) + "-group");
    if (q_residue % l == 0 || (q_residue + l - 1) % l == 0)
        throw ValidationError("q and q - 1 must both be prime to l");
    SymplecticSpace V{g, l, e};
    const unsigned n = V.dim();

    HomSpace H;
    H.n = n;
    std::uint64_t order = 1;
    for (auto a : A.partition) {
        H.mod.push_back(power64(l, a));
        order *= H.mod.back();
    }
    for (std::uint64_t x = 0; x < order; ++x) {
        std::vector<std::uint64_t> c(H.mod.size());
        std::uint64_t y = x;
        bool killed = true;
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = y % H.mod[k];
            y /= H.mod[k];
            std::uint64_t v = c[k];
            for (unsigned i = 0; i < e && v; ++i)
                v = v * l % H.mod[k];
            killed = killed && v == 0;
        }
        if (killed)
            H.torsion.push_back(c);
    }
    double homs = std::pow(double(H.torsion.size()), double(n));
    if (homs > double(hom_budget))
        throw BudgetError("|Hom(V, A)| exceeds the budget of " + std::to_string(hom_budget));
    std::map<std::vector<std::uint64_t>, std::uint32_t> index_of;
    for (std::uint32_t i = 0; i < H.torsion.size(); ++i)
        index_of[H.torsion[i]] = i;

    // surjective iff the images span A / lA over F_l
    std::vector<std::vector<std::uint32_t>> sur;
    std::vector<std::uint32_t> idx(n, 0);
    const unsigned r = A.length();
    for (;;) {
        std::vector<std::vector<unsigned>> rows;
        for (auto i : idx) {
            std::vector<unsigned> v(r);
            for (unsigned k = 0; k < r; ++k)
                v[k] = static_cast<unsigned>(H.torsion[i][k] % l);
            rows.push_back(v);
        }
        // rank over F_l
        unsigned rank = 0;
        for (unsigned c = 0; c < r && rank < rows.size(); ++c) {
            std::size_t p = rank;
            while (p < rows.size() && rows[p][c] == 0)
                ++p;
            if (p == rows.size())
                continue;
            std::swap(rows[p], rows[rank]);
            unsigned inv = 1;
            while (rows[rank][c] * inv % l != 1)
                ++inv;
            for (auto& x : rows[rank])
                x = x * inv % l;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (i != rank && rows[i][c]) {
                    unsigned f = rows[i][c];
                    for (unsigned j = 0; j < r; ++j)
                        rows[i][j] = (rows[i][j] + (l - f) * rows[rank][j]) % l;
                }
            ++rank;
        }
        if (rank == r)
            sur.push_back(idx);
        std::size_t k = 0;
        while (k < n && ++idx[k] == H.torsion.size())
            idx[k++] = 0;
        if (k == n)
            break;
    }

    SymplecticOrbitResult out;
    out.surjections = sur.size();
    auto Sp = symplectic_group(V, group_cap);
    out.sp_order = Sp.size();
    out.sp_order_expected = symplectic_group_order(V);
    const auto F0 = V.standard_similitude(q_residue);
    if (!V.scales_form(F0, q_residue))
        throw ComputationError("standard similitude does not scale the form by q");

    std::unordered_map<std::uint64_t, std::uint32_t> sur_index;
    for (std::uint32_t i = 0; i < sur.size(); ++i)
        sur_index[H.code(sur[i])] = i;
    auto as_indices = [&](const std::vector<std::uint64_t>& flat) {
        std::vector<std::uint32_t> f;
        const std::size_t w = H.mod.size();
        for (unsigned i = 0; i < n; ++i)
            f.push_back(index_of.at(std::vector<std::uint64_t>(flat.begin() + i * w,
                                                               flat.begin() + (i + 1) * w)));
        return f;
    };

    // Sp-orbits on all surjections, via the transvection generators
    std::vector<std::uint32_t> parent(sur.size());
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::uint64_t> v(n);
        for (unsigned i = 0; i < n; ++i)
            v[i] = (mask >> i) & 1u;
        auto T = V.transvection(v);
        for (std::uint32_t i = 0; i < sur.size(); ++i) {
            auto j = sur_index.at(H.code(as_indices(compose(H, sur[i], T))));
            parent[find(i)] = find(j);
        }
    }

    std::vector<bool> in_O(sur.size(), false);
    for (std::uint32_t i = 0; i < sur.size(); ++i) {
        const auto fF0 = as_indices(compose(H, sur[i], F0));
        // direct search for S in Sp with f F_0 S = f
        for (const auto& S : Sp)
            if (as_indices(compose(H, fF0, S)) == sur[i]) {
                in_O[i] = true;
                break;
            }
        bool criterion = find(sur_index.at(H.code(fF0))) == find(i);
        if (criterion != in_O[i])
            out.orbit_criterion_agrees = false;
    }
    std::unordered_set<std::uint32_t> orbits;
    for (std::uint32_t i = 0; i < sur.size(); ++i)
        if (in_O[i]) {
            ++out.fixed;
            orbits.insert(find(i));
        }
    out.orbit_count = orbits.size();
    out.nonempty = out.fixed > 0;
    out.transitive = out.orbit_count == 1;
    return out;
}

}  // namespace hurwitz
