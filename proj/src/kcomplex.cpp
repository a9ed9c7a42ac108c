#include "hurwitz/kcomplex.hpp"

#include <algorithm>
#include <set>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

std::uint64_t ipow(std::size_t k, std::size_t e)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i)
        r *= k;
    return r;
}

SparseIntMatrix ring_action(const ComponentRing& ring, Local g, std::size_t n)
{
    std::vector<Triplet> t;
    for (std::uint32_t s = 0; s < ring.dim(n); ++s)
        t.push_back({ring.left_mul(g, n, s), s, 1});
    return SparseIntMatrix::from_triplets(ring.dim(n + 1), ring.dim(n), std::move(t));
}

SparseIntMatrix block_diagonal(const SparseIntMatrix& a, std::size_t copies)
{
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < copies; ++c)
        for (auto x : a.triplets())
            t.push_back({std::uint32_t(x.row + c * a.rows()), std::uint32_t(x.col + c * a.cols()),
                         x.value});
    return SparseIntMatrix::from_triplets(a.rows() * copies, a.cols() * copies, std::move(t));
}

SparseIntMatrix difference(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    auto t = a.triplets();
    for (auto x : b.triplets()) {
        x.value = -x.value;
        t.push_back(x);
    }
    return SparseIntMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseIntMatrix sum(const SparseIntMatrix& a, const SparseIntMatrix& b)
{
    auto t = a.triplets();
    auto u = b.triplets();
    t.insert(t.end(), u.begin(), u.end());
    return SparseIntMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

}  // namespace

GradedModule module_R(const ComponentRing& ring)
{
    GradedModule M;
    M.tag = "R";
    const auto& ctx = ring.context();
    for (std::size_t n = 0; n <= ring.n_max(); ++n) {
        M.dims.push_back(ring.dim(n));
        if (n == ring.n_max())
            break;
        std::vector<SparseIntMatrix> row;
        for (std::size_t g = 0; g < ctx.k(); ++g)
            row.push_back(ring_action(ring, static_cast<Local>(g), n));
        M.action.push_back(std::move(row));
    }
    return M;
}

GradedModule module_free(const ComponentRing& ring, std::size_t k)
{
    auto R = module_R(ring);
    GradedModule M;
    M.tag = "R^" + std::to_string(k);
    for (auto d : R.dims)
        M.dims.push_back(d * k);
    for (const auto& row : R.action) {
        std::vector<SparseIntMatrix> out;
        for (const auto& a : row)
            out.push_back(block_diagonal(a, k));
        M.action.push_back(std::move(out));
    }
    return M;
}

GradedModule module_truncated(const ComponentRing& ring, std::size_t t)
{
    auto R = module_R(ring);
    GradedModule M;
    M.tag = "R_{>=" + std::to_string(t) + "}";
    for (std::size_t n = 0; n < R.dims.size(); ++n)
        M.dims.push_back(n >= t ? R.dims[n] : 0);
    for (std::size_t n = 0; n < R.action.size(); ++n) {
        std::vector<SparseIntMatrix> out;
        for (const auto& a : R.action[n])
            out.push_back(n >= t ? a : SparseIntMatrix(M.dims[n + 1], M.dims[n]));
        M.action.push_back(std::move(out));
    }
    return M;
}

bool check_module_relation(const BraidContext& ctx, const GradedModule& M)
{
    for (std::size_t n = 0; n + 2 <= M.max_degree(); ++n)
        for (std::size_t g = 0; g < ctx.k(); ++g)
            for (std::size_t h = 0; h < ctx.k(); ++h) {
                auto lhs = M.action[n + 1][g].multiply(M.action[n][h]);
                auto rhs = M.action[n + 1][ctx.push(Local(g), Local(h))].multiply(M.action[n][g]);
                if (!(lhs == rhs))
                    return false;
            }
    return true;
}

GradedChainComplex build_k_complex(const BraidContext& ctx, const GradedModule& M, std::size_t n)
{
    if (n > M.max_degree())
        throw ValidationError("module " + M.tag + " has no data in degree " + std::to_string(n));
    const auto& G = ctx.group();
    const std::size_t k = ctx.k();
    GradedChainComplex C;
    C.grade = static_cast<long>(n);
    for (std::size_t q = 0; q <= n; ++q)
        C.terms.push_back(ipow(k, q) * M.dim(n - q));

    for (std::size_t q = 1; q <= n; ++q) {
        const std::size_t dm = M.dim(n - q);
        const std::size_t dt = M.dim(n - q + 1);
        std::vector<Triplet> trip;
        std::vector<Local> letter(q);
        for (std::uint64_t wc = 0; wc < ipow(k, q); ++wc) {
            auto w = decode_tuple(wc, q, k);
            // conjugated letters g_i^{g_{i+1}...g_{q-1}}
            Elem h = G.identity();
            for (std::size_t i = q; i-- > 0;) {
                letter[i] = ctx.local(G.conj(ctx.element(w[i]), h));
                h = G.mul(ctx.element(w[i]), h);
            }
            for (std::size_t i = 0; i < q; ++i) {
                Tuple rest;
                for (std::size_t j = 0; j < q; ++j)
                    if (j != i)
                        rest.push_back(w[j]);
                const std::uint64_t rc = encode_tuple(rest, k);
                const std::int64_t sign = (i % 2) ? -1 : 1;
                const auto& A = M.action[n - q][letter[i]];
                for (std::uint32_t m = 0; m < dm; ++m) {
                    auto rows = A.col_rows(m);
                    auto vals = A.col_values(m);
                    for (std::size_t e = 0; e < rows.size(); ++e)
                        trip.push_back({std::uint32_t(rc * dt + rows[e]),
                                        std::uint32_t(wc * dm + m), sign * vals[e]});
                }
            }
        }
        C.differentials.push_back(
            SparseIntMatrix::from_triplets(C.terms[q - 1], C.terms[q], std::move(trip)));
    }
    return C;
}

// ---------------------------------------------------------------------------

std::optional<long> KHomologyReport::slope_one_offset() const
{
    std::optional<long> best;
    for (std::size_t q = 0; q < h.size(); ++q)
        if (h[q]) {
            long v = static_cast<long>(*h[q]) - static_cast<long>(q);
            best = best ? std::max(*best, v) : v;
        }
    return best;
}

std::vector<std::optional<long>> KHomologyReport::offset_by_window() const
{
    std::vector<std::optional<long>> out;
    for (std::size_t w = 0; w <= n_max; ++w) {
        std::optional<long> best;
        for (std::size_t n = 0; n <= w; ++n)
            for (std::size_t q = 0; q <= n; ++q)
                if (dims[n][q]) {
                    long v = static_cast<long>(n) - static_cast<long>(q);
                    best = best ? std::max(*best, v) : v;
                }
        out.push_back(best);
    }
    return out;
}

bool KHomologyReport::any_censored() const
{
    return std::any_of(censored.begin(), censored.end(), [](bool b) { return b; });
}

KHomologyReport k_homology(const BraidContext& ctx, const GradedModule& M, std::size_t n_max,
                           const RankOptions& opt)
{
    KHomologyReport rep;
    rep.module_tag = M.tag;
    rep.n_max = n_max;
    rep.h.assign(n_max + 1, std::nullopt);
    rep.censored.assign(n_max + 1, false);
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto C = build_k_complex(ctx, M, n);
        auto H = homology_dims(C, opt);
        rep.dims.push_back(H.dims);
        rep.certification.push_back(H.certification);
        for (std::size_t q = 0; q <= n; ++q)
            if (H.dims[q]) {
                rep.h[q] = n;
                if (n == n_max)
                    rep.censored[q] = true;
            }
    }
    return rep;
}

std::vector<std::size_t> indecomposable_dims(const ComponentRing& ring, std::size_t n_max)
{
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::set<std::uint32_t> hit;
        for (std::size_t j = 1; j <= n; ++j)
            for (std::uint32_t s = 0; s < ring.dim(j); ++s)
                for (std::uint32_t t = 0; t < ring.dim(n - j); ++t)
                    hit.insert(ring.multiply(j, s, n - j, t));
        out.push_back(ring.dim(n) - hit.size());
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// S : K_q(n) -> K_{q+1}(n+1)
SparseIntMatrix homotopy_matrix(const ComponentRing& ring, Local g, std::size_t n, std::size_t q)
{
    const auto& ctx = ring.context();
    const auto& G = ctx.group();
    const std::size_t k = ctx.k();
    const std::size_t dm = ring.dim(n - q);
    std::vector<Triplet> trip;
    for (std::uint64_t wc = 0; wc < ipow(k, q); ++wc) {
        auto w = decode_tuple(wc, q, k);
        Elem word = ctx.boundary(w);
        for (std::uint32_t s = 0; s < dm; ++s) {
            Elem P = G.mul(word, ring.table(n - q).orbits[s].boundary);
            Local lead = ctx.local(G.conj(ctx.element(g), G.inv(P)));
            std::uint64_t target = lead * ipow(k, q) + wc;
            trip.push_back({std::uint32_t(target * dm + s), std::uint32_t(wc * dm + s), 1});
        }
    }
    return SparseIntMatrix::from_triplets(ipow(k, q + 1) * dm, ipow(k, q) * dm, std::move(trip));
}

// right multiplication by r_g : K_q(n) -> K_q(n+1)
SparseIntMatrix right_matrix(const ComponentRing& ring, Local g, std::size_t n, std::size_t q)
{
    const std::size_t k = ring.context().k();
    const std::size_t dm = ring.dim(n - q), dt = ring.dim(n - q + 1);
    std::vector<Triplet> trip;
    for (std::uint64_t wc = 0; wc < ipow(k, q); ++wc)
        for (std::uint32_t s = 0; s < dm; ++s)
            trip.push_back({std::uint32_t(wc * dt + ring.right_mul(g, n - q, s)),
                            std::uint32_t(wc * dm + s), 1});
    return SparseIntMatrix::from_triplets(ipow(k, q) * dt, ipow(k, q) * dm, std::move(trip));
}

}  // namespace

HomotopyCheck homotopy_check(const ComponentRing& ring, Local g, std::size_t n, std::size_t q)
{
    if (q > n)
        throw ValidationError("homological index exceeds the total degree");
    if (n + 1 > ring.n_max())
        throw ValidationError("homotopy check in degree " + std::to_string(n) +
                              " needs the ring through degree " + std::to_string(n + 1));
    const auto& ctx = ring.context();
    auto M = module_R(ring);
    auto Kn = build_k_complex(ctx, M, n);
    auto Kn1 = build_k_complex(ctx, M, n + 1);

    auto rho = right_matrix(ring, g, n, q);
    SparseIntMatrix lhs = Kn1.differentials[q].multiply(homotopy_matrix(ring, g, n, q));
    if (q >= 1)
        lhs = sum(lhs, homotopy_matrix(ring, g, n, q - 1).multiply(Kn.differentials[q - 1]));
    HomotopyCheck r;
    r.checked_entries = rho.rows() * rho.cols();
    r.holds = difference(lhs, rho).is_zero();
    return r;
}

}  // namespace hurwitz
