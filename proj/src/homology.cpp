#include "hurwitz/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hurwitz/errors.hpp"
#include "hurwitz/parallel.hpp"

namespace hurwitz {

namespace {

std::uint64_t state_count(const BraidContext& ctx, std::size_t n, std::uint64_t max_states)
{
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (s > max_states / ctx.k() + 1)
            throw BudgetError("|c|^n exceeds the state budget of " + std::to_string(max_states));
        s *= ctx.k();
    }
    if (s > max_states)
        throw BudgetError("|c|^" + std::to_string(n) + " = " + std::to_string(s) +
                          " exceeds the state budget of " + std::to_string(max_states));
    return s;
}

void split_blocks(BraidSet& set)
{
    const std::size_t S = set.size();
    constexpr std::uint32_t none = ~std::uint32_t(0);
    set.block_of.assign(S, none);
    set.local_index.assign(S, 0);
    set.blocks.clear();
    std::vector<std::uint32_t> inverse(set.act.size());
    for (std::size_t i = 1; i < set.n; ++i)
        for (std::uint32_t s = 0; s < S; ++s)
            inverse[(i - 1) * S + set.apply(i, s)] = s;
    for (std::uint32_t s0 = 0; s0 < S; ++s0) {
        if (set.block_of[s0] != none)
            continue;
        const auto b = static_cast<std::uint32_t>(set.blocks.size());
        std::vector<std::uint32_t> members{s0};
        set.block_of[s0] = b;
        for (std::size_t head = 0; head < members.size(); ++head) {
            std::uint32_t s = members[head];
            for (std::size_t i = 1; i < set.n; ++i)
                for (std::uint32_t t : {set.apply(i, s), inverse[(i - 1) * S + s]})
                    if (set.block_of[t] == none) {
                        set.block_of[t] = b;
                        members.push_back(t);
                    }
        }
        std::sort(members.begin(), members.end());
        for (std::size_t l = 0; l < members.size(); ++l)
            set.local_index[members[l]] = static_cast<std::uint32_t>(l);
        set.blocks.push_back(std::move(members));
    }
}

std::uint32_t inverse_apply(const BraidSet& set, std::size_t i, std::uint32_t s,
                            const std::vector<std::uint32_t>& inverse)
{
    return inverse[(i - 1) * set.size() + s];
}

std::vector<std::uint32_t> inverse_table(const BraidSet& set)
{
    std::vector<std::uint32_t> inverse(set.act.size());
    for (std::size_t i = 1; i < set.n; ++i)
        for (std::uint32_t s = 0; s < set.size(); ++s)
            inverse[(i - 1) * set.size() + set.apply(i, s)] = s;
    return inverse;
}

std::uint64_t conjugate_code(const BraidContext& ctx, std::uint64_t code, std::size_t n, Elem h)
{
    const auto& G = ctx.group();
    auto t = decode_tuple(code, n, ctx.k());
    for (auto& a : t)
        a = ctx.local(G.conj(ctx.element(a), h));
    return encode_tuple(t, ctx.k());
}

// Offsets of each block in the concatenated C_0, C_1, C_2.
struct Offsets {
    std::vector<std::size_t> c0, c1, c2;
};

Offsets block_offsets(const PresentationComplex& cx)
{
    Offsets o;
    std::size_t a = 0, b = 0, c = 0;
    const std::size_t gens = cx.n() - 1, rels = cx.relators.size();
    for (const auto& members : cx.set.blocks) {
        o.c0.push_back(a);
        o.c1.push_back(b);
        o.c2.push_back(c);
        a += members.size();
        b += members.size() * gens;
        c += members.size() * rels;
    }
    return o;
}

}  // namespace

BraidSet tuple_braid_set(const BraidContext& ctx, std::size_t n, std::uint64_t max_states)
{
    const std::uint64_t S = state_count(ctx, n, max_states);
    BraidSet set;
    set.n = n;
    set.codes.resize(S);
    std::iota(set.codes.begin(), set.codes.end(), std::uint64_t{0});
    set.state_of_code.resize(S);
    std::iota(set.state_of_code.begin(), set.state_of_code.end(), std::uint32_t{0});
    set.act.resize(n > 0 ? (n - 1) * S : 0);
    for (std::uint64_t c = 0; c < S; ++c) {
        auto t = decode_tuple(c, n, ctx.k());
        for (std::size_t i = 1; i < n; ++i)
            set.act[(i - 1) * S + c] =
                static_cast<std::uint32_t>(encode_tuple(braid_act(ctx, i, +1, t), ctx.k()));
    }
    split_blocks(set);
    return set;
}

BraidSet quotient_braid_set(const BraidContext& ctx, std::size_t n, std::uint64_t max_states)
{
    const std::uint64_t S = state_count(ctx, n, max_states);
    const auto& G = ctx.group();
    std::vector<std::uint64_t> canonical(S);
    for (std::uint64_t c = 0; c < S; ++c) {
        std::uint64_t best = c;
        for (Elem h = 0; h < G.size(); ++h)
            best = std::min(best, conjugate_code(ctx, c, n, h));
        canonical[c] = best;
    }
    BraidSet set;
    set.n = n;
    set.state_of_code.resize(S);
    for (std::uint64_t c = 0; c < S; ++c)
        if (canonical[c] == c)
            set.codes.push_back(c);
    for (std::uint64_t c = 0; c < S; ++c)
        set.state_of_code[c] = static_cast<std::uint32_t>(
            std::lower_bound(set.codes.begin(), set.codes.end(), canonical[c]) - set.codes.begin());
    const std::size_t Q = set.codes.size();
    set.act.resize(n > 0 ? (n - 1) * Q : 0);
    for (std::size_t s = 0; s < Q; ++s) {
        auto t = decode_tuple(set.codes[s], n, ctx.k());
        for (std::size_t i = 1; i < n; ++i)
            set.act[(i - 1) * Q + s] =
                set.state_of_code[encode_tuple(braid_act(ctx, i, +1, t), ctx.k())];
    }
    split_blocks(set);
    return set;
}

std::vector<std::vector<int>> braid_relators(std::size_t n)
{
    std::vector<std::vector<int>> rel;
    for (int i = 1; i + 2 <= int(n); ++i)
        rel.push_back({i, i + 1, i, -(i + 1), -i, -(i + 1)});
    for (int i = 1; i < int(n); ++i)
        for (int j = i + 2; j < int(n); ++j)
            rel.push_back({i, j, -i, -j});
    return rel;
}

// ---------------------------------------------------------------------------

PresentationComplex fox_complex(BraidSet set)
{
    if (set.n < 2)
        throw ValidationError("the presentation complex needs at least 2 strands");
    PresentationComplex cx;
    cx.relators = braid_relators(set.n);
    cx.set = std::move(set);
    const auto& X = cx.set;
    const auto inverse = inverse_table(X);
    const std::size_t gens = X.n - 1;
    for (const auto& members : X.blocks) {
        const std::size_t m = members.size();
        PresentationComplex::Block blk;
        blk.states = m;
        std::vector<Triplet> t1;
        for (std::size_t i = 1; i <= gens; ++i)
            for (std::uint32_t l = 0; l < m; ++l) {
                auto col = std::uint32_t((i - 1) * m + l);
                t1.push_back({X.local_index[X.apply(i, members[l])], col, 1});
                t1.push_back({l, col, -1});
            }
        blk.d1 = SparseIntMatrix::from_triplets(m, m * gens, std::move(t1));

        // Left Fox derivatives: a letter s at position j contributes
        // x.(prefix before j) on e_s; s^{-1} contributes -x.(prefix through j).
        std::vector<Triplet> t2;
        for (std::size_t r = 0; r < cx.relators.size(); ++r)
            for (std::uint32_t l = 0; l < m; ++l) {
                auto col = std::uint32_t(r * m + l);
                std::uint32_t cur = members[l];
                for (int letter : cx.relators[r]) {
                    std::size_t i = static_cast<std::size_t>(std::abs(letter));
                    if (letter > 0) {
                        t2.push_back({std::uint32_t((i - 1) * m + X.local_index[cur]), col, 1});
                        cur = X.apply(i, cur);
                    } else {
                        cur = inverse_apply(X, i, cur, inverse);
                        t2.push_back({std::uint32_t((i - 1) * m + X.local_index[cur]), col, -1});
                    }
                }
                if (cur != members[l])
                    throw ComputationError("relator " + std::to_string(r) +
                                           " acts nontrivially on the braid set");
            }
        blk.d2 = SparseIntMatrix::from_triplets(m * gens, m * cx.relators.size(), std::move(t2));
        cx.blocks.push_back(std::move(blk));
    }
    return cx;
}

PresentationComplex fox_complex(const BraidContext& ctx, std::size_t n, bool quotient_by_G,
                                std::uint64_t max_states)
{
    if (n < 2)
        throw ValidationError("the presentation complex needs at least 2 strands");
    return fox_complex(quotient_by_G ? quotient_braid_set(ctx, n, max_states)
                                     : tuple_braid_set(ctx, n, max_states));
}

GradedChainComplex PresentationComplex::assemble() const
{
    auto off = block_offsets(*this);
    std::vector<Triplet> t1, t2;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (auto t : blocks[b].d1.triplets())
            t1.push_back({std::uint32_t(t.row + off.c0[b]), std::uint32_t(t.col + off.c1[b]),
                          t.value});
        for (auto t : blocks[b].d2.triplets())
            t2.push_back({std::uint32_t(t.row + off.c1[b]), std::uint32_t(t.col + off.c2[b]),
                          t.value});
    }
    GradedChainComplex C;
    C.grade = static_cast<long>(n());
    C.terms = {dim_c0(), dim_c1(), dim_c2()};
    C.differentials.push_back(SparseIntMatrix::from_triplets(dim_c0(), dim_c1(), std::move(t1)));
    C.differentials.push_back(SparseIntMatrix::from_triplets(dim_c1(), dim_c2(), std::move(t2)));
    return C;
}

void PresentationComplex::validate() const
{
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (!blocks[b].d1.multiply(blocks[b].d2).is_zero())
            throw ComputationError("d1 d2 != 0 on block " + std::to_string(b));
}

// ---------------------------------------------------------------------------

BettiNumbers betti_numbers(const PresentationComplex& cx, const HomologyOptions& opt)
{
    RankOptions ro;
    if (cx.n() <= opt.exact_up_to_n)
        ro.force_exact = true;
    else
        ro.exact_nnz_limit = 0;
    const std::size_t B = cx.blocks.size();
    std::vector<RankResult> r1(B), r2(B);
    parallel_for(B, opt.jobs, [&](std::size_t b) {
        r1[b] = rank(cx.blocks[b].d1, ro);
        r2[b] = rank(cx.blocks[b].d2, ro);
    });
    BettiNumbers out;
    out.n = cx.n();
    std::size_t rank1 = 0, rank2 = 0;
    for (std::size_t b = 0; b < B; ++b) {
        rank1 += r1[b].rank;
        rank2 += r2[b].rank;
        out.cert0 = weakest(out.cert0, r1[b].certification);
        out.cert1 = weakest(out.cert1, weakest(r1[b].certification, r2[b].certification));
    }
    out.b0 = cx.dim_c0() - rank1;
    out.b1 = cx.dim_c1() - rank1 - rank2;
    // modular ranks never exceed rational ones, so a modular zero is exact
    if (out.b0 == 0)
        out.cert0 = Certification::exact;
    return out;
}

BettiNumbers betti_numbers(const BraidContext& ctx, std::size_t n, bool quotient_by_G,
                           const HomologyOptions& opt)
{
    if (n < 2) {
        // B_0 and B_1 are trivial: H_0 counts states, H_1 vanishes
        auto set = quotient_by_G ? quotient_braid_set(ctx, n, opt.max_states)
                                 : tuple_braid_set(ctx, n, opt.max_states);
        BettiNumbers out;
        out.n = n;
        out.b0 = set.size();
        return out;
    }
    return betti_numbers(fox_complex(ctx, n, quotient_by_G, opt.max_states), opt);
}

std::size_t betti(const BraidContext& ctx, std::size_t n, int p, bool quotient_by_G,
                  const HomologyOptions& opt)
{
    if (p != 0 && p != 1)
        throw ValidationError("only H_0 and H_1 are computed");
    auto b = betti_numbers(ctx, n, quotient_by_G, opt);
    return p == 0 ? b.b0 : b.b1;
}

// ---------------------------------------------------------------------------

StateMap u_state_map(const BraidContext& ctx, const BraidSet& source, const BraidSet& target,
                     std::size_t D)
{
    if (D == 0)
        throw ValidationError("U_D needs D >= 1");
    const auto& G = ctx.group();
    const std::size_t len = D * G.order_of(ctx.element(0));
    if (target.n != source.n + len)
        throw ValidationError("U_" + std::to_string(D) + " maps degree " +
                              std::to_string(source.n) + " to degree " +
                              std::to_string(source.n + len));
    std::uint64_t scale = 1;
    for (std::size_t i = 0; i < source.n; ++i)
        scale *= ctx.k();
    StateMap f;
    f.shift = len;
    f.image.resize(source.size());
    for (std::uint32_t s = 0; s < source.size(); ++s) {
        std::map<std::uint32_t, std::int64_t> acc;
        for (std::size_t g = 0; g < ctx.k(); ++g) {
            std::uint64_t prefix = encode_tuple(Tuple(len, Local(g)), ctx.k());
            acc[target.state_of_code[prefix * scale + source.codes[s]]] += 1;
        }
        f.image[s].assign(acc.begin(), acc.end());
    }
    return f;
}

StateMap averaging_state_map(const BraidContext& ctx, const BraidSet& set)
{
    const auto& G = ctx.group();
    StateMap f;
    f.image.resize(set.size());
    for (std::uint32_t s = 0; s < set.size(); ++s) {
        std::map<std::uint32_t, std::int64_t> acc;
        for (Elem h = 0; h < G.size(); ++h)
            acc[set.state_of_code[conjugate_code(ctx, set.codes[s], set.n, h)]] += 1;
        f.image[s].assign(acc.begin(), acc.end());
    }
    return f;
}

namespace {

// f in degrees 0, 1, 2 as global matrices.
struct ChainMatrices {
    SparseIntMatrix f0, f1, f2;
};

ChainMatrices chain_matrices(const PresentationComplex& src, const PresentationComplex& tgt,
                             const StateMap& f)
{
    auto so = block_offsets(src), to = block_offsets(tgt);
    const auto& X = src.set;
    const auto& Y = tgt.set;
    // relator r of the source, shifted, as an index among the target relators
    std::map<std::vector<int>, std::size_t> rel_index;
    for (std::size_t r = 0; r < tgt.relators.size(); ++r)
        rel_index[tgt.relators[r]] = r;
    std::vector<std::size_t> shifted;
    for (const auto& rel : src.relators) {
        std::vector<int> s;
        for (int l : rel)
            s.push_back(l > 0 ? l + int(f.shift) : l - int(f.shift));
        auto it = rel_index.find(s);
        if (it == rel_index.end())
            throw ComputationError("shifted relator has no counterpart in the target");
        shifted.push_back(it->second);
    }
    std::vector<Triplet> t0, t1, t2;
    for (std::uint32_t x = 0; x < X.size(); ++x) {
        auto bx = X.block_of[x];
        auto lx = X.local_index[x];
        auto mx = X.blocks[bx].size();
        for (auto [y, c] : f.image[x]) {
            auto by = Y.block_of[y];
            auto ly = Y.local_index[y];
            auto my = Y.blocks[by].size();
            t0.push_back({std::uint32_t(to.c0[by] + ly), std::uint32_t(so.c0[bx] + lx), c});
            for (std::size_t i = 1; i < X.n; ++i)
                t1.push_back({std::uint32_t(to.c1[by] + (i + f.shift - 1) * my + ly),
                              std::uint32_t(so.c1[bx] + (i - 1) * mx + lx), c});
            for (std::size_t r = 0; r < src.relators.size(); ++r)
                t2.push_back({std::uint32_t(to.c2[by] + shifted[r] * my + ly),
                              std::uint32_t(so.c2[bx] + r * mx + lx), c});
        }
    }
    return {SparseIntMatrix::from_triplets(tgt.dim_c0(), src.dim_c0(), std::move(t0)),
            SparseIntMatrix::from_triplets(tgt.dim_c1(), src.dim_c1(), std::move(t1)),
            SparseIntMatrix::from_triplets(tgt.dim_c2(), src.dim_c2(), std::move(t2))};
}

// Fundamental cycles of the Schreier graph of one block, as sparse
// integer combinations of block-local C_1 coordinates.
std::vector<std::map<std::uint32_t, std::int64_t>> fundamental_cycles(const PresentationComplex& cx,
                                                                      std::size_t b)
{
    const auto& X = cx.set;
    const auto& members = X.blocks[b];
    const std::size_t m = members.size(), gens = X.n - 1;
    const auto inverse = inverse_table(X);
    constexpr std::uint32_t none = ~std::uint32_t(0);
    // parent_edge[v] = block-local C_1 index; sign[v] = +-1 so that
    // d(sign * e) = v - parent
    std::vector<std::uint32_t> parent(m, none), parent_edge(m, none);
    std::vector<int> sign(m, 0);
    std::vector<bool> tree(m * gens, false);
    std::vector<std::uint32_t> queue{0};
    parent[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t u = queue[head];
        for (std::size_t i = 1; i <= gens; ++i) {
            std::uint32_t fwd = X.local_index[X.apply(i, members[u])];
            if (parent[fwd] == none) {
                parent[fwd] = u;
                parent_edge[fwd] = std::uint32_t((i - 1) * m + u);
                sign[fwd] = 1;
                tree[parent_edge[fwd]] = true;
                queue.push_back(fwd);
            }
            std::uint32_t bwd = X.local_index[inverse_apply(X, i, members[u], inverse)];
            if (parent[bwd] == none) {
                parent[bwd] = u;
                parent_edge[bwd] = std::uint32_t((i - 1) * m + bwd);
                sign[bwd] = -1;
                tree[parent_edge[bwd]] = true;
                queue.push_back(bwd);
            }
        }
    }
    auto add_path = [&](std::map<std::uint32_t, std::int64_t>& z, std::uint32_t v, int s) {
        while (v != 0) {
            z[parent_edge[v]] += s * sign[v];
            v = parent[v];
        }
    };
    std::vector<std::map<std::uint32_t, std::int64_t>> cycles;
    for (std::size_t i = 1; i <= gens; ++i)
        for (std::uint32_t l = 0; l < m; ++l) {
            auto e = std::uint32_t((i - 1) * m + l);
            if (tree[e])
                continue;
            std::map<std::uint32_t, std::int64_t> z;
            z[e] += 1;
            add_path(z, l, +1);
            add_path(z, X.local_index[X.apply(i, members[l])], -1);
            for (auto it = z.begin(); it != z.end();)
                it = it->second == 0 ? z.erase(it) : std::next(it);
            if (!z.empty())
                cycles.push_back(std::move(z));
        }
    return cycles;
}

template <class F>
std::vector<EchelonBasis<F>> boundary_bases(const PresentationComplex& cx, const F& field,
                                            unsigned jobs)
{
    std::vector<EchelonBasis<F>> bases(cx.blocks.size());
    parallel_for(cx.blocks.size(), jobs, [&](std::size_t b) {
        const auto& d2 = cx.blocks[b].d2;
        EchelonBasis<F> basis(field, d2.rows());
        std::vector<std::size_t> order(d2.cols());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            return d2.col_rows(a).size() < d2.col_rows(c).size();
        });
        for (auto j : order)
            basis.insert(column_vector(d2, j, field));
        bases[b] = std::move(basis);
    });
    return bases;
}

struct H1Ranks {
    std::size_t boundary_rank = 0;
    std::size_t image_rank = 0;
    bool operator==(const H1Ranks&) const = default;
};

template <class F>
H1Ranks induced_h1_rank(const PresentationComplex& src, const PresentationComplex& tgt,
                        const StateMap& f, const F& field, unsigned jobs)
{
    auto bases = boundary_bases(tgt, field, jobs);
    auto to = block_offsets(tgt);
    const auto& X = src.set;
    const auto& Y = tgt.set;
    const std::size_t B = src.blocks.size();
    std::vector<std::vector<SparseVec<F>>> images(B);
    parallel_for(B, jobs, [&](std::size_t b) {
        const std::size_t m = X.blocks[b].size();
        for (const auto& z : fundamental_cycles(src, b)) {
            std::map<std::uint32_t, std::map<std::uint32_t, std::int64_t>> by_block;
            for (auto [e, c] : z) {
                std::size_t i = e / m + 1;
                std::uint32_t x = X.blocks[b][e % m];
                for (auto [y, cy] : f.image[x]) {
                    auto bt = Y.block_of[y];
                    auto my = Y.blocks[bt].size();
                    by_block[bt][std::uint32_t((i + f.shift - 1) * my + Y.local_index[y])] += c * cy;
                }
            }
            SparseVec<F> global;
            for (auto& [bt, entries] : by_block) {
                SparseVec<F> v;
                for (auto [idx, c] : entries) {
                    auto val = field.from_int(c);
                    if (!field.is_zero(val))
                        v.emplace_back(idx, std::move(val));
                }
                for (auto& [idx, val] : bases[bt].reduce(std::move(v)))
                    global.emplace_back(std::uint32_t(idx + to.c1[bt]), std::move(val));
            }
            if (!global.empty())
                images[b].push_back(std::move(global));
        }
    });
    H1Ranks r;
    for (const auto& basis : bases)
        r.boundary_rank += basis.rank();
    EchelonBasis<F> image(field, tgt.dim_c1());
    for (auto& list : images)
        for (auto& v : list)
            image.insert(std::move(v));
    r.image_rank = image.rank();
    return r;
}

}  // namespace

InducedMap induced_map(const PresentationComplex& source, const PresentationComplex& target,
                       const StateMap& f, const HomologyOptions& opt)
{
    if (f.image.size() != source.set.size())
        throw ValidationError("state map does not match the source");
    if (source.n() + f.shift != target.n())
        throw ValidationError("state map shift does not match the degrees");

    InducedMap out;
    auto S = source.assemble();
    auto T = target.assemble();
    auto F = chain_matrices(source, target, f);
    out.chain_map = T.differentials[0].multiply(F.f1) == F.f0.multiply(S.differentials[0]) &&
                    T.differentials[1].multiply(F.f2) == F.f1.multiply(S.differentials[1]);
    if (!out.chain_map)
        throw ComputationError("state map does not commute with the differentials");

    // H_0 of a transitive block is Q, spanned by any state; the induced map
    // sends block b to the sum over the image of its first state.
    std::vector<Triplet> t0;
    for (std::size_t b = 0; b < source.set.blocks.size(); ++b)
        for (auto [y, c] : f.image[source.set.blocks[b].front()])
            t0.push_back({target.set.block_of[y], std::uint32_t(b), c});
    out.rank0 = rank_exact(SparseIntMatrix::from_triplets(target.set.blocks.size(),
                                                          source.set.blocks.size(), std::move(t0)));

    if (std::max(source.n(), target.n()) <= opt.exact_up_to_n) {
        out.rank1 = induced_h1_rank(source, target, f, Rational{}, opt.jobs).image_rank;
        out.cert1 = Certification::exact;
        return out;
    }
    // Accept once two primes agree on both ranks and both are the largest
    // seen.  Reduction mod p can only lower the rank of the boundary space.
    std::vector<H1Ranks> seen;
    for (auto p : default_primes()) {
        seen.push_back(induced_h1_rank(source, target, f, ModP{p}, opt.jobs));
        std::size_t best_b = 0;
        for (const auto& s : seen)
            best_b = std::max(best_b, s.boundary_rank);
        for (std::size_t i = 0; i < seen.size(); ++i)
            for (std::size_t j = i + 1; j < seen.size(); ++j)
                if (seen[i] == seen[j] && seen[i].boundary_rank == best_b) {
                    out.rank1 = seen[i].image_rank;
                    out.cert1 = Certification::modular;
                    return out;
                }
    }
    throw ComputationError("modular ranks of the induced map on H_1 never agreed");
}

UMapResult stabilization_u_map(const BraidContext& ctx, int p, std::size_t n, std::size_t D,
                               const HomologyOptions& opt)
{
    if (p != 0 && p != 1)
        throw ValidationError("only H_0 and H_1 are computed");
    if (n < 2)
        throw ValidationError("U-maps are computed from 2 strands on");
    const std::size_t len = D * ctx.group().order_of(ctx.element(0));
    auto src = fox_complex(ctx, n, false, opt.max_states);
    auto tgt = fox_complex(ctx, n + len, false, opt.max_states);
    auto f = u_state_map(ctx, src.set, tgt.set, D);
    auto ind = induced_map(src, tgt, f, opt);
    auto bs = betti_numbers(src, opt), bt = betti_numbers(tgt, opt);
    UMapResult r;
    r.p = p;
    r.n = n;
    r.n_target = n + len;
    r.chain_map = ind.chain_map;
    r.rank = p == 0 ? ind.rank0 : ind.rank1;
    r.b_source = p == 0 ? bs.b0 : bs.b1;
    r.b_target = p == 0 ? bt.b0 : bt.b1;
    r.certification = p == 0 ? Certification::exact
                             : weakest(ind.cert1, weakest(bs.cert1, bt.cert1));
    r.bijective = r.rank == r.b_source && r.rank == r.b_target;
    return r;
}

StabilityReport stability_report(const BraidContext& ctx, std::size_t D, std::size_t n_min,
                                 std::size_t n_max, const StabilityOptions& opt)
{
    if (n_min < 2 || n_max < n_min)
        throw ValidationError("stability window must satisfy 2 <= n_min <= n_max");
    const auto& G = ctx.group();
    StabilityReport rep;
    rep.D = D;
    rep.deg_U = D * G.order_of(ctx.element(0));
    rep.n_min = n_min;
    rep.n_max = n_max;
    const auto& hopt = opt.homology;

    std::map<std::size_t, PresentationComplex> cx;
    std::map<std::size_t, BettiNumbers> bn;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        cx.emplace(n, fox_complex(ctx, n, false, hopt.max_states));
        bn.emplace(n, betti_numbers(cx.at(n), hopt));
    }
    for (std::size_t n = n_min; n <= n_max; ++n) {
        StabilityRow row;
        row.n = n;
        row.betti = bn.at(n);
        double bound = 1;
        for (std::size_t i = 0; i < n; ++i)
            bound *= 2.0 * double(G.size());
        row.within_betti_bound = double(row.betti.b0) <= bound && double(row.betti.b1) <= bound;
        row.orbit_count_agrees =
            row.betti.b0 == enumerate_orbits(ctx, n, hopt.max_states).size();

        if (n + rep.deg_U <= n_max) {
            const auto& src = cx.at(n);
            const auto& tgt = cx.at(n + rep.deg_U);
            auto ind = induced_map(src, tgt, u_state_map(ctx, src.set, tgt.set, D), hopt);
            const auto& bt = bn.at(n + rep.deg_U);
            UMapResult u0, u1;
            u0.p = 0;
            u1.p = 1;
            for (auto* u : {&u0, &u1}) {
                u->n = n;
                u->n_target = n + rep.deg_U;
                u->chain_map = ind.chain_map;
            }
            u0.rank = ind.rank0;
            u0.b_source = row.betti.b0;
            u0.b_target = bt.b0;
            u1.rank = ind.rank1;
            u1.b_source = row.betti.b1;
            u1.b_target = bt.b1;
            u1.certification = weakest(ind.cert1, weakest(row.betti.cert1, bt.cert1));
            for (auto* u : {&u0, &u1})
                u->bijective = u->rank == u->b_source && u->rank == u->b_target;
            row.u0 = u0;
            row.u1 = u1;
        }
        if (opt.quotient_by_G) {
            auto q = fox_complex(ctx, n, true, hopt.max_states);
            row.quotient = betti_numbers(q, hopt);
            if (n <= opt.invariant_check_up_to_n) {
                const auto& full = cx.at(n);
                auto avg = induced_map(full, full, averaging_state_map(ctx, full.set), hopt);
                row.invariant_b0 = avg.rank0;
                row.invariant_b1 = avg.rank1;
            }
        }
        rep.rows.push_back(std::move(row));
    }
    for (int p = 0; p < 2; ++p) {
        std::optional<std::size_t> n0;
        for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
            const auto& u = p == 0 ? it->u0 : it->u1;
            if (!u)
                continue;
            if (!u->bijective)
                break;
            n0 = it->n;
        }
        rep.observed_n0[p] = n0;
    }
    return rep;
}

}  // namespace hurwitz
