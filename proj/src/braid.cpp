#include "hurwitz/braid.hpp"

#include <algorithm>

#include "hurwitz/errors.hpp"

namespace hurwitz {

BraidContext::BraidContext(const Group& group, ConjClass cls)
    : group_(std::make_shared<const Group>(group)), cls_(std::move(cls))
{
    if (cls_.members.empty())
        throw ValidationError("empty conjugacy class");
    if (cls_.size() > 65535)
        throw BudgetError("conjugacy class too large for 16-bit tuple entries");
    const std::size_t k = cls_.size();
    push_.resize(k * k);
    pull_.resize(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            Elem ea = cls_.members[a], eb = cls_.members[b];
            push_[a * k + b] = local(group_->conj(eb, group_->inv(ea)));
            pull_[a * k + b] = local(group_->conj(ea, eb));
        }
    if (group_->size() <= kDefaultSubgroupCap)
        subs_ = hurwitz::subgroups(*group_);
}

Local BraidContext::local(Elem g) const
{
    int i = cls_.local_index(g);
    if (i < 0)
        throw ValidationError("element " + group_->cycle_string(g) + " is not in the class");
    return static_cast<Local>(i);
}

int BraidContext::subgroup_id(const std::vector<Elem>& sorted_elements) const
{
    return subs_.index_of(sorted_elements);
}

Elem BraidContext::boundary(const Tuple& t) const
{
    Elem b = group_->identity();
    for (Local a : t)
        b = group_->mul(b, element(a));
    return b;
}

std::vector<Elem> BraidContext::monodromy(const Tuple& t) const
{
    std::vector<Elem> gens;
    for (Local a : t)
        gens.push_back(element(a));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return generated_subgroup(*group_, gens);
}

Tuple braid_act(const BraidContext& ctx, std::size_t j, int sign, Tuple t)
{
    if (j < 1 || j + 1 > t.size())
        throw ValidationError("braid generator index " + std::to_string(j) +
                              " out of range for " + std::to_string(t.size()) + " strands");
    Local a = t[j - 1], b = t[j];
    if (sign > 0) {
        t[j - 1] = ctx.push(a, b);
        t[j] = a;
    } else {
        t[j - 1] = b;
        t[j] = ctx.pull(a, b);
    }
    return t;
}

std::uint64_t encode_tuple(const Tuple& t, std::size_t k)
{
    std::uint64_t c = 0;
    for (Local a : t)
        c = c * k + a;
    return c;
}

Tuple decode_tuple(std::uint64_t code, std::size_t n, std::size_t k)
{
    Tuple t(n);
    for (std::size_t i = n; i-- > 0;) {
        t[i] = static_cast<Local>(code % k);
        code /= k;
    }
    return t;
}

std::size_t OrbitTable::generating_count() const
{
    return static_cast<std::size_t>(
        std::count_if(orbits.begin(), orbits.end(), [](const auto& o) { return o.generating; }));
}

namespace {

std::uint64_t checked_power(std::size_t k, std::size_t n, std::uint64_t cap)
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > cap / std::max<std::size_t>(k, 1))
            return cap + 1;
        total *= k;
    }
    return total;
}

}  // namespace

OrbitTable enumerate_orbits(const BraidContext& ctx, std::size_t n, std::uint64_t max_states)
{
    const std::size_t k = ctx.k();
    const std::uint64_t total = checked_power(k, n, max_states);
    if (total > max_states)
        throw BudgetError("|c|^n exceeds the state budget for |c| = " + std::to_string(k) +
                          ", n = " + std::to_string(n));
    constexpr std::uint32_t unset = 0xffffffffu;
    OrbitTable T;
    T.n = n;
    T.k = k;
    T.orbit_of.assign(total, unset);

    std::vector<std::uint64_t> weight(n);
    for (std::size_t p = n; p-- > 0;)
        weight[p] = (p + 1 == n) ? 1 : weight[p + 1] * k;

    std::vector<std::uint64_t> queue;
    for (std::uint64_t start = 0; start < total; ++start) {
        if (T.orbit_of[start] != unset)
            continue;
        const auto id = static_cast<std::uint32_t>(T.orbits.size());
        queue.assign(1, start);
        T.orbit_of[start] = id;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const std::uint64_t code = queue[qi];
            auto t = decode_tuple(code, n, k);
            // sigma_j alone suffices: on a finite set each sigma_j has finite order.
            for (std::size_t j = 0; j + 1 < n; ++j) {
                Local a = t[j], b = t[j + 1];
                Local na = ctx.push(a, b);
                std::uint64_t next = code - a * weight[j] - b * weight[j + 1] + na * weight[j] +
                                     a * weight[j + 1];
                if (T.orbit_of[next] == unset) {
                    T.orbit_of[next] = id;
                    queue.push_back(next);
                }
            }
        }
        OrbitRecord rec;
        rec.rep_code = start;
        rec.size = queue.size();
        auto rep = decode_tuple(start, n, k);
        rec.boundary = ctx.boundary(rep);
        auto mono = ctx.monodromy(rep);
        rec.generating = mono.size() == ctx.group().size();
        rec.monodromy_subgroup = ctx.subgroup_id(mono);
        T.orbits.push_back(rec);
    }
    return T;
}

bool first_letter_coverage(const OrbitTable& T)
{
    if (T.n == 0)
        return true;
    const std::size_t k = T.k;
    std::uint64_t lead_weight = 1;
    for (std::size_t i = 1; i < T.n; ++i)
        lead_weight *= k;
    std::vector<char> seen(T.orbits.size() * k, 0);
    for (std::uint64_t code = 0; code < T.orbit_of.size(); ++code) {
        auto o = T.orbit_of[code];
        if (T.orbits[o].generating)
            seen[std::size_t(o) * k + code / lead_weight] = 1;
    }
    for (std::size_t o = 0; o < T.orbits.size(); ++o) {
        if (!T.orbits[o].generating)
            continue;
        for (std::size_t g = 0; g < k; ++g)
            if (!seen[o * k + g])
                return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

ComponentRing::ComponentRing(const BraidContext& ctx, std::size_t n_max, std::uint64_t max_states)
    : ctx_(ctx)
{
    for (std::size_t n = 0; n <= n_max; ++n)
        tables_.push_back(enumerate_orbits(ctx_, n, max_states));
}

const OrbitTable& ComponentRing::table(std::size_t n) const
{
    if (n >= tables_.size())
        throw ValidationError("degree " + std::to_string(n) + " beyond the computed window " +
                              std::to_string(n_max()));
    return tables_[n];
}

std::uint32_t ComponentRing::multiply(std::size_t m, std::uint32_t a, std::size_t n,
                                      std::uint32_t b) const
{
    const auto& A = table(m);
    const auto& B = table(n);
    const auto& C = table(m + n);
    std::uint64_t shift = 1;
    for (std::size_t i = 0; i < n; ++i)
        shift *= ctx_.k();
    return C.orbit_of[A.orbits.at(a).rep_code * shift + B.orbits.at(b).rep_code];
}

RingElement ComponentRing::multiply(const RingElement& x, const RingElement& y) const
{
    RingElement z;
    z.degree = x.degree + y.degree;
    for (const auto& [a, ca] : x.coeffs)
        for (const auto& [b, cb] : y.coeffs) {
            auto& slot = z.coeffs[multiply(x.degree, a, y.degree, b)];
            slot += ca * cb;
        }
    for (auto it = z.coeffs.begin(); it != z.coeffs.end();)
        it = sgn(it->second) == 0 ? z.coeffs.erase(it) : std::next(it);
    return z;
}

RingElement ComponentRing::basis(std::size_t n, std::uint32_t orbit) const
{
    if (orbit >= table(n).size())
        throw ValidationError("orbit id out of range");
    RingElement e;
    e.degree = n;
    e.coeffs[orbit] = 1;
    return e;
}

RingElement ComponentRing::generator(Local g) const
{
    return basis(1, table(1).orbit_of_tuple(Tuple{g}));
}

RingElement ComponentRing::power(Local g, std::size_t e) const
{
    return basis(e, table(e).orbit_of_tuple(Tuple(e, g)));
}

RingElement ComponentRing::u_element(std::size_t D) const
{
    RingElement u;
    u.degree = D * ctx_.cls().class_order;
    for (std::size_t g = 0; g < ctx_.k(); ++g) {
        auto p = power(static_cast<Local>(g), u.degree);
        for (const auto& [o, c] : p.coeffs)
            u.coeffs[o] += c;
    }
    return u;
}

std::uint32_t ComponentRing::left_mul(Local g, std::size_t n, std::uint32_t orbit) const
{
    return multiply(1, table(1).orbit_of_tuple(Tuple{g}), n, orbit);
}

std::uint32_t ComponentRing::right_mul(Local g, std::size_t n, std::uint32_t orbit) const
{
    return multiply(n, orbit, 1, table(1).orbit_of_tuple(Tuple{g}));
}

SparseIntMatrix ComponentRing::left_mul_matrix(const RingElement& x, std::size_t n) const
{
    std::vector<Triplet> t;
    for (const auto& [o, c] : x.coeffs) {
        if (c.get_den() != 1 || !c.get_num().fits_slong_p())
            throw ValidationError("left_mul_matrix needs integer coefficients");
        long v = c.get_num().get_si();
        for (std::uint32_t s = 0; s < dim(n); ++s)
            t.push_back({multiply(x.degree, o, n, s), s, v});
    }
    return SparseIntMatrix::from_triplets(dim(n + x.degree), dim(n), std::move(t));
}

// ---------------------------------------------------------------------------

std::size_t default_window(std::size_t k, std::uint64_t max_states)
{
    std::size_t n = 0;
    while (n < 12 && checked_power(k, n + 1, max_states) <= max_states)
        ++n;
    return n;
}

StabilizerDescriptor find_stabilizer_U(const ComponentRing& ring, std::size_t D_max)
{
    const auto& ctx = ring.context();
    auto ns = is_nonsplitting(ctx.group(), ctx.cls());
    if (!ns.holds)
        throw ValidationError("(G, c) is not non-splitting: " + ns.witness->describe(ctx.group()));

    const std::size_t N = ring.n_max();
    StabilizerDescriptor best;
    for (std::size_t D = 1; D <= D_max; ++D) {
        StabilizerDescriptor d;
        d.D = D;
        d.deg_U = D * ctx.cls().class_order;
        d.N_max = N;
        if (d.deg_U > N)
            break;
        d.U = ring.u_element(D);
        for (std::size_t m = 0; m <= N; ++m) {
            d.orbit_counts.push_back(ring.dim(m));
            d.generating_counts.push_back(ring.table(m).generating_count());
            if (m < d.deg_U) {
                d.quotient_dims.push_back(ring.dim(m));
                continue;
            }
            auto r = rank(ring.left_mul_matrix(d.U, m - d.deg_U));
            d.certification = weakest(d.certification, r.certification);
            d.quotient_dims.push_back(ring.dim(m) - r.rank);
        }
        std::size_t n0 = N + 1;
        while (n0 > 0 && d.quotient_dims[n0 - 1] == 0)
            --n0;
        d.n0 = n0;
        d.found = n0 <= N && N + 1 - n0 >= 2 * d.deg_U;
        d.component_counts_stable = true;
        for (std::size_t m = n0; m + d.deg_U <= N; ++m)
            if (d.generating_counts[m] != d.generating_counts[m + d.deg_U])
                d.component_counts_stable = false;
        best = std::move(d);
        if (best.found)
            return best;
    }
    return best;
}

StabilizerDescriptor find_stabilizer_U(const BraidContext& ctx, const StabilizerOptions& opt)
{
    auto ns = is_nonsplitting(ctx.group(), ctx.cls());
    if (!ns.holds)
        throw ValidationError("(G, c) is not non-splitting: " + ns.witness->describe(ctx.group()));
    std::size_t N = opt.N_max ? opt.N_max : default_window(ctx.k(), opt.max_states);
    ComponentRing ring(ctx, N, opt.max_states);
    return find_stabilizer_U(ring, opt.D_max);
}

bool central_check(const ComponentRing& ring, const RingElement& U, std::size_t N_max)
{
    for (std::size_t m = 0; m + U.degree <= std::min(N_max, ring.n_max()); ++m)
        for (std::uint32_t s = 0; s < ring.dim(m); ++s) {
            auto b = ring.basis(m, s);
            if (!(ring.multiply(U, b) == ring.multiply(b, U)))
                return false;
        }
    return true;
}

std::optional<std::size_t> first_letter_threshold(const ComponentRing& ring)
{
    std::size_t n = ring.n_max() + 1;
    while (n > 0) {
        const auto& T = ring.table(n - 1);
        if (T.generating_count() > 0 && !first_letter_coverage(T))
            break;
        --n;
    }
    if (n > ring.n_max())
        return std::nullopt;
    return n;
}

}  // namespace hurwitz
