#include "hurwitz/hyperelliptic.hpp"

#include <cmath>
#include <unordered_map>

#include "hurwitz/errors.hpp"

namespace hurwitz {

HyperellipticCurve::HyperellipticCurve(const FiniteField& field, Poly poly) : F(&field), f(std::move(poly))
{
    PolyRing::trim(f);
    if (f.size() < 4 || f.size() % 2 != 0)
        throw ValidationError("f must have odd degree >= 3");
    if (!ring().squarefree(f))
        throw ValidationError("f is not squarefree: " + ring().to_string(f));
}

bool is_reduced_divisor(const HyperellipticCurve& C, const MumfordDivisor& D)
{
    PolyRing R = C.ring();
    if (D.u.empty() || D.u.back() != 1)
        return false;
    if (PolyRing::degree(D.u) > long(C.genus()))
        return false;
    if (PolyRing::degree(D.v) >= PolyRing::degree(D.u))
        return false;
    return R.mod(R.sub(R.mul(D.v, D.v), C.f), D.u).empty();
}

MumfordDivisor point_divisor(const HyperellipticCurve& C, FElem a, FElem b)
{
    MumfordDivisor D{{C.F->neg(a), 1}, {b}};
    PolyRing::trim(D.v);
    if (!is_reduced_divisor(C, D))
        throw ValidationError("point is not on the curve");
    return D;
}

MumfordDivisor negate(const HyperellipticCurve& C, const MumfordDivisor& D)
{
    return {D.u, C.ring().neg(D.v)};
}

MumfordDivisor cantor_add(const MumfordDivisor& a, const MumfordDivisor& b, const HyperellipticCurve& C)
{
    if (!is_reduced_divisor(C, a) || !is_reduced_divisor(C, b))
        throw ValidationError("cantor_add: input is not a reduced divisor");
    PolyRing R = C.ring();
    Poly d1, e1, e2;
    R.xgcd(a.u, b.u, d1, e1, e2);
    Poly d, c1, c2;
    R.xgcd(d1, R.add(a.v, b.v), d, c1, c2);
    Poly s1 = R.mul(c1, e1), s2 = R.mul(c1, e2), s3 = c2;
    Poly u = R.div_exact(R.mul(a.u, b.u), R.mul(d, d));
    Poly num = R.add(R.add(R.mul(R.mul(s1, a.u), b.v), R.mul(R.mul(s2, b.u), a.v)),
                     R.mul(s3, R.add(R.mul(a.v, b.v), C.f)));
    Poly v = R.mod(R.div_exact(num, d), u);
    const long g = C.genus();
    while (PolyRing::degree(u) > g) {
        Poly un = R.monic(R.div_exact(R.sub(C.f, R.mul(v, v)), u));
        v = R.mod(R.neg(v), un);
        u = std::move(un);
    }
    return {R.monic(u), v};
}

MumfordDivisor scalar_mul(std::uint64_t n, const MumfordDivisor& D, const HyperellipticCurve& C)
{
    MumfordDivisor result, base = D;
    while (n) {
        if (n & 1)
            result = cantor_add(result, base, C);
        n >>= 1;
        if (n)
            base = cantor_add(base, base, C);
    }
    return result;
}

std::uint64_t divisor_key(const HyperellipticCurve& C, const MumfordDivisor& D)
{
    const unsigned g = C.genus();
    const double bits = (2.0 * g) * std::log2(double(C.F->q())) + std::log2(double(g + 1));
    if (bits > 63)
        throw BudgetError("divisor keys do not fit 64 bits");
    std::uint64_t key = static_cast<std::uint64_t>(PolyRing::degree(D.u));
    for (unsigned i = 0; i < g; ++i)
        key = key * C.F->q() + (i < D.u.size() ? D.u[i] : 0);
    for (unsigned i = 0; i < g; ++i)
        key = key * C.F->q() + (i < D.v.size() ? D.v[i] : 0);
    return key;
}

// ---------------------------------------------------------------------------

ReducedDivisorTables::ReducedDivisorTables(const FiniteField& F, unsigned g, std::size_t budget)
    : F_(&F), g_(g)
{
    const std::uint64_t q = F.q();
    qpow_.assign(g + 1, 1);
    for (unsigned d = 1; d <= g; ++d)
        qpow_[d] = qpow_[d - 1] * q;
    std::size_t total = 0;
    for (unsigned d = 0; d <= g; ++d) {
        total += qpow_[d] * qpow_[d];
        if (total > budget)
            throw BudgetError("reduced-divisor tables exceed budget");
    }
    PolyRing R{F_};
    square_.resize(g + 1);
    for (unsigned d = 0; d <= g; ++d) {
        const std::uint64_t m = qpow_[d];
        square_[d].resize(m * m);
        for (std::uint64_t ui = 0; ui < m; ++ui) {
            Poly u = R.monic_from_index(d, ui);
            for (std::uint64_t vi = 0; vi < m; ++vi) {
                Poly v = poly_of(d, vi);
                square_[d][ui * m + vi] = static_cast<std::uint32_t>(index_of(R.mod(R.mul(v, v), u), d));
            }
        }
    }
}

Poly ReducedDivisorTables::poly_of(unsigned len, std::uint64_t index) const
{
    Poly p(len);
    for (unsigned i = 0; i < len; ++i) {
        p[i] = static_cast<FElem>(index % F_->q());
        index /= F_->q();
    }
    PolyRing::trim(p);
    return p;
}

std::uint64_t ReducedDivisorTables::index_of(const Poly& r, unsigned len) const
{
    std::uint64_t x = 0;
    for (unsigned i = len; i-- > 0;)
        x = x * F_->q() + (i < r.size() ? r[i] : 0);
    return x;
}

std::uint64_t ReducedDivisorTables::count(const HyperellipticCurve& C) const
{
    if (C.F != F_ || C.genus() != g_)
        throw ValidationError("tables built for another field or genus");
    PolyRing R{F_};
    std::uint64_t total = 0;
    for (unsigned d = 0; d <= g_; ++d) {
        const std::uint64_t m = qpow_[d];
        for (std::uint64_t ui = 0; ui < m; ++ui) {
            const std::uint64_t r = index_of(R.mod(C.f, R.monic_from_index(d, ui)), d);
            const std::uint32_t* row = &square_[d][ui * m];
            for (std::uint64_t vi = 0; vi < m; ++vi)
                total += row[vi] == r;
        }
    }
    return total;
}

std::vector<MumfordDivisor> ReducedDivisorTables::enumerate(const HyperellipticCurve& C) const
{
    if (C.F != F_ || C.genus() != g_)
        throw ValidationError("tables built for another field or genus");
    PolyRing R{F_};
    std::vector<MumfordDivisor> out;
    for (unsigned d = 0; d <= g_; ++d) {
        const std::uint64_t m = qpow_[d];
        for (std::uint64_t ui = 0; ui < m; ++ui) {
            Poly u = R.monic_from_index(d, ui);
            const std::uint64_t r = index_of(R.mod(C.f, u), d);
            for (std::uint64_t vi = 0; vi < m; ++vi)
                if (square_[d][ui * m + vi] == r)
                    out.push_back({u, poly_of(d, vi)});
        }
    }
    return out;
}

MumfordDivisor ReducedDivisorTables::random_divisor(const HyperellipticCurve& C, CounterRng& rng,
                                                    unsigned tries) const
{
    PolyRing R{F_};
    const std::uint64_t m = qpow_[g_];
    std::vector<std::uint64_t> roots;
    for (unsigned t = 0; t < tries; ++t) {
        const std::uint64_t ui = rng.below(m);
        Poly u = R.monic_from_index(g_, ui);
        const std::uint64_t r = index_of(R.mod(C.f, u), g_);
        roots.clear();
        for (std::uint64_t vi = 0; vi < m; ++vi)
            if (square_[g_][ui * m + vi] == r)
                roots.push_back(vi);
        if (!roots.empty())
            return {u, poly_of(g_, roots[rng.below(roots.size())])};
    }
    throw ComputationError("no random divisor found");
}

// ---------------------------------------------------------------------------

bool in_weil_interval(std::uint32_t q, unsigned g, long h)
{
    const long double s = std::sqrt(static_cast<long double>(q));
    const long double lo = std::pow(s - 1, 2.0L * g), hi = std::pow(s + 1, 2.0L * g);
    return h >= lo - 1e-9L && h <= hi + 1e-9L;
}

ZetaData zeta_numerator(const HyperellipticCurve& C)
{
    const unsigned g = C.genus();
    if (g > 2)
        throw ValidationError("point counting is limited to genus <= 2");
    const FiniteField& F = *C.F;
    const long q = F.q();
    PolyRing R = C.ring();
    QuadraticExtension E{&F};

    long n1 = q + 1;
    for (long x = 0; x < q; ++x)
        n1 += F.chi(R.eval(C.f, FElem(x)));
    long n2 = q * q + 1;
    for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b)
            n2 += E.chi(R.eval(E, C.f, {FElem(a), FElem(b)}));

    ZetaData z;
    z.g = g;
    z.points = {n1, n2};
    z.points.resize(g);
    const long S[3] = {0, q + 1 - n1, q * q + 1 - n2};
    std::vector<long> c(2 * g + 1, 0);
    c[0] = 1;
    for (unsigned k = 1; k <= g; ++k) {
        long acc = 0;
        for (unsigned i = 1; i <= k; ++i)
            acc += S[i] * c[k - i];
        if (acc % long(k))
            throw ComputationError("Newton identity gives a non-integral coefficient");
        c[k] = -acc / long(k);
    }
    long qp = 1;
    for (unsigned i = g; i-- > 0;) {
        qp *= q;  // q^{g-i}
        c[2 * g - i] = qp * c[i];
    }
    if (g == 1) {
        // N_2 is not used above; it must match c_2 = q
        const long s2 = c[1] * c[1] - 2 * c[2];
        z.redundant_counts_agree = s2 == S[2];
        if (!z.redundant_counts_agree)
            throw ComputationError("zeta numerator fails the functional equation");
    }
    z.coefficients = c;
    z.h = 0;
    for (long x : c)
        z.h += x;
    const long double sq = std::sqrt(static_cast<long double>(q));
    for (unsigned i = 0; i <= 2 * g; ++i) {
        long double binom = 1;
        for (unsigned j = 0; j < i; ++j)
            binom = binom * (2 * g - j) / (j + 1);
        if (std::fabs(static_cast<long double>(c[i])) > binom * std::pow(sq, i) + 1e-9L)
            z.coefficient_bounds = false;
    }
    z.weil_interval = in_weil_interval(F.q(), g, z.h);
    return z;
}

long jacobian_order(const HyperellipticCurve& C) { return zeta_numerator(C).h; }

std::uint64_t l_power_part(long h, std::uint32_t l)
{
    if (h <= 0)
        throw ComputationError("class number must be positive");
    std::uint64_t part = 1;
    while (h % long(l) == 0) {
        h /= long(l);
        part *= l;
    }
    return part;
}

namespace {

// Explicit finite subgroup of the Jacobian.
struct Subgroup {
    const HyperellipticCurve* C;
    std::vector<MumfordDivisor> elems;
    std::unordered_map<std::uint64_t, std::size_t> index;

    explicit Subgroup(const HyperellipticCurve& curve) : C(&curve)
    {
        insert(MumfordDivisor{});
    }
    bool contains(const MumfordDivisor& D) const { return index.count(divisor_key(*C, D)) > 0; }
    void insert(const MumfordDivisor& D)
    {
        index.emplace(divisor_key(*C, D), elems.size());
        elems.push_back(D);
    }
    /// H <- H + <x>, as the union of cosets H + kx
    void adjoin(const MumfordDivisor& x, std::uint64_t cap)
    {
        if (contains(x))
            return;
        const std::vector<MumfordDivisor> base = elems;
        MumfordDivisor kx = x;
        while (!contains(kx)) {
            for (const auto& h : base)
                insert(cantor_add(h, kx, *C));
            if (elems.size() > cap)
                throw BudgetError("Sylow subgroup exceeds the structure budget");
            kx = cantor_add(kx, x, *C);
        }
    }
};

AbelianLGroup type_of(const Subgroup& H, std::uint32_t l)
{
    const HyperellipticCurve& C = *H.C;
    const std::size_t n = H.elems.size();
    std::vector<std::size_t> times_l(n);
    for (std::size_t i = 0; i < n; ++i)
        times_l[i] = H.index.at(divisor_key(C, scalar_mul(l, H.elems[i], C)));
    // exponent k of the order l^k of each element; identity is index 0
    std::vector<unsigned> ord(n, 0);
    unsigned max_k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i;
        unsigned k = 0;
        while (j != 0) {
            j = times_l[j];
            ++k;
            if (k > 64)
                throw ComputationError("element of the Sylow subgroup has non-l-power order");
        }
        ord[i] = k;
        max_k = std::max(max_k, k);
    }
    // log_l |H[l^k]| = sum_i min(e_i, k); its increments count parts >= k
    std::vector<unsigned> logsize(max_k + 1, 0);
    for (unsigned k = 0; k <= max_k; ++k) {
        std::size_t cnt = 0;
        for (unsigned o : ord)
            cnt += o <= k;
        unsigned e = 0;
        while (cnt > 1) {
            if (cnt % l)
                throw ComputationError("torsion subgroup order is not a power of l");
            cnt /= l;
            ++e;
        }
        logsize[k] = e;
    }
    std::vector<unsigned> exps;
    for (unsigned k = max_k; k >= 1; --k) {
        const unsigned at_least_k = logsize[k] - logsize[k - 1];
        const unsigned at_least_k1 = k < max_k ? logsize[k + 1] - logsize[k] : 0;
        for (unsigned i = 0; i < at_least_k - at_least_k1; ++i)
            exps.push_back(k);
    }
    return AbelianLGroup::make(l, exps);
}

}  // namespace

AbelianLGroup l_part_structure(const HyperellipticCurve& C, std::uint32_t l, long h,
                               const ReducedDivisorTables& tables, CounterRng& rng,
                               const SylowOptions& opt)
{
    if (l % 2 == 0 || !is_prime(l))
        throw ValidationError("l must be an odd prime");
    if (C.F->p() == l)
        throw ValidationError("l must not divide q");
    const std::uint64_t hl = l_power_part(h, l);
    if (hl == 1)
        return AbelianLGroup::make(l, {});
    if (hl > opt.structure_budget)
        throw BudgetError("l-part of order " + std::to_string(hl) + " exceeds the structure budget");
    const std::uint64_t cofactor = static_cast<std::uint64_t>(h) / hl;

    Subgroup H(C);
    for (unsigned round = 0; round < opt.max_rounds && H.elems.size() < hl; ++round)
        for (unsigned s = 0; s < opt.samples_per_round; ++s)
            H.adjoin(scalar_mul(cofactor, tables.random_divisor(C, rng), C), hl);
    if (H.elems.size() < hl) {
        for (const auto& D : tables.enumerate(C))
            H.adjoin(scalar_mul(cofactor, D, C), hl);
    }
    if (H.elems.size() != hl)
        throw ComputationError("Sylow subgroup has order " + std::to_string(H.elems.size()) +
                               ", expected " + std::to_string(hl));
    return type_of(H, l);
}

}  // namespace hurwitz
