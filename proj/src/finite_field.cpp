#include "hurwitz/finite_field.hpp"

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

// Polynomials over F_p as digit vectors, low to high.
using PPoly = std::vector<std::uint32_t>;

PPoly ppoly_mod(PPoly a, const PPoly& m, std::uint32_t p)
{
    // m monic
    while (a.size() >= m.size()) {
        std::uint32_t c = a.back();
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        a.pop_back();
        while (!a.empty() && a.back() == 0)
            a.pop_back();
    }
    return a;
}

bool irreducible(const PPoly& m, std::uint32_t p)
{
    const unsigned k = static_cast<unsigned>(m.size() - 1);
    for (unsigned d = 1; 2 * d <= k; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            PPoly f(d + 1, 0);
            f[d] = 1;
            std::uint64_t x = idx;
            for (unsigned i = 0; i < d; ++i) {
                f[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            if (ppoly_mod(m, f, p).empty())
                return false;
        }
    }
    return true;
}

}  // namespace

PrimePower prime_power(std::uint32_t q)
{
    if (q < 2)
        throw ValidationError("field size must be at least 2");
    std::uint32_t p = 2;
    while (q % p)
        ++p;
    unsigned k = 0;
    std::uint32_t x = q;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    if (x != 1)
        throw ValidationError(std::to_string(q) + " is not a prime power");
    return {p, k};
}

FiniteField::FiniteField(std::uint32_t q) : q_(q)
{
    auto pk = prime_power(q);
    p_ = pk.p;
    k_ = pk.k;
    if (p_ == 2)
        throw ValidationError("characteristic 2 is not supported");
    if (q > 1024)
        throw ValidationError("field tables limited to q <= 1024");

    // least irreducible monic of degree k, by index order of its lower digits
    if (k_ == 1) {
        modulus_ = {0, 1};
    } else {
        for (std::uint32_t idx = 0;; ++idx) {
            PPoly m(k_ + 1, 0);
            m[k_] = 1;
            std::uint32_t x = idx;
            for (unsigned i = 0; i < k_; ++i) {
                m[i] = x % p_;
                x /= p_;
            }
            if (m[0] != 0 && irreducible(m, p_)) {
                modulus_ = m;
                break;
            }
        }
    }
    auto digits = [&](std::uint32_t a) {
        PPoly d(k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    };
    auto pack = [&](const PPoly& d) {
        std::uint32_t a = 0;
        for (std::size_t i = d.size(); i-- > 0;)
            a = a * p_ + d[i];
        return a;
    };
    add_.resize(std::size_t(q) * q);
    mul_.resize(std::size_t(q) * q);
    neg_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        auto da = digits(a);
        PPoly n(k_);
        for (unsigned i = 0; i < k_; ++i)
            n[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<FElem>(pack(n));
        for (std::uint32_t b = 0; b < q; ++b) {
            auto db = digits(b);
            PPoly s(k_);
            for (unsigned i = 0; i < k_; ++i)
                s[i] = (da[i] + db[i]) % p_;
            add_[std::size_t(a) * q + b] = static_cast<FElem>(pack(s));
            PPoly prod(2 * k_, 0);
            for (unsigned i = 0; i < k_; ++i)
                for (unsigned j = 0; j < k_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            while (!prod.empty() && prod.back() == 0)
                prod.pop_back();
            auto r = ppoly_mod(prod, modulus_, p_);
            r.resize(k_, 0);
            mul_[std::size_t(a) * q + b] = static_cast<FElem>(pack(r));
        }
    }
    inv_.assign(q, 0);
    square_.assign(q, false);
    for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t b = 1; b < q; ++b)
            if (mul(FElem(a), FElem(b)) == 1) {
                inv_[a] = static_cast<FElem>(b);
                break;
            }
    for (std::uint32_t a = 0; a < q; ++a)
        square_[mul(FElem(a), FElem(a))] = true;
    for (std::uint32_t a = 1; a < q; ++a)
        if (!square_[a]) {
            nonsquare_ = static_cast<FElem>(a);
            break;
        }
}

FElem FiniteField::inv(FElem a) const
{
    if (a == 0)
        throw ComputationError("division by zero in F_" + std::to_string(q_));
    return inv_[a];
}

FElem FiniteField::pow(FElem a, std::uint64_t e) const
{
    FElem r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FElem FiniteField::from_int(long x) const
{
    long r = x % long(p_);
    return static_cast<FElem>(r < 0 ? r + p_ : r);
}

std::string FiniteField::to_string(FElem a) const
{
    if (k_ == 1)
        return std::to_string(a);
    std::string s;
    for (unsigned i = k_; i-- > 0;) {
        std::uint32_t d = a;
        for (unsigned j = 0; j < i; ++j)
            d /= p_;
        d %= p_;
        if (!d)
            continue;
        if (!s.empty())
            s += "+";
        s += i == 0 ? std::to_string(d) : (d == 1 ? "" : std::to_string(d)) + (i == 1 ? "t" : "t^" + std::to_string(i));
    }
    return s.empty() ? "0" : s;
}

QuadraticExtension::Elem QuadraticExtension::mul(Elem x, Elem y) const
{
    const FElem nu = F->nonsquare();
    return {F->add(F->mul(x.a, y.a), F->mul(nu, F->mul(x.b, y.b))),
            F->add(F->mul(x.a, y.b), F->mul(x.b, y.a))};
}

FElem QuadraticExtension::norm(Elem x) const
{
    return F->sub(F->mul(x.a, x.a), F->mul(F->nonsquare(), F->mul(x.b, x.b)));
}

int QuadraticExtension::chi(Elem x) const { return F->chi(norm(x)); }

// ---------------------------------------------------------------------------

void PolyRing::trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

Poly PolyRing::add(const Poly& a, const Poly& b) const
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F->add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

Poly PolyRing::neg(const Poly& a) const
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = F->neg(a[i]);
    return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::mul(const Poly& a, const Poly& b) const
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i])
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F->add(r[i + j], F->mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly PolyRing::scale(const Poly& a, FElem c) const
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = F->mul(a[i], c);
    trim(r);
    return r;
}

void PolyRing::divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) const
{
    if (b.empty())
        throw ComputationError("polynomial division by zero");
    remainder = a;
    quotient.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    const FElem li = F->inv(b.back());
    while (remainder.size() >= b.size()) {
        FElem c = F->mul(remainder.back(), li);
        std::size_t shift = remainder.size() - b.size();
        quotient[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            remainder[shift + i] = F->sub(remainder[shift + i], F->mul(c, b[i]));
        remainder.pop_back();
        trim(remainder);
    }
    trim(quotient);
}

Poly PolyRing::mod(const Poly& a, const Poly& b) const
{
    Poly q, r;
    divmod(a, b, q, r);
    return r;
}

Poly PolyRing::div_exact(const Poly& a, const Poly& b) const
{
    Poly q, r;
    divmod(a, b, q, r);
    if (!r.empty())
        throw ComputationError("inexact polynomial division");
    return q;
}

Poly PolyRing::monic(const Poly& a) const
{
    if (a.empty())
        return a;
    return scale(a, F->inv(a.back()));
}

Poly PolyRing::gcd(Poly a, Poly b) const
{
    while (!b.empty()) {
        Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

void PolyRing::xgcd(const Poly& a, const Poly& b, Poly& d, Poly& s, Poly& t) const
{
    Poly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        Poly q, r;
        divmod(r0, r1, q, r);
        Poly s2 = sub(s0, mul(q, s1));
        Poly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        d = {};
        s = {};
        t = {};
        return;
    }
    FElem li = F->inv(r0.back());
    d = scale(r0, li);
    s = scale(s0, li);
    t = scale(t0, li);
}

Poly PolyRing::derivative(const Poly& a) const
{
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(F->mul(F->from_int(long(i % F->p())), a[i]));
    trim(r);
    return r;
}

FElem PolyRing::eval(const Poly& a, FElem x) const
{
    FElem r = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        r = F->add(F->mul(r, x), a[i]);
    return r;
}

QuadraticExtension::Elem PolyRing::eval(const QuadraticExtension& E, const Poly& a,
                                        QuadraticExtension::Elem x) const
{
    QuadraticExtension::Elem r{0, 0};
    for (std::size_t i = a.size(); i-- > 0;)
        r = E.add(E.mul(r, x), E.embed(a[i]));
    return r;
}

bool PolyRing::squarefree(const Poly& a) const
{
    if (a.empty())
        return false;
    return gcd(a, derivative(a)).size() == 1;
}

Poly PolyRing::monic_from_index(unsigned n, std::uint64_t index) const
{
    Poly f(n + 1, 0);
    f[n] = 1;
    for (unsigned i = 0; i < n; ++i) {
        f[i] = static_cast<FElem>(index % F->q());
        index /= F->q();
    }
    return f;
}

std::string PolyRing::to_string(const Poly& a) const
{
    if (a.empty())
        return "0";
    std::string s;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (!a[i])
            continue;
        std::string c = F->to_string(a[i]);
        if (F->k() > 1 && c.find('+') != std::string::npos)
            c = "(" + c + ")";
        if (!s.empty())
            s += " + ";
        if (i == 0)
            s += c;
        else
            s += (a[i] == 1 ? "" : c + "*") + (i == 1 ? "x" : "x^" + std::to_string(i));
    }
    return s;
}

}  // namespace hurwitz
