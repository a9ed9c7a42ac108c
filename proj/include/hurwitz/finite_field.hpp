// F_q for odd q = p^k by lookup tables, its quadratic extension, and
// polynomials over F_q.
//
// An element of F_q is the integer whose base-p digits are its coefficients
// in F_p[t]/(m(t)), m the least irreducible monic of degree k.  So F_p sits
// inside as 0..p-1.
#ifndef HURWITZ_FINITE_FIELD_HPP
#define HURWITZ_FINITE_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hurwitz {

using FElem = std::uint16_t;

class FiniteField {
public:
    /// Throws ValidationError unless q is an odd prime power <= 1024.
    explicit FiniteField(std::uint32_t q);

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    unsigned k() const { return k_; }
    /// coefficients of m(t), low to high, length k + 1
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FElem add(FElem a, FElem b) const { return add_[std::size_t(a) * q_ + b]; }
    FElem mul(FElem a, FElem b) const { return mul_[std::size_t(a) * q_ + b]; }
    FElem neg(FElem a) const { return neg_[a]; }
    FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }
    /// Throws ComputationError on zero.
    FElem inv(FElem a) const;
    FElem pow(FElem a, std::uint64_t e) const;
    FElem from_int(long x) const;

    bool is_square(FElem a) const { return square_[a]; }
    /// quadratic character: 0, 1 or -1
    int chi(FElem a) const { return a == 0 ? 0 : (square_[a] ? 1 : -1); }
    /// least nonsquare in the element order
    FElem nonsquare() const { return nonsquare_; }

    std::string to_string(FElem a) const;

private:
    std::uint32_t q_, p_;
    unsigned k_;
    std::vector<std::uint32_t> modulus_;
    std::vector<FElem> add_, mul_, neg_, inv_;
    std::vector<bool> square_;
    FElem nonsquare_ = 0;
};

/// (q, p, k) with q = p^k, or throws ValidationError.
struct PrimePower {
    std::uint32_t p = 0;
    unsigned k = 0;
};
PrimePower prime_power(std::uint32_t q);

/// F_{q^2} = F_q(s) with s^2 = nonsquare.
struct QuadraticExtension {
    const FiniteField* F;
    struct Elem {
        FElem a = 0, b = 0;  // a + b s
    };
    Elem add(Elem x, Elem y) const { return {F->add(x.a, y.a), F->add(x.b, y.b)}; }
    Elem mul(Elem x, Elem y) const;
    Elem embed(FElem a) const { return {a, 0}; }
    /// a^2 - nu b^2
    FElem norm(Elem x) const;
    /// z is a square in F_{q^2} iff its norm is a square in F_q
    int chi(Elem x) const;
};

// ---------------------------------------------------------------------------

/// Coefficients low to high with no trailing zeros; the zero polynomial is
/// empty.
using Poly = std::vector<FElem>;

struct PolyRing {
    const FiniteField* F;

    static long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }
    static void trim(Poly& a);
    FElem lead(const Poly& a) const { return a.empty() ? 0 : a.back(); }

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly scale(const Poly& a, FElem c) const;
    /// a = quotient * b + remainder; throws ComputationError for b = 0
    void divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) const;
    Poly mod(const Poly& a, const Poly& b) const;
    Poly div_exact(const Poly& a, const Poly& b) const;
    Poly monic(const Poly& a) const;
    /// monic gcd (zero if both are zero)
    Poly gcd(Poly a, Poly b) const;
    /// d = s a + t b with d the monic gcd
    void xgcd(const Poly& a, const Poly& b, Poly& d, Poly& s, Poly& t) const;
    Poly derivative(const Poly& a) const;
    FElem eval(const Poly& a, FElem x) const;
    QuadraticExtension::Elem eval(const QuadraticExtension& E, const Poly& a,
                                  QuadraticExtension::Elem x) const;
    bool squarefree(const Poly& a) const;

    /// Monic polynomial of degree n from its index in [0, q^n): base-q digits
    /// are the lower coefficients.
    Poly monic_from_index(unsigned n, std::uint64_t index) const;
    std::string to_string(const Poly& a) const;
};

}  // namespace hurwitz

#endif
