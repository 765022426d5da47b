#pragma once

#include "trop/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trop {

// Laurent polynomial in the formal variable q = y^(1/2), exact rational
// coefficients. Canonical form: no zero coefficient is ever stored.
class QLaurent {
public:
    QLaurent() = default;
    static QLaurent zero() { return {}; }
    static QLaurent one() { return monomial(0, 1); }
    static QLaurent monomial(int exp, Rat coeff);

    bool is_zero() const { return coeffs_.empty(); }
    int min_exp() const;  // throws on zero
    int max_exp() const;
    Rat coeff(int exp) const;
    const std::map<int, Rat>& terms() const { return coeffs_; }
    size_t term_count() const { return coeffs_.size(); }

    void add_term(int exp, const Rat& c);  // accumulates, drops zeros

    QLaurent operator+(const QLaurent& o) const;
    QLaurent operator-(const QLaurent& o) const;
    QLaurent operator-() const;
    QLaurent operator*(const QLaurent& o) const;
    QLaurent operator*(const Rat& s) const;
    bool operator==(const QLaurent& o) const { return coeffs_ == o.coeffs_; }

    QLaurent shifted(int k) const;  // multiplication by q^k

    // Substitutes a nonzero rational for q.
    Rat eval_q(const Rat& v) const;

    bool all_coeffs_integer() const;
    std::string str(const std::string& var = "q") const;

private:
    std::map<int, Rat> coeffs_;
};

QLaurent operator*(const Rat& s, const QLaurent& p);

// Exact quotient a/b over Q[q^{±1}], or nullopt if b does not divide a.
std::optional<QLaurent> divide_exact(const QLaurent& a, const QLaurent& b);

// Laurent polynomial in y. Produced from even-exponent q-polynomials only.
class YLaurent {
public:
    YLaurent() = default;
    explicit YLaurent(std::map<int, Rat> terms);
    static YLaurent constant(Rat c);

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<int, Rat>& terms() const { return coeffs_; }
    Rat coeff(int exp) const;
    bool operator==(const YLaurent& o) const { return coeffs_ == o.coeffs_; }
    YLaurent operator+(const YLaurent& o) const;
    YLaurent operator*(const Rat& s) const;

    bool all_coeffs_integer() const;
    std::string str() const;

private:
    std::map<int, Rat> coeffs_;
};

// Re-indexes q-exponents by halving. Throws std::domain_error if any exponent
// is odd (signals a multiplicity-assembly bug upstream).
YLaurent to_y(const QLaurent& p);

// Substitutes a nonzero rational for y.
Rat eval_y(const YLaurent& p, const Rat& v);

// Largest k with (q + q^{-1})^k dividing p exactly; p must be nonzero.
int plus_divisibility_order(const QLaurent& p);

// coeff(q^e) == coeff(q^{-e}) for all e.
bool is_symmetric(const QLaurent& p);

// The expanded quantum bracket (q^a - q^{-a})/(q - q^{-1}):
// q^{a-1} + q^{a-3} + ... + q^{-(a-1)} for a > 0, zero at a = 0,
// antisymmetric in a.
QLaurent bracket_minus(long long a);

// Quotient of Laurent polynomials, kept unreduced apart from monomial
// cancellation. Normalized so den's lowest exponent is 0 and its lowest
// coefficient is 1.
class QFraction {
public:
    QFraction() : num_(QLaurent::zero()), den_(QLaurent::one()) {}
    QFraction(QLaurent num, QLaurent den);
    static QFraction of(const QLaurent& p) { return QFraction(p, QLaurent::one()); }
    static QFraction one() { return of(QLaurent::one()); }

    const QLaurent& num() const { return num_; }
    const QLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    QFraction operator*(const QFraction& o) const;
    QFraction operator+(const QFraction& o) const;
    QFraction operator*(const Rat& s) const;
    bool operator==(const QFraction& o) const;  // cross-multiplication

    // Exact division num/den where the algebra guarantees a Laurent result.
    std::optional<QLaurent> reduce() const;

    // num(v)/den(v); throws if den vanishes at v.
    Rat eval_q(const Rat& v) const;

    std::string str() const;

private:
    void normalize();
    QLaurent num_, den_;
};

// The plus-bracket (q^a + q^{-a})/(q + q^{-1}); symmetric in a, a Laurent
// polynomial exactly when a is odd. a = 0 is rejected as degenerate.
QFraction bracket_plus(long long a);

// Multiplicity of an end of weight w:
//   fixed:     (q^w + (-1)^w q^{-w}) / (q + (-1)^w q^{-1})
//   non-fixed: (q^w - (-1)^w q^{-w}) / (w (q - (-1)^w q^{-1}))
QFraction end_mult(long long w, bool fixed);

// The simpler alternative end multiplicity:
//   fixed:     (q^w + q^{-w}) / (q + q^{-1})
//   non-fixed: (q^w - q^{-w}) / (w (q - q^{-1}))
QFraction end_mult_simple(long long w, bool fixed);

} // namespace trop
