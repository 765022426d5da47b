#include "trop/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace trop {

QLaurent QLaurent::monomial(int exp, Rat coeff) {
    QLaurent p;
    if (coeff != 0) p.coeffs_[exp] = std::move(coeff);
    return p;
}

int QLaurent::min_exp() const {
    if (coeffs_.empty()) throw std::domain_error("min_exp of zero polynomial");
    return coeffs_.begin()->first;
}

int QLaurent::max_exp() const {
    if (coeffs_.empty()) throw std::domain_error("max_exp of zero polynomial");
    return coeffs_.rbegin()->first;
}

Rat QLaurent::coeff(int exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void QLaurent::add_term(int exp, const Rat& c) {
    if (c == 0) return;
    auto it = coeffs_.find(exp);
    if (it == coeffs_.end()) {
        coeffs_[exp] = c;
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
    QLaurent r = *this;
    for (const auto& [e, c] : o.coeffs_) r.add_term(e, c);
    return r;
}

QLaurent QLaurent::operator-(const QLaurent& o) const {
    QLaurent r = *this;
    for (const auto& [e, c] : o.coeffs_) r.add_term(e, Rat(-c));
    return r;
}

QLaurent QLaurent::operator-() const {
    QLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

QLaurent QLaurent::operator*(const QLaurent& o) const {
    QLaurent r;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) r.add_term(e1 + e2, Rat(c1 * c2));
    return r;
}

QLaurent QLaurent::operator*(const Rat& s) const {
    QLaurent r;
    if (s == 0) return r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = c * s;
    return r;
}

QLaurent operator*(const Rat& s, const QLaurent& p) { return p * s; }

QLaurent QLaurent::shifted(int k) const {
    QLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + k] = c;
    return r;
}

Rat QLaurent::eval_q(const Rat& v) const {
    if (v == 0) throw std::domain_error("Laurent evaluation at 0");
    Rat acc(0);
    for (const auto& [e, c] : coeffs_) {
        Rat p(1);
        int n = e < 0 ? -e : e;
        for (int i = 0; i < n; ++i) p *= v;
        if (e < 0) p = 1 / p;
        acc += c * p;
    }
    return acc;
}

bool QLaurent::all_coeffs_integer() const {
    for (const auto& [e, c] : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

namespace {

std::string term_str(const Rat& c, int e, const std::string& var, bool lead) {
    std::ostringstream os;
    Rat a = abs(c);
    if (c < 0)
        os << (lead ? "-" : "- ");
    else if (!lead)
        os << "+ ";
    if (e == 0) {
        os << rat_str(a);
    } else {
        if (a != 1) os << rat_str(a) << "*";
        os << var;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::string poly_str(const std::map<int, Rat>& terms, const std::string& var) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool lead = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (!lead) os << " ";
        os << term_str(it->second, it->first, var, lead);
        lead = false;
    }
    return os.str();
}

} // namespace

std::string QLaurent::str(const std::string& var) const { return poly_str(coeffs_, var); }

std::optional<QLaurent> divide_exact(const QLaurent& a, const QLaurent& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return QLaurent::zero();
    QLaurent rem = a;
    QLaurent quot;
    const int blead = b.max_exp();
    const Rat bcoef = b.coeff(blead);
    while (!rem.is_zero()) {
        int rlead = rem.max_exp();
        if (rem.max_exp() - rem.min_exp() < b.max_exp() - b.min_exp()) return std::nullopt;
        Rat f = rem.coeff(rlead) / bcoef;
        int sh = rlead - blead;
        quot.add_term(sh, f);
        rem = rem - b.shifted(sh) * f;
    }
    return quot;
}

YLaurent::YLaurent(std::map<int, Rat> terms) : coeffs_(std::move(terms)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (it->second == 0) ? coeffs_.erase(it) : std::next(it);
}

YLaurent YLaurent::constant(Rat c) {
    std::map<int, Rat> m;
    if (c != 0) m[0] = std::move(c);
    return YLaurent(std::move(m));
}

Rat YLaurent::coeff(int exp) const {
    auto it = coeffs_.find(exp);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

YLaurent YLaurent::operator+(const YLaurent& o) const {
    std::map<int, Rat> m = coeffs_;
    for (const auto& [e, c] : o.coeffs_) {
        auto [it, fresh] = m.try_emplace(e, c);
        if (!fresh) it->second += c;
    }
    return YLaurent(std::move(m));
}

YLaurent YLaurent::operator*(const Rat& s) const {
    std::map<int, Rat> m;
    if (s != 0)
        for (const auto& [e, c] : coeffs_) m[e] = c * s;
    return YLaurent(std::move(m));
}

bool YLaurent::all_coeffs_integer() const {
    for (const auto& [e, c] : coeffs_)
        if (c.get_den() != 1) return false;
    return true;
}

std::string YLaurent::str() const { return poly_str(coeffs_, "y"); }

YLaurent to_y(const QLaurent& p) {
    std::map<int, Rat> m;
    for (const auto& [e, c] : p.terms()) {
        if (e % 2 != 0) throw std::domain_error("not a y-polynomial: odd q-exponent " + std::to_string(e));
        m[e / 2] = c;
    }
    return YLaurent(std::move(m));
}

Rat eval_y(const YLaurent& p, const Rat& v) {
    if (v == 0) throw std::domain_error("evaluation at y=0");
    Rat acc(0);
    for (const auto& [e, c] : p.terms()) {
        Rat pw(1);
        int n = e < 0 ? -e : e;
        for (int i = 0; i < n; ++i) pw *= v;
        if (e < 0) pw = 1 / pw;
        acc += c * pw;
    }
    return acc;
}

int plus_divisibility_order(const QLaurent& p) {
    if (p.is_zero()) throw std::domain_error("plus_divisibility_order of zero");
    QLaurent d = QLaurent::monomial(1, 1) + QLaurent::monomial(-1, 1);
    int k = 0;
    QLaurent cur = p;
    for (;;) {
        auto q = divide_exact(cur, d);
        if (!q) return k;
        cur = *q;
        ++k;
    }
}

bool is_symmetric(const QLaurent& p) {
    for (const auto& [e, c] : p.terms())
        if (p.coeff(-e) != c) return false;
    return true;
}

QLaurent bracket_minus(long long a) {
    if (a == 0) return QLaurent::zero();
    if (a < 0) return -bracket_minus(-a);
    QLaurent r;
    for (long long k = 0; k < a; ++k) r.add_term(static_cast<int>(a - 1 - 2 * k), 1);
    return r;
}

QFraction::QFraction(QLaurent num, QLaurent den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("fraction with zero denominator");
    normalize();
}

void QFraction::normalize() {
    // Cancel the common monomial: shift so den starts at exponent 0, then
    // scale so den's lowest coefficient is 1.
    int sh = -den_.min_exp();
    den_ = den_.shifted(sh);
    num_ = num_.shifted(sh);
    Rat lead = den_.coeff(den_.min_exp());
    if (lead != 1) {
        Rat inv = 1 / lead;
        den_ = den_ * inv;
        num_ = num_ * inv;
    }
}

QFraction QFraction::operator*(const QFraction& o) const {
    return QFraction(num_ * o.num_, den_ * o.den_);
}

QFraction QFraction::operator+(const QFraction& o) const {
    return QFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QFraction QFraction::operator*(const Rat& s) const { return QFraction(num_ * s, den_); }

bool QFraction::operator==(const QFraction& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

std::optional<QLaurent> QFraction::reduce() const { return divide_exact(num_, den_); }

Rat QFraction::eval_q(const Rat& v) const {
    Rat d = den_.eval_q(v);
    if (d == 0) throw std::domain_error("fraction denominator vanishes at evaluation point");
    return num_.eval_q(v) / d;
}

std::string QFraction::str() const {
    if (den_ == QLaurent::one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

QFraction bracket_plus(long long a) {
    if (a == 0) throw std::invalid_argument("bracket_plus(0) is degenerate");
    if (a < 0) a = -a;
    QLaurent num = QLaurent::monomial(static_cast<int>(a), 1) + QLaurent::monomial(static_cast<int>(-a), 1);
    QLaurent den = QLaurent::monomial(1, 1) + QLaurent::monomial(-1, 1);
    return QFraction(std::move(num), std::move(den));
}

QFraction end_mult(long long w, bool fixed) {
    if (w < 1) throw std::invalid_argument("end weight must be >= 1");
    const int wi = static_cast<int>(w);
    const Rat sgn = (w % 2 == 0) ? Rat(1) : Rat(-1);  // (-1)^w
    if (fixed) {
        QLaurent num = QLaurent::monomial(wi, 1) + QLaurent::monomial(-wi, sgn);
        QLaurent den = QLaurent::monomial(1, 1) + QLaurent::monomial(-1, sgn);
        return QFraction(std::move(num), std::move(den));
    }
    QLaurent num = QLaurent::monomial(wi, 1) - QLaurent::monomial(-wi, sgn);
    QLaurent den = (QLaurent::monomial(1, 1) - QLaurent::monomial(-1, sgn)) * rat_of(w);
    return QFraction(std::move(num), std::move(den));
}

QFraction end_mult_simple(long long w, bool fixed) {
    if (w < 1) throw std::invalid_argument("end weight must be >= 1");
    const int wi = static_cast<int>(w);
    if (fixed) {
        QLaurent num = QLaurent::monomial(wi, 1) + QLaurent::monomial(-wi, 1);
        QLaurent den = QLaurent::monomial(1, 1) + QLaurent::monomial(-1, 1);
        return QFraction(std::move(num), std::move(den));
    }
    QLaurent num = QLaurent::monomial(wi, 1) - QLaurent::monomial(-wi, 1);
    QLaurent den = (QLaurent::monomial(1, 1) - QLaurent::monomial(-1, 1)) * rat_of(w);
    return QFraction(std::move(num), std::move(den));
}

} // namespace trop
