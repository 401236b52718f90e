#pragma once

#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qsphere/rational.hpp"

namespace qsphere {

/// Integer exponent pair of a Laurent monomial q^a * qb^b.
struct QExponent {
    int q = 0;
    int qb = 0;
    auto operator<=>(const QExponent &) const = default;
};

class UnitCircleScalar;

/// Element of the coefficient ring Q[q^{+-1}, qb^{+-1}]: a finite sum of
/// Laurent monomials in the two commuting formal symbols q and qb with
/// rational coefficients. Canonical form stores no zero coefficients, so
/// structural equality is ring equality. Values are immutable in spirit:
/// every operation returns a fresh canonical Scalar.
class Scalar {
  public:
    using TermMap = std::map<QExponent, Rational>;

    Scalar() = default;
    Scalar(int value) { insert({0, 0}, Rational(value)); }
    Scalar(const Rational &value) { insert({0, 0}, value); }

    static Scalar monomial(Rational coeff, int q_exp, int qb_exp)
    {
        Scalar s;
        s.insert({q_exp, qb_exp}, std::move(coeff));
        return s;
    }
    static Scalar q(int power = 1) { return monomial(1, power, 0); }
    static Scalar qb(int power = 1) { return monomial(1, 0, power); }
    /// q*qb, the ring's stand-in for |q|^2.
    static Scalar q_qb() { return monomial(1, 1, 1); }
    /// 1 - q*qb, the factor controlling the |q| = 1 specialization.
    static Scalar one_minus_q_qb() { return Scalar(1) - q_qb(); }

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const
    {
        if (terms_.empty())
            return true;
        return terms_.size() == 1 && terms_.begin()->first == QExponent{0, 0};
    }
    /// Coefficient of q^a*qb^b (zero if absent).
    Rational coefficient(int q_exp, int qb_exp) const
    {
        auto it = terms_.find({q_exp, qb_exp});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational rational_value() const { return coefficient(0, 0); }

    bool operator==(const Scalar &other) const = default;

    Scalar operator-() const
    {
        Scalar r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e, -c);
        return r;
    }
    Scalar &operator+=(const Scalar &other)
    {
        for (const auto &[e, c] : other.terms_)
            insert(e, c);
        return *this;
    }
    Scalar &operator-=(const Scalar &other)
    {
        for (const auto &[e, c] : other.terms_)
            insert(e, -c);
        return *this;
    }
    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b)
    {
        Scalar r;
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_)
                r.insert({ea.q + eb.q, ea.qb + eb.qb}, ca * cb);
        return r;
    }
    Scalar &operator*=(const Scalar &other) { return *this = *this * other; }

    /// The involution q <-> qb; rational coefficients are real and stay put.
    Scalar conj() const
    {
        Scalar r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(QExponent{e.qb, e.q}, c);
        return r;
    }

    /// Exponent negation q -> q^{-1}, qb -> qb^{-1}.
    Scalar substitute_q_inverse() const
    {
        Scalar r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(QExponent{-e.q, -e.qb}, c);
        return r;
    }

    /// Numeric substitution q -> q0, qb -> conj(q0). Rational coefficients
    /// are converted to floating point last, after the exact bookkeeping.
    std::complex<double> eval(std::complex<double> q0) const
    {
        if (q0 == std::complex<double>(0.0, 0.0))
            throw std::domain_error("scalar_eval: q0 = 0 is outside the Laurent domain");
        std::complex<double> acc(0.0, 0.0);
        for (const auto &[e, c] : terms_) {
            std::complex<double> m = ipow(q0, e.q) * ipow(std::conj(q0), e.qb);
            acc += rational_to_double(c) * m;
        }
        return acc;
    }

    UnitCircleScalar unit_circle() const;

    Scalar pow(int exponent) const
    {
        if (exponent < 0)
            throw std::domain_error("Scalar::pow: negative exponent");
        Scalar r(1);
        for (int i = 0; i < exponent; ++i)
            r *= *this;
        return r;
    }

    /// Canonical text form: terms sorted by (a, b), coefficients in lowest
    /// terms, unit coefficients and unit exponents elided, ` + ` / ` - `
    /// separators carrying the sign.
    std::string str() const;

    auto operator<=>(const Scalar &other) const { return terms_ <=> other.terms_; }

  private:
    void insert(QExponent e, const Rational &c)
    {
        if (c == 0)
            return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    static std::complex<double> ipow(std::complex<double> base, int e)
    {
        if (e == 0)
            return {1.0, 0.0};
        std::complex<double> b = e > 0 ? base : 1.0 / base;
        int n = e > 0 ? e : -e;
        std::complex<double> r(1.0, 0.0);
        while (n > 0) {
            if (n & 1)
                r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    TermMap terms_;
};

/// Image of Scalar in Q[q^{+-1}] / (q*qb = 1): the exact carrier of the
/// |q| = 1 specialization. q^a*qb^b collapses to q^{a-b}.
class UnitCircleScalar {
  public:
    using TermMap = std::map<int, Rational>;

    UnitCircleScalar() = default;

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const UnitCircleScalar &other) const = default;

    void add(int exponent, const Rational &c)
    {
        if (c == 0)
            return;
        auto it = terms_.find(exponent);
        if (it == terms_.end()) {
            terms_.emplace(exponent, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    UnitCircleScalar &operator+=(const UnitCircleScalar &other)
    {
        for (const auto &[e, c] : other.terms_)
            add(e, c);
        return *this;
    }
    UnitCircleScalar operator-() const
    {
        UnitCircleScalar r;
        for (const auto &[e, c] : terms_)
            r.terms_.emplace(e, -c);
        return r;
    }
    friend UnitCircleScalar operator*(const UnitCircleScalar &a, const UnitCircleScalar &b)
    {
        UnitCircleScalar r;
        for (const auto &[ea, ca] : a.terms_)
            for (const auto &[eb, cb] : b.terms_)
                r.add(ea + eb, ca * cb);
        return r;
    }

    std::string str() const;

  private:
    TermMap terms_;
};

inline UnitCircleScalar Scalar::unit_circle() const
{
    UnitCircleScalar r;
    for (const auto &[e, c] : terms_)
        r.add(e.q - e.qb, c);
    return r;
}

namespace detail {

/// One rendered monomial: magnitude and symbol powers, sign handled by the
/// caller through the term separators.
inline std::string scalar_term_body(const Rational &abs_coeff, int q_exp, int qb_exp)
{
    std::string out;
    bool bare = q_exp == 0 && qb_exp == 0;
    if (abs_coeff != 1 || bare)
        out = rational_str(abs_coeff);
    auto append_symbol = [&out](const char *name, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += '*';
        out += name;
        if (e != 1) {
            out += '^';
            out += std::to_string(e);
        }
    };
    append_symbol("q", q_exp);
    append_symbol("qb", qb_exp);
    return out;
}

} // namespace detail

inline std::string Scalar::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        bool neg = c < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += detail::scalar_term_body(neg ? Rational(-c) : c, e.q, e.qb);
        first = false;
    }
    return out;
}

inline std::string UnitCircleScalar::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        bool neg = c < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += detail::scalar_term_body(neg ? Rational(-c) : c, e, 0);
        first = false;
    }
    return out;
}

/// Exact division in the Laurent ring: returns p/d when d divides p, and
/// nullopt otherwise. Both are shifted into the ordinary polynomial ring
/// (monomials are units, so shifting loses nothing) and divided by leading
/// terms under the lexicographic order.
inline std::optional<Scalar> scalar_div_exact(const Scalar &p, const Scalar &d)
{
    if (d.is_zero())
        return std::nullopt;
    if (p.is_zero())
        return Scalar();

    // Shift both operands so all exponents are non-negative.
    auto min_exps = [](const Scalar &s) {
        int mq = 0, mqb = 0;
        bool first = true;
        for (const auto &[e, c] : s.terms()) {
            if (first || e.q < mq)
                mq = e.q;
            if (first || e.qb < mqb)
                mqb = e.qb;
            first = false;
        }
        return QExponent{mq, mqb};
    };
    QExponent pmin = min_exps(p), dmin = min_exps(d);
    Scalar rem = p * Scalar::monomial(1, -pmin.q, -pmin.qb);
    Scalar div = d * Scalar::monomial(1, -dmin.q, -dmin.qb);

    // Leading term of `div` under lex order on (a, b).
    auto lead = div.terms().rbegin();
    QExponent dlead = lead->first;
    Rational dcoeff = lead->second;

    Scalar quot;
    while (!rem.is_zero()) {
        auto rl = rem.terms().rbegin();
        QExponent rlead = rl->first;
        if (rlead.q < dlead.q || rlead.qb < dlead.qb)
            return std::nullopt; // leading term not divisible in the shifted ring
        Scalar t = Scalar::monomial(rl->second / dcoeff, rlead.q - dlead.q, rlead.qb - dlead.qb);
        quot += t;
        rem -= t * div;
    }
    // Undo the shifts: p = quot * d * q^{pmin - dmin} in shifted terms.
    return quot * Scalar::monomial(1, pmin.q - dmin.q, pmin.qb - dmin.qb);
}

/// Splits s = (1 - q*qb)^k * rest with k maximal, for display and for the
/// specialization arguments of the propositions.
inline std::pair<int, Scalar> extract_unit_circle_factor(const Scalar &s)
{
    int k = 0;
    Scalar rest = s;
    if (rest.is_zero())
        return {0, rest};
    const Scalar f = Scalar::one_minus_q_qb();
    while (true) {
        auto next = scalar_div_exact(rest, f);
        if (!next)
            return {k, rest};
        rest = *next;
        ++k;
    }
}

} // namespace qsphere
