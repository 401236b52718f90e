#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsphere/scalar.hpp"

namespace qsphere {

/// Alphabet of the free *-algebra. z is self-adjoint by construction (no
/// separate z* letter). T is the extra central self-adjoint letter used by
/// the generalized quaternion ansatz; it has no rewrite rules and is
/// rejected by normalize.
enum class Generator : unsigned char { Alpha, AlphaStar, Beta, BetaStar, Z, T };

inline Generator adjoint_letter(Generator g)
{
    switch (g) {
    case Generator::Alpha: return Generator::AlphaStar;
    case Generator::AlphaStar: return Generator::Alpha;
    case Generator::Beta: return Generator::BetaStar;
    case Generator::BetaStar: return Generator::Beta;
    case Generator::Z: return Generator::Z;
    case Generator::T: return Generator::T;
    }
    throw std::logic_error("adjoint_letter: bad generator");
}

inline std::string_view letter_name(Generator g)
{
    switch (g) {
    case Generator::Alpha: return "al";
    case Generator::AlphaStar: return "al*";
    case Generator::Beta: return "be";
    case Generator::BetaStar: return "be*";
    case Generator::Z: return "z";
    case Generator::T: return "t";
    }
    throw std::logic_error("letter_name: bad generator");
}

using FreeWord = std::vector<Generator>;

inline std::string word_str(const FreeWord &w)
{
    if (w.empty())
        return "I";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += '*';
        out += letter_name(w[i]);
    }
    return out;
}

namespace detail {

/// Appends one additive term `coeff * mono` to a rendering, folding the sign
/// into the separator; a multi-term coefficient is parenthesized.
inline void append_term(std::string &out, bool &first, const Scalar &coeff,
                        const std::string &mono)
{
    if (coeff.is_zero())
        return;
    if (coeff.terms().size() > 1) {
        if (!first)
            out += " + ";
        out += "(" + coeff.str() + ")*" + mono;
        first = false;
        return;
    }
    const auto &[e, c] = *coeff.terms().begin();
    bool neg = c < 0;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    Rational mag = neg ? Rational(-c) : c;
    if (mag != 1 || e.q != 0 || e.qb != 0) {
        out += scalar_term_body(mag, e.q, e.qb);
        out += '*';
    }
    out += mono;
    first = false;
}

} // namespace detail

/// Scalar-linear combination of unreduced words. Canonical: no zero
/// coefficients, so equality is structural.
class FreeElement {
  public:
    using TermMap = std::map<FreeWord, Scalar>;

    FreeElement() = default;

    static FreeElement identity(Scalar c = Scalar(1))
    {
        FreeElement x;
        x.add(FreeWord{}, c);
        return x;
    }
    static FreeElement letter(Generator g, Scalar c = Scalar(1))
    {
        FreeElement x;
        x.add(FreeWord{g}, c);
        return x;
    }
    static FreeElement word(FreeWord w, Scalar c = Scalar(1))
    {
        FreeElement x;
        x.add(std::move(w), c);
        return x;
    }

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const FreeElement &other) const = default;

    void add(FreeWord w, const Scalar &c)
    {
        if (c.is_zero())
            return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    FreeElement operator-() const
    {
        FreeElement r;
        for (const auto &[w, c] : terms_)
            r.terms_.emplace(w, -c);
        return r;
    }
    FreeElement &operator+=(const FreeElement &o)
    {
        for (const auto &[w, c] : o.terms_)
            add(w, c);
        return *this;
    }
    FreeElement &operator-=(const FreeElement &o)
    {
        for (const auto &[w, c] : o.terms_)
            add(w, -c);
        return *this;
    }
    friend FreeElement operator+(FreeElement a, const FreeElement &b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement &b) { return a -= b; }

    /// Concatenation product of the free algebra.
    friend FreeElement operator*(const FreeElement &a, const FreeElement &b)
    {
        FreeElement r;
        for (const auto &[wa, ca] : a.terms_)
            for (const auto &[wb, cb] : b.terms_) {
                FreeWord w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add(std::move(w), ca * cb);
            }
        return r;
    }
    FreeElement &operator*=(const FreeElement &o) { return *this = *this * o; }

    FreeElement scaled(const Scalar &s) const
    {
        FreeElement r;
        if (s.is_zero())
            return r;
        for (const auto &[w, c] : terms_)
            r.terms_.emplace(w, c * s);
        return r;
    }

    /// *-structure: reverse each word, star each letter, conjugate each
    /// coefficient. Involutive anti-homomorphism.
    FreeElement adjoint() const
    {
        FreeElement r;
        for (const auto &[w, c] : terms_) {
            FreeWord rw(w.rbegin(), w.rend());
            for (Generator &g : rw)
                g = adjoint_letter(g);
            r.add(std::move(rw), c.conj());
        }
        return r;
    }

    /// Homomorphic extension of a letter substitution; coefficients pass
    /// through unchanged.
    FreeElement substitute(const std::function<FreeElement(Generator)> &image) const
    {
        FreeElement out;
        for (const auto &[w, c] : terms_) {
            FreeElement prod = identity();
            for (Generator g : w)
                prod *= image(g);
            out += prod.scaled(c);
        }
        return out;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto &[w, c] : terms_)
            detail::append_term(out, first, c, word_str(w));
        return out;
    }

  private:
    TermMap terms_;
};

/// Basis monomial of the quotient algebra: the alpha block (alpha* to the
/// power k for k >= 0, alpha to the power -k for k < 0), then be* to the m,
/// be to the n, z to the l.
struct NormalMonomial {
    int k = 0;
    int m = 0;
    int n = 0;
    int l = 0;

    auto operator<=>(const NormalMonomial &) const = default;
    bool is_identity() const { return k == 0 && m == 0 && n == 0 && l == 0; }

    FreeWord word() const
    {
        FreeWord w;
        w.reserve(static_cast<size_t>(std::abs(k) + m + n + l));
        for (int i = 0; i < (k >= 0 ? k : -k); ++i)
            w.push_back(k >= 0 ? Generator::AlphaStar : Generator::Alpha);
        for (int i = 0; i < m; ++i)
            w.push_back(Generator::BetaStar);
        for (int i = 0; i < n; ++i)
            w.push_back(Generator::Beta);
        for (int i = 0; i < l; ++i)
            w.push_back(Generator::Z);
        return w;
    }

    std::string str() const
    {
        if (is_identity())
            return "I";
        std::string out;
        auto append = [&out](std::string_view name, int e) {
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
        append("al", k < 0 ? -k : 0);
        append("al*", k > 0 ? k : 0);
        append("be*", m);
        append("be", n);
        append("z", l);
        return out;
    }
};

/// Element of the quotient algebra in canonical form: a Scalar-linear
/// combination of basis monomials with no zero coefficients. Equality in the
/// algebra is structural equality here.
class AlgebraElement {
  public:
    using TermMap = std::map<NormalMonomial, Scalar>;

    AlgebraElement() = default;

    static AlgebraElement identity(Scalar c = Scalar(1))
    {
        AlgebraElement x;
        x.add(NormalMonomial{}, c);
        return x;
    }
    static AlgebraElement monomial(NormalMonomial mono, Scalar c = Scalar(1))
    {
        AlgebraElement x;
        x.add(mono, c);
        return x;
    }

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const AlgebraElement &other) const = default;
    auto operator<=>(const AlgebraElement &other) const { return terms_ <=> other.terms_; }

    void add(const NormalMonomial &mono, const Scalar &c)
    {
        if (c.is_zero())
            return;
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    AlgebraElement operator-() const
    {
        AlgebraElement r;
        for (const auto &[w, c] : terms_)
            r.terms_.emplace(w, -c);
        return r;
    }
    AlgebraElement &operator+=(const AlgebraElement &o)
    {
        for (const auto &[w, c] : o.terms_)
            add(w, c);
        return *this;
    }
    AlgebraElement &operator-=(const AlgebraElement &o)
    {
        for (const auto &[w, c] : o.terms_)
            add(w, -c);
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement &b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement &b) { return a -= b; }

    AlgebraElement scaled(const Scalar &s) const
    {
        AlgebraElement r;
        if (s.is_zero())
            return r;
        for (const auto &[w, c] : terms_)
            r.terms_.emplace(w, c * s);
        return r;
    }

    /// Coefficient of the identity monomial.
    Scalar scalar_part() const
    {
        auto it = terms_.find(NormalMonomial{});
        return it == terms_.end() ? Scalar() : it->second;
    }

    /// Canonical representative of the image in the quotient by the scalar
    /// line: the identity component is dropped.
    AlgebraElement reduced() const
    {
        AlgebraElement r = *this;
        r.terms_.erase(NormalMonomial{});
        return r;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto &[mono, c] : terms_)
            detail::append_term(out, first, c, mono.str());
        return out;
    }

  private:
    TermMap terms_;
};

inline FreeElement to_free(const AlgebraElement &x)
{
    FreeElement out;
    for (const auto &[mono, c] : x.terms())
        out.add(mono.word(), c);
    return out;
}

struct RewriteStats {
    long long steps = 0;
    long long words = 0;
};

namespace detail {

/// Sort rank for the normal letter order alpha-block, be*, be, z.
inline int letter_rank(Generator g)
{
    switch (g) {
    case Generator::Alpha:
    case Generator::AlphaStar: return 0;
    case Generator::BetaStar: return 1;
    case Generator::Beta: return 2;
    case Generator::Z: return 3;
    case Generator::T: break;
    }
    throw std::invalid_argument("normalize: the ansatz letter t has no normal form");
}

inline bool is_redex(Generator a, Generator b)
{
    if (a == Generator::T || b == Generator::T)
        throw std::invalid_argument("normalize: the ansatz letter t has no normal form");
    if (a == Generator::Z)
        return b != Generator::Z;
    if (a == Generator::Beta && b == Generator::BetaStar)
        return true;
    bool a_beta = a == Generator::Beta || a == Generator::BetaStar;
    bool b_alpha = b == Generator::Alpha || b == Generator::AlphaStar;
    if (a_beta && b_alpha)
        return true;
    bool a_alpha = a == Generator::Alpha || a == Generator::AlphaStar;
    return a_alpha && b_alpha && a != b;
}

/// Commutation factor for moving an alpha-letter left past a beta-letter.
inline Scalar commutation_factor(Generator beta_letter, Generator alpha_letter)
{
    bool star_beta = beta_letter == Generator::BetaStar;
    bool star_alpha = alpha_letter == Generator::AlphaStar;
    if (!star_beta && !star_alpha)
        return Scalar::qb();
    if (star_beta && !star_alpha)
        return Scalar::q();
    if (!star_beta)
        return Scalar::monomial(1, 0, -1);
    return Scalar::monomial(1, -1, 0);
}

inline NormalMonomial word_to_normal(const FreeWord &w)
{
    NormalMonomial mono;
    int alpha = 0, alpha_star = 0;
    int prev_rank = -1;
    for (Generator g : w) {
        int r = letter_rank(g);
        if (r < prev_rank)
            throw std::logic_error("word_to_normal: letters out of order");
        prev_rank = r;
        switch (g) {
        case Generator::Alpha: ++alpha; break;
        case Generator::AlphaStar: ++alpha_star; break;
        case Generator::BetaStar: ++mono.m; break;
        case Generator::Beta: ++mono.n; break;
        default: ++mono.l; break;
        }
    }
    if (alpha > 0 && alpha_star > 0)
        throw std::logic_error("word_to_normal: mixed alpha block");
    mono.k = alpha_star > 0 ? alpha_star : -alpha;
    return mono;
}

} // namespace detail

/// Reduces a free element to canonical form by exhaustively rewriting the
/// leftmost reducible pair of each word:
///   z g        -> g z                      (z central, g != z)
///   be be*     -> be* be
///   be  al     -> qb al be        be* al   -> q al be*
///   be  al*    -> qb^-1 al* be    be* al*  -> q^-1 al* be*
///   al al*     -> I - be* be - z z
///   al* al     -> I - q qb be* be - z z
/// Every step lowers (alpha-letter count, inversion count) lexicographically,
/// so the loop terminates; the result is independent of application order.
inline AlgebraElement normalize(const FreeElement &x, RewriteStats *stats = nullptr)
{
    AlgebraElement out;
    std::vector<std::pair<FreeWord, Scalar>> work;
    work.reserve(x.terms().size());
    for (const auto &[w, c] : x.terms())
        work.emplace_back(w, c);

    long long steps = 0, words = 0;
    while (!work.empty()) {
        FreeWord w = std::move(work.back().first);
        Scalar c = std::move(work.back().second);
        work.pop_back();
        ++words;

        bool split = false;
        for (;;) {
            size_t pos = w.size();
            for (size_t j = 0; j + 1 < w.size(); ++j)
                if (detail::is_redex(w[j], w[j + 1])) {
                    pos = j;
                    break;
                }
            if (pos == w.size())
                break;
            ++steps;
            Generator a = w[pos], b = w[pos + 1];
            if (a == Generator::Z) {
                w[pos] = b;
                w[pos + 1] = Generator::Z;
            } else if (a == Generator::Beta && b == Generator::BetaStar) {
                w[pos] = Generator::BetaStar;
                w[pos + 1] = Generator::Beta;
            } else if ((a == Generator::Beta || a == Generator::BetaStar) &&
                       (b == Generator::Alpha || b == Generator::AlphaStar)) {
                c *= detail::commutation_factor(a, b);
                w[pos] = b;
                w[pos + 1] = a;
            } else {
                // Mixed alpha pair: expand into identity, beta, and z words.
                FreeWord head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
                FreeWord tail(w.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.end());
                auto splice = [&](std::initializer_list<Generator> mid) {
                    FreeWord nw = head;
                    nw.insert(nw.end(), mid.begin(), mid.end());
                    nw.insert(nw.end(), tail.begin(), tail.end());
                    return nw;
                };
                Scalar beta_coeff = a == Generator::Alpha ? -c : -(c * Scalar::q_qb());
                work.emplace_back(splice({}), c);
                work.emplace_back(splice({Generator::BetaStar, Generator::Beta}), beta_coeff);
                work.emplace_back(splice({Generator::Z, Generator::Z}), -c);
                split = true;
                break;
            }
        }
        if (!split)
            out.add(detail::word_to_normal(w), c);
    }
    if (stats) {
        stats->steps += steps;
        stats->words += words;
    }
    return out;
}

inline AlgebraElement normalize(const FreeWord &w) { return normalize(FreeElement::word(w)); }

inline AlgebraElement mul(const AlgebraElement &a, const AlgebraElement &b)
{
    return normalize(to_free(a) * to_free(b));
}

inline AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b)
{
    return mul(a, b);
}

inline AlgebraElement adjoint(const AlgebraElement &x)
{
    return normalize(to_free(x).adjoint());
}

inline FreeElement adjoint(const FreeElement &x) { return x.adjoint(); }

/// Letter half of the q -> 1/q isomorphism: alpha <-> alpha*, be -> -q be,
/// be* -> -qb be*, z -> z. Coefficients are handled by the callers below.
inline FreeElement q_inverse_letter_image(Generator g)
{
    switch (g) {
    case Generator::Alpha: return FreeElement::letter(Generator::AlphaStar);
    case Generator::AlphaStar: return FreeElement::letter(Generator::Alpha);
    case Generator::Beta: return FreeElement::letter(Generator::Beta, -Scalar::q());
    case Generator::BetaStar: return FreeElement::letter(Generator::BetaStar, -Scalar::qb());
    case Generator::Z: return FreeElement::letter(Generator::Z);
    case Generator::T: return FreeElement::letter(Generator::T);
    }
    throw std::logic_error("q_inverse_letter_image: bad generator");
}

/// q -> 1/q isomorphism on the free algebra: substitute letters and negate
/// every exponent in the original coefficients. The scalars introduced by
/// the letter images themselves are target-side and stay as written.
inline FreeElement q_inverse_morphism_free(const FreeElement &x)
{
    FreeElement out;
    for (const auto &[w, c] : x.terms()) {
        FreeElement prod = FreeElement::identity();
        for (Generator g : w)
            prod *= q_inverse_letter_image(g);
        out += prod.scaled(c.substitute_q_inverse());
    }
    return out;
}

inline AlgebraElement q_inverse_morphism(const AlgebraElement &x)
{
    return normalize(q_inverse_morphism_free(to_free(x)));
}

} // namespace qsphere
