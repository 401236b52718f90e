#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsphere/algebra.hpp"

namespace qsphere {

/// 4x4 matrix over the free algebra (Elem = FreeElement) or the quotient
/// algebra (Elem = AlgebraElement). The coefficient mode is the type
/// parameter, so mixed-mode arithmetic cannot be expressed.
template <typename Elem> struct Matrix4 {
    std::array<Elem, 16> entry{};

    Elem &operator()(int r, int c) { return entry[static_cast<size_t>(4 * r + c)]; }
    const Elem &operator()(int r, int c) const
    {
        return entry[static_cast<size_t>(4 * r + c)];
    }

    bool operator==(const Matrix4 &other) const = default;

    static Matrix4 identity(const Scalar &c = Scalar(1))
    {
        Matrix4 m;
        for (int i = 0; i < 4; ++i)
            m(i, i) = Elem::identity(c);
        return m;
    }

    bool is_zero() const
    {
        for (const Elem &e : entry)
            if (!e.is_zero())
                return false;
        return true;
    }

    friend Matrix4 operator+(const Matrix4 &a, const Matrix4 &b)
    {
        Matrix4 r;
        for (size_t i = 0; i < 16; ++i)
            r.entry[i] = a.entry[i] + b.entry[i];
        return r;
    }
    friend Matrix4 operator-(const Matrix4 &a, const Matrix4 &b)
    {
        Matrix4 r;
        for (size_t i = 0; i < 16; ++i)
            r.entry[i] = a.entry[i] - b.entry[i];
        return r;
    }
    friend Matrix4 operator*(const Matrix4 &a, const Matrix4 &b)
    {
        Matrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Elem acc;
                for (int k = 0; k < 4; ++k)
                    acc += a(i, k) * b(k, j);
                r(i, j) = acc;
            }
        return r;
    }

    Matrix4 scaled(const Scalar &s) const
    {
        Matrix4 r;
        for (size_t i = 0; i < 16; ++i)
            r.entry[i] = entry[i].scaled(s);
        return r;
    }

    /// Conjugate transpose with entrywise adjoint.
    Matrix4 adjoint_matrix() const
    {
        Matrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                r(i, j) = adjoint((*this)(j, i));
        return r;
    }

    Elem trace() const
    {
        Elem acc;
        for (int i = 0; i < 4; ++i)
            acc += (*this)(i, i);
        return acc;
    }
};

using MatrixFree = Matrix4<FreeElement>;
using MatrixAlg = Matrix4<AlgebraElement>;

/// The instanton idempotent over the free algebra:
///   e = (1/2) [[I+z,  0,    al,     be   ],
///              [0,    I+z,  -q be*, al*  ],
///              [al*,  -qb be, I-z,  0    ],
///              [be*,  al,   0,      I-z  ]].
inline MatrixFree build_e_free()
{
    const Scalar h(Rational(1) / 2);
    auto sletter = [&](Generator g, Scalar c) { return FreeElement::letter(g, c); };
    MatrixFree e;
    e(0, 0) = FreeElement::identity(h) + sletter(Generator::Z, h);
    e(1, 1) = e(0, 0);
    e(2, 2) = FreeElement::identity(h) - sletter(Generator::Z, h);
    e(3, 3) = e(2, 2);
    e(0, 2) = sletter(Generator::Alpha, h);
    e(0, 3) = sletter(Generator::Beta, h);
    e(1, 2) = sletter(Generator::BetaStar, -(Scalar::q() * h));
    e(1, 3) = sletter(Generator::AlphaStar, h);
    e(2, 0) = sletter(Generator::AlphaStar, h);
    e(2, 1) = sletter(Generator::Beta, -(Scalar::qb() * h));
    e(3, 0) = sletter(Generator::BetaStar, h);
    e(3, 1) = sletter(Generator::Alpha, h);
    return e;
}

inline MatrixAlg build_e()
{
    MatrixFree f = build_e_free();
    MatrixAlg e;
    for (size_t i = 0; i < 16; ++i)
        e.entry[i] = normalize(f.entry[i]);
    return e;
}

/// The defining relators of the quotient, as free elements:
///   r1 = z al - al z          r2 = z be - be z
///   r3 = be al - qb al be     r4 = be* al - q al be*
///   r5 = be be* - be* be
///   r6 = al* al + q qb be* be + z^2 - I
///   r7 = al al* + be be* + z^2 - I
/// followed by the adjoints of r1..r4 (r5..r7 are self-adjoint up to sign
/// and relabeling). Eleven elements in all.
inline std::vector<FreeElement> defining_relators()
{
    using G = Generator;
    auto w = [](std::initializer_list<G> gs, Scalar c = Scalar(1)) {
        return FreeElement::word(FreeWord(gs), c);
    };
    std::vector<FreeElement> rs;
    rs.push_back(w({G::Z, G::Alpha}) - w({G::Alpha, G::Z}));
    rs.push_back(w({G::Z, G::Beta}) - w({G::Beta, G::Z}));
    rs.push_back(w({G::Beta, G::Alpha}) - w({G::Alpha, G::Beta}, Scalar::qb()));
    rs.push_back(w({G::BetaStar, G::Alpha}) - w({G::Alpha, G::BetaStar}, Scalar::q()));
    rs.push_back(w({G::Beta, G::BetaStar}) - w({G::BetaStar, G::Beta}));
    rs.push_back(w({G::AlphaStar, G::Alpha}) + w({G::BetaStar, G::Beta}, Scalar::q_qb()) +
                 w({G::Z, G::Z}) - FreeElement::identity());
    rs.push_back(w({G::Alpha, G::AlphaStar}) + w({G::Beta, G::BetaStar}) + w({G::Z, G::Z}) -
                 FreeElement::identity());
    for (int i = 0; i < 4; ++i)
        rs.push_back(rs[static_cast<size_t>(i)].adjoint());
    return rs;
}

namespace detail {

/// Laurent fraction used only inside the span solver's back-substitution.
struct Frac {
    Scalar num;
    Scalar den = Scalar(1);

    static Frac of(Scalar s) { return {std::move(s), Scalar(1)}; }
    bool is_zero() const { return num.is_zero(); }

    void reduce()
    {
        if (num.is_zero()) {
            den = Scalar(1);
            return;
        }
        if (auto q = scalar_div_exact(num, den)) {
            num = *q;
            den = Scalar(1);
        }
    }
    friend Frac operator+(const Frac &a, const Frac &b)
    {
        Frac r{a.num * b.den + b.num * a.den, a.den * b.den};
        r.reduce();
        return r;
    }
    friend Frac operator*(const Frac &a, const Frac &b)
    {
        Frac r{a.num * b.num, a.den * b.den};
        r.reduce();
        return r;
    }
    Frac operator-() const { return {-num, den}; }
    friend Frac operator/(const Frac &a, const Frac &b)
    {
        if (b.num.is_zero())
            throw std::logic_error("Frac: division by zero");
        Frac r{a.num * b.den, a.den * b.num};
        r.reduce();
        return r;
    }
};

} // namespace detail

/// Solves sum_i x_i * span[i] = target for Laurent-polynomial coefficients
/// x_i, by fraction-free forward elimination over the free-word basis and
/// exact back-substitution. Returns nullopt when no such combination exists.
/// A returned solution is always re-verified by exact expansion.
inline std::optional<std::vector<Scalar>> span_solve(const std::vector<FreeElement> &span,
                                                     const FreeElement &target)
{
    const size_t ncols = span.size();

    // Row index: every word appearing anywhere.
    std::map<FreeWord, size_t> row_of;
    auto index_words = [&row_of](const FreeElement &x) {
        for (const auto &[w, c] : x.terms())
            row_of.emplace(w, row_of.size());
    };
    for (const FreeElement &s : span)
        index_words(s);
    index_words(target);
    const size_t nrows = row_of.size();

    // Augmented matrix [A | b] with A[r][c] = coefficient of word r in span[c].
    std::vector<std::vector<Scalar>> a(nrows, std::vector<Scalar>(ncols + 1));
    for (size_t c = 0; c < ncols; ++c)
        for (const auto &[w, coeff] : span[c].terms())
            a[row_of[w]][c] = coeff;
    for (const auto &[w, coeff] : target.terms())
        a[row_of[w]][ncols] = coeff;

    // Bareiss fraction-free elimination with column pivoting; every division
    // by the previous pivot is exact in the Laurent ring.
    std::vector<std::pair<size_t, size_t>> pivots; // (row, col)
    Scalar prev(1);
    size_t prow = 0;
    for (size_t pcol = 0; pcol < ncols && prow < nrows; ++pcol) {
        size_t sel = nrows;
        for (size_t r = prow; r < nrows; ++r)
            if (!a[r][pcol].is_zero()) {
                sel = r;
                break;
            }
        if (sel == nrows)
            continue;
        std::swap(a[prow], a[sel]);
        for (size_t r = prow + 1; r < nrows; ++r) {
            for (size_t c = pcol + 1; c <= ncols; ++c) {
                Scalar num = a[prow][pcol] * a[r][c] - a[r][pcol] * a[prow][c];
                auto q = scalar_div_exact(num, prev);
                if (!q)
                    throw std::logic_error("span_solve: inexact fraction-free step");
                a[r][c] = *q;
            }
            a[r][pcol] = Scalar();
        }
        prev = a[prow][pcol];
        pivots.emplace_back(prow, pcol);
        ++prow;
    }

    // Rows below the last pivot must have vanished entirely.
    for (size_t r = prow; r < nrows; ++r)
        if (!a[r][ncols].is_zero())
            return std::nullopt;

    // Back-substitution over Laurent fractions; free columns are zero.
    std::vector<detail::Frac> x(ncols, detail::Frac::of(Scalar()));
    for (size_t i = pivots.size(); i-- > 0;) {
        auto [r, c] = pivots[i];
        detail::Frac rhs = detail::Frac::of(a[r][ncols]);
        for (size_t j = c + 1; j < ncols; ++j)
            if (!a[r][j].is_zero() && !x[j].is_zero())
                rhs = rhs + (-(detail::Frac::of(a[r][j]) * x[j]));
        x[c] = rhs / detail::Frac::of(a[r][c]);
    }

    // The certificate needs ring coefficients, not field ones.
    std::vector<Scalar> out(ncols);
    for (size_t i = 0; i < ncols; ++i) {
        auto q = scalar_div_exact(x[i].num, x[i].den);
        if (!q)
            return std::nullopt;
        out[i] = *q;
    }

    // Exact re-expansion; a mismatch would mean the solver itself is wrong.
    FreeElement check;
    for (size_t i = 0; i < ncols; ++i)
        check += span[i].scaled(out[i]);
    if (!(check == target))
        throw std::logic_error("span_solve: re-expansion mismatch");
    return out;
}

/// Two-way change-of-basis certificate between the entries of
/// E = 4(e^2 - e) over the free algebra and the defining relators.
struct IdempotencyCertificate {
    bool entries_in_span = false;
    bool relators_in_span = false;
    /// entry_coeffs[16]: each entry of E over the 11 relators.
    std::vector<std::vector<Scalar>> entry_coeffs;
    /// relator_coeffs[7]: each relator over the 32 entries of E and E*.
    std::vector<std::vector<Scalar>> relator_coeffs;

    bool ok() const { return entries_in_span && relators_in_span; }
};

inline IdempotencyCertificate idempotency_certificate()
{
    MatrixFree e = build_e_free();
    MatrixFree big = (e * e - e).scaled(Scalar(4));
    std::vector<FreeElement> relators = defining_relators();

    IdempotencyCertificate cert;
    cert.entries_in_span = true;
    for (const FreeElement &entry : big.entry) {
        auto sol = span_solve(relators, entry);
        if (!sol) {
            cert.entries_in_span = false;
            break;
        }
        cert.entry_coeffs.push_back(std::move(*sol));
    }

    std::vector<FreeElement> columns;
    columns.reserve(32);
    for (const FreeElement &entry : big.entry)
        columns.push_back(entry);
    for (const FreeElement &entry : big.adjoint_matrix().entry)
        columns.push_back(entry);
    cert.relators_in_span = true;
    for (size_t i = 0; i < 7; ++i) {
        auto sol = span_solve(columns, relators[i]);
        if (!sol) {
            cert.relators_in_span = false;
            break;
        }
        cert.relator_coeffs.push_back(std::move(*sol));
    }
    return cert;
}

/// The generalized quaternion ansatz: a self-adjoint block matrix over the
/// free algebra extended by the central self-adjoint letter t,
///   [[t,   0,    al,     be  ],
///    [0,   p t,  -q be*, p al*],
///    [al*, -qb be, s,    0   ],
///    [be*, p al, 0,      p s ]],  s = (2/(1+p)) I - t,
/// for a rational parameter p != -1. At p = 1, substituting
/// t -> (I+z)/2, al -> al/2, be -> be/2 reproduces build_e_free exactly;
/// the substitution t -> (I-z)/2 lands on the z -> -z mirror image.
inline MatrixFree generalized_ansatz_e(const Scalar &pi)
{
    if (!pi.is_rational())
        throw std::domain_error("generalized_ansatz_e: parameter must be rational");
    Rational p = pi.rational_value();
    if (p == -1)
        throw std::domain_error("generalized_ansatz_e: parameter -1 makes the trace "
                                "constraint unsolvable");
    Scalar sp(p);
    FreeElement t = FreeElement::letter(Generator::T);
    FreeElement s = FreeElement::identity(Scalar(Rational(2) / (1 + p))) - t;

    MatrixFree e;
    e(0, 0) = t;
    e(0, 2) = FreeElement::letter(Generator::Alpha);
    e(0, 3) = FreeElement::letter(Generator::Beta);
    e(1, 1) = t.scaled(sp);
    e(1, 2) = FreeElement::letter(Generator::BetaStar, -Scalar::q());
    e(1, 3) = FreeElement::letter(Generator::AlphaStar, sp);
    e(2, 0) = FreeElement::letter(Generator::AlphaStar);
    e(2, 1) = FreeElement::letter(Generator::Beta, -Scalar::qb());
    e(2, 2) = s;
    e(3, 0) = FreeElement::letter(Generator::BetaStar);
    e(3, 1) = FreeElement::letter(Generator::Alpha, sp);
    e(3, 3) = s.scaled(sp);
    return e;
}

/// Entrywise letter substitution over the free algebra.
inline MatrixFree substitute_matrix(const MatrixFree &m,
                                    const std::function<FreeElement(Generator)> &image)
{
    MatrixFree r;
    for (size_t i = 0; i < 16; ++i)
        r.entry[i] = m.entry[i].substitute(image);
    return r;
}

} // namespace qsphere
