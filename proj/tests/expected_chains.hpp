#pragma once

// Reference chain values for the character components and their Hochschild
// boundary, written as closed-form tensor expressions. A tiny formal-tensor
// type keeps the transcription one-to-one with the closed forms.

#include <qsphere/chain.hpp>

namespace refdata {

using qsphere::Chain;
using qsphere::NormalMonomial;
using qsphere::Rational;
using qsphere::Scalar;

struct Ten {
    // Formal sum of elementary tensors of uniform length.
    std::vector<std::pair<std::vector<NormalMonomial>, Scalar>> terms;
};

inline Ten g(const char *name)
{
    std::string s(name);
    NormalMonomial m;
    if (s == "al")
        m = {-1, 0, 0, 0};
    else if (s == "al*")
        m = {1, 0, 0, 0};
    else if (s == "be")
        m = {0, 0, 1, 0};
    else if (s == "be*")
        m = {0, 1, 0, 0};
    else if (s == "z")
        m = {0, 0, 0, 1};
    else if (s == "I")
        m = {0, 0, 0, 0};
    else
        throw std::invalid_argument("g: unknown letter " + s);
    return Ten{{{{m}, Scalar(1)}}};
}

inline Ten operator*(const Ten &x, const Ten &y)
{
    Ten r;
    for (const auto &[tx, cx] : x.terms)
        for (const auto &[ty, cy] : y.terms) {
            std::vector<NormalMonomial> t = tx;
            t.insert(t.end(), ty.begin(), ty.end());
            r.terms.emplace_back(std::move(t), cx * cy);
        }
    return r;
}

inline Ten operator*(const Scalar &s, const Ten &x)
{
    Ten r = x;
    for (auto &[t, c] : r.terms)
        c *= s;
    return r;
}

inline Ten operator+(Ten x, const Ten &y)
{
    x.terms.insert(x.terms.end(), y.terms.begin(), y.terms.end());
    return x;
}

inline Ten operator-(const Ten &x) { return Scalar(-1) * x; }
inline Ten operator-(Ten x, const Ten &y) { return std::move(x) + (-y); }

inline Chain to_chain(const Ten &x, const Scalar &weight = Scalar(1))
{
    if (x.terms.empty())
        throw std::invalid_argument("to_chain: empty expression");
    Chain r(static_cast<int>(x.terms.front().first.size()) - 1);
    for (const auto &[t, c] : x.terms)
        r.add(t, c * weight);
    return r;
}

/// Degree-2 component: (1/8)(1-q*qb) times the cyclic alternation of
/// (z, be, be*).
inline Chain expected_ch1()
{
    Ten z = g("z"), b = g("be"), B = g("be*");
    Ten body = z * (b * B - B * b) + B * (z * b - b * z) + b * (B * z - z * B);
    return to_chain(body, Scalar::one_minus_q_qb() * Scalar(Rational(1) / 8));
}

/// Degree-4 component: (1/32) times five slot-0 branches.
inline Chain expected_ch2()
{
    Ten a = g("al"), A = g("al*"), b = g("be"), B = g("be*"), z = g("z");
    Scalar u = Scalar::q_qb();
    Scalar q = Scalar::q(), qb = Scalar::qb();
    Scalar du = Scalar::one_minus_q_qb();
    Scalar du2 = Scalar(1) - u * u;

    Ten cz = du2 * (b * B * b * B - B * b * B * b)
           + du * (z * z * (b * B - B * b)
                 + (b * z * z * B - B * z * z * b)
                 + (b * B - B * b) * z * z
                 + z * (b * B - B * b) * z
                 - z * (b * z * B - B * z * b)
                 - (b * z * B - B * z * b) * z)
           + (a * A - u * (A * a)) * (b * B - B * b)
           + (b * B - B * b) * (a * A - u * (A * a))
           + (b * a - qb * (a * b)) * (A * B - q * (B * A))
           + (A * B - q * (B * A)) * (b * a - qb * (a * b))
           + (A * b - qb * (b * A)) * (q * (a * B) - B * a)
           + (q * (a * B) - B * a) * (A * b - qb * (b * A));

    Ten ca = (z * A - A * z) * (B * b - b * B)
           + u * ((B * b - b * B) * (z * A - A * z))
           + qb * ((z * b - b * z) * (A * B - q * (B * A)))
           + (A * B - q * (B * A)) * (z * b - b * z)
           + q * ((B * z - z * B) * (A * b - qb * (b * A)))
           + (A * b - qb * (b * A)) * (B * z - z * B);

    Ten cA = u * ((z * a - a * z) * (b * B - B * b))
           + (b * B - B * b) * (z * a - a * z)
           + (B * z - z * B) * (b * a - qb * (a * b))
           + q * ((b * a - qb * (a * b)) * (B * z - z * B))
           + (z * b - b * z) * (B * a - q * (a * B))
           + qb * ((B * a - q * (a * B)) * (z * b - b * z));

    Ten cb = du2 * ((B * z - z * B) * b * B + B * b * (B * z - z * B))
           + du * (B * z * z * z - z * B * z * z + z * z * B * z - z * z * z * B)
           + (B * z - z * B) * (a * A - u * (A * a))
           + (a * A - u * (A * a)) * (B * z - z * B)
           + (a * z - z * a) * (A * B - q * (B * A))
           + qb * ((A * B - q * (B * A)) * (a * z - z * a))
           + (B * a - q * (a * B)) * (A * z - z * A)
           + qb * ((A * z - z * A) * (B * a - q * (a * B)));

    Ten cB = du2 * ((z * b - b * z) * B * b + b * B * (z * b - b * z))
           + du * (-(b * z * z * z) + z * b * z * z - z * z * b * z + z * z * z * b)
           + (z * b - b * z) * (a * A - u * (A * a))
           + (a * A - u * (A * a)) * (z * b - b * z)
           + q * ((z * A - A * z) * (b * a - qb * (a * b)))
           + (b * a - qb * (a * b)) * (z * A - A * z)
           + q * ((A * b - qb * (b * A)) * (z * a - a * z))
           + (z * a - a * z) * (A * b - qb * (b * A));

    Ten whole = z * cz + a * ca + A * cA + b * cb + B * cB;
    return to_chain(whole, Scalar(Rational(1) / 32));
}

/// Closed form of the Hochschild boundary of the degree-4 component:
/// (1/16)(1-q*qb) times an identity-slot-0 alternation.
inline Chain expected_b_ch2()
{
    Ten I = g("I"), z = g("z"), b = g("be"), B = g("be*");
    Ten body = I * z * (b * B - B * b) + I * b * (B * z - z * B) + I * B * (z * b - b * z);
    return to_chain(body, Scalar::one_minus_q_qb() * Scalar(Rational(1) / 16));
}

/// Restriction of a chain to the terms whose slot 0 equals the given
/// monomial.
inline Chain slice_slot0(const Chain &x, const NormalMonomial &m)
{
    Chain r(x.degree());
    for (const auto &[t, c] : x.terms())
        if (t[0] == m)
            r.add(t, c);
    return r;
}

} // namespace refdata
