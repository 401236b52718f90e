#pragma once

#include <complex>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qsphere/matrix.hpp"

namespace qsphere {

namespace detail {

inline bool coeff_is_zero(const Scalar &c) { return c.is_zero(); }
inline bool coeff_is_zero(const UnitCircleScalar &c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double> &c)
{
    return c == std::complex<double>(0.0, 0.0);
}

/// Human display form; the unit-circle factor is pulled out when present.
inline std::string coeff_str(const Scalar &c)
{
    auto [k, rest] = extract_unit_circle_factor(c);
    if (k <= 0)
        return "(" + c.str() + ")";
    std::string out = "(" + rest.str() + ")*(1 - q*qb)";
    if (k > 1)
        out += "^" + std::to_string(k);
    return out;
}
inline std::string coeff_str(const UnitCircleScalar &c) { return "(" + c.str() + ")"; }
inline std::string coeff_str(const std::complex<double> &c)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", c.real(), c.imag());
    return buf;
}

inline std::string coeff_json(const Scalar &c) { return "\"" + c.str() + "\""; }
inline std::string coeff_json(const UnitCircleScalar &c) { return "\"" + c.str() + "\""; }
inline std::string coeff_json(const std::complex<double> &c) { return coeff_str(c); }

} // namespace detail

/// Element of the (degree+1)-fold tensor space: slot 0 ranges over the whole
/// algebra, slots >= 1 over the quotient by the scalar line, represented by
/// their zero-scalar-part representatives. Terms are tuples of basis
/// monomials; the identity monomial never appears in slots >= 1.
template <typename R> class BasicChain {
  public:
    using Tuple = std::vector<NormalMonomial>;
    using TermMap = std::map<Tuple, R>;

    explicit BasicChain(int degree = 0) : degree_(degree)
    {
        if (degree < 0)
            throw std::invalid_argument("BasicChain: negative degree");
    }

    int degree() const { return degree_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const BasicChain &other) const = default;

    void add(Tuple slots, const R &c)
    {
        if (slots.size() != static_cast<size_t>(degree_) + 1)
            throw std::invalid_argument("BasicChain::add: wrong tuple length");
        for (size_t i = 1; i < slots.size(); ++i)
            if (slots[i].is_identity())
                throw std::invalid_argument("BasicChain::add: identity in a reduced slot");
        if (detail::coeff_is_zero(c))
            return;
        auto it = terms_.find(slots);
        if (it == terms_.end()) {
            terms_.emplace(std::move(slots), c);
            return;
        }
        it->second += c;
        if (detail::coeff_is_zero(it->second))
            terms_.erase(it);
    }

    BasicChain &operator+=(const BasicChain &o)
    {
        if (o.degree_ != degree_)
            throw std::invalid_argument("chain addition: degree mismatch");
        for (const auto &[t, c] : o.terms_)
            add(t, c);
        return *this;
    }
    friend BasicChain operator+(BasicChain a, const BasicChain &b) { return a += b; }
    BasicChain operator-() const
    {
        BasicChain r(degree_);
        for (const auto &[t, c] : terms_)
            r.terms_.emplace(t, -c);
        return r;
    }
    friend BasicChain operator-(const BasicChain &a, const BasicChain &b) { return a + (-b); }

    BasicChain scaled(const R &s) const
    {
        BasicChain r(degree_);
        if (detail::coeff_is_zero(s))
            return r;
        for (const auto &[t, c] : terms_) {
            R v = c * s;
            if (!detail::coeff_is_zero(v))
                r.terms_.emplace(t, std::move(v));
        }
        return r;
    }

    /// Canonical serialization; terms ride in slot-tuple order, so the bytes
    /// are independent of construction order.
    std::string json() const
    {
        std::string out = "{\"degree\": " + std::to_string(degree_) + ", \"terms\": [";
        bool first = true;
        for (const auto &[t, c] : terms_) {
            out += first ? "\n" : ",\n";
            out += "  {\"slots\": [";
            for (size_t i = 0; i < t.size(); ++i) {
                if (i)
                    out += ", ";
                out += "\"" + t[i].str() + "\"";
            }
            out += "], \"coeff\": " + detail::coeff_json(c) + "}";
            first = false;
        }
        out += terms_.empty() ? "]}\n" : "\n]}\n";
        return out;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0\n";
        std::string out;
        for (const auto &[t, c] : terms_) {
            out += detail::coeff_str(c) + "  ";
            for (size_t i = 0; i < t.size(); ++i) {
                if (i)
                    out += " (x) ";
                out += t[i].str();
            }
            out += "\n";
        }
        return out;
    }

  private:
    int degree_;
    TermMap terms_;
};

using Chain = BasicChain<Scalar>;

namespace detail {

/// Multilinear expansion of a factor list into a chain; factors after the
/// first are assumed already reduced. The expansion of factors scaled by
/// `weight` is accumulated into `acc`.
inline void expand_tuple(const std::vector<const AlgebraElement *> &factors,
                         const Scalar &weight, Chain &acc)
{
    struct Slot {
        AlgebraElement::TermMap::const_iterator it, end;
    };
    std::vector<Slot> state(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) {
        const auto &m = factors[i]->terms();
        if (m.empty())
            return;
        state[i] = {m.begin(), m.end()};
    }
    Chain::Tuple tuple(factors.size());
    for (;;) {
        Scalar coeff = weight;
        for (size_t i = 0; i < state.size(); ++i) {
            tuple[i] = state[i].it->first;
            coeff *= state[i].it->second;
        }
        acc.add(tuple, coeff);
        size_t i = state.size();
        while (i-- > 0) {
            if (++state[i].it != state[i].end)
                break;
            state[i].it = factors[i]->terms().begin();
            if (i == 0)
                return;
        }
    }
}

} // namespace detail

/// Tensor product of algebra elements as a chain: every factor after the
/// first is projected to its zero-scalar-part representative, then the
/// product is expanded multilinearly.
inline Chain tensor_project(const std::vector<AlgebraElement> &factors)
{
    if (factors.empty())
        throw std::invalid_argument("tensor_project: needs at least one factor");
    Chain acc(static_cast<int>(factors.size()) - 1);
    std::vector<AlgebraElement> reduced;
    reduced.reserve(factors.size());
    std::vector<const AlgebraElement *> ptrs;
    ptrs.push_back(&factors[0]);
    for (size_t i = 1; i < factors.size(); ++i) {
        reduced.push_back(factors[i].reduced());
        ptrs.push_back(&reduced.back());
    }
    detail::expand_tuple(ptrs, Scalar(1), acc);
    return acc;
}

/// Projection onto the commutant of the matrix factor: the sum over all
/// cyclic index tuples (i0..im) of the projected tensors
/// F0[i0,i1] (x) F1[i1,i2] (x) ... (x) Fm[im,i0]. The tuple range is
/// partitioned across workers; partial sums are merged in worker order, and
/// since term-map addition is commutative the result is identical for every
/// worker count.
inline Chain partial_trace(const std::vector<MatrixAlg> &factors, int workers = 1)
{
    if (factors.empty())
        throw std::invalid_argument("partial_trace: needs at least one factor");
    const size_t m1 = factors.size();
    size_t total = 1;
    for (size_t i = 0; i < m1; ++i)
        total *= 4;

    // Slots >= 1 must be reduced before expansion; project entire matrices
    // once up front.
    std::vector<MatrixAlg> reduced(factors.begin(), factors.end());
    for (size_t f = 1; f < m1; ++f)
        for (auto &entry : reduced[f].entry)
            entry = entry.reduced();

    auto run_range = [&](size_t begin, size_t end, Chain &acc) {
        std::vector<int> idx(m1);
        std::vector<const AlgebraElement *> ptrs(m1);
        for (size_t t = begin; t < end; ++t) {
            size_t rem = t;
            for (size_t i = 0; i < m1; ++i) {
                idx[i] = static_cast<int>(rem & 3);
                rem >>= 2;
            }
            bool live = true;
            for (size_t i = 0; i < m1; ++i) {
                const AlgebraElement &entry =
                    reduced[i](idx[i], idx[(i + 1) % m1]);
                if (entry.is_zero()) {
                    live = false;
                    break;
                }
                ptrs[i] = &entry;
            }
            if (live)
                detail::expand_tuple(ptrs, Scalar(1), acc);
        }
    };

    if (workers <= 1 || total < 64) {
        Chain acc(static_cast<int>(m1) - 1);
        run_range(0, total, acc);
        return acc;
    }
    size_t k = static_cast<size_t>(workers);
    std::vector<Chain> parts(k, Chain(static_cast<int>(m1) - 1));
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (size_t w = 0; w < k; ++w) {
        size_t begin = total * w / k, end = total * (w + 1) / k;
        pool.emplace_back([&, begin, end, w] { run_range(begin, end, parts[w]); });
    }
    for (auto &th : pool)
        th.join();
    Chain acc(static_cast<int>(m1) - 1);
    for (auto &p : parts)
        acc += p;
    return acc;
}

/// Character component of the idempotent: the projected partial trace of
/// (e - 1/2) (x) e (x) ... (x) e with 2n trailing copies.
inline Chain chern(int n, int workers = 1, int max_n = 2)
{
    if (n < 0 || n > max_n)
        throw std::invalid_argument("chern: component index out of range");
    MatrixAlg e = build_e();
    MatrixAlg f = e - MatrixAlg::identity(Scalar(Rational(1) / 2));
    std::vector<MatrixAlg> factors;
    factors.reserve(static_cast<size_t>(2 * n) + 1);
    factors.push_back(f);
    for (int i = 0; i < 2 * n; ++i)
        factors.push_back(e);
    return partial_trace(factors, workers);
}

/// Hochschild boundary: adjacent products with alternating signs plus the
/// wrap-around product landing in slot 0; the result is re-projected.
inline Chain boundary_b(const Chain &x)
{
    if (x.degree() == 0)
        throw std::invalid_argument("boundary_b: needs degree >= 1");
    const int m = x.degree();
    Chain out(m - 1);
    for (const auto &[t, c] : x.terms()) {
        for (int j = 0; j < m; ++j) {
            std::vector<AlgebraElement> fs;
            fs.reserve(static_cast<size_t>(m));
            for (int i = 0; i < j; ++i)
                fs.push_back(AlgebraElement::monomial(t[static_cast<size_t>(i)]));
            fs.push_back(mul(AlgebraElement::monomial(t[static_cast<size_t>(j)]),
                             AlgebraElement::monomial(t[static_cast<size_t>(j) + 1])));
            for (int i = j + 2; i <= m; ++i)
                fs.push_back(AlgebraElement::monomial(t[static_cast<size_t>(i)]));
            out += tensor_project(fs).scaled(j % 2 ? -c : c);
        }
        std::vector<AlgebraElement> fs;
        fs.reserve(static_cast<size_t>(m));
        fs.push_back(mul(AlgebraElement::monomial(t[static_cast<size_t>(m)]),
                         AlgebraElement::monomial(t[0])));
        for (int i = 1; i < m; ++i)
            fs.push_back(AlgebraElement::monomial(t[static_cast<size_t>(i)]));
        out += tensor_project(fs).scaled(m % 2 ? -c : c);
    }
    return out;
}

/// Signed cyclic average with the literal 1/(degree+1) normalization. A
/// former slot-0 element rotating into a reduced slot is projected there.
inline Chain cyclic_A(const Chain &x)
{
    const int m = x.degree();
    Chain out(m);
    const Scalar avg(Rational(1) / (m + 1));
    for (const auto &[t, c] : x.terms()) {
        for (int j = 0; j <= m; ++j) {
            std::vector<AlgebraElement> fs;
            fs.reserve(static_cast<size_t>(m) + 1);
            for (int i = 0; i <= m; ++i)
                fs.push_back(AlgebraElement::monomial(t[static_cast<size_t>((j + i) % (m + 1))]));
            bool neg = (static_cast<long long>(m) * j) % 2 != 0;
            out += tensor_project(fs).scaled(neg ? -(c * avg) : c * avg);
        }
    }
    return out;
}

/// Degree-raising part of the cyclic differential: prepend the identity and
/// project the former slot 0.
inline Chain operator_B0(const Chain &x)
{
    Chain out(x.degree() + 1);
    for (const auto &[t, c] : x.terms()) {
        if (t[0].is_identity())
            continue;
        Chain::Tuple nt;
        nt.reserve(t.size() + 1);
        nt.push_back(NormalMonomial{});
        nt.insert(nt.end(), t.begin(), t.end());
        out.add(std::move(nt), c);
    }
    return out;
}

inline Chain operator_B(const Chain &x) { return operator_B0(cyclic_A(x)); }

inline BasicChain<UnitCircleScalar> specialize_unit_circle(const Chain &x)
{
    BasicChain<UnitCircleScalar> out(x.degree());
    for (const auto &[t, c] : x.terms())
        out.add(t, c.unit_circle());
    return out;
}

inline BasicChain<std::complex<double>> specialize_numeric(const Chain &x,
                                                           std::complex<double> q0)
{
    BasicChain<std::complex<double>> out(x.degree());
    for (const auto &[t, c] : x.terms())
        out.add(t, c.eval(q0));
    return out;
}

inline double chain_sup_norm(const BasicChain<std::complex<double>> &x)
{
    double norm = 0.0;
    for (const auto &[t, c] : x.terms())
        norm = std::max(norm, std::abs(c));
    return norm;
}

/// Finds the single scalar factor with lhs = factor * rhs, if one exists.
/// Both chains zero reports factor 0; rhs zero with lhs nonzero reports
/// nothing.
inline std::optional<Scalar> proportionality_factor(const Chain &lhs, const Chain &rhs)
{
    if (rhs.is_zero())
        return lhs.is_zero() ? std::optional<Scalar>(Scalar()) : std::nullopt;
    if (lhs.degree() != rhs.degree())
        return std::nullopt;
    const auto &[t0, r0] = *rhs.terms().begin();
    auto it = lhs.terms().find(t0);
    if (it == lhs.terms().end())
        return lhs.is_zero() ? std::optional<Scalar>(Scalar()) : std::nullopt;
    auto factor = scalar_div_exact(it->second, r0);
    if (!factor)
        return std::nullopt;
    if (!(lhs == rhs.scaled(*factor)))
        return std::nullopt;
    return factor;
}

} // namespace qsphere
