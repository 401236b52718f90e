#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsphere/matrix.hpp"

namespace qsphere {

using CMatrix = Eigen::MatrixXcd;

enum class RepSign { Plus, Minus };

/// Truncation of the weighted-shift representation on span{psi_0..psi_{N-1}}:
/// z acts as sign * sqrt(1 - |zeta|^2) times the identity, be as the diagonal
/// zeta * conj(q0)^n, al as the subdiagonal shift with weights
/// zeta * sqrt(1 - |q0|^{2(n+1)}). Hard cutoff: al psi_{N-1} = 0.
struct TruncatedRep {
    std::complex<double> zeta;
    RepSign sign = RepSign::Plus;
    std::complex<double> q0;
    int dim = 0;
    CMatrix alpha, beta, zmat;
};

inline TruncatedRep build_rep(std::complex<double> zeta, RepSign sign,
                              std::complex<double> q0, int dim)
{
    if (!(std::abs(zeta) <= 1.0 + 1e-12))
        throw std::domain_error("build_rep: |zeta| must be <= 1");
    double aq = std::abs(q0);
    if (!(aq > 0.0) || !(aq < 1.0))
        throw std::domain_error("build_rep: |q0| must lie in (0,1)");
    if (dim < 4)
        throw std::invalid_argument("build_rep: dimension must be >= 4");
    TruncatedRep r;
    r.zeta = zeta;
    r.sign = sign;
    r.q0 = q0;
    r.dim = dim;
    double zval = std::sqrt(std::max(0.0, 1.0 - std::norm(zeta)));
    if (sign == RepSign::Minus)
        zval = -zval;
    r.zmat = zval * CMatrix::Identity(dim, dim);
    r.beta = CMatrix::Zero(dim, dim);
    r.alpha = CMatrix::Zero(dim, dim);
    std::complex<double> bpow(1.0, 0.0);
    for (int n = 0; n < dim; ++n) {
        r.beta(n, n) = zeta * bpow;
        bpow *= std::conj(q0);
    }
    for (int n = 0; n + 1 < dim; ++n)
        r.alpha(n + 1, n) = zeta * std::sqrt(1.0 - std::pow(aq, 2.0 * (n + 1)));
    return r;
}

inline CMatrix rep_letter(const TruncatedRep &rep, Generator g)
{
    switch (g) {
    case Generator::Alpha:
        return rep.alpha;
    case Generator::AlphaStar:
        return rep.alpha.adjoint();
    case Generator::Beta:
        return rep.beta;
    case Generator::BetaStar:
        return rep.beta.adjoint();
    case Generator::Z:
        return rep.zmat;
    case Generator::T:
        break;
    }
    throw std::invalid_argument("rep_letter: no matrix for an ansatz letter");
}

inline CMatrix rep_eval(const TruncatedRep &rep, const FreeElement &x)
{
    CMatrix acc = CMatrix::Zero(rep.dim, rep.dim);
    for (const auto &[w, c] : x.terms()) {
        CMatrix m = CMatrix::Identity(rep.dim, rep.dim);
        for (Generator g : w)
            m = m * rep_letter(rep, g);
        acc += c.eval(rep.q0) * m;
    }
    return acc;
}

inline CMatrix rep_eval(const TruncatedRep &rep, const AlgebraElement &x)
{
    return rep_eval(rep, to_free(x));
}

inline std::vector<std::string> relator_names()
{
    return {"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r1*", "r2*", "r3*", "r4*"};
}

struct RelatorResidual {
    std::string name;
    double interior = 0.0; // Frobenius norm on span{psi_0..psi_{N-2}}
    double boundary = 0.0; // remainder supported on the last row/column
};

inline std::vector<RelatorResidual> relation_residuals(const TruncatedRep &rep)
{
    std::vector<RelatorResidual> out;
    auto names = relator_names();
    auto relators = defining_relators();
    for (size_t i = 0; i < relators.size(); ++i) {
        CMatrix m = rep_eval(rep, relators[i]);
        double full = m.norm();
        double interior = m.topLeftCorner(rep.dim - 1, rep.dim - 1).norm();
        double boundary = std::sqrt(std::max(0.0, full * full - interior * interior));
        out.push_back({names[i], interior, boundary});
    }
    return out;
}

/// Closed form of the single truncation artifact: the sphere relation with
/// the q-weighted be*be term evaluates on psi_{N-1} to -|zeta|^2(1-|q0|^{2N})
/// because the cutoff kills al psi_{N-1}.
inline double r6_boundary_defect(const TruncatedRep &rep)
{
    return std::norm(rep.zeta) * (1.0 - std::pow(std::abs(rep.q0), 2.0 * rep.dim));
}

/// Norm of rep_eval(mul(x,y)) - rep_eval(x)rep_eval(y) away from the cutoff:
/// rewriting al* al inside a word is exact except within ladder distance of
/// psi_{N-1}, so the comparison block drops `margin` extra rows and columns.
inline double interior_product_defect(const TruncatedRep &rep, const AlgebraElement &x,
                                      const AlgebraElement &y, int margin)
{
    int s = rep.dim - 1 - margin;
    if (s <= 0)
        throw std::invalid_argument("interior_product_defect: margin too large");
    CMatrix lhs = rep_eval(rep, mul(x, y));
    CMatrix rhs = rep_eval(rep, x) * rep_eval(rep, y);
    return (lhs - rhs).topLeftCorner(s, s).norm();
}

/// Stacks the vectorized images of each monomial under every representation
/// in the family and returns the rank of the resulting column system. A
/// single representation cannot separate powers of z (it acts as a scalar),
/// so callers pass a family with distinct z values.
inline int monomial_span_rank(const std::vector<NormalMonomial> &monomials,
                              const std::vector<TruncatedRep> &family)
{
    if (monomials.empty() || family.empty())
        throw std::invalid_argument("monomial_span_rank: empty input");
    long rows = 0;
    for (const auto &rep : family)
        rows += static_cast<long>(rep.dim) * rep.dim;
    CMatrix stacked(rows, static_cast<long>(monomials.size()));
    for (size_t j = 0; j < monomials.size(); ++j) {
        long at = 0;
        for (const auto &rep : family) {
            CMatrix img = rep_eval(rep, AlgebraElement::monomial(monomials[j]));
            long n2 = static_cast<long>(rep.dim) * rep.dim;
            stacked.block(at, static_cast<long>(j), n2, 1) =
                Eigen::Map<const Eigen::VectorXcd>(img.data(), n2);
            at += n2;
        }
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(stacked);
    return static_cast<int>(qr.rank());
}

/// Classical point: a one-dimensional *-homomorphism sending be to 0, al to
/// a, z to z0 with |a|^2 + z0^2 = 1.
struct CharacterPoint {
    std::complex<double> a;
    double z0 = 0.0;
};

inline double character_constraint_defect(const CharacterPoint &c)
{
    return std::abs(std::norm(c.a) + c.z0 * c.z0 - 1.0);
}

inline void validate_character(const CharacterPoint &c)
{
    if (character_constraint_defect(c) > 1e-12)
        throw std::domain_error("character: |a|^2 + z0^2 must equal 1");
}

/// Evaluates x under the character; scalar coefficients are evaluated at q0.
inline std::complex<double> character_eval(const CharacterPoint &c, const FreeElement &x,
                                           std::complex<double> q0)
{
    validate_character(c);
    std::complex<double> acc(0.0, 0.0);
    for (const auto &[w, coeff] : x.terms()) {
        std::complex<double> v(1.0, 0.0);
        for (Generator g : w) {
            switch (g) {
            case Generator::Alpha:
                v *= c.a;
                break;
            case Generator::AlphaStar:
                v *= std::conj(c.a);
                break;
            case Generator::Beta:
            case Generator::BetaStar:
                v = 0.0;
                break;
            case Generator::Z:
                v *= c.z0;
                break;
            case Generator::T:
                throw std::invalid_argument("character_eval: ansatz letter");
            }
            if (v == std::complex<double>(0.0, 0.0))
                break;
        }
        acc += coeff.eval(q0) * v;
    }
    return acc;
}

inline std::complex<double> character_eval(const CharacterPoint &c, const AlgebraElement &x,
                                           std::complex<double> q0)
{
    return character_eval(c, to_free(x), q0);
}

struct CharacterReport {
    double constraint_defect = 0.0;
    std::vector<std::pair<std::string, double>> relator_residuals;
    bool ok = false;
};

inline CharacterReport character_report(const CharacterPoint &c, std::complex<double> q0,
                                        double tol = 1e-12)
{
    CharacterReport r;
    r.constraint_defect = character_constraint_defect(c);
    if (r.constraint_defect > tol)
        return r;
    auto names = relator_names();
    auto relators = defining_relators();
    r.ok = true;
    for (size_t i = 0; i < relators.size(); ++i) {
        double v = std::abs(character_eval(c, relators[i], q0));
        r.relator_residuals.emplace_back(names[i], v);
        if (v > tol)
            r.ok = false;
    }
    return r;
}

} // namespace qsphere
