#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include <qsphere/parse.hpp>
#include <qsphere/reps.hpp>

using namespace qsphere;
using Complex = std::complex<double>;

namespace {

NormalMonomial random_monomial(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> dk(-2, 2), dmn(0, 2), dl(0, 2);
    return {dk(rng), dmn(rng), dmn(rng), dl(rng)};
}

AlgebraElement random_element(std::mt19937 &rng)
{
    std::uniform_int_distribution<int> dterms(1, 3), dnum(-3, 3), dexp(-1, 1);
    AlgebraElement x;
    int terms = dterms(rng);
    for (int t = 0; t < terms; ++t) {
        int num = 0;
        while (num == 0)
            num = dnum(rng);
        x += AlgebraElement::monomial(random_monomial(rng),
                                      Scalar::monomial(Rational(num, 2), dexp(rng), dexp(rng)));
    }
    return x;
}

} // namespace

TEST_CASE("representation construction", "[reps]")
{
    TruncatedRep rep = build_rep({0.7, 0.1}, RepSign::Plus, {0.5, 0.0}, 16);
    SECTION("diagonal and shift structure")
    {
        CHECK(std::abs(rep.beta(0, 0) - Complex(0.7, 0.1)) < 1e-15);
        CHECK(std::abs(rep.beta(3, 3) - Complex(0.7, 0.1) * std::pow(Complex(0.5, 0.0), 3)) <
              1e-15);
        CHECK(rep.alpha.col(15).norm() == 0.0);           // hard cutoff
        CHECK(rep.alpha.adjoint().col(0).norm() == 0.0);  // lowering kills psi_0
        double w1 = std::abs(rep.alpha(1, 0));
        CHECK(std::abs(w1 - std::abs(Complex(0.7, 0.1)) * std::sqrt(1.0 - 0.25)) < 1e-15);
    }
    SECTION("z is the signed scalar")
    {
        double zval = std::sqrt(1.0 - std::norm(Complex(0.7, 0.1)));
        CHECK((rep.zmat - zval * CMatrix::Identity(16, 16)).norm() < 1e-15);
        TruncatedRep neg = build_rep({0.7, 0.1}, RepSign::Minus, {0.5, 0.0}, 16);
        CHECK((neg.zmat + zval * CMatrix::Identity(16, 16)).norm() < 1e-15);
    }
    SECTION("the two signs coincide on the equator")
    {
        Complex zeta = std::polar(1.0, 0.3);
        TruncatedRep plus = build_rep(zeta, RepSign::Plus, {0.5, 0.0}, 12);
        TruncatedRep minus = build_rep(zeta, RepSign::Minus, {0.5, 0.0}, 12);
        CHECK((plus.zmat - minus.zmat).norm() == 0.0);
        CHECK((plus.alpha - minus.alpha).norm() == 0.0);
        CHECK((plus.beta - minus.beta).norm() == 0.0);
    }
    SECTION("parameter validation")
    {
        CHECK_THROWS_AS(build_rep({1.5, 0.0}, RepSign::Plus, {0.5, 0.0}, 8), std::domain_error);
        CHECK_THROWS_AS(build_rep({0.5, 0.0}, RepSign::Plus, {0.0, 0.0}, 8), std::domain_error);
        CHECK_THROWS_AS(build_rep({0.5, 0.0}, RepSign::Plus, {1.0, 0.0}, 8), std::domain_error);
        CHECK_THROWS_AS(build_rep({0.5, 0.0}, RepSign::Plus, {0.5, 0.0}, 3),
                        std::invalid_argument);
    }
}

TEST_CASE("representation evaluation", "[reps]")
{
    TruncatedRep rep = build_rep({0.6, 0.2}, RepSign::Plus, {0.4, 0.1}, 16);
    SECTION("identity and linearity")
    {
        CHECK((rep_eval(rep, parse_expr("I")) - CMatrix::Identity(16, 16)).norm() == 0.0);
        CMatrix lhs = rep_eval(rep, parse_expr("2*al*be - q*z^2"));
        CMatrix rhs = 2.0 * rep.alpha * rep.beta -
                      Complex(0.4, 0.1) * rep.zmat * rep.zmat;
        CHECK((lhs - rhs).norm() < 1e-13);
    }
    SECTION("adjoints map to conjugate transposes")
    {
        std::mt19937 rng(91);
        for (int i = 0; i < 40; ++i) {
            AlgebraElement x = random_element(rng);
            CMatrix m = rep_eval(rep, x);
            CMatrix ma = rep_eval(rep, adjoint(x));
            CHECK((ma - m.adjoint()).norm() <= 1e-12 * (1.0 + m.norm()));
        }
    }
    SECTION("ansatz letters are rejected")
    {
        CHECK_THROWS_AS(rep_eval(rep, FreeElement::letter(Generator::T)), std::invalid_argument);
    }
}

TEST_CASE("relation residuals on a parameter grid", "[reps]")
{
    const std::vector<Complex> zetas = {{0.7, 0.0}, {0.3, 0.55}, std::polar(1.0, 1.1)};
    const std::vector<Complex> q0s = {{0.5, 0.0}, {0.3, 0.2}, {0.9, 0.0}};
    const int N = 32;
    for (Complex zeta : zetas)
        for (Complex q0 : q0s)
            for (RepSign sign : {RepSign::Plus, RepSign::Minus}) {
                TruncatedRep rep = build_rep(zeta, sign, q0, N);
                auto rows = relation_residuals(rep);
                REQUIRE(rows.size() == 11);
                double defect = r6_boundary_defect(rep);
                for (const auto &row : rows) {
                    INFO(row.name << " zeta=" << zeta << " q0=" << q0);
                    CHECK(row.interior <= 1e-12);
                    if (row.name == "r6")
                        CHECK(std::abs(row.boundary - defect) <= 1e-12);
                    else
                        CHECK(row.boundary <= 1e-12);
                }
            }
}

TEST_CASE("representation is a homomorphism away from the cutoff", "[reps]")
{
    TruncatedRep rep = build_rep({0.7, 0.1}, RepSign::Plus, {0.5, 0.0}, 32);
    std::mt19937 rng(2025);
    for (int i = 0; i < 200; ++i) {
        AlgebraElement x = random_element(rng);
        AlgebraElement y = random_element(rng);
        CHECK(interior_product_defect(rep, x, y, 8) <= 1e-9);
    }
    CHECK_THROWS_AS(interior_product_defect(rep, AlgebraElement::identity(),
                                            AlgebraElement::identity(), 40),
                    std::invalid_argument);
}

TEST_CASE("basis monomials separate under a representation family", "[reps]")
{
    // Within one representation z acts as a scalar and a real q0 grades the
    // diagonal profiles by m+n only, so separation needs several points with
    // complex q0 of distinct argument and pairwise distinct z scalars.
    std::vector<TruncatedRep> family = {
        build_rep({0.7, 0.0}, RepSign::Plus, {0.5, 0.0}, 24),
        build_rep({0.55, 0.3}, RepSign::Minus, {0.45, 0.2}, 24),
        build_rep({0.28, -0.6}, RepSign::Plus, {0.5, -0.15}, 24),
        build_rep({0.6, 0.25}, RepSign::Plus, {0.35, 0.35}, 24),
    };
    std::vector<NormalMonomial> all;
    for (int k = -2; k <= 2; ++k)
        for (int m = 0; m <= 2; ++m)
            for (int n = 0; n <= 2; ++n)
                for (int l = 0; l <= 2; ++l)
                    all.push_back({k, m, n, l});
    SECTION("the whole small-index family is independent")
    {
        CHECK(monomial_span_rank(all, family) == static_cast<int>(all.size()));
    }
    SECTION("random twenty-element subsets are independent")
    {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 5; ++trial) {
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<NormalMonomial> subset(all.begin(), all.begin() + 20);
            CHECK(monomial_span_rank(subset, family) == 20);
        }
    }
    SECTION("a single representation cannot separate powers of z")
    {
        std::vector<NormalMonomial> iz = {{0, 0, 0, 0}, {0, 0, 0, 1}};
        CHECK(monomial_span_rank(iz, {family[0]}) == 1);
        CHECK(monomial_span_rank(iz, family) == 2);
    }
}

TEST_CASE("classical points", "[reps]")
{
    const Complex q0(0.5, 0.0);
    SECTION("poles and a generic point satisfy every relation")
    {
        for (CharacterPoint c : {CharacterPoint{{1.0, 0.0}, 0.0},
                                 CharacterPoint{{0.0, 0.0}, 1.0},
                                 CharacterPoint{{0.6, 0.0}, 0.8},
                                 CharacterPoint{{0.0, -0.6}, -0.8}}) {
            CharacterReport rep = character_report(c, q0);
            CHECK(rep.ok);
            REQUIRE(rep.relator_residuals.size() == 11);
            for (const auto &[name, v] : rep.relator_residuals) {
                INFO(name);
                CHECK(v <= 1e-15);
            }
        }
    }
    SECTION("the sphere constraint is enforced")
    {
        CharacterPoint bad{{0.5, 0.0}, 0.5};
        CHECK_THROWS_AS(character_eval(bad, parse_expr("z"), q0), std::domain_error);
        CHECK_FALSE(character_report(bad, q0).ok);
    }
    SECTION("values on the generators")
    {
        CharacterPoint c{{0.6, 0.0}, 0.8};
        CHECK(std::abs(character_eval(c, parse_expr("be"), q0)) == 0.0);
        CHECK(std::abs(character_eval(c, parse_expr("al"), q0) - Complex(0.6, 0.0)) < 1e-15);
        CHECK(std::abs(character_eval(c, parse_expr("al**al + z^2"), q0) - Complex(1.0, 0.0)) <
              1e-15);
    }
    SECTION("the zeta = 0 representations are exactly the poles")
    {
        std::mt19937 rng(11);
        for (RepSign sign : {RepSign::Plus, RepSign::Minus}) {
            TruncatedRep rep = build_rep({0.0, 0.0}, sign, q0, 8);
            CharacterPoint pole{{0.0, 0.0}, sign == RepSign::Plus ? 1.0 : -1.0};
            for (int i = 0; i < 20; ++i) {
                AlgebraElement x = random_element(rng);
                Complex diag = rep_eval(rep, x)(0, 0);
                CHECK(std::abs(diag - character_eval(pole, x, q0)) <= 1e-12);
            }
        }
    }
}
