#include "doctest.h"

#include <random>

#include "arithdyn/exactnum.hpp"

using namespace arithdyn;

namespace {

FieldElement el(const Field& f, std::vector<Rational> c) { return FieldElement(f, std::move(c)); }

FieldElement random_element(const Field& f, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Rational> c;
    for (int i = 0; i < f->degree(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return FieldElement(f, c);
}

// Independent real root by Newton iteration on the polynomial.
Real newton_root(const Poly& p, Real x)
{
    for (int i = 0; i < 200; ++i) {
        Real v = 0, d = 0;
        for (std::size_t k = p.size(); k-- > 0;) {
            d = d * x + v;
            v = v * x + to_real(p[k]);
        }
        x -= v / d;
    }
    return x;
}

} // namespace

TEST_CASE("golden field arithmetic")
{
    Field f = golden_field();
    FieldElement b = FieldElement::generator(f);
    CHECK((b * b).coords() == std::vector<Rational>{1, 1});
    CHECK((FieldElement(f, 1) / b).coords() == std::vector<Rational>{-1, 1});
    CHECK(field_arith(b, b, ArithOp::mul) == b + Rational(1));
    CHECK_THROWS_AS(FieldElement(f, 1) / FieldElement(f), std::domain_error);
}

TEST_CASE("tribonacci subtraction matches direct polynomial reduction")
{
    Field f = tribonacci_field();
    FieldElement b = FieldElement::generator(f);
    FieldElement d = field_arith(b * b, b, ArithOp::sub);
    CHECK(d.coords() == std::vector<Rational>{0, -1, 1});
    // beta^3 = beta^2 + beta + 1
    CHECK(b.pow(3).coords() == std::vector<Rational>{1, 1, 1});
    CHECK(b.pow(-1) * b == FieldElement(f, 1));
}

TEST_CASE("field mismatch is rejected")
{
    FieldElement a = FieldElement::generator(golden_field());
    FieldElement c = FieldElement::generator(tribonacci_field());
    CHECK_THROWS_AS(a + c, std::invalid_argument);
}

TEST_CASE("norm, trace and discriminant")
{
    Field g = golden_field();
    CHECK(discriminant(g) == 5);
    // cubic discriminant b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd for x^3 + bx^2 + cx + d
    Rational bb = -1, cc = -1, dd = -1;
    Rational cubic = bb * bb * cc * cc - 4 * cc * cc * cc - 4 * bb * bb * bb * dd - 27 * dd * dd + 18 * bb * cc * dd;
    CHECK(discriminant(tribonacci_field()) == cubic);

    for (Field f : {g, tribonacci_field(), plastic_field()}) {
        FieldElement one(f, 1);
        CHECK(one.norm() == 1);
        CHECK(one.trace() == f->degree());
    }
    FieldElement sqrt5 = el(g, {-1, 2});
    CHECK(sqrt5 * sqrt5 == FieldElement(g, 5));
    FieldElement inv = sqrt5.inverse();
    // conjugate of sqrt5 is -sqrt5: N(1/sqrt5) = 1/(sqrt5 * -sqrt5)
    CHECK(inv.norm() == Rational(-1, 5));
    CHECK(inv.trace() == 0);
}

TEST_CASE("refine agrees with independent root computations")
{
    Real eps("1e-12");
    Approx a = FieldElement::generator(golden_field()).refine(eps);
    CHECK(a.error_bound <= eps);
    Real golden = (1 + sqrt(Real(5))) / 2;
    CHECK(abs(a.value - golden) <= a.error_bound + Real("1e-45"));

    Approx t = FieldElement::generator(tribonacci_field()).refine(eps);
    Real trib = newton_root(Poly{-1, -1, -1, 1}, Real(2));
    CHECK(abs(t.value - trib) <= t.error_bound + Real("1e-45"));
    CHECK(format_real(t.value, 13).substr(0, 14) == "1.839286755214");

    Approx h = refine(Rational(1, 2), eps);
    CHECK(h.value == Real("0.5"));
    CHECK(h.error_bound == 0);
    CHECK_THROWS_AS(FieldElement::generator(golden_field()).refine(Real("1e-200")), precision_error);
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-1.9") == Rational(-19, 10));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("minimal polynomial validation")
{
    CHECK_THROWS(make_field(Poly{2, -3, 1}));                 // (x-1)(x-2)
    CHECK_THROWS(make_field(Poly{-1, -1, 0, -1, 1}));         // (x^2-x-1)(x^2+1)
    CHECK_THROWS(make_field(Poly{-1, -1, 1}, 0, 1));          // root 1.618 not in [0,1]
    CHECK_THROWS(make_field(Poly{-1, 0, 0, 0, 0, 0, 0, 1}));  // degree 7 needs an assertion
    Field f = make_field(Poly{-1, -3, 0, 0, 0, 0, 0, 1}, true);
    CHECK_FALSE(f->irreducibility_verified());
    Field q = rational_field(Rational(3, 2));
    CHECK(q->degree() == 1);
    CHECK_FALSE(q->is_integral());
    Field s = make_field(Poly{1, -3, 1});   // (3 + sqrt5)/2
    CHECK(abs(s->root_value() - (3 + sqrt(Real(5))) / 2) < Real("1e-40"));
    CHECK(golden_field()->is_integral());
}

TEST_CASE("floor and sign decisions")
{
    Field g = golden_field();
    FieldElement b = FieldElement::generator(g);
    CHECK(b.floor() == 1);
    CHECK((b * Rational(2)).floor() == 3);
    CHECK((b * b - b).floor() == 1);   // exactly 1
    CHECK((b * b - b - Rational(1)).sign() == 0);
    // 1/(beta^40) is tiny but positive
    CHECK(b.pow(-40).sign() == 1);
    CHECK((b.pow(-40) - b.pow(-41)).sign() == 1);
}

TEST_CASE("property: norm multiplicative, trace additive, refine consistent")
{
    std::mt19937_64 rng(20240611);
    for (Field f : {golden_field(), tribonacci_field(), plastic_field()}) {
        for (int i = 0; i < 60; ++i) {
            FieldElement x = random_element(f, rng), y = random_element(f, rng);
            CHECK((x * y).norm() == x.norm() * y.norm());
            CHECK((x + y).trace() == x.trace() + y.trace());
            if (!x.is_zero()) {
                CHECK(x.sign() != 0);
                CHECK((y / x) * x == y);
            }
            Real eps("1e-30");
            Approx ax = x.refine(eps), ay = y.refine(eps), axy = (x * y).refine(eps);
            Real slack = abs(ax.value) * ay.error_bound + abs(ay.value) * ax.error_bound +
                         ax.error_bound * ay.error_bound + axy.error_bound;
            CHECK(abs(axy.value - ax.value * ay.value) <= slack + Real("1e-45"));
        }
    }
}
