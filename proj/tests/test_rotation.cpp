#include "doctest.h"

#include <random>

#include "arithdyn/errors.hpp"
#include "arithdyn/rotation.hpp"

using namespace arithdyn;

namespace {

Real frac(const Real& x)
{
    return x - floor(x);
}

// distance on the circle
Real circle_dist(const Real& a, const Real& b)
{
    Real d = frac(a - b);
    return min(d, Real(1 - d));
}

} // namespace

TEST_CASE("continued fraction of sqrt 2 - 1")
{
    ContinuedFraction cf = ContinuedFraction::parse("sqrt:2:-1:1");
    CHECK(cf.is_periodic());
    CHECK(cf.preperiod().empty());
    CHECK(cf.period() == std::vector<long>{2});
    CHECK(cf.p(1) == 0);
    CHECK(cf.q(1) == 1);
    CHECK(cf.p(2) == 1);
    CHECK(cf.q(2) == 2);
    CHECK(cf.p(3) == 2);
    CHECK(cf.q(3) == 5);
    CHECK(cf.p(4) == 5);
    CHECK(cf.q(4) == 12);
    CHECK(abs(cf.alpha() - (sqrt(Real(2)) - 1)) < Real("1e-45"));
    CHECK(cf.describe() == "[0; (2)]");
    // the same number from its quotients
    ContinuedFraction q = ContinuedFraction::parse("cf:(2)");
    CHECK(abs(q.alpha() - cf.alpha()) < Real("1e-45"));
    CHECK(abs(q.residue(30) - cf.residue(30)) < Real("1e-55"));
}

TEST_CASE("continued fraction of G - 1 has Fibonacci denominators")
{
    ContinuedFraction cf = ContinuedFraction::parse("golden");
    CHECK(cf.period() == std::vector<long>{1});
    std::vector<Integer> q = cf.q_list(6);
    CHECK(q == std::vector<Integer>{0, 1, 1, 2, 3, 5, 8});
}

TEST_CASE("continued fraction errors and prefixes")
{
    CHECK_THROWS_AS(ContinuedFraction::from_element(FieldElement(rational_field(Rational(1, 3)), Rational(1, 3))),
                    std::invalid_argument);
    CHECK_THROWS_AS(ContinuedFraction::parse("sqrt:4:0:1"), std::invalid_argument);
    CHECK_THROWS_AS(ContinuedFraction::parse("cf:1,(2"), std::invalid_argument);
    CHECK_THROWS_AS(ContinuedFraction::parse("bogus"), std::invalid_argument);
    ContinuedFraction pre = ContinuedFraction::parse("cf:2,2,2");
    CHECK(pre.known_depth() == 3u);
    CHECK(pre.q(4) == 12);
    CHECK_THROWS_AS(pre.a(4), unresolved_error);
    CHECK_THROWS_AS(pre.residue(1), unresolved_error);
    CHECK(unique_rotational_analysis(pre).empty == Verdict::Unknown);

    // a cubic irrational has no period; quotients come out as an exact prefix
    FieldElement t = FieldElement::generator(tribonacci_field()) - Rational(1);
    ContinuedFraction cub = ContinuedFraction::from_element(t, 30);
    CHECK_FALSE(cub.is_periodic());
    CHECK(cub.known_depth() == 30u);
    ContinuedFraction num = ContinuedFraction::from_real(t.to_real(), 25);
    for (std::size_t n = 1; n <= 25; ++n)
        CHECK(num.a(n) == cub.a(n));

    // mixed preperiod and period, exact
    ContinuedFraction mixed = ContinuedFraction::parse("cf:3,1,(2,4)");
    CHECK(mixed.a(1) == 3);
    CHECK(mixed.a(5) == 2);
    CHECK(mixed.a(6) == 4);
    ContinuedFraction again = ContinuedFraction::from_element(mixed.alpha_exact());
    CHECK(again.preperiod() == std::vector<long>{3, 1});
    CHECK(again.period() == std::vector<long>{2, 4});
}

TEST_CASE("residue identities hold exactly")
{
    for (const char* spec : {"sqrt:2:-1:1", "golden", "cf:3,1,(2,4)", "sqrt:7:0:1"}) {
        ContinuedFraction cf = ContinuedFraction::parse(spec);
        for (std::size_t n = 1; n <= 60; ++n) {
            FieldElement an = cf.residue_exact(n), am = cf.residue_exact(n - 1), ap = cf.residue_exact(n + 1);
            REQUIRE(am * Rational(cf.q(n)) + an * Rational(cf.q(n - 1)) == FieldElement(an.field(), 1));
            REQUIRE(am == an * Rational(cf.a(n)) + ap);
            REQUIRE(an.sign() > 0);
            REQUIRE(abs(an.to_real() - cf.residue(n)) < Real("1e-45") * cf.residue(n) + Real("1e-70"));
        }
        for (std::size_t n = 3; n <= 60; ++n)
            REQUIRE(cf.q(n) > cf.q(n - 1));
    }
}

TEST_CASE("psi maps on simple sequences")
{
    ContinuedFraction cf = ContinuedFraction::parse("sqrt:2:-1:1");
    CHECK(abs(psi1(DigitSeq::finite({}, 1), cf, 40).value - cf.alpha()) < Real("1e-45"));
    CHECK(abs(psi2(DigitSeq::finite({1}, 1), cf, 40).value - cf.alpha()) < Real("1e-45"));
    // (a_1, 0, a_3, 0, ...) truncated at 2k sums to 1 - alpha_{2k}
    for (std::size_t k = 1; k <= 10; ++k) {
        std::vector<int> d;
        for (std::size_t i = 1; i <= 2 * k; ++i)
            d.push_back(i % 2 ? 2 : 0);
        Approx v = psi2(DigitSeq::finite(d, 2), cf, 40);
        CHECK(abs(v.value - (1 - cf.residue(2 * k))) < Real("1e-40"));
    }
    CHECK_THROWS_WITH_AS(psi2(DigitSeq::finite({2, 1}, 2), cf, 10), "inadmissible digit at position 1",
                         std::invalid_argument);
    CHECK_THROWS_AS(psi1(DigitSeq::finite({2}, 2), cf, 10), std::invalid_argument);
}

TEST_CASE("Ostrowski encoding")
{
    ContinuedFraction cf = ContinuedFraction::parse("sqrt:2:-1:1");
    CHECK(ostrowski_encode(cf.alpha_exact(), cf, 20) == DigitSeq::finite({1}, 1));
    CHECK(ostrowski_encode(Real(0), cf, 10).take(10) == std::vector<int>(10, 0));
    CHECK(ostrowski_encode(Real("0.5"), cf, 4).take(4) == std::vector<int>{1, 0, 1, 0});
    CHECK(ostrowski_encode(FieldElement(cf.alpha_exact().field(), Rational(1, 2)), cf, 4).take(4) ==
          std::vector<int>{1, 0, 1, 0});
    CHECK_THROWS_AS(ostrowski_encode(Real(1), cf, 4), std::domain_error);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* spec : {"sqrt:2:-1:1", "golden", "cf:3,1,(2,4)", "cf:(1,5,1,9)"}) {
        ContinuedFraction c = ContinuedFraction::parse(spec);
        const std::size_t n = 40;
        Real an = c.residue(n);
        for (int t = 0; t < 500; ++t) {
            Real x(u(rng));
            DigitSeq d = ostrowski_encode(x, c, n);
            REQUIRE_FALSE(rot_inadmissible(d.take(n), c, RotModel::second).has_value());
            Real back = psi2(DigitSeq::finite(d.take(n), 1), c, n).value;
            REQUIRE(x - back >= 0);
            REQUIRE(x - back <= an);
        }
    }
}

TEST_CASE("first-model encoding round trip")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* spec : {"sqrt:2:-1:1", "cf:3,1,(2,4)", "golden"}) {
        ContinuedFraction c = ContinuedFraction::parse(spec);
        const std::size_t n = 30;
        for (int t = 0; t < 200; ++t) {
            Real x(u(rng));
            std::vector<int> d = rot_encode1(x, c, n).take(n);
            REQUIRE_FALSE(rot_inadmissible(d, c, RotModel::first).has_value());
            Real back = psi1(DigitSeq::finite(d, 1), c, n).value;
            REQUIRE(abs(back - x) <= 2 * c.residue(n));
        }
    }
}

TEST_CASE("integer encodings")
{
    ContinuedFraction fib = ContinuedFraction::parse("golden");
    CHECK(integer_encode1(Integer(1), fib).take(3) == std::vector<int>{0, 0, 0});
    CHECK(integer_encode2(Integer(1), fib).take(3) == std::vector<int>{0, 1, 0});
    CHECK(integer_encode2(Integer(-1), fib).take(3) == std::vector<int>{1, 0, 0});
    CHECK(integer_encode2(Integer(0), fib) == DigitSeq::finite({}, 1));
    CHECK_THROWS_AS(integer_encode1(Integer(0), fib), std::domain_error);

    for (const char* spec : {"golden", "sqrt:2:-1:1", "cf:3,1,(2,4)"}) {
        ContinuedFraction c = ContinuedFraction::parse(spec);
        for (long N = -3000; N <= 3000; ++N) {
            DigitSeq e2 = integer_encode2(Integer(N), c);
            std::vector<int> d2 = e2.take(e2.known_length());
            REQUIRE(integer_value2(d2, c) == N);
            REQUIRE_FALSE(rot_inadmissible(d2, c, RotModel::second).has_value());
            if (N >= 1) {
                DigitSeq e1 = integer_encode1(Integer(N), c);
                std::vector<int> d1 = e1.take(e1.known_length());
                REQUIRE(integer_value1(d1, c) == N);
                REQUIRE_FALSE(rot_inadmissible(d1, c, RotModel::first).has_value());
            }
        }
    }
}

TEST_CASE("integer encodings match the rotation orbit")
{
    // psi(x) = N alpha mod 1 in the first model and psi'(x) = -N alpha mod 1 in the second
    for (const char* spec : {"sqrt:2:-1:1", "cf:3,1,(2,4)"}) {
        ContinuedFraction c = ContinuedFraction::parse(spec);
        for (long N = 1; N <= 400; ++N) {
            DigitSeq e1 = integer_encode1(Integer(N), c);
            REQUIRE(circle_dist(psi1(e1, c, 0).value, N * c.alpha()) < Real("1e-40"));
            DigitSeq e2 = integer_encode2(Integer(N), c);
            REQUIRE(circle_dist(psi2(e2, c, 0).value, -N * c.alpha()) < Real("1e-40"));
        }
    }
}

TEST_CASE("adic successor is the rotation by alpha")
{
    std::mt19937_64 rng(13);
    for (const char* spec : {"sqrt:2:-1:1", "cf:3,1,(2,4)"}) {
        ContinuedFraction c = ContinuedFraction::parse(spec);
        const std::size_t depth = 30;
        MarkovCompactum m2 = rot_compactum2(c, depth), m1 = rot_compactum1(c, depth);
        int checked = 0;
        for (int t = 0; t < 500; ++t) {
            std::vector<int> x = ostrowski_encode(Real(static_cast<double>(rng() % 1000000) / 1e6), c, depth).take(depth);
            auto s = successor(x, m2);
            if (!s)
                continue;
            Real lhs = psi2(DigitSeq::finite(*s, 1), c, depth).value;
            Real rhs = psi2(DigitSeq::finite(x, 1), c, depth).value + c.alpha();
            REQUIRE(circle_dist(lhs, rhs) <= 10 * c.residue(depth));
            ++checked;
        }
        CHECK(checked > 400);
        if (c.a(1) >= 2) {
            for (int t = 0; t < 300; ++t) {
                std::vector<int> x = rot_encode1(Real(static_cast<double>(rng() % 1000000) / 1e6), c, depth).take(depth);
                auto s = successor(x, m1);
                if (!s)
                    continue;
                Real lhs = psi1(DigitSeq::finite(*s, 1), c, depth).value;
                Real rhs = psi1(DigitSeq::finite(x, 1), c, depth).value + c.alpha();
                REQUIRE(circle_dist(lhs, rhs) <= 10 * c.residue(depth));
            }
        }
    }
}

TEST_CASE("Markov measure of the second model")
{
    for (const char* spec : {"sqrt:2:-1:1", "golden", "cf:3,1,(2,4)"}) {
        ContinuedFraction c = ContinuedFraction::parse(spec);
        RotMeasure m(c);
        const Field& f = c.alpha_exact().field();
        FieldElement one(f, 1);
        FieldElement init(f, 0);
        for (int i = 0; i <= c.a(1); ++i)
            init += m.initial_exact(i);
        CHECK(init == one);
        std::vector<FieldElement> marg;
        for (int i = 0; i <= c.a(1); ++i) {
            marg.push_back(m.initial_exact(i));
            CHECK(m.marginal_exact(1, i) == marg.back());
        }
        for (std::size_t n = 2; n <= 25; ++n) {
            std::vector<FieldElement> next(c.a(n) + 1, FieldElement(f, 0));
            for (int prev = 0; prev <= c.a(n - 1); ++prev) {
                FieldElement row(f, 0);
                for (int cur = 0; cur <= c.a(n); ++cur) {
                    FieldElement t = m.transition_exact(n, prev, cur);
                    row += t;
                    next[cur] += marg[prev] * t;
                }
                REQUIRE(row == one);
            }
            FieldElement total(f, 0);
            for (int cur = 0; cur <= c.a(n); ++cur) {
                REQUIRE(next[cur] == m.marginal_exact(n, cur));
                REQUIRE(abs(m.marginal(n, cur) - next[cur].to_real()) < Real("1e-40"));
                total += next[cur];
            }
            REQUIRE(total == one);
            marg = next;
        }
        CHECK(abs(m.transition(3, 0, 0) - c.ratio(3)) < Real("1e-45"));
    }
}

TEST_CASE("sampled digits follow the marginals")
{
    ContinuedFraction c = ContinuedFraction::parse("cf:3,1,(2,4)");
    RotMeasure m(c);
    auto samples = sample_digits(m, 8, 20000, 77);
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<double> freq(c.a(n) + 1, 0.0);
        for (const auto& s : samples) {
            REQUIRE_FALSE(rot_inadmissible(s, c, RotModel::second).has_value());
            freq[s[n - 1]] += 1.0 / samples.size();
        }
        for (int i = 0; i <= c.a(n); ++i)
            CHECK(std::abs(freq[i] - m.marginal(n, i).convert_to<double>()) < 0.015);
    }
}

TEST_CASE("digit sums look Gaussian for bounded quotients")
{
    RotMeasure m(ContinuedFraction::parse("sqrt:2:-1:1"));
    auto sums = sample_digit_sums(m, 2000, 2000, 2024);
    DigitStatistics st = digit_statistics(sums);
    CHECK(std::abs(st.skewness) < 0.2);
    CHECK(std::abs(st.excess_kurtosis) < 0.3);
    CHECK(st.ks_distance < 0.05);
    CHECK(st.variance > 0);
}

TEST_CASE("unique rotational expansions")
{
    auto ones = unique_rotational_analysis(ContinuedFraction::parse("golden"));
    CHECK(ones.empty == Verdict::True);

    auto twos = unique_rotational_analysis(ContinuedFraction::parse("cf:(2)"));
    CHECK(twos.empty == Verdict::False);
    CHECK(twos.measure_zero == Verdict::True);
    CHECK(twos.cardinality == Cardinality::Finite);
    CHECK(twos.dim_positive == Verdict::False);
    CHECK(twos.n0 == 0);

    auto threes = unique_rotational_analysis(ContinuedFraction::parse("cf:(3)"));
    CHECK(threes.cardinality == Cardinality::Continuum);
    CHECK(threes.measure_zero == Verdict::True);
    CHECK(threes.dim_positive == Verdict::True);
    REQUIRE(threes.mu_K_alpha.has_value());
    CHECK(threes.mu_K_alpha->value + threes.mu_K_alpha->error_bound < Real("1e-20"));

    auto mixed = unique_rotational_analysis(ContinuedFraction::parse("cf:5,1,(2,3)"));
    CHECK(mixed.n0 == 2);
    CHECK(mixed.empty == Verdict::False);
    CHECK(mixed.cardinality == Cardinality::Continuum);
    CHECK(to_string(Cardinality::Continuum) == "Continuum");
}
