#include "doctest.h"

#include <map>
#include <random>

#include "arithdyn/beta_count.hpp"
#include "arithdyn/errors.hpp"

using namespace arithdyn;

namespace {

// a + b G with integer a, b; G^2 = G + 1.
using Pair = std::pair<long long, long long>;

Pair times_golden(Pair v) { return {v.second, v.first + v.second}; }

Pair word_value(const std::string& w)
{
    Pair v{0, 0};
    for (char c : w) {
        v = times_golden(v);
        v.first += c - '0';
    }
    return v;
}

// Class sizes of all 0-1 words of length n, keyed by exact value in Z[G].
std::map<Pair, long> value_histogram(std::size_t n)
{
    std::map<Pair, long> h{{{0, 0}, 1}};
    for (std::size_t i = 0; i < n; ++i) {
        std::map<Pair, long> next;
        for (const auto& [v, c] : h) {
            Pair g = times_golden(v);
            next[g] += c;
            next[{g.first + 1, g.second}] += c;
        }
        h.swap(next);
    }
    return h;
}

std::vector<std::string> admissible_words(std::size_t n)
{
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (const auto& w : out) {
            next.push_back(w + "0");
            if (w.empty() || w.back() == '0')
                next.push_back(w + "1");
        }
        out.swap(next);
    }
    return out;
}

} // namespace

TEST_CASE("count matrices are stored exactly")
{
    CountMatrices m;
    CHECK(m.P_a[0][0] == 1);
    CHECK(m.P_a[0][1] == 1);
    CHECK(m.P_a[1][0] == 0);
    CHECK(m.P_a[1][1] == 1);
    for (auto& row : m.P_b)
        for (auto& e : row)
            CHECK(e == Rational(1, 2));
    CHECK(m.P_c[0][1] == 0);
    CHECK(m.P_c[1][0] == 1);
}

TEST_CASE("golden decoding")
{
    CHECK(golden_decode("0010010").letters == "acb");
    CHECK(golden_decode("1000").letters == "ca");
    CHECK(golden_decode("101").letters == "c");
    CHECK(golden_decode("101").tail == "1");
    CHECK(golden_decode("1001").tail == "01");
    CHECK_THROWS_WITH_AS(golden_decode("10110"), "word contains 11 at position 2", std::invalid_argument);
    CHECK_THROWS_AS(golden_decode("10a"), std::invalid_argument);
}

TEST_CASE("equivalent word counts")
{
    CHECK(count_equivalent_words("100") == 2);
    CHECK(count_equivalent_words("10000") == 3);
    CHECK(count_equivalent_words("000000") == 1);
    CHECK(count_equivalent_words("") == 1);
    CHECK_THROWS_AS(count_equivalent_words("0110"), std::invalid_argument);
}

TEST_CASE("equivalent word counts match brute force on every admissible word")
{
    for (std::size_t n = 1; n <= 16; ++n) {
        auto hist = value_histogram(n);
        for (const auto& w : admissible_words(n))
            REQUIRE(count_equivalent_words(w) == hist.at(word_value(w)));
    }
}

TEST_CASE("blocks")
{
    CHECK(Block({2}).render() == "10000");
    CHECK(Block({1, 1}).render() == "10100");
    CHECK(Block({1, 1, 1}).render() == "1000100");
    CHECK(Block::parse("10100").params() == std::vector<long>{1, 1});
    CHECK(count_block(Block({1})) == 2);
    CHECK(count_block(Block({2})) == 3);
    CHECK(count_block(Block({1, 1})) == 3);
    CHECK_THROWS_AS(Block({1, 2}, Block::Variant::zeros_first), std::invalid_argument);
    CHECK_THROWS_AS(Block::parse("10101"), std::invalid_argument);
    CHECK_THROWS_AS(Block({0}), std::invalid_argument);
}

TEST_CASE("block count is p_r + q_r and matches brute force")
{
    // all compositions of s <= 12
    std::vector<std::vector<long>> tuples;
    std::function<void(std::vector<long>&, long)> gen = [&](std::vector<long>& cur, long left) {
        if (!cur.empty())
            tuples.push_back(cur);
        for (long a = 1; a <= left; ++a) {
            cur.push_back(a);
            gen(cur, left - a);
            cur.pop_back();
        }
    };
    std::vector<long> cur;
    gen(cur, 12);
    CHECK(tuples.size() == 4095);
    std::map<std::size_t, std::map<Pair, long>> hists;
    for (const auto& t : tuples) {
        Block b(t);
        std::string w = b.render();
        REQUIRE(Block::parse(w).params() == t);
        if (!hists.count(w.size()))
            hists[w.size()] = value_histogram(w.size());
        REQUIRE(count_block(b) == hists[w.size()].at(word_value(w)));
        REQUIRE(count_equivalent_words(w) == count_block(b));
    }
}

TEST_CASE("blockwise multiplicativity")
{
    auto r = blockwise_multiplicativity_check("100100");
    CHECK(r.holds);
    CHECK(r.product == 4);
    CHECK(r.blocks.size() == 2);
    r = blockwise_multiplicativity_check("10000100");
    CHECK(r.holds);
    CHECK(r.direct == 6);
    CHECK(blockwise_multiplicativity_check("1000100").blocks.size() == 1);
    CHECK_THROWS_WITH_AS(blockwise_multiplicativity_check("100101"), "residual suffix '101' is not a block",
                         std::invalid_argument);
    CHECK_THROWS_AS(blockwise_multiplicativity_check("00100"), std::invalid_argument);

    // every pair of blocks with total length <= 16
    std::vector<std::string> blocks;
    for (std::size_t n = 3; n <= 13; n += 2)
        for (const auto& w : admissible_words(n))
            if (w[0] == '1') {
                try {
                    blocks.push_back(Block::parse(w).render());
                } catch (const std::invalid_argument&) {
                }
            }
    int pairs = 0;
    for (const auto& b1 : blocks)
        for (const auto& b2 : blocks)
            if (b1.size() + b2.size() <= 16) {
                auto rep = blockwise_multiplicativity_check(b1 + b2);
                REQUIRE(rep.holds);
                REQUIRE(rep.blocks.size() == 2);
                ++pairs;
            }
    CHECK(pairs > 100);
}

TEST_CASE("goldenshift")
{
    DigitSeq p = DigitSeq::periodic({}, {1, 0, 0}, 1);
    CHECK(goldenshift(p) == p);
    DigitSeq s = DigitSeq::periodic({1, 0, 0, 0, 0}, {1, 0, 0}, 1);
    CHECK(goldenshift(s) == p);
    CHECK(goldenshift(DigitSeq::prefix({1, 0, 1, 0, 0, 1, 0}, 1)).render(2) == "10");
    CHECK_THROWS_AS(goldenshift(DigitSeq::periodic({}, {0, 1}, 1)), std::invalid_argument);
    CHECK_THROWS_AS(goldenshift(DigitSeq::prefix({1, 0, 0, 0}, 1)), unresolved_error);
    CHECK_THROWS_AS(goldenshift(DigitSeq::periodic({}, {1, 0}, 1)), unresolved_error);
}

TEST_CASE("branching exploration for the golden ratio")
{
    Beta g = Beta::parse("golden");
    BranchSummary half = branching_explore(Rational(1, 2), g, 2, 31);
    for (std::size_t k = 0; k <= 10; ++k)
        CHECK(half.per_depth[3 * k] == (std::uint64_t{1} << k));
    FieldElement gh = g.element() * Rational(1, 2);
    BranchSummary s = branching_explore(gh, g, 2, 30);
    for (std::size_t k = 1; k <= 10; ++k)
        CHECK(s.per_depth[3 * k - 1] == (std::uint64_t{1} << k));

    // x = G - 1 is a countable class: n + 1 prefixes at depth n
    BranchSummary c = branching_explore(g.element() - Rational(1), g, 2, 40);
    for (std::size_t n = 1; n <= 40; ++n)
        CHECK(c.per_depth[n - 1] == n + 1);

    CHECK_THROWS_AS(branching_explore(Rational(3), g, 2, 5), std::domain_error);
    CHECK_THROWS_AS(branching_explore(Rational(1, 2), g, 1, 5), std::domain_error);
    CHECK_THROWS_AS(branching_explore(Rational(1, 2), g, 2, 65), std::invalid_argument);
}

TEST_CASE("branching exploration agrees with direct prefix enumeration")
{
    // a prefix w of length n is feasible iff 0 <= G^n (x - value(w)) <= 1/(G-1) = G
    Beta g = Beta::parse("golden");
    const double G = (1 + std::sqrt(5.0)) / 2;
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        long num = static_cast<long>(rng() % 1000);
        Rational x(num, 617);
        BranchSummary s = branching_explore(x, g, 2, 14);
        for (std::size_t n = 1; n <= 14; ++n) {
            std::uint64_t count = 0;
            for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
                std::string w;
                for (std::size_t i = 0; i < n; ++i)
                    w += ((m >> (n - 1 - i)) & 1) ? '1' : '0';
                Pair v = word_value(w);
                // G^n x - v in exact form would need x in Z[G]; compare in long double
                long double r = std::pow(static_cast<long double>(G), n) * num / 617.0L - (v.first + v.second * G);
                if (r >= -1e-12L && r <= G + 1e-12L)
                    ++count;
            }
            REQUIRE(s.per_depth[n - 1] == count);
        }
    }
}

TEST_CASE("branching is generic for beta = 9/5")
{
    Beta b = Beta::parse("9/5");
    std::mt19937_64 rng(2026);
    int with_choice = 0;
    const int samples = 200;
    for (int i = 0; i < samples; ++i) {
        Rational x(static_cast<long>(rng() % 1000000) + 1, 800000);   // inside [0, 1.25]
        BranchSummary s = branching_explore(x, b, 2, 60);
        if (s.choice_nodes > 0)
            ++with_choice;
        REQUIRE(s.paths == s.per_depth.back());
    }
    CHECK(with_choice >= samples * 99 / 100);
}
