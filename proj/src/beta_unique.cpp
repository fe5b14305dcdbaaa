#include "arithdyn/beta_unique.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace arithdyn {

int ThueMorse::at(std::uint64_t k)
{
    return std::popcount(k) & 1;
}

std::vector<int> ThueMorse::word(std::size_t n)
{
    std::vector<int> w(n);
    for (std::size_t k = 0; k < n; ++k)
        w[k] = at(k);
    return w;
}

char RhoWord::at(std::uint64_t k)
{
    // The substitution is 2-uniform: letter k is letter (k mod 2) of rho(letter k/2).
    static const char* image[4] = {"ac", "ad", "da", "db"};
    if (k == 0)
        return 'd';
    char parent = at(k / 2);
    return image[parent - 'a'][k % 2];
}

std::string RhoWord::word(std::size_t n)
{
    std::string w(n, ' ');
    for (std::size_t k = 0; k < n; ++k)
        w[k] = at(k);
    return w;
}

std::string RhoWord::thue_morse_blocks(std::size_t blocks)
{
    std::string out;
    for (std::size_t i = 0; i < blocks; ++i) {
        int code = 0;
        for (std::uint64_t k = 4 * i + 1; k < 4 * i + 5; ++k)
            code = code * 2 + ThueMorse::at(k);
        switch (code) {
        case 0b1101: out += 'd'; break;
        case 0b0011: out += 'b'; break;
        case 0b0010: out += 'a'; break;
        case 0b1100: out += 'c'; break;
        default: throw std::logic_error("unexpected Thue-Morse block");
        }
    }
    return out;
}

// ---------------------------------------------------------------- critical bases

namespace {

// +1 if the series exceeds 1 at x (root lies above x), -1 if below, 0 if undecided.
int series_side(const std::function<int(std::uint64_t)>& digit, int max_digit, const Real& x)
{
    const Real inv = 1 / x;
    const Real guard("1e-45");
    Real sum = 0, w = 1;
    for (std::uint64_t k = 1; k <= 200000; ++k) {
        w *= inv;
        sum += digit(k) * w;
        Real tail = max_digit * w * inv / (1 - inv);
        if (sum - 1 > guard)
            return 1;
        if (sum + tail - 1 < -guard)
            return -1;
    }
    return 0;
}

} // namespace

Approx solve_digit_series(const std::function<int(std::uint64_t)>& digit, int max_digit, const Real& eps)
{
    if (!(eps > 0))
        throw std::invalid_argument("eps must be positive");
    if (eps < Real("1e-40"))
        throw precision_error("accuracy below 1e-40 is beyond the working precision");
    Real lo = Real(1) + Real("1e-3"), hi = Real(max_digit + 1);
    if (series_side(digit, max_digit, lo) <= 0 || series_side(digit, max_digit, hi) > 0)
        throw std::domain_error("digit series does not bracket a root");
    while (hi - lo > eps) {
        Real mid = (lo + hi) / 2;
        int s = series_side(digit, max_digit, mid);
        if (s > 0)
            lo = mid;
        else if (s < 0)
            hi = mid;
        else
            break;   // mid agrees with the root to the working precision
    }
    return Approx{(lo + hi) / 2, (hi - lo) / 2 + Real("1e-44")};
}

Approx komornik_loreti(const Real& eps)
{
    return solve_digit_series([](std::uint64_t k) { return ThueMorse::at(k); }, 1, eps);
}

Approx generalized_critical_base(int N, const Real& eps)
{
    if (N < 2)
        throw std::invalid_argument("N must be at least 2");
    const int n = N / 2;
    if (N % 2 == 0)
        return solve_digit_series([n](std::uint64_t k) { return n - 1 + ThueMorse::at(k); }, n, eps);
    return solve_digit_series(
        [n](std::uint64_t k) {
            switch (RhoWord::at(k - 1)) {
            case 'a': return n - 1;
            case 'd': return n + 1;
            default: return n;
            }
        },
        n + 1, eps);
}

// ---------------------------------------------------------------- uniqueness test

namespace {

DigitSeq complement(const DigitSeq& a)
{
    auto flip = [](std::vector<int> v) {
        for (auto& d : v)
            d = 1 - d;
        return v;
    };
    switch (a.kind()) {
    case DigitSeq::Kind::finite: return DigitSeq::periodic(flip(a.preperiod()), {1}, 1);
    case DigitSeq::Kind::periodic: return DigitSeq::periodic(flip(a.preperiod()), flip(a.period()), 1);
    case DigitSeq::Kind::prefix: return DigitSeq::prefix(flip(a.preperiod()), 1);
    case DigitSeq::Kind::generated: return DigitSeq::generated([a](std::size_t i) { return 1 - a.at(i); }, 1);
    }
    return a;
}

} // namespace

UniqueCheck is_unique_expansion(const DigitSeq& eps, const ParryData& parry)
{
    for (std::size_t i = 0; i < eps.known_length() && eps.available(i); ++i)
        if (eps.at(i) < 0 || eps.at(i) > 1)
            throw std::invalid_argument("uniqueness test expects 0-1 digits");
    if (eps.kind() == DigitSeq::Kind::finite && eps.preperiod().empty())
        return {true, true};
    if (eps.kind() == DigitSeq::Kind::periodic && eps.preperiod().empty() && eps.period() == std::vector<int>{1})
        return {true, true};
    const DigitSeq& a = parry.a;
    const DigitSeq abar = complement(a);
    std::size_t positions = eps.is_exact() ? eps.known_length() + 1 : eps.known_length();
    bool undecided = !eps.is_exact();
    for (std::size_t n = 0; n < positions; ++n) {
        if (!eps.available(n))
            break;
        DigitSeq tail = eps.shifted(n + 1);
        std::optional<int> c = eps.at(n) == 0 ? lex_compare(tail, a) : lex_compare(tail, abar);
        if (!c) {
            undecided = true;
            continue;
        }
        if (eps.at(n) == 0 ? *c >= 0 : *c <= 0)
            return {false, false};
    }
    if (undecided)
        throw unresolved_error("uniqueness cannot be decided from the available digits");
    return {true, false};
}

UniqueCheck is_unique_expansion(const DigitSeq& eps, const Beta& beta)
{
    if (!(beta.value() > 1 && beta.value() < 2))
        throw std::domain_error("uniqueness test needs 1 < beta < 2");
    return is_unique_expansion(eps, expansion_of_one(beta));
}

std::string to_string(UniqueCategory c)
{
    switch (c) {
    case UniqueCategory::Empty: return "Empty";
    case UniqueCategory::Countable: return "Countable";
    case UniqueCategory::UncountableZeroDim: return "UncountableZeroDim";
    case UniqueCategory::PositiveDim: return "PositiveDim";
    }
    return "Empty";
}

UniquenessVerdict classify_unique_set(const Real& beta, const Real& resolution)
{
    if (!(beta > 1 && beta < 2))
        throw std::domain_error("classification needs 1 < beta < 2");
    UniquenessVerdict v;
    v.golden = (1 + sqrt(Real(5))) / 2;
    v.critical = komornik_loreti(Real("1e-20")).value;
    if (abs(beta - v.golden) < resolution)
        throw boundary_undecided("beta is within the resolution of the golden ratio");
    if (abs(beta - v.critical) < resolution)
        throw boundary_undecided("beta is within the resolution of the Komornik-Loreti constant");
    if (beta < v.golden) {
        v.category = UniqueCategory::Empty;
        v.reason = "beta <= golden ratio: only the endpoints have unique expansions";
    } else if (beta < v.critical) {
        v.category = UniqueCategory::Countable;
        v.reason = "golden ratio < beta < Komornik-Loreti constant";
    } else {
        v.category = UniqueCategory::PositiveDim;
        v.reason = "Komornik-Loreti constant < beta < 2";
    }
    return v;
}

// ---------------------------------------------------------------- gap map

namespace {

template <class Num, class Make>
GapReport gap_impl(Num x, const Num& beta, std::size_t n, Make make)
{
    const Num one = make(1);
    const Num lo = one / beta;
    const Num hi = one / (beta * (beta - one));
    const Num top = one / (beta - one);
    if (x < make(0) || x > top)
        throw std::domain_error("gap map needs 0 <= x <= 1/(beta-1)");
    GapReport r;
    for (std::size_t step = 0; step <= n; ++step) {
        if constexpr (std::is_same_v<Num, FieldElement>)
            r.orbit.push_back(x.to_real());
        else
            r.orbit.push_back(x);
        if (x >= lo && x <= hi) {
            r.entered = true;
            r.step = step;
            return r;
        }
        r.survived = step;
        if (step == n)
            break;
        x = x < lo ? Num(beta * x) : Num(beta * x - one);
    }
    return r;
}

} // namespace

GapReport gap_map_orbit(const FieldElement& x, const Beta& beta, std::size_t n)
{
    if (!beta.is_algebraic())
        return gap_map_orbit(x.to_real(), beta, n);
    if (!(beta.value() > 1 && beta.value() < 2))
        throw std::domain_error("gap map needs 1 < beta < 2");
    const Field f = beta.field();
    return gap_impl(x, beta.element(), n, [&](int v) { return FieldElement(f, v); });
}

GapReport gap_map_orbit(const Real& x, const Beta& beta, std::size_t n)
{
    if (!(beta.value() > 1 && beta.value() < 2))
        throw std::domain_error("gap map needs 1 < beta < 2");
    return gap_impl(x, beta.value(), n, [](int v) { return Real(v); });
}

double gap_escape_fraction(const Beta& beta, std::size_t samples, std::size_t steps, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Real top = 1 / (beta.value() - 1);
    std::size_t entered = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        Real x = Real(u(rng)) * top;
        if (gap_map_orbit(x, beta, steps).entered)
            ++entered;
    }
    return samples ? static_cast<double>(entered) / static_cast<double>(samples) : 0.0;
}

// ---------------------------------------------------------------- word counts

std::uint64_t constrained_word_count(const DigitSeq& a, std::size_t n)
{
    if (n > 63)
        throw std::invalid_argument("word length above 63 is not supported");
    if (!a.available(n))
        throw std::invalid_argument("reference sequence is shorter than the word length");
    std::vector<int> ad = a.take(n + 1);
    // State: bit L of `up` marks an open tie of length L against a (started after a 0);
    // bit L of `down` an open tie against the complement (started after a 1).
    struct Key {
        std::uint64_t up, down;
        bool operator==(const Key&) const = default;
    };
    struct Hash {
        std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>()(k.up * 0x9E3779B97F4A7C15ULL ^ k.down); }
    };
    std::unordered_map<Key, std::uint64_t, Hash> cur{{Key{0, 0}, 1}}, next;
    for (std::size_t pos = 0; pos < n; ++pos) {
        next.clear();
        for (const auto& [k, count] : cur) {
            for (int d = 0; d <= 1; ++d) {
                Key nk{0, 0};
                bool dead = false;
                for (std::uint64_t m = k.up; m && !dead; m &= m - 1) {
                    int L = std::countr_zero(m);
                    if (d > ad[L])
                        dead = true;
                    else if (d == ad[L])
                        nk.up |= std::uint64_t{1} << (L + 1);
                }
                for (std::uint64_t m = k.down; m && !dead; m &= m - 1) {
                    int L = std::countr_zero(m);
                    int ref = 1 - ad[L];
                    if (d < ref)
                        dead = true;
                    else if (d == ref)
                        nk.down |= std::uint64_t{1} << (L + 1);
                }
                if (dead)
                    continue;
                if (d == 0)
                    nk.up |= 1;
                else
                    nk.down |= 1;
                next[nk] += count;
            }
        }
        std::swap(cur, next);
    }
    std::uint64_t total = 0;
    for (const auto& kv : cur)
        total += kv.second;
    return total;
}

std::uint64_t unique_word_count(const Beta& beta, std::size_t n)
{
    if (!(beta.value() > 1 && beta.value() < 2))
        throw std::domain_error("word counts need 1 < beta < 2");
    ParryData p = expansion_of_one(beta, n + 64);
    return constrained_word_count(p.a, n);
}

double unique_entropy_estimate(const Beta& beta, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("depth must be positive");
    return std::log(static_cast<double>(unique_word_count(beta, n))) / static_cast<double>(n);
}

Approx doubling_hole_threshold(const Real& eps)
{
    if (!(eps > 0))
        throw std::invalid_argument("eps must be positive");
    Rational sum = 0, w(1, 2);
    Rational target = to_rational(eps) / 2;
    std::uint64_t k = 0;
    while (w > target) {
        if (ThueMorse::at(k))
            sum += w;
        w /= 2;
        ++k;
    }
    // the remaining terms add at most w
    Approx a = refine(sum + w / 2, eps / 2);
    a.error_bound += to_real(w / 2);
    return a;
}

std::uint64_t doubling_hole_survivor_count(const Rational& delta, std::size_t n)
{
    if (!(delta > 0 && delta < Rational(1, 2)))
        throw std::domain_error("delta must lie in (0, 1/2)");
    DigitSeq a = greedy_expand(Rational(2 * delta), Beta::parse("2"), n + 64);
    return constrained_word_count(a, n);
}

} // namespace arithdyn
