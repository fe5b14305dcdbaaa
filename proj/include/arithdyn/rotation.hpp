// Continued fractions and the two rotational (Ostrowski-type) numeration models.
#ifndef ARITHDYN_ROTATION_HPP
#define ARITHDYN_ROTATION_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/adic.hpp"
#include "arithdyn/beta_core.hpp"

namespace arithdyn {

// Regular continued fraction of alpha in (0,1). Indexing: a_1, a_2, ...;
// p_0 = 1, q_0 = 0, p_1 = 0, q_1 = 1, p_{n+1} = a_n p_n + p_{n-1} (same for q);
// residues alpha_n = |q_n alpha - p_n|, so alpha_0 = 1 and alpha_1 = alpha.
class ContinuedFraction {
public:
    // Exact expansion; quadratic alpha is detected as eventually periodic within max_steps.
    static ContinuedFraction from_element(const FieldElement& alpha, std::size_t max_steps = 4096);
    // Eventually periodic quotients (exact, quadratic alpha); an empty period means a bare
    // prefix for which only quotients and convergents are known.
    static ContinuedFraction from_quotients(std::vector<long> preperiod, std::vector<long> period);
    // Numeric expansion to n quotients.
    static ContinuedFraction from_real(const Real& alpha, std::size_t n);
    // "sqrt:d:a:b" = frac(a + b sqrt d); "cf:2,(1,3)" with the parenthesised group repeating;
    // "cf:2,2,2" is a prefix; "golden" = G - 1; "num:<decimal>".
    static ContinuedFraction parse(const std::string& spec);

    bool is_periodic() const { return !period_.empty(); }
    bool is_exact() const { return alpha_exact_.has_value(); }
    bool has_residues() const { return is_exact() || !tails_real_.empty(); }
    // Number of known quotients; nullopt when periodic.
    std::optional<std::size_t> known_depth() const;
    const std::vector<long>& preperiod() const { return pre_; }
    const std::vector<long>& period() const { return period_; }

    long a(std::size_t n) const;   // 1-based; throws unresolved_error past a prefix
    Integer p(std::size_t n) const;
    Integer q(std::size_t n) const;
    std::vector<Integer> q_list(std::size_t n) const;   // q_0 .. q_n

    Real alpha() const;
    const FieldElement& alpha_exact() const;
    Real residue(std::size_t n) const;
    std::vector<Real> residues(std::size_t n) const;   // alpha_0 .. alpha_n
    FieldElement residue_exact(std::size_t n) const;
    // alpha_n / alpha_{n-1} = [0; a_n, a_{n+1}, ...] for n >= 1
    Real ratio(std::size_t n) const;

    std::string describe() const;

private:
    std::vector<long> pre_, period_;
    std::optional<FieldElement> alpha_exact_;
    std::vector<FieldElement> tails_exact_;   // t_0 .. t_{pre+per-1}, t_n = [0; a_{n+1}, ...]
    std::vector<Real> tails_real_;            // numeric tails when no exact value exists
};

// X_alpha: digits 0..a_1-1 at level 1, 0..a_n at level n >= 2; a nonzero digit forbids the
// largest digit at the next level; natural order.
MarkovCompactum rot_compactum1(const ContinuedFraction& cf, std::size_t depth);
// X'_alpha: digits 0..a_n; the digit a_n forces 0 next; ascending order at odd levels,
// descending at even levels (1-based).
MarkovCompactum rot_compactum2(const ContinuedFraction& cf, std::size_t depth);

enum class RotModel { first = 1, second = 2 };

// Position (0-based) of the first inadmissible digit, or nullopt.
std::optional<std::size_t> rot_inadmissible(const std::vector<int>& digits, const ContinuedFraction& cf, RotModel m);

// alpha + sum x_n (-1)^{n+1} alpha_n and sum x_n alpha_n, with tail bound alpha_depth.
Approx psi1(const DigitSeq& x, const ContinuedFraction& cf, std::size_t depth);
Approx psi2(const DigitSeq& x, const ContinuedFraction& cf, std::size_t depth);
FieldElement psi2_exact(const std::vector<int>& digits, const ContinuedFraction& cf);

// Greedy digits min(floor(r_k / alpha_k), a_k) for the second model.
DigitSeq ostrowski_encode(const Real& x, const ContinuedFraction& cf, std::size_t n);
DigitSeq ostrowski_encode(const FieldElement& x, const ContinuedFraction& cf, std::size_t n);
// First model: digit by digit, keeping the remainder inside the range of admissible tails.
DigitSeq rot_encode1(const Real& x, const ContinuedFraction& cf, std::size_t n);

// N = 1 + sum x_k q_k (N >= 1) and N = sum x_n (-1)^n q_n (any N).
DigitSeq integer_encode1(const Integer& N, const ContinuedFraction& cf);
DigitSeq integer_encode2(const Integer& N, const ContinuedFraction& cf);
Integer integer_value1(const std::vector<int>& digits, const ContinuedFraction& cf);
Integer integer_value2(const std::vector<int>& digits, const ContinuedFraction& cf);

// Markov measure of the second model.
class RotMeasure {
public:
    explicit RotMeasure(ContinuedFraction cf);
    const ContinuedFraction& cf() const { return cf_; }

    Real initial(int i) const;
    Real transition(std::size_t n, int prev, int cur) const;   // n >= 2
    Real marginal(std::size_t n, int i) const;

    FieldElement initial_exact(int i) const;
    FieldElement transition_exact(std::size_t n, int prev, int cur) const;
    FieldElement marginal_exact(std::size_t n, int i) const;

private:
    ContinuedFraction cf_;
};

std::vector<std::vector<int>> sample_digits(const RotMeasure& m, std::size_t n, std::size_t count, std::uint64_t seed);
// Digit sums S_n of `count` independent samples.
std::vector<double> sample_digit_sums(const RotMeasure& m, std::size_t n, std::size_t count, std::uint64_t seed);

struct DigitStatistics {
    double mean = 0;
    double variance = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
    double ks_distance = 0;   // standardized sample vs the normal law
};
DigitStatistics digit_statistics(const std::vector<double>& sums);
DigitStatistics digit_statistics(const std::vector<std::vector<int>>& samples);

enum class Verdict { False, True, Unknown };
enum class Cardinality { Finite, Continuum, Unknown };   // the empty set counts as Finite
std::string to_string(Verdict v);
std::string to_string(Cardinality c);

struct RotUniqueReport {
    Verdict empty = Verdict::Unknown;
    Verdict measure_zero = Verdict::Unknown;
    Cardinality cardinality = Cardinality::Unknown;
    Verdict dim_positive = Verdict::Unknown;
    std::optional<long> n0;                 // last index with a_n = 1 (0 if none)
    std::optional<Approx> mu_K_alpha;       // measure of the set with 0 < x_n < a_n beyond n0
};
RotUniqueReport unique_rotational_analysis(const ContinuedFraction& cf, std::size_t horizon = 200);

} // namespace arithdyn

#endif
