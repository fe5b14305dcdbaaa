// Expansions of reals in a non-integer base: greedy, lazy, intermediate, Parry admissibility.
#ifndef ARITHDYN_BETA_CORE_HPP
#define ARITHDYN_BETA_CORE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/exactnum.hpp"

namespace arithdyn {

// Digit string: finite (then implicitly zero), eventually periodic, a truncated
// prefix of an unknown continuation, or produced on demand by a generator.
class DigitSeq {
public:
    enum class Kind { finite, periodic, prefix, generated };

    DigitSeq() = default;
    static DigitSeq finite(std::vector<int> digits, int alphabet_max);
    static DigitSeq periodic(std::vector<int> preperiod, std::vector<int> period, int alphabet_max);
    static DigitSeq prefix(std::vector<int> digits, int alphabet_max);
    static DigitSeq generated(std::function<int(std::size_t)> gen, int alphabet_max);

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::finite || kind_ == Kind::periodic; }
    const std::vector<int>& preperiod() const { return body_; }
    const std::vector<int>& period() const { return period_; }
    // Number of digits known explicitly (prefix length, or pre + period).
    std::size_t known_length() const { return body_.size() + period_.size(); }

    // Per-position alphabet bound; one entry means a constant bound.
    const std::vector<int>& alphabet_max() const { return alphabet_max_; }
    void set_alphabet_max(std::vector<int> bounds);
    int bound(std::size_t i) const;

    bool numeric_unverified() const { return unverified_; }
    void set_numeric_unverified(bool v) { unverified_ = v; }

    // Digit i (0-based). Throws std::out_of_range past the end of a prefix.
    int at(std::size_t i) const;
    bool available(std::size_t i) const { return kind_ != Kind::prefix || i < body_.size(); }
    std::vector<int> take(std::size_t n) const;
    DigitSeq shifted(std::size_t k) const;

    // "0(100)^" style rendering for exact sequences; plain digits otherwise.
    std::string to_string() const;
    std::string render(std::size_t n) const;   // first n digits, no separators

    bool operator==(const DigitSeq& o) const;

private:
    void normalize();

    Kind kind_ = Kind::finite;
    std::vector<int> body_;
    std::vector<int> period_;
    std::vector<int> alphabet_max_{1};
    std::shared_ptr<const std::function<int(std::size_t)>> gen_;
    bool unverified_ = false;
};

// Lexicographic comparison. Exact for finite/periodic pairs; otherwise compared up
// to max_depth digits (or the available prefix) and nullopt if still undecided.
std::optional<int> lex_compare(const DigitSeq& a, const DigitSeq& b, std::size_t max_depth = 4096);

// The base of the numeration. Algebraic mode: beta generates an exact field (degree 1
// for rational bases). Numeric mode: beta is a high-precision real.
class Beta {
public:
    static Beta algebraic(Field f);
    static Beta numeric(const Real& value);
    // "golden" | "tribonacci" | "plastic" | "poly:c0,c1,...,1" | rational "3/2", "1.9"
    // | "num:<decimal>" for numeric mode.
    static Beta parse(const std::string& spec);

    bool is_algebraic() const { return static_cast<bool>(field_); }
    const Field& field() const;
    FieldElement element() const;
    const Real& value() const { return value_; }
    int floor() const { return floor_; }
    // Largest digit of the standard alphabet: ceil(beta) - 1 (equals [beta] unless beta is an integer).
    int max_digit() const { return max_digit_; }
    std::string describe() const;

private:
    Field field_;
    Real value_;
    int floor_ = 0;
    int max_digit_ = 0;
};

enum class ExpansionMode { greedy, lazy, intermediate };

// First n greedy digits of x in [0,1). Exact mode detects termination or eventual
// periodicity within the n steps; otherwise a prefix is returned.
DigitSeq greedy_expand(const FieldElement& x, const Beta& beta, std::size_t n);
DigitSeq greedy_expand(const Real& x, const Beta& beta, std::size_t n);
DigitSeq greedy_expand(const Rational& x, const Beta& beta, std::size_t n);

// Lazy digits of x in [0, d/(beta-1)] with d = max_digit().
DigitSeq lazy_expand(const FieldElement& x, const Beta& beta, std::size_t n);
DigitSeq lazy_expand(const Real& x, const Beta& beta, std::size_t n);
DigitSeq lazy_expand(const Rational& x, const Beta& beta, std::size_t n);

// Digits of the map x -> beta x - digit on [alpha, 1 + alpha], digit 1 iff x >= (1+alpha)/beta.
DigitSeq intermediate_expand(const FieldElement& x, const Beta& beta, const FieldElement& alpha, std::size_t n);
DigitSeq intermediate_expand(const Real& x, const Beta& beta, const Real& alpha, std::size_t n);
DigitSeq intermediate_expand(const Rational& x, const Beta& beta, const Rational& alpha, std::size_t n);

struct ParryData {
    DigitSeq a_prime;   // greedy expansion of 1
    DigitSeq a;         // quasi-greedy expansion of 1
    bool exact = false;
    bool truncated = false;
    std::size_t steps = 0;
};

inline constexpr std::size_t default_orbit_bound = 10000;

ParryData expansion_of_one(const Beta& beta, std::size_t bound = default_orbit_bound);

// Every shift of eps is strictly below a.
bool is_parry_admissible(const DigitSeq& eps, const ParryData& parry);
bool is_parry_admissible(const DigitSeq& eps, const DigitSeq& a);
// Every proper shift of a is <= a.
bool is_parry_sequence(const DigitSeq& a);

enum class CompactumClass { SFT, Sofic, NotSofic, Unknown };
std::string to_string(CompactumClass c);

struct ConjugateInfo {
    bool algebraic_integer = false;
    bool perron = false;    // every other conjugate has modulus < beta (numerical, margin 1e-12)
    bool pisot = false;     // every other conjugate has modulus < 1 (numerical, margin 1e-12)
    long double max_other_modulus = 0;
};
ConjugateInfo conjugate_info(const Field& f);

struct CompactumReport {
    CompactumClass category = CompactumClass::Unknown;
    ParryData parry;
    ConjugateInfo conjugates;
};

CompactumReport classify_compactum(const Beta& beta, std::size_t bound = default_orbit_bound);

// Sum of eps_i beta^{-(start + i)} for i >= 0.
FieldElement evaluate_exact(const DigitSeq& eps, const Beta& beta, long start = 1);
// Numeric value; prefixes and generators are summed to `depth` digits with a tail bound.
Approx evaluate(const DigitSeq& eps, const Beta& beta, long start = 1, std::size_t depth = 256);

} // namespace arithdyn

#endif
