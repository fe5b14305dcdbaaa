// Unique expansions: Thue-Morse constants, critical bases, the gap map, uniqueness sets.
#ifndef ARITHDYN_BETA_UNIQUE_HPP
#define ARITHDYN_BETA_UNIQUE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/beta_core.hpp"

namespace arithdyn {

// Thue-Morse word 0110 1001 1001 0110 ..., fixed point of 0 -> 01, 1 -> 10.
struct ThueMorse {
    static int at(std::uint64_t k);   // t_k, 0-based
    static std::vector<int> word(std::size_t n);
};

// Fixed point of a -> ac, b -> ad, c -> da, d -> db starting from d.
struct RhoWord {
    static char at(std::uint64_t k);   // 0-based, at(0) == 'd'
    static std::string word(std::size_t n);
    // Reads t_1 t_2 ... in blocks of four (1101 = d, 0011 = b, 0010 = a, 1100 = c).
    static std::string thue_morse_blocks(std::size_t blocks);
};

// Root x > 1 of sum_{k>=1} digit(k) x^{-k} = 1, found by bisection with rigorous tail bounds.
Approx solve_digit_series(const std::function<int(std::uint64_t)>& digit, int max_digit, const Real& eps);

Approx komornik_loreti(const Real& eps = Real("1e-12"));
// Smallest base in which 1 has a unique expansion with digits 0..N-1.
Approx generalized_critical_base(int N, const Real& eps = Real("1e-12"));

struct UniqueCheck {
    bool unique = false;
    bool endpoint = false;   // 0^inf or the all-maximal sequence
};

// eps_n = 0 forces the following tail below a; eps_n = 1 forces it above the complement of a.
UniqueCheck is_unique_expansion(const DigitSeq& eps, const ParryData& parry);
UniqueCheck is_unique_expansion(const DigitSeq& eps, const Beta& beta);

enum class UniqueCategory { Empty, Countable, UncountableZeroDim, PositiveDim };
std::string to_string(UniqueCategory c);

struct UniquenessVerdict {
    UniqueCategory category = UniqueCategory::Empty;
    Real golden;
    Real critical;   // Komornik-Loreti constant
    std::string reason;
};

inline const Real default_resolution{"1e-9"};

// Throws boundary_undecided when beta is within `resolution` of a threshold.
UniquenessVerdict classify_unique_set(const Real& beta, const Real& resolution = default_resolution);

struct GapReport {
    bool entered = false;
    std::size_t step = 0;    // index of the first orbit point in the gap, when entered
    std::size_t survived = 0;
    std::vector<Real> orbit;
};

// Iterates the two-branch map (beta x below 1/beta, beta x - 1 above 1/(beta(beta-1))),
// stopping when the orbit enters the gap [1/beta, 1/(beta(beta-1))].
GapReport gap_map_orbit(const FieldElement& x, const Beta& beta, std::size_t n);
GapReport gap_map_orbit(const Real& x, const Beta& beta, std::size_t n);
double gap_escape_fraction(const Beta& beta, std::size_t samples, std::size_t steps, std::uint64_t seed);

// Number of binary words of length n with no violation of the conditional criterion
// witnessed inside the word (a-ties still open at the end are allowed).
std::uint64_t constrained_word_count(const DigitSeq& a, std::size_t n);
std::uint64_t unique_word_count(const Beta& beta, std::size_t n);
double unique_entropy_estimate(const Beta& beta, std::size_t n);

Approx doubling_hole_threshold(const Real& eps = Real("1e-15"));
std::uint64_t doubling_hole_survivor_count(const Rational& delta, std::size_t n);

} // namespace arithdyn

#endif
