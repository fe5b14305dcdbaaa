// Counting beta-representations: golden-ratio blocks, equivalence classes of finite words,
// the goldenshift and exhaustive exploration of the multivalued expansion map.
#ifndef ARITHDYN_BETA_COUNT_HPP
#define ARITHDYN_BETA_COUNT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "arithdyn/beta_core.hpp"

namespace arithdyn {

using Matrix2 = std::array<std::array<Rational, 2>, 2>;

// The matrices attached to the letters a, b, c of the coding g(a)=00, g(b)=010, g(c)=10.
struct CountMatrices {
    Matrix2 P_a{{{1, 1}, {0, 1}}};
    Matrix2 P_b{{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}}};
    Matrix2 P_c{{{1, 0}, {1, 1}}};
};

// Block 1(01)^{a1}(00)^{a2}... or 1(00)^{a1}(01)^{a2}...; groups alternate and the last
// group is always (00), so the variant is fixed by the parity of r.
class Block {
public:
    enum class Variant { ones_first, zeros_first };

    explicit Block(std::vector<long> params);
    Block(std::vector<long> params, Variant v);   // throws if v disagrees with the parity of r
    static Block parse(const std::string& word);

    const std::vector<long>& params() const { return params_; }
    Variant variant() const { return variant_; }
    std::string render() const;

private:
    std::vector<long> params_;
    Variant variant_;
};

// g^{-1} coding of a 0-1 word; a trailing "", "0", "1" or "01" is returned separately.
struct GoldenCoding {
    std::string letters;   // over {a, b, c}
    std::string tail;
};
GoldenCoding golden_decode(const std::string& w);

// Number of 0-1 words of the same length with the same value in base G.
Integer count_equivalent_words(const std::string& w);
Integer count_block(const Block& b);

// Splits w into blocks; throws std::invalid_argument naming any residual piece.
std::vector<Block> split_blocks(const std::string& w);

struct MultiplicativityReport {
    bool holds = false;
    std::vector<Block> blocks;
    Integer direct;
    Integer product;
};
MultiplicativityReport blockwise_multiplicativity_check(const std::string& w);

// Drops the first block of a sequence in X_G beginning with 1.
DigitSeq goldenshift(const DigitSeq& eps);

struct BranchSummary {
    std::uint64_t paths = 0;               // feasible prefixes of full depth
    std::uint64_t choice_nodes = 0;        // nodes with two or more feasible digits
    std::uint64_t distinct_prefixes = 0;   // all feasible prefixes of length 1..depth
    std::vector<std::uint64_t> per_depth;  // feasible prefixes of each length
    long first_choice_depth = -1;
};

inline constexpr std::size_t max_branch_depth = 64;

// Exhaustive tree of digit choices in {0..q-1} keeping the remainder in [0, (q-1)/(beta-1)].
BranchSummary branching_explore(const FieldElement& x, const Beta& beta, int q, std::size_t depth);
BranchSummary branching_explore(const Rational& x, const Beta& beta, int q, std::size_t depth);

} // namespace arithdyn

#endif
