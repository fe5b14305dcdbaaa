// Markov compacta with per-level orders and the adic transformation on finite prefixes.
#ifndef ARITHDYN_ADIC_HPP
#define ARITHDYN_ADIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace arithdyn {

using Incidence = std::vector<std::vector<int>>;   // 0-1 matrix, rows = current level

// Levels are 0-based here: level k has alphabet {0..sizes[k]-1}, incidence[k] is
// sizes[k] x sizes[k+1], and order[k] lists the digits from least to greatest.
class MarkovCompactum {
public:
    MarkovCompactum(std::vector<int> sizes, std::vector<Incidence> incidence, std::vector<std::vector<int>> order,
                    bool stationary = false);

    static MarkovCompactum full_odometer(const std::vector<int>& radices);
    // Stationary compactum with a single matrix and the natural order, truncated at `depth` levels.
    static MarkovCompactum stationary_natural(const Incidence& m, std::size_t depth);
    static MarkovCompactum golden(std::size_t depth);   // no two consecutive 1s

    std::size_t depth() const { return sizes_.size(); }
    int size(std::size_t k) const { return sizes_.at(k); }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<Incidence>& incidence() const { return incidence_; }
    const std::vector<std::vector<int>>& order() const { return order_; }
    bool stationary() const { return stationary_; }

    bool allowed(std::size_t k, int from, int to) const { return incidence_[k][from][to] != 0; }
    int rank(std::size_t k, int digit) const { return rank_[k][digit]; }   // position in the order

    // Throws std::invalid_argument naming the first bad position.
    void check_path(const std::vector<int>& digits) const;

private:
    std::vector<int> sizes_;
    std::vector<Incidence> incidence_;
    std::vector<std::vector<int>> order_;
    std::vector<std::vector<int>> rank_;
    bool stationary_;
};

// nullopt means the path is maximal (resp. minimal) within the available levels.
std::optional<std::vector<int>> successor(const std::vector<int>& path, const MarkovCompactum& c);
std::optional<std::vector<int>> predecessor(const std::vector<int>& path, const MarkovCompactum& c);

// Digits of n in the mixed radix r (least significant first), padded to r.size().
std::vector<int> mixed_radix(std::uint64_t n, const std::vector<int>& radices);

// Iterating the successor from the zero path n times gives the mixed-radix digits of n, for n <= n_max.
bool odometer_equivalence_check(const std::vector<int>& radices, std::uint64_t n_max);

} // namespace arithdyn

#endif
