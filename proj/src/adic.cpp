#include "arithdyn/adic.hpp"

#include <stdexcept>
#include <string>

namespace arithdyn {

MarkovCompactum::MarkovCompactum(std::vector<int> sizes, std::vector<Incidence> incidence,
                                 std::vector<std::vector<int>> order, bool stationary)
    : sizes_(std::move(sizes)), incidence_(std::move(incidence)), order_(std::move(order)), stationary_(stationary)
{
    if (sizes_.empty())
        throw std::invalid_argument("compactum needs at least one level");
    if (incidence_.size() + 1 != sizes_.size())
        throw std::invalid_argument("need one incidence matrix between consecutive levels");
    if (order_.size() != sizes_.size())
        throw std::invalid_argument("need one order per level");
    for (std::size_t k = 0; k < sizes_.size(); ++k) {
        const int r = sizes_[k];
        if (r <= 0)
            throw std::invalid_argument("level " + std::to_string(k) + " has an empty alphabet");
        std::vector<int> rank(r, -1);
        if (static_cast<int>(order_[k].size()) != r)
            throw std::invalid_argument("order at level " + std::to_string(k) + " is not a permutation");
        for (int i = 0; i < r; ++i) {
            int d = order_[k][i];
            if (d < 0 || d >= r || rank[d] >= 0)
                throw std::invalid_argument("order at level " + std::to_string(k) + " is not a permutation");
            rank[d] = i;
        }
        rank_.push_back(std::move(rank));
    }
    for (std::size_t k = 0; k < incidence_.size(); ++k) {
        const Incidence& m = incidence_[k];
        const int rows = sizes_[k], cols = sizes_[k + 1];
        if (static_cast<int>(m.size()) != rows)
            throw std::invalid_argument("incidence " + std::to_string(k) + " has the wrong number of rows");
        std::vector<bool> col_hit(cols, false);
        for (int i = 0; i < rows; ++i) {
            if (static_cast<int>(m[i].size()) != cols)
                throw std::invalid_argument("incidence " + std::to_string(k) + " has the wrong number of columns");
            bool row_hit = false;
            for (int j = 0; j < cols; ++j) {
                if (m[i][j] != 0 && m[i][j] != 1)
                    throw std::invalid_argument("incidence entries must be 0 or 1");
                if (m[i][j]) {
                    row_hit = true;
                    col_hit[j] = true;
                }
            }
            if (!row_hit)
                throw std::invalid_argument("incidence " + std::to_string(k) + " has a dead row " + std::to_string(i));
        }
        for (int j = 0; j < cols; ++j)
            if (!col_hit[j])
                throw std::invalid_argument("incidence " + std::to_string(k) + " has a dead column " + std::to_string(j));
    }
}

namespace {

std::vector<int> natural(int r)
{
    std::vector<int> o(r);
    for (int i = 0; i < r; ++i)
        o[i] = i;
    return o;
}

} // namespace

MarkovCompactum MarkovCompactum::full_odometer(const std::vector<int>& radices)
{
    std::vector<Incidence> inc;
    std::vector<std::vector<int>> order;
    for (std::size_t k = 0; k < radices.size(); ++k) {
        if (k + 1 < radices.size())
            inc.push_back(Incidence(radices[k], std::vector<int>(radices[k + 1], 1)));
        order.push_back(natural(radices[k]));
    }
    return MarkovCompactum(radices, std::move(inc), std::move(order));
}

MarkovCompactum MarkovCompactum::stationary_natural(const Incidence& m, std::size_t depth)
{
    if (m.empty() || m.size() != m[0].size())
        throw std::invalid_argument("stationary incidence must be square");
    const int r = static_cast<int>(m.size());
    return MarkovCompactum(std::vector<int>(depth, r), std::vector<Incidence>(depth ? depth - 1 : 0, m),
                           std::vector<std::vector<int>>(depth, natural(r)), true);
}

MarkovCompactum MarkovCompactum::golden(std::size_t depth)
{
    return stationary_natural({{1, 1}, {1, 0}}, depth);
}

void MarkovCompactum::check_path(const std::vector<int>& digits) const
{
    if (digits.size() > sizes_.size())
        throw std::invalid_argument("path is deeper than the compactum");
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= sizes_[k])
            throw std::invalid_argument("digit out of range at position " + std::to_string(k));
        if (k > 0 && !allowed(k - 1, digits[k - 1], digits[k]))
            throw std::invalid_argument("inadmissible transition at position " + std::to_string(k));
    }
}

namespace {

// `up` selects successor; otherwise predecessor. Fills levels below the changed one
// with the extreme admissible digits, choosing from the top down.
std::optional<std::vector<int>> step(const std::vector<int>& path, const MarkovCompactum& c, bool up)
{
    c.check_path(path);
    const std::size_t L = path.size();
    for (std::size_t n = 0; n < L; ++n) {
        const std::vector<int>& ord = c.order()[n];
        int r = c.rank(n, path[n]);
        int next_r = -1;
        for (int t = up ? r + 1 : r - 1; t >= 0 && t < static_cast<int>(ord.size()); t += up ? 1 : -1) {
            int d = ord[t];
            if (n + 1 < L && !c.allowed(n, d, path[n + 1]))
                continue;
            next_r = t;
            break;
        }
        if (next_r < 0)
            continue;
        std::vector<int> out = path;
        out[n] = ord[next_r];
        for (std::size_t j = n; j-- > 0;) {
            const std::vector<int>& oj = c.order()[j];
            bool found = false;
            for (std::size_t t = 0; t < oj.size(); ++t) {
                int d = up ? oj[t] : oj[oj.size() - 1 - t];
                if (c.allowed(j, d, out[j + 1])) {
                    out[j] = d;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::logic_error("compactum has a dead column");
        }
        return out;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::vector<int>> successor(const std::vector<int>& path, const MarkovCompactum& c)
{
    return step(path, c, true);
}

std::optional<std::vector<int>> predecessor(const std::vector<int>& path, const MarkovCompactum& c)
{
    return step(path, c, false);
}

std::vector<int> mixed_radix(std::uint64_t n, const std::vector<int>& radices)
{
    std::vector<int> d(radices.size(), 0);
    for (std::size_t k = 0; k < radices.size(); ++k) {
        d[k] = static_cast<int>(n % radices[k]);
        n /= radices[k];
    }
    if (n != 0)
        throw std::invalid_argument("radices do not cover the number");
    return d;
}

bool odometer_equivalence_check(const std::vector<int>& radices, std::uint64_t n_max)
{
    for (int r : radices)
        if (r < 1)
            throw std::invalid_argument("radices must be positive");
    MarkovCompactum c = MarkovCompactum::full_odometer(radices);
    mixed_radix(n_max, radices);   // throws when the radices do not cover n_max
    std::vector<int> path(radices.size(), 0);
    for (std::uint64_t n = 0;; ++n) {
        if (path != mixed_radix(n, radices))
            return false;
        if (n == n_max)
            return true;
        auto next = successor(path, c);
        if (!next)
            return false;
        path = std::move(*next);
    }
}

} // namespace arithdyn
