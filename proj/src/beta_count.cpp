#include "arithdyn/beta_count.hpp"

#include <map>
#include <stdexcept>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

void check_binary(const std::string& w)
{
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != '0' && w[i] != '1')
            throw std::invalid_argument("non-binary symbol at position " + std::to_string(i));
}

Block::Variant variant_for(std::size_t r)
{
    return r % 2 ? Block::Variant::zeros_first : Block::Variant::ones_first;
}

} // namespace

// ---------------------------------------------------------------- blocks

Block::Block(std::vector<long> params) : params_(std::move(params)), variant_(variant_for(params_.size()))
{
    if (params_.empty())
        throw std::invalid_argument("block needs at least one parameter");
    for (long a : params_)
        if (a <= 0)
            throw std::invalid_argument("block parameters must be positive");
}

Block::Block(std::vector<long> params, Variant v) : Block(std::move(params))
{
    if (v != variant_)
        throw std::invalid_argument("the last group of a block must be (00); variant does not match the parameter count");
}

std::string Block::render() const
{
    std::string w = "1";
    bool zeros = variant_ == Variant::zeros_first;
    for (long a : params_) {
        for (long i = 0; i < a; ++i)
            w += zeros ? "00" : "01";
        zeros = !zeros;
    }
    return w;
}

Block Block::parse(const std::string& word)
{
    check_binary(word);
    if (word.empty() || word[0] != '1')
        throw std::invalid_argument("a block starts with 1");
    if (word.size() % 2 == 0)
        throw std::invalid_argument("a block has odd length");
    std::vector<long> params;
    std::string prev;
    bool first_zeros = false;
    for (std::size_t i = 1; i < word.size(); i += 2) {
        std::string pair = word.substr(i, 2);
        if (pair != "00" && pair != "01")
            throw std::invalid_argument("invalid pair '" + pair + "' at position " + std::to_string(i));
        if (pair == prev) {
            ++params.back();
        } else {
            if (params.empty())
                first_zeros = pair == "00";
            params.push_back(1);
            prev = pair;
        }
    }
    if (prev != "00")
        throw std::invalid_argument("a block ends with an even number of zeros");
    Block b(std::move(params));
    if ((b.variant() == Variant::zeros_first) != first_zeros)
        throw std::logic_error("block parity mismatch");
    return b;
}

// ---------------------------------------------------------------- counting

GoldenCoding golden_decode(const std::string& w)
{
    check_binary(w);
    GoldenCoding c;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t left = w.size() - i;
        if (w[i] == '1') {
            if (left == 1) {
                c.tail = "1";
                break;
            }
            if (w[i + 1] == '1')
                throw std::invalid_argument("word contains 11 at position " + std::to_string(i));
            c.letters += 'c';
            i += 2;
        } else if (left == 1) {
            c.tail = "0";
            break;
        } else if (w[i + 1] == '0') {
            c.letters += 'a';
            i += 2;
        } else if (left == 2) {
            c.tail = "01";
            break;
        } else if (w[i + 2] == '0') {
            c.letters += 'b';
            i += 3;
        } else {
            throw std::invalid_argument("word contains 11 at position " + std::to_string(i + 1));
        }
    }
    return c;
}

Integer count_equivalent_words(const std::string& w)
{
    // Integer realization of the class sizes: T_a = P_a, T_b = 2 P_b, T_c = P_c with
    // boundary row (0 1) and a column picked by the unparsed tail.
    const GoldenCoding code = golden_decode(w);
    Integer u = 0, v = 1;   // row vector
    for (char j : code.letters) {
        switch (j) {
        case 'a': v += u; break;               // (u, v) [[1,1],[0,1]] = (u, u+v)
        case 'c': u += v; break;               // (u, v) [[1,0],[1,1]] = (u+v, v)
        default: u = v = u + v; break;         // (u, v) [[1,1],[1,1]]
        }
    }
    if (code.tail == "0" || code.tail == "01")
        return u + v;
    return v;
}

Integer count_block(const Block& b)
{
    // p/q = [a1,...,ar] = 1/(a1 + 1/(a2 + ...))
    Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (long a : b.params()) {
        Integer pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
    return p + q;
}

std::vector<Block> split_blocks(const std::string& w)
{
    check_binary(w);
    if (w.empty())
        throw std::invalid_argument("empty word");
    if (w[0] != '1')
        throw std::invalid_argument("residual prefix '" + w.substr(0, w.find('1')) + "' before the first block");
    std::vector<Block> out;
    std::size_t start = 0, i = 1;
    while (true) {
        std::size_t next = w.find('1', i);
        std::size_t run = (next == std::string::npos ? w.size() : next) - i;
        if (next == std::string::npos) {
            if (run == 0 || run % 2)
                throw std::invalid_argument("residual suffix '" + w.substr(start) + "' is not a block");
            out.push_back(Block::parse(w.substr(start)));
            return out;
        }
        if (run == 0)
            throw std::invalid_argument("word contains 11 at position " + std::to_string(next - 1));
        if (run % 2 == 0) {
            out.push_back(Block::parse(w.substr(start, next - start)));
            start = next;
        }
        i = next + 1;
    }
}

MultiplicativityReport blockwise_multiplicativity_check(const std::string& w)
{
    MultiplicativityReport r;
    r.blocks = split_blocks(w);
    r.direct = count_equivalent_words(w);
    r.product = 1;
    for (const Block& b : r.blocks)
        r.product *= count_block(b);
    r.holds = r.direct == r.product;
    return r;
}

DigitSeq goldenshift(const DigitSeq& eps)
{
    if (!eps.available(0) || eps.at(0) != 1)
        throw std::invalid_argument("goldenshift needs a sequence starting with 1");
    std::size_t limit = eps.is_exact() ? eps.known_length() + 2 * eps.period().size() + 2
                                       : (eps.kind() == DigitSeq::Kind::prefix ? eps.known_length() : 4096);
    std::size_t run = 0;
    for (std::size_t i = 1; i < limit && eps.available(i); ++i) {
        int d = eps.at(i);
        if (d == 0) {
            ++run;
            continue;
        }
        if (d != 1)
            throw std::invalid_argument("goldenshift needs a 0-1 sequence");
        if (run == 0)
            throw std::invalid_argument("sequence contains 11 at position " + std::to_string(i - 1));
        if (run % 2 == 0)
            return eps.shifted(i);
        run = 0;
    }
    throw unresolved_error("no complete first block within the available digits");
}

// ---------------------------------------------------------------- branching

namespace {

bool add_checked(std::uint64_t& acc, std::uint64_t v)
{
    return !__builtin_add_overflow(acc, v, &acc);
}

} // namespace

BranchSummary branching_explore(const FieldElement& x, const Beta& beta, int q, std::size_t depth)
{
    if (!beta.is_algebraic())
        throw std::invalid_argument("branch exploration needs an exact base");
    if (!(beta.value() > 1))
        throw std::domain_error("base must exceed 1");
    if (q <= beta.max_digit())
        throw std::domain_error("alphabet size must exceed the integer part of beta");
    if (depth > max_branch_depth)
        throw std::invalid_argument("depth above 64 is not supported");
    const Field f = beta.field();
    const FieldElement b = beta.element();
    const FieldElement top = FieldElement(f, q - 1) / (b - 1);
    if (x.field() != f && !(*x.field() == *f))
        throw std::invalid_argument("x and beta live in different fields");
    FieldElement x0(f, x.coords());
    if (x0.sign() < 0 || x0 > top)
        throw std::domain_error("x lies outside [0, (q-1)/(beta-1)]");

    // Prefixes with equal remainder have identical subtrees, so they are merged with multiplicity.
    constexpr std::size_t budget = std::size_t{1} << 24;
    std::map<FieldElement, std::uint64_t, CoordLess> level{{x0, 1}}, next;
    BranchSummary s;
    for (std::size_t n = 0; n < depth; ++n) {
        next.clear();
        std::uint64_t count = 0;
        for (const auto& [r, mult] : level) {
            FieldElement br = b * r;
            int feasible = 0;
            for (int d = 0; d < q; ++d) {
                FieldElement rn = br - Rational(d);
                if (rn.sign() < 0)
                    break;
                if (rn > top)
                    continue;
                ++feasible;
                if (!add_checked(next[rn], mult) || !add_checked(count, mult))
                    throw std::overflow_error("prefix count exceeds 64 bits");
            }
            if (feasible >= 2) {
                if (!add_checked(s.choice_nodes, mult))
                    throw std::overflow_error("prefix count exceeds 64 bits");
                if (s.first_choice_depth < 0)
                    s.first_choice_depth = static_cast<long>(n);
            }
        }
        if (next.size() > budget)
            throw unresolved_error("branch exploration exceeded its node budget");
        s.per_depth.push_back(count);
        if (!add_checked(s.distinct_prefixes, count))
            throw std::overflow_error("prefix count exceeds 64 bits");
        std::swap(level, next);
    }
    s.paths = depth == 0 ? 1 : s.per_depth.back();
    return s;
}

BranchSummary branching_explore(const Rational& x, const Beta& beta, int q, std::size_t depth)
{
    if (!beta.is_algebraic())
        throw std::invalid_argument("branch exploration needs an exact base");
    return branching_explore(FieldElement(beta.field(), x), beta, q, depth);
}

} // namespace arithdyn
