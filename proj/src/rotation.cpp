#include "arithdyn/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "arithdyn/errors.hpp"

namespace arithdyn {

// ---------------------------------------------------------------- continued fractions

namespace {

void check_quotients(const std::vector<long>& v)
{
    for (long a : v)
        if (a < 1)
            throw std::invalid_argument("partial quotients must be positive");
}

} // namespace

ContinuedFraction ContinuedFraction::from_element(const FieldElement& alpha, std::size_t max_steps)
{
    if (alpha.is_rational())
        throw std::invalid_argument("alpha is rational");
    if (alpha.sign() <= 0 || alpha >= FieldElement(alpha.field(), 1))
        throw std::domain_error("alpha must lie in (0,1)");
    ContinuedFraction cf;
    cf.alpha_exact_ = alpha;
    std::map<FieldElement, std::size_t, CoordLess> seen;
    std::vector<long> quotients;
    FieldElement t = alpha;
    for (std::size_t k = 0;; ++k) {
        auto it = seen.find(t);
        if (it != seen.end()) {
            cf.pre_.assign(quotients.begin(), quotients.begin() + static_cast<long>(it->second));
            cf.period_.assign(quotients.begin() + static_cast<long>(it->second), quotients.end());
            break;
        }
        if (k == max_steps) {
            cf.pre_ = quotients;
            break;
        }
        seen.emplace(t, k);
        cf.tails_exact_.push_back(t);
        FieldElement inv = t.inverse();
        Integer a = inv.floor();
        if (!a.fits_slong_p())
            throw precision_error("partial quotient does not fit a machine integer");
        quotients.push_back(a.get_si());
        t = inv - Rational(a);
    }
    for (const auto& e : cf.tails_exact_)
        cf.tails_real_.push_back(e.to_real());
    return cf;
}

ContinuedFraction ContinuedFraction::from_quotients(std::vector<long> preperiod, std::vector<long> period)
{
    check_quotients(preperiod);
    check_quotients(period);
    ContinuedFraction cf;
    cf.pre_ = std::move(preperiod);
    cf.period_ = std::move(period);
    if (cf.period_.empty())
        return cf;
    // u = [b_1; b_2, ..., b_k, u] with [[A,B],[C,D]] = prod [[b_i,1],[1,0]] gives C u^2 + (D-A) u - B = 0.
    Integer A = 1, B = 0, C = 0, D = 1;
    for (long b : cf.period_) {
        Integer nA = A * b + B, nC = C * b + D;
        B = A;
        D = C;
        A = nA;
        C = nC;
    }
    Poly poly{Rational(-B, C), Rational(D - A, C), Rational(1)};
    for (auto& c : poly)
        c.canonicalize();
    const long b1 = cf.period_.front();
    Field f = make_field(poly, Rational(b1), Rational(b1 + 1));
    const std::size_t pre = cf.pre_.size(), per = cf.period_.size();
    std::vector<FieldElement> tails(pre + per, FieldElement(f, 0));
    tails[pre] = FieldElement::generator(f).inverse();
    for (std::size_t j = 1; j < per; ++j)
        tails[pre + j] = tails[pre + j - 1].inverse() - Rational(cf.period_[j - 1]);
    for (std::size_t n = pre; n-- > 0;)
        tails[n] = (tails[n + 1] + Rational(cf.pre_[n])).inverse();
    cf.alpha_exact_ = tails[0];
    cf.tails_exact_ = std::move(tails);
    for (const auto& e : cf.tails_exact_)
        cf.tails_real_.push_back(e.to_real());
    return cf;
}

ContinuedFraction ContinuedFraction::from_real(const Real& alpha, std::size_t n)
{
    if (!(alpha > 0 && alpha < 1))
        throw std::domain_error("alpha must lie in (0,1)");
    ContinuedFraction cf;
    Real t = alpha;
    for (std::size_t k = 0; k < n; ++k) {
        if (t < Real("1e-40"))
            throw std::invalid_argument("alpha is rational to working precision");
        cf.tails_real_.push_back(t);
        Real inv = 1 / t;
        Real a = floor(inv);
        cf.pre_.push_back(a.convert_to<long>());
        t = inv - a;
    }
    return cf;
}

ContinuedFraction ContinuedFraction::parse(const std::string& spec)
{
    if (spec == "golden")
        return from_element(FieldElement::generator(golden_field()) - Rational(1));
    if (spec.rfind("num:", 0) == 0)
        return from_real(Real(spec.substr(4)), 64);
    if (spec.rfind("sqrt:", 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw std::invalid_argument("expected sqrt:<d>:<a>:<b>");
        const long d = std::stol(parts[0]);
        if (d < 2)
            throw std::invalid_argument("sqrt needs d >= 2");
        Integer root = sqrt(Integer(d));
        if (root * root == d)
            throw std::invalid_argument("d is a perfect square");
        Field f = make_field({Rational(-d), Rational(0), Rational(1)}, Rational(root), Rational(root + 1));
        FieldElement x = FieldElement(f, parse_rational(parts[1])) +
                         FieldElement::generator(f) * parse_rational(parts[2]);
        x = x - Rational(x.floor());
        return from_element(x);
    }
    if (spec.rfind("cf:", 0) == 0) {
        std::string body = spec.substr(3);
        std::vector<long> pre, period;
        std::size_t open = body.find('(');
        auto read = [](const std::string& s, std::vector<long>& out) {
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty())
                    out.push_back(std::stol(item));
        };
        if (open == std::string::npos) {
            read(body, pre);
        } else {
            std::size_t close = body.find(')', open);
            if (close == std::string::npos || close + 1 != body.size())
                throw std::invalid_argument("the repeating group must close the list");
            read(body.substr(0, open), pre);
            read(body.substr(open + 1, close - open - 1), period);
            if (period.empty())
                throw std::invalid_argument("empty repeating group");
        }
        if (pre.empty() && period.empty())
            throw std::invalid_argument("no partial quotients");
        return from_quotients(pre, period);
    }
    throw std::invalid_argument("unknown alpha spec '" + spec + "'");
}

std::optional<std::size_t> ContinuedFraction::known_depth() const
{
    if (is_periodic())
        return std::nullopt;
    return pre_.size();
}

long ContinuedFraction::a(std::size_t n) const
{
    if (n == 0)
        throw std::invalid_argument("partial quotients are indexed from 1");
    if (n <= pre_.size())
        return pre_[n - 1];
    if (!is_periodic())
        throw unresolved_error("partial quotient " + std::to_string(n) + " is beyond the known prefix");
    return period_[(n - 1 - pre_.size()) % period_.size()];
}

Integer ContinuedFraction::p(std::size_t n) const
{
    Integer prev = 1, cur = 0;   // p_0, p_1
    if (n == 0)
        return prev;
    for (std::size_t k = 1; k < n; ++k) {
        Integer next = a(k) * cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Integer ContinuedFraction::q(std::size_t n) const
{
    return q_list(n)[n];
}

std::vector<Integer> ContinuedFraction::q_list(std::size_t n) const
{
    std::vector<Integer> q{0, 1};
    for (std::size_t k = 1; k < n; ++k)
        q.push_back(a(k) * q[k] + q[k - 1]);
    q.resize(n + 1);
    return q;
}

namespace {

std::size_t tail_index(std::size_t n, std::size_t stored, std::size_t pre, std::size_t per)
{
    if (n < stored)
        return n;
    if (per == 0)
        throw unresolved_error("residue " + std::to_string(n) + " is beyond the known expansion");
    return pre + (n - pre) % per;
}

} // namespace

Real ContinuedFraction::alpha() const
{
    if (tails_real_.empty())
        throw unresolved_error("alpha is not known from a bare prefix of quotients");
    return tails_real_[0];
}

const FieldElement& ContinuedFraction::alpha_exact() const
{
    if (!alpha_exact_)
        throw unresolved_error("alpha has no exact value");
    return *alpha_exact_;
}

Real ContinuedFraction::ratio(std::size_t n) const
{
    if (n == 0)
        throw std::invalid_argument("ratio is defined for n >= 1");
    if (tails_real_.empty())
        throw unresolved_error("residues need a known alpha");
    return tails_real_[tail_index(n - 1, tails_real_.size(), pre_.size(), period_.size())];
}

std::vector<Real> ContinuedFraction::residues(std::size_t n) const
{
    std::vector<Real> r{Real(1)};
    for (std::size_t k = 1; k <= n; ++k)
        r.push_back(r.back() * ratio(k));
    return r;
}

Real ContinuedFraction::residue(std::size_t n) const
{
    return residues(n).back();
}

FieldElement ContinuedFraction::residue_exact(std::size_t n) const
{
    const FieldElement& al = alpha_exact();
    if (!is_periodic() && n > pre_.size() + 1)
        throw unresolved_error("residue beyond the known expansion");
    FieldElement v = al * Rational(q(n)) - Rational(p(n));
    return n % 2 ? v : -v;
}

std::string ContinuedFraction::describe() const
{
    std::ostringstream os;
    os << "[0; ";
    for (std::size_t i = 0; i < pre_.size(); ++i)
        os << (i ? ", " : "") << pre_[i];
    if (is_periodic()) {
        os << (pre_.empty() ? "(" : ", (");
        for (std::size_t i = 0; i < period_.size(); ++i)
            os << (i ? ", " : "") << period_[i];
        os << ")";
    } else {
        os << ", ...";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- compacta

namespace {

std::vector<int> ascending(int r)
{
    std::vector<int> o(r);
    for (int i = 0; i < r; ++i)
        o[i] = i;
    return o;
}

int to_int(long a)
{
    if (a > 1000000)
        throw std::invalid_argument("partial quotient too large for an explicit alphabet");
    return static_cast<int>(a);
}

int top_digit(const ContinuedFraction& cf, std::size_t n, RotModel m)
{
    long a = cf.a(n);
    return to_int(m == RotModel::first && n == 1 ? a - 1 : a);
}

} // namespace

MarkovCompactum rot_compactum1(const ContinuedFraction& cf, std::size_t depth)
{
    std::vector<int> sizes;
    std::vector<Incidence> inc;
    std::vector<std::vector<int>> order;
    for (std::size_t n = 1; n <= depth; ++n) {
        sizes.push_back(top_digit(cf, n, RotModel::first) + 1);
        order.push_back(ascending(sizes.back()));
    }
    for (std::size_t k = 0; k + 1 < depth; ++k) {
        Incidence m(sizes[k], std::vector<int>(sizes[k + 1], 1));
        for (int i = 1; i < sizes[k]; ++i)
            m[i].back() = 0;
        inc.push_back(std::move(m));
    }
    return MarkovCompactum(sizes, inc, order);
}

MarkovCompactum rot_compactum2(const ContinuedFraction& cf, std::size_t depth)
{
    std::vector<int> sizes;
    std::vector<Incidence> inc;
    std::vector<std::vector<int>> order;
    for (std::size_t n = 1; n <= depth; ++n) {
        sizes.push_back(top_digit(cf, n, RotModel::second) + 1);
        std::vector<int> o = ascending(sizes.back());
        if (n % 2 == 0)
            std::reverse(o.begin(), o.end());
        order.push_back(std::move(o));
    }
    for (std::size_t k = 0; k + 1 < depth; ++k) {
        Incidence m(sizes[k], std::vector<int>(sizes[k + 1], 1));
        std::fill(m.back().begin() + 1, m.back().end(), 0);
        inc.push_back(std::move(m));
    }
    return MarkovCompactum(sizes, inc, order);
}

std::optional<std::size_t> rot_inadmissible(const std::vector<int>& digits, const ContinuedFraction& cf, RotModel m)
{
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const std::size_t n = i + 1;
        if (digits[i] < 0 || digits[i] > top_digit(cf, n, m))
            return i;
        if (i == 0)
            continue;
        if (m == RotModel::second && digits[i - 1] == cf.a(n - 1) && digits[i] != 0)
            return i;
        if (m == RotModel::first && digits[i - 1] > 0 && digits[i] == cf.a(n))
            return i;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- conjugating maps

namespace {

Approx psi_impl(const DigitSeq& x, const ContinuedFraction& cf, std::size_t depth, RotModel m)
{
    // A finite sequence is summed completely; otherwise up to depth (or the prefix).
    std::size_t N = depth;
    bool complete = false;
    if (x.kind() == DigitSeq::Kind::finite) {
        N = x.known_length();
        complete = true;
    } else if (x.kind() == DigitSeq::Kind::prefix) {
        N = std::min(depth, x.known_length());
    }
    std::vector<int> digits = x.take(N);
    if (auto bad = rot_inadmissible(digits, cf, m))
        throw std::invalid_argument("inadmissible digit at position " + std::to_string(*bad));
    std::vector<Real> res = cf.residues(N);
    Real sum = m == RotModel::first ? cf.alpha() : Real(0);
    for (std::size_t n = 1; n <= N; ++n) {
        Real term = digits[n - 1] * res[n];
        sum += (m == RotModel::first && n % 2 == 0) ? Real(-term) : term;
    }
    Real err("1e-45");
    if (!complete)
        err += res[N];
    return Approx{sum, err};
}

} // namespace

Approx psi1(const DigitSeq& x, const ContinuedFraction& cf, std::size_t depth)
{
    return psi_impl(x, cf, depth, RotModel::first);
}

Approx psi2(const DigitSeq& x, const ContinuedFraction& cf, std::size_t depth)
{
    return psi_impl(x, cf, depth, RotModel::second);
}

FieldElement psi2_exact(const std::vector<int>& digits, const ContinuedFraction& cf)
{
    if (auto bad = rot_inadmissible(digits, cf, RotModel::second))
        throw std::invalid_argument("inadmissible digit at position " + std::to_string(*bad));
    FieldElement sum(cf.alpha_exact().field(), 0);
    for (std::size_t n = 1; n <= digits.size(); ++n)
        if (digits[n - 1])
            sum += cf.residue_exact(n) * Rational(digits[n - 1]);
    return sum;
}

// ---------------------------------------------------------------- encodings

namespace {

std::vector<int> bounds(const ContinuedFraction& cf, std::size_t n, RotModel m)
{
    std::vector<int> b;
    for (std::size_t k = 1; k <= n; ++k)
        b.push_back(top_digit(cf, k, m));
    return b;
}

void assert_markov(const std::vector<int>& digits, const ContinuedFraction& cf)
{
    for (std::size_t k = 1; k < digits.size(); ++k)
        if (digits[k - 1] == cf.a(k) && digits[k] != 0)
            throw std::logic_error("greedy encoding violated the Markov condition");
}

} // namespace

DigitSeq ostrowski_encode(const Real& x, const ContinuedFraction& cf, std::size_t n)
{
    if (!(x >= 0 && x < 1))
        throw std::domain_error("x must lie in [0,1)");
    std::vector<Real> res = cf.residues(n);
    std::vector<int> digits;
    Real r = x;
    for (std::size_t k = 1; k <= n; ++k) {
        Real f = floor(r / res[k]);
        long d = std::min<long>(f < 0 ? 0 : f.convert_to<long>(), cf.a(k));
        digits.push_back(static_cast<int>(d));
        r -= d * res[k];
    }
    assert_markov(digits, cf);
    DigitSeq s = DigitSeq::prefix(digits, 1);
    s.set_alphabet_max(bounds(cf, n, RotModel::second));
    return s;
}

DigitSeq ostrowski_encode(const FieldElement& x, const ContinuedFraction& cf, std::size_t n)
{
    const FieldElement& al = cf.alpha_exact();
    if (!(*x.field() == *al.field()))
        throw std::invalid_argument("x and alpha live in different fields");
    FieldElement r(al.field(), x.coords());
    if (r.sign() < 0 || r >= FieldElement(al.field(), 1))
        throw std::domain_error("x must lie in [0,1)");
    std::vector<int> digits;
    bool finished = false;
    for (std::size_t k = 1; k <= n; ++k) {
        if (r.is_zero()) {
            finished = true;
            break;
        }
        FieldElement ak = cf.residue_exact(k);
        Integer f = (r / ak).floor();
        long d = std::min<long>(f.get_si(), cf.a(k));
        digits.push_back(static_cast<int>(d));
        r -= ak * Rational(d);
    }
    finished = finished || r.is_zero();
    assert_markov(digits, cf);
    DigitSeq s = finished ? DigitSeq::finite(digits, 1) : DigitSeq::prefix(digits, 1);
    s.set_alphabet_max(bounds(cf, std::max<std::size_t>(digits.size(), 1), RotModel::second));
    return s;
}

DigitSeq rot_encode1(const Real& x, const ContinuedFraction& cf, std::size_t n)
{
    if (!(x >= 0 && x < 1))
        throw std::domain_error("x must lie in [0,1)");
    // Horizon past n where the remaining tail is negligible.
    std::size_t H = n;
    {
        std::vector<Real> r = cf.residues(n);
        Real tail = r[n];
        while (tail > Real("1e-45") && H < n + 400) {
            try {
                tail *= cf.ratio(H + 1);
            } catch (const unresolved_error&) {
                break;
            }
            ++H;
        }
    }
    std::vector<Real> res = cf.residues(H);
    // lo/hi[k][c]: extreme values of sum_{j>=k}^{H} x_j s_j alpha_j, c = 1 when the
    // previous digit is nonzero (so the top digit at level k is excluded).
    std::vector<std::array<Real, 2>> lo(H + 2), hi(H + 2);
    lo[H + 1] = {Real(0), Real(0)};
    hi[H + 1] = {Real(0), Real(0)};
    auto allowed_max = [&](std::size_t k, int c) {
        int top = top_digit(cf, k, RotModel::first);
        return (c && k >= 2) ? top - 1 : top;
    };
    auto term = [&](std::size_t k, int d) { return Real((k % 2 ? 1 : -1) * d * res[k]); };
    for (std::size_t k = H; k >= 1; --k) {
        for (int c = 0; c < 2; ++c) {
            int mx = allowed_max(k, c);
            Real l = lo[k + 1][0], h = hi[k + 1][0];
            for (int d : {1, mx}) {
                if (d < 1 || d > mx)
                    continue;
                l = min(l, Real(term(k, d) + lo[k + 1][1]));
                h = max(h, Real(term(k, d) + hi[k + 1][1]));
            }
            lo[k][c] = l;
            hi[k][c] = h;
        }
    }
    const Real slack = res[H] + Real("1e-40");
    Real z = x - cf.alpha();
    std::vector<int> digits;
    int c = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        int best = 0;
        Real best_score;
        bool have = false;
        for (int d = 0; d <= allowed_max(k, c); ++d) {
            Real zn = z - term(k, d);
            int cn = d > 0;
            Real score = min(Real(zn - lo[k + 1][cn] + slack), Real(hi[k + 1][cn] + slack - zn));
            if (!have || score > best_score) {
                best = d;
                best_score = score;
                have = true;
            }
        }
        digits.push_back(best);
        z -= term(k, best);
        c = best > 0;
    }
    DigitSeq s = DigitSeq::prefix(digits, 1);
    s.set_alphabet_max(bounds(cf, n, RotModel::first));
    return s;
}

DigitSeq integer_encode1(const Integer& N, const ContinuedFraction& cf)
{
    if (N < 1)
        throw std::domain_error("the first model encodes N >= 1");
    Integer M = N - 1;
    // q_1 .. q_K with q_{K+1} > M
    std::vector<Integer> q{0, 1};
    while (q.back() <= M) {
        std::size_t k = q.size() - 1;
        q.push_back(cf.a(k) * q[k] + q[k - 1]);
    }
    std::size_t K = q.size() - 2;
    std::vector<int> digits(K, 0);
    for (std::size_t k = K; k >= 1; --k) {
        Integer d = M / q[k];
        digits[k - 1] = static_cast<int>(d.get_si());
        M -= d * q[k];
    }
    if (M != 0 || rot_inadmissible(digits, cf, RotModel::first))
        throw std::logic_error("integer encoding failed");
    DigitSeq s = DigitSeq::finite(digits, 1);
    s.set_alphabet_max(bounds(cf, std::max<std::size_t>(K, 1), RotModel::first));
    return s;
}

DigitSeq integer_encode2(const Integer& N, const ContinuedFraction& cf)
{
    // lo/hi[k][c]: range of sum_{j<=k} x_j (-1)^j q_j; c = 1 excludes x_k = a_k.
    std::vector<Integer> q{0, 1};
    std::vector<std::array<Integer, 2>> lo{{Integer(0), Integer(0)}}, hi{{Integer(0), Integer(0)}};
    auto sgn = [](std::size_t k) { return k % 2 ? -1 : 1; };
    auto extend = [&]() {
        std::size_t k = lo.size();
        if (q.size() <= k)
            q.push_back(cf.a(k - 1) * q[k - 1] + q[k - 2]);
        std::array<Integer, 2> l, h;
        for (int c = 0; c < 2; ++c) {
            long mx = cf.a(k) - c;
            l[c] = lo[k - 1][0];
            h[c] = hi[k - 1][0];
            for (long d : {1L, mx}) {
                if (d < 1 || d > mx)
                    continue;
                Integer v = sgn(k) * d * q[k];
                l[c] = std::min(l[c], Integer(v + lo[k - 1][1]));
                h[c] = std::max(h[c], Integer(v + hi[k - 1][1]));
            }
        }
        lo.push_back(l);
        hi.push_back(h);
    };
    std::vector<int> digits;
    std::function<bool(std::size_t, const Integer&, int)> dfs = [&](std::size_t k, const Integer& target, int c) {
        if (k == 0)
            return target == 0;
        long mx = cf.a(k) - c;
        for (long d = 0; d <= mx; ++d) {
            Integer rest = target - Integer(sgn(k) * d) * q[k];
            int cn = d > 0;
            if (rest < lo[k - 1][cn] || rest > hi[k - 1][cn])
                continue;
            digits[k - 1] = static_cast<int>(d);
            if (dfs(k - 1, rest, cn))
                return true;
        }
        return false;
    };
    for (std::size_t L = 0; L < 100000; ++L) {
        while (lo.size() <= L)
            extend();
        if (N < lo[L][0] || N > hi[L][0])
            continue;
        digits.assign(L, 0);
        if (dfs(L, N, 0)) {
            if (rot_inadmissible(digits, cf, RotModel::second) || integer_value2(digits, cf) != N)
                throw std::logic_error("integer encoding failed");
            DigitSeq s = DigitSeq::finite(digits, 1);
            s.set_alphabet_max(bounds(cf, std::max<std::size_t>(L, 1), RotModel::second));
            return s;
        }
    }
    throw std::logic_error("integer encoding did not terminate");
}

Integer integer_value1(const std::vector<int>& digits, const ContinuedFraction& cf)
{
    std::vector<Integer> q = cf.q_list(digits.size());
    Integer N = 1;
    for (std::size_t k = 1; k <= digits.size(); ++k)
        N += digits[k - 1] * q[k];
    return N;
}

Integer integer_value2(const std::vector<int>& digits, const ContinuedFraction& cf)
{
    std::vector<Integer> q = cf.q_list(digits.size());
    Integer N = 0;
    for (std::size_t k = 1; k <= digits.size(); ++k)
        N += (k % 2 ? -1 : 1) * digits[k - 1] * q[k];
    return N;
}

// ---------------------------------------------------------------- Markov measure

RotMeasure::RotMeasure(ContinuedFraction cf) : cf_(std::move(cf))
{
    if (!cf_.has_residues())
        throw unresolved_error("the measure needs a known alpha");
}

namespace {

void check_digit(const ContinuedFraction& cf, std::size_t n, int i)
{
    if (i < 0 || i > cf.a(n))
        throw std::invalid_argument("digit out of range at level " + std::to_string(n));
}

} // namespace

Real RotMeasure::initial(int i) const
{
    check_digit(cf_, 1, i);
    return i < cf_.a(1) ? cf_.residue(1) : cf_.residue(2);
}

Real RotMeasure::transition(std::size_t n, int prev, int cur) const
{
    if (n < 2)
        throw std::invalid_argument("transitions start at level 2");
    check_digit(cf_, n - 1, prev);
    check_digit(cf_, n, cur);
    if (prev == cf_.a(n - 1))
        return cur == 0 ? Real(1) : Real(0);
    return cur < cf_.a(n) ? cf_.ratio(n) : Real(cf_.ratio(n) * cf_.ratio(n + 1));
}

Real RotMeasure::marginal(std::size_t n, int i) const
{
    check_digit(cf_, n, i);
    std::vector<Integer> q = cf_.q_list(n);
    std::vector<Real> r = cf_.residues(n + 1);
    if (i == 0)
        return to_real(Rational(q[n - 1] + q[n])) * r[n];
    if (i < cf_.a(n))
        return to_real(Rational(q[n])) * r[n];
    return to_real(Rational(q[n])) * r[n + 1];
}

FieldElement RotMeasure::initial_exact(int i) const
{
    check_digit(cf_, 1, i);
    return i < cf_.a(1) ? cf_.residue_exact(1) : cf_.residue_exact(2);
}

FieldElement RotMeasure::transition_exact(std::size_t n, int prev, int cur) const
{
    if (n < 2)
        throw std::invalid_argument("transitions start at level 2");
    check_digit(cf_, n - 1, prev);
    check_digit(cf_, n, cur);
    const Field& f = cf_.alpha_exact().field();
    if (prev == cf_.a(n - 1))
        return FieldElement(f, cur == 0 ? 1 : 0);
    FieldElement num = cur < cf_.a(n) ? cf_.residue_exact(n) : cf_.residue_exact(n + 1);
    return num / cf_.residue_exact(n - 1);
}

FieldElement RotMeasure::marginal_exact(std::size_t n, int i) const
{
    check_digit(cf_, n, i);
    std::vector<Integer> q = cf_.q_list(n);
    if (i == 0)
        return cf_.residue_exact(n) * Rational(q[n - 1] + q[n]);
    if (i < cf_.a(n))
        return cf_.residue_exact(n) * Rational(q[n]);
    return cf_.residue_exact(n + 1) * Rational(q[n]);
}

namespace {

// Ancestral sampling with rho_n = alpha_n / alpha_{n-1}: a free digit is i < a_n with
// probability rho_n each and a_n with probability rho_n rho_{n+1}.
template <class Visit>
void sample_paths(const RotMeasure& m, std::size_t n, std::size_t count, std::uint64_t seed, Visit visit)
{
    const ContinuedFraction& cf = m.cf();
    std::vector<double> rho(n + 2);
    std::vector<long> a(n + 1);
    for (std::size_t k = 1; k <= n + 1; ++k)
        rho[k] = cf.ratio(k).convert_to<double>();
    for (std::size_t k = 1; k <= n; ++k)
        a[k] = cf.a(k);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t s = 0; s < count; ++s) {
        long prev = -1;
        bool forced = false;
        for (std::size_t k = 1; k <= n; ++k) {
            long d = 0;
            if (!forced) {
                double v = u(rng);
                d = std::min<long>(static_cast<long>(v / rho[k]), a[k]);
            }
            visit(s, k, static_cast<int>(d));
            forced = d == a[k];
            prev = d;
        }
        (void)prev;
    }
}

} // namespace

std::vector<std::vector<int>> sample_digits(const RotMeasure& m, std::size_t n, std::size_t count, std::uint64_t seed)
{
    std::vector<std::vector<int>> out(count, std::vector<int>(n));
    sample_paths(m, n, count, seed, [&](std::size_t s, std::size_t k, int d) { out[s][k - 1] = d; });
    return out;
}

std::vector<double> sample_digit_sums(const RotMeasure& m, std::size_t n, std::size_t count, std::uint64_t seed)
{
    std::vector<double> sums(count, 0.0);
    sample_paths(m, n, count, seed, [&](std::size_t s, std::size_t, int d) { sums[s] += d; });
    return sums;
}

DigitStatistics digit_statistics(const std::vector<double>& sums)
{
    DigitStatistics st;
    const double n = static_cast<double>(sums.size());
    if (sums.size() < 2)
        throw std::invalid_argument("need at least two samples");
    for (double x : sums)
        st.mean += x;
    st.mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : sums) {
        double d = x - st.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    st.variance = m2 * n / (n - 1);
    if (m2 > 0) {
        st.skewness = m3 / std::pow(m2, 1.5);
        st.excess_kurtosis = m4 / (m2 * m2) - 3;
        std::vector<double> z;
        for (double x : sums)
            z.push_back((x - st.mean) / std::sqrt(m2));
        std::sort(z.begin(), z.end());
        for (std::size_t i = 0; i < z.size(); ++i) {
            double phi = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
            st.ks_distance = std::max({st.ks_distance, std::abs(phi - i / n), std::abs((i + 1) / n - phi)});
        }
    }
    return st;
}

DigitStatistics digit_statistics(const std::vector<std::vector<int>>& samples)
{
    std::vector<double> sums;
    for (const auto& s : samples) {
        double t = 0;
        for (int d : s)
            t += d;
        sums.push_back(t);
    }
    return digit_statistics(sums);
}

// ---------------------------------------------------------------- unique rotational expansions

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(Cardinality c)
{
    switch (c) {
    case Cardinality::Finite: return "Finite";
    case Cardinality::Continuum: return "Continuum";
    case Cardinality::Unknown: return "Unknown";
    }
    return "Unknown";
}

RotUniqueReport unique_rotational_analysis(const ContinuedFraction& cf, std::size_t horizon)
{
    RotUniqueReport r;
    if (!cf.is_periodic())
        return r;   // every criterion depends on the infinite tail
    const auto& per = cf.period();
    const auto& pre = cf.preperiod();
    if (std::find(per.begin(), per.end(), 1) != per.end()) {
        r.empty = Verdict::True;
        r.measure_zero = Verdict::True;
        r.cardinality = Cardinality::Finite;
        r.dim_positive = Verdict::False;
        return r;
    }
    long n0 = 0;
    for (std::size_t i = 0; i < pre.size(); ++i)
        if (pre[i] == 1)
            n0 = static_cast<long>(i) + 1;
    r.n0 = n0;
    r.empty = Verdict::False;
    r.measure_zero = Verdict::True;   // sum of 1/a_n over a repeating period diverges
    bool all_two = std::all_of(per.begin(), per.end(), [](long a) { return a == 2; });
    r.cardinality = all_two ? Cardinality::Finite : Cardinality::Continuum;
    r.dim_positive = all_two ? Verdict::False : Verdict::True;
    // alpha_N prod_{n0<n<=N} (a_n - 1) decreases in N and bounds the measure from above.
    const std::size_t N = std::max<std::size_t>(horizon, static_cast<std::size_t>(n0) + 1);
    Real bound = cf.residue(N);
    for (std::size_t n = static_cast<std::size_t>(n0) + 1; n <= N; ++n)
        bound *= cf.a(n) - 1;
    r.mu_K_alpha = Approx{bound / 2, bound / 2};
    return r;
}

} // namespace arithdyn
