#include "arithdyn/beta_core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arithdyn {

// ---------------------------------------------------------------- DigitSeq

DigitSeq DigitSeq::finite(std::vector<int> digits, int alphabet_max)
{
    DigitSeq s;
    s.kind_ = Kind::finite;
    s.body_ = std::move(digits);
    s.alphabet_max_ = {alphabet_max};
    s.normalize();
    return s;
}

DigitSeq DigitSeq::periodic(std::vector<int> preperiod, std::vector<int> period, int alphabet_max)
{
    if (period.empty())
        throw std::invalid_argument("period must be nonempty");
    DigitSeq s;
    s.kind_ = Kind::periodic;
    s.body_ = std::move(preperiod);
    s.period_ = std::move(period);
    s.alphabet_max_ = {alphabet_max};
    s.normalize();
    return s;
}

DigitSeq DigitSeq::prefix(std::vector<int> digits, int alphabet_max)
{
    DigitSeq s;
    s.kind_ = Kind::prefix;
    s.body_ = std::move(digits);
    s.alphabet_max_ = {alphabet_max};
    return s;
}

DigitSeq DigitSeq::generated(std::function<int(std::size_t)> gen, int alphabet_max)
{
    DigitSeq s;
    s.kind_ = Kind::generated;
    s.gen_ = std::make_shared<const std::function<int(std::size_t)>>(std::move(gen));
    s.alphabet_max_ = {alphabet_max};
    return s;
}

void DigitSeq::normalize()
{
    if (kind_ == Kind::periodic) {
        // primitive period
        const std::size_t L = period_.size();
        for (std::size_t d = 1; d < L; ++d) {
            if (L % d != 0)
                continue;
            bool ok = true;
            for (std::size_t i = d; i < L && ok; ++i)
                ok = period_[i] == period_[i - d];
            if (ok) {
                period_.resize(d);
                break;
            }
        }
        // shortest preperiod
        while (!body_.empty() && body_.back() == period_.back()) {
            std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
            body_.pop_back();
        }
        if (period_.size() == 1 && period_[0] == 0) {
            kind_ = Kind::finite;
            period_.clear();
        }
    }
    if (kind_ == Kind::finite)
        while (!body_.empty() && body_.back() == 0)
            body_.pop_back();
}

void DigitSeq::set_alphabet_max(std::vector<int> bounds)
{
    if (bounds.empty())
        throw std::invalid_argument("alphabet bounds must be nonempty");
    alphabet_max_ = std::move(bounds);
}

int DigitSeq::bound(std::size_t i) const
{
    if (alphabet_max_.size() == 1)
        return alphabet_max_[0];
    return i < alphabet_max_.size() ? alphabet_max_[i] : alphabet_max_.back();
}

int DigitSeq::at(std::size_t i) const
{
    switch (kind_) {
    case Kind::finite:
        return i < body_.size() ? body_[i] : 0;
    case Kind::periodic:
        return i < body_.size() ? body_[i] : period_[(i - body_.size()) % period_.size()];
    case Kind::prefix:
        if (i >= body_.size())
            throw std::out_of_range("digit " + std::to_string(i) + " is beyond the known prefix");
        return body_[i];
    case Kind::generated:
        return (*gen_)(i);
    }
    return 0;
}

std::vector<int> DigitSeq::take(std::size_t n) const
{
    std::vector<int> r(n);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = at(i);
    return r;
}

DigitSeq DigitSeq::shifted(std::size_t k) const
{
    DigitSeq s = *this;
    switch (kind_) {
    case Kind::finite:
    case Kind::prefix:
        s.body_.erase(s.body_.begin(), s.body_.begin() + std::min(k, s.body_.size()));
        break;
    case Kind::periodic:
        if (k <= body_.size()) {
            s.body_.erase(s.body_.begin(), s.body_.begin() + k);
        } else {
            std::size_t r = (k - body_.size()) % period_.size();
            s.body_.clear();
            std::rotate(s.period_.begin(), s.period_.begin() + r, s.period_.end());
        }
        break;
    case Kind::generated: {
        auto g = gen_;
        s.gen_ = std::make_shared<const std::function<int(std::size_t)>>(
            [g, k](std::size_t i) { return (*g)(i + k); });
        break;
    }
    }
    if (alphabet_max_.size() > 1) {
        std::vector<int> b;
        for (std::size_t i = k; i < alphabet_max_.size(); ++i)
            b.push_back(alphabet_max_[i]);
        if (b.empty())
            b.push_back(alphabet_max_.back());
        s.alphabet_max_ = b;
    }
    return s;
}

namespace {

std::string join_digits(const std::vector<int>& d, bool wide)
{
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (wide && i)
            s += ",";
        s += std::to_string(d[i]);
    }
    return s;
}

bool needs_wide(const std::vector<int>& a, const std::vector<int>& b)
{
    auto big = [](int x) { return x < 0 || x > 9; };
    return std::any_of(a.begin(), a.end(), big) || std::any_of(b.begin(), b.end(), big);
}

} // namespace

std::string DigitSeq::to_string() const
{
    bool wide = needs_wide(body_, period_);
    std::string sep = wide && !body_.empty() ? "," : "";
    switch (kind_) {
    case Kind::finite:
        return join_digits(body_, wide) + sep + "(0)^inf";
    case Kind::periodic:
        return join_digits(body_, wide) + sep + "(" + join_digits(period_, wide) + ")^inf";
    case Kind::prefix:
        return join_digits(body_, wide) + "...";
    case Kind::generated:
        return render(32) + "...";
    }
    return {};
}

std::string DigitSeq::render(std::size_t n) const
{
    std::vector<int> d = take(n);
    return join_digits(d, needs_wide(d, {}));
}

bool DigitSeq::operator==(const DigitSeq& o) const
{
    if (kind_ != o.kind_)
        return false;
    if (kind_ == Kind::generated)
        return gen_ == o.gen_;
    return body_ == o.body_ && period_ == o.period_;
}

std::optional<int> lex_compare(const DigitSeq& a, const DigitSeq& b, std::size_t max_depth)
{
    std::size_t limit = max_depth;
    if (a.is_exact() && b.is_exact()) {
        std::size_t la = a.period().empty() ? 1 : a.period().size();
        std::size_t lb = b.period().empty() ? 1 : b.period().size();
        limit = std::max(a.preperiod().size(), b.preperiod().size()) + std::lcm(la, lb);
    }
    for (std::size_t i = 0; i < limit; ++i) {
        if (!a.available(i) || !b.available(i))
            return std::nullopt;
        int x = a.at(i), y = b.at(i);
        if (x != y)
            return x < y ? -1 : 1;
    }
    if (a.is_exact() && b.is_exact())
        return 0;
    return std::nullopt;
}

// ---------------------------------------------------------------- Beta

Beta Beta::algebraic(Field f)
{
    if (!f)
        throw std::invalid_argument("null field");
    Beta b;
    b.field_ = std::move(f);
    b.value_ = b.field_->root_value();
    b.floor_ = static_cast<int>(FieldElement::generator(b.field_).floor().get_si());
    bool integer = b.field_->degree() == 1 && b.field_->coefficients()[0].get_den() == 1;
    b.max_digit_ = integer ? b.floor_ - 1 : b.floor_;
    return b;
}

Beta Beta::numeric(const Real& value)
{
    if (!(value > 1))
        throw std::invalid_argument("base must exceed 1");
    Beta b;
    b.value_ = value;
    b.floor_ = static_cast<int>(boost::multiprecision::floor(value).convert_to<long>());
    b.max_digit_ = value == b.floor_ ? b.floor_ - 1 : b.floor_;
    return b;
}

Beta Beta::parse(const std::string& spec_in)
{
    std::string spec;
    for (char ch : spec_in)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            spec.push_back(ch);
    if (spec == "golden" || spec == "tribonacci" || spec == "plastic")
        return algebraic(named_field(spec));
    if (spec.rfind("poly:", 0) == 0) {
        Poly coeffs;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ','))
            coeffs.push_back(parse_rational(item));
        return algebraic(make_field(coeffs));
    }
    if (spec.rfind("num:", 0) == 0)
        return numeric(Real(spec.substr(4)));
    return algebraic(rational_field(parse_rational(spec)));
}

const Field& Beta::field() const
{
    if (!field_)
        throw std::logic_error("numeric base has no exact field");
    return field_;
}

FieldElement Beta::element() const
{
    return FieldElement::generator(field());
}

std::string Beta::describe() const
{
    if (!field_)
        return "numeric " + format_real(value_);
    std::string s = "root of ";
    const Poly& c = field_->coefficients();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0)
            continue;
        s += (c[i] < 0 ? " - " : (i + 1 == c.size() ? "" : " + "));
        Rational a = abs(c[i]);
        if (a != 1 || i == 0)
            s += a.get_str();
        if (i > 0)
            s += "x" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s + " ~ " + format_real(value_);
}

// ---------------------------------------------------------------- orbit machinery

namespace {

const Real& numeric_tolerance()
{
    static const Real tol("1e-30");
    return tol;
}

long floor_long(const FieldElement& x) { return x.floor().get_si(); }
long floor_long(const Real& x) { return boost::multiprecision::floor(x).convert_to<long>(); }

struct ExactOps {
    using Num = FieldElement;
    FieldElement beta;
    Field field;
    FieldElement make(const Rational& r) const { return FieldElement(field, r); }
};

struct NumericOps {
    using Num = Real;
    Real beta;
    Real make(const Rational& r) const { return to_real(r); }
};

ExactOps exact_ops(const Beta& b, const FieldElement& x)
{
    if (!b.is_algebraic())
        throw std::invalid_argument("exact expansion needs an algebraic base");
    if (x.field() != b.field() && !(*x.field() == *b.field()))
        throw std::invalid_argument("field mismatch between x and beta");
    return ExactOps{b.element(), b.field()};
}

NumericOps numeric_ops(const Beta& b) { return NumericOps{b.value()}; }

bool is_zero(const Real& x) { return abs(x) < numeric_tolerance(); }

// Runs `step` from x0 for up to n digits, detecting termination (orbit hits 0, when
// stop_at_zero) and eventual periodicity. Exact orbits use a coordinate map;
// numeric orbits use Floyd's tortoise and hare with a tolerance and are flagged.
template <class Num, class Step>
DigitSeq run_orbit(Num x, std::size_t n, int alphabet_max, bool stop_at_zero, Step step)
{
    std::vector<int> digits;
    if constexpr (std::is_same_v<Num, FieldElement>) {
        std::map<FieldElement, std::size_t, CoordLess> seen;
        for (std::size_t i = 0;; ++i) {
            if (stop_at_zero && x.is_zero())
                return DigitSeq::finite(digits, alphabet_max);
            auto [it, fresh] = seen.emplace(x, i);
            if (!fresh) {
                std::vector<int> pre(digits.begin(), digits.begin() + it->second);
                std::vector<int> per(digits.begin() + it->second, digits.end());
                return DigitSeq::periodic(pre, per, alphabet_max);
            }
            if (i == n)
                break;
            digits.push_back(step(x));
        }
        return DigitSeq::prefix(digits, alphabet_max);
    } else {
        std::vector<Real> pts;
        for (std::size_t i = 0;; ++i) {
            pts.push_back(x);
            if (stop_at_zero && is_zero(x)) {
                DigitSeq s = DigitSeq::finite(digits, alphabet_max);
                s.set_numeric_unverified(true);
                return s;
            }
            if (i == n)
                break;
            digits.push_back(step(x));
        }
        auto close = [&](std::size_t i, std::size_t j) { return abs(pts[i] - pts[j]) < numeric_tolerance(); };
        const std::size_t last = pts.size() - 1;
        for (std::size_t nu = 1; 2 * nu <= last; ++nu) {
            if (!close(nu, 2 * nu))
                continue;
            std::size_t mu = 0;
            while (!close(mu, mu + nu))
                ++mu;
            std::size_t lambda = 1;
            while (!close(mu + lambda, mu))
                ++lambda;
            std::vector<int> pre(digits.begin(), digits.begin() + mu);
            std::vector<int> per(digits.begin() + mu, digits.begin() + mu + lambda);
            DigitSeq s = DigitSeq::periodic(pre, per, alphabet_max);
            s.set_numeric_unverified(true);
            return s;
        }
        DigitSeq s = DigitSeq::prefix(digits, alphabet_max);
        s.set_numeric_unverified(true);
        return s;
    }
}

template <class Ops>
DigitSeq greedy_impl(const Ops& ops, typename Ops::Num x, const Beta& b, std::size_t n)
{
    if (x < ops.make(0) || x >= ops.make(1))
        throw std::domain_error("greedy expansion needs 0 <= x < 1");
    return run_orbit(x, n, b.max_digit(), true, [&](auto& r) {
        auto y = ops.beta * r;
        long d = floor_long(y);
        r = y - ops.make(Rational(d));
        return static_cast<int>(d);
    });
}

template <class Ops>
DigitSeq lazy_impl(const Ops& ops, typename Ops::Num x, const Beta& b, std::size_t n)
{
    const long k = b.max_digit();
    auto top = ops.make(Rational(k)) / (ops.beta - ops.make(1));
    if (x < ops.make(0) || x > top)
        throw std::domain_error("lazy expansion needs 0 <= x <= d/(beta-1)");
    return run_orbit(x, n, b.max_digit(), true, [&](auto& r) {
        auto y = ops.beta * r;
        // smallest digit leaving a representable remainder: beta r - d <= top
        long d = -floor_long(top - y);
        d = std::clamp(d, 0L, k);
        r = y - ops.make(Rational(d));
        return static_cast<int>(d);
    });
}

template <class Ops>
DigitSeq intermediate_impl(const Ops& ops, typename Ops::Num x, const typename Ops::Num& alpha,
                           std::size_t n)
{
    const auto one = ops.make(1);
    if (!(ops.beta < ops.make(2)))
        throw std::domain_error("intermediate expansion needs 1 < beta < 2");
    if (alpha < ops.make(0) || alpha > (ops.make(2) - ops.beta) / (ops.beta - one))
        throw std::domain_error("alpha must lie in [0, (2-beta)/(beta-1)]");
    if (x < alpha || x > alpha + one)
        throw std::domain_error("x must lie in [alpha, 1 + alpha]");
    const auto cut = (one + alpha) / ops.beta;
    return run_orbit(x, n, 1, false, [&](auto& r) {
        int d = r >= cut ? 1 : 0;
        r = ops.beta * r - ops.make(d);
        return d;
    });
}

} // namespace

DigitSeq greedy_expand(const FieldElement& x, const Beta& beta, std::size_t n)
{
    if (!beta.is_algebraic())
        return greedy_expand(x.to_real(), beta, n);
    return greedy_impl(exact_ops(beta, x), x, beta, n);
}

DigitSeq greedy_expand(const Real& x, const Beta& beta, std::size_t n)
{
    return greedy_impl(numeric_ops(beta), x, beta, n);
}

DigitSeq greedy_expand(const Rational& x, const Beta& beta, std::size_t n)
{
    if (beta.is_algebraic())
        return greedy_expand(FieldElement(beta.field(), x), beta, n);
    return greedy_expand(to_real(x), beta, n);
}

DigitSeq lazy_expand(const FieldElement& x, const Beta& beta, std::size_t n)
{
    if (!beta.is_algebraic())
        return lazy_expand(x.to_real(), beta, n);
    return lazy_impl(exact_ops(beta, x), x, beta, n);
}

DigitSeq lazy_expand(const Real& x, const Beta& beta, std::size_t n)
{
    return lazy_impl(numeric_ops(beta), x, beta, n);
}

DigitSeq lazy_expand(const Rational& x, const Beta& beta, std::size_t n)
{
    if (beta.is_algebraic())
        return lazy_expand(FieldElement(beta.field(), x), beta, n);
    return lazy_expand(to_real(x), beta, n);
}

DigitSeq intermediate_expand(const FieldElement& x, const Beta& beta, const FieldElement& alpha, std::size_t n)
{
    if (!beta.is_algebraic())
        return intermediate_expand(x.to_real(), beta, alpha.to_real(), n);
    return intermediate_impl(exact_ops(beta, x), x, alpha, n);
}

DigitSeq intermediate_expand(const Real& x, const Beta& beta, const Real& alpha, std::size_t n)
{
    return intermediate_impl(numeric_ops(beta), x, alpha, n);
}

DigitSeq intermediate_expand(const Rational& x, const Beta& beta, const Rational& alpha, std::size_t n)
{
    if (beta.is_algebraic())
        return intermediate_expand(FieldElement(beta.field(), x), beta, FieldElement(beta.field(), alpha), n);
    return intermediate_expand(to_real(x), beta, to_real(alpha), n);
}

// ---------------------------------------------------------------- Parry data

namespace {

ParryData parry_from_a_prime(DigitSeq a_prime, int alphabet_max, std::size_t steps)
{
    ParryData p;
    p.steps = steps;
    p.a_prime = a_prime;
    p.truncated = a_prime.kind() == DigitSeq::Kind::prefix;
    p.exact = !p.truncated && !a_prime.numeric_unverified();
    if (a_prime.kind() == DigitSeq::Kind::finite) {
        std::vector<int> per = a_prime.preperiod();   // normalised: ends with the last nonzero digit
        per.back() -= 1;
        p.a = DigitSeq::periodic({}, per, alphabet_max);
    } else {
        p.a = a_prime;
    }
    p.a.set_numeric_unverified(a_prime.numeric_unverified());
    return p;
}

template <class Ops>
ParryData one_impl(const Ops& ops, const Beta& b, std::size_t bound)
{
    // The orbit of 1 starts outside [0,1); detection runs on tau(1), tau^2(1), ...
    auto y = ops.beta;
    long d0 = floor_long(y);
    auto x = y - ops.make(Rational(d0));
    DigitSeq tail = run_orbit(x, bound - 1, b.floor(), true, [&](auto& r) {
        auto z = ops.beta * r;
        long d = floor_long(z);
        r = z - ops.make(Rational(d));
        return static_cast<int>(d);
    });
    std::vector<int> pre{static_cast<int>(d0)};
    for (int v : tail.preperiod())
        pre.push_back(v);
    DigitSeq a_prime;
    switch (tail.kind()) {
    case DigitSeq::Kind::finite: a_prime = DigitSeq::finite(pre, b.floor()); break;
    case DigitSeq::Kind::periodic: a_prime = DigitSeq::periodic(pre, tail.period(), b.floor()); break;
    default: a_prime = DigitSeq::prefix(pre, b.floor()); break;
    }
    a_prime.set_numeric_unverified(tail.numeric_unverified());
    return parry_from_a_prime(a_prime, b.max_digit(), tail.known_length() + 1);
}

} // namespace

ParryData expansion_of_one(const Beta& beta, std::size_t bound)
{
    if (bound < 1)
        throw std::invalid_argument("bound must be positive");
    if (beta.is_algebraic())
        return one_impl(ExactOps{beta.element(), beta.field()}, beta, bound);
    return one_impl(numeric_ops(beta), beta, bound);
}

bool is_parry_admissible(const DigitSeq& eps, const DigitSeq& a)
{
    // Shifts beyond pre + period repeat, and a finite word's zero tail is below any a != 0.
    std::size_t shifts = eps.is_exact() ? eps.known_length() + 1 : eps.known_length();
    if (eps.kind() == DigitSeq::Kind::generated)
        shifts = 1024;
    for (std::size_t n = 0; n < shifts; ++n) {
        if (!eps.available(n))
            break;
        auto c = lex_compare(eps.shifted(n), a);
        if (c && *c >= 0)
            return false;
    }
    return true;
}

bool is_parry_admissible(const DigitSeq& eps, const ParryData& parry)
{
    return is_parry_admissible(eps, parry.a);
}

bool is_parry_sequence(const DigitSeq& a)
{
    std::size_t shifts = a.kind() == DigitSeq::Kind::generated ? 1024 : a.known_length();
    for (std::size_t n = 1; n <= shifts; ++n) {
        if (!a.available(n))
            break;
        auto c = lex_compare(a.shifted(n), a);
        if (c && *c > 0)
            return false;
    }
    return true;
}

std::string to_string(CompactumClass c)
{
    switch (c) {
    case CompactumClass::SFT: return "SFT";
    case CompactumClass::Sofic: return "Sofic";
    case CompactumClass::NotSofic: return "NotSofic";
    case CompactumClass::Unknown: return "Unknown";
    }
    return "Unknown";
}

ConjugateInfo conjugate_info(const Field& f)
{
    ConjugateInfo info;
    info.algebraic_integer = f->is_integral();
    if (f->degree() == 1) {
        info.perron = info.pisot = info.algebraic_integer;
        return info;
    }
    auto roots = f->conjugates();
    const long double beta = static_cast<long double>(f->root_value());
    std::size_t self = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (std::abs(roots[i] - beta) < std::abs(roots[self] - beta))
            self = i;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (i != self)
            info.max_other_modulus = std::max(info.max_other_modulus, std::abs(roots[i]));
    const long double margin = 1e-12L;
    info.perron = info.algebraic_integer && info.max_other_modulus < beta - margin;
    info.pisot = info.algebraic_integer && info.max_other_modulus < 1 - margin;
    return info;
}

CompactumReport classify_compactum(const Beta& beta, std::size_t bound)
{
    if (!beta.is_algebraic())
        throw std::invalid_argument("classification needs an algebraic base");
    CompactumReport r;
    r.parry = expansion_of_one(beta, bound);
    r.conjugates = conjugate_info(beta.field());
    if (r.parry.a_prime.kind() == DigitSeq::Kind::finite)
        r.category = CompactumClass::SFT;
    else if (r.parry.a_prime.kind() == DigitSeq::Kind::periodic)
        r.category = CompactumClass::Sofic;
    else if (r.conjugates.algebraic_integer && !r.conjugates.perron)
        r.category = CompactumClass::NotSofic;
    else
        r.category = CompactumClass::Unknown;
    return r;
}

// ---------------------------------------------------------------- evaluation

namespace {

// sum_{i} w_i beta^{-(i+1)}
FieldElement word_value(const std::vector<int>& w, const FieldElement& inv)
{
    FieldElement v(inv.field());
    for (std::size_t i = w.size(); i-- > 0;)
        v = (v + Rational(w[i])) * inv;
    return v;
}

} // namespace

FieldElement evaluate_exact(const DigitSeq& eps, const Beta& beta, long start)
{
    if (!eps.is_exact())
        throw std::invalid_argument("exact evaluation needs a finite or eventually periodic sequence");
    const FieldElement b = beta.element();
    const FieldElement inv = b.inverse();
    FieldElement v = word_value(eps.preperiod(), inv);
    if (eps.kind() == DigitSeq::Kind::periodic) {
        const auto& per = eps.period();
        FieldElement shift = inv.pow(static_cast<long>(eps.preperiod().size()));
        FieldElement geo = FieldElement(b.field(), 1) - inv.pow(static_cast<long>(per.size()));
        v += shift * word_value(per, inv) / geo;
    }
    return v * b.pow(1 - start);
}

Approx evaluate(const DigitSeq& eps, const Beta& beta, long start, std::size_t depth)
{
    if (eps.is_exact() && beta.is_algebraic())
        return evaluate_exact(eps, beta, start).refine(Real("1e-45"));
    const Real b = beta.value();
    if (eps.is_exact()) {
        // closed form in floating point
        Real inv = 1 / b;
        auto val = [&](const std::vector<int>& w) {
            Real v = 0;
            for (std::size_t i = w.size(); i-- > 0;)
                v = (v + w[i]) * inv;
            return v;
        };
        Real v = val(eps.preperiod());
        if (eps.kind() == DigitSeq::Kind::periodic)
            v += pow(inv, eps.preperiod().size()) * val(eps.period()) / (1 - pow(inv, eps.period().size()));
        v *= pow(b, 1 - start);
        Real err = abs(v) * Real("1e-45") * (1 + eps.known_length());
        return Approx{v, err};
    }
    std::size_t n = depth;
    if (eps.kind() == DigitSeq::Kind::prefix)
        n = std::min(n, eps.known_length());
    Real inv = 1 / b, w = pow(inv, start), sum = 0;
    int maxd = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int d = eps.at(i);
        maxd = std::max(maxd, eps.bound(i));
        sum += d * w;
        w *= inv;
    }
    maxd = std::max(maxd, eps.bound(n));
    // remaining digits contribute at most maxd * w / (1 - 1/beta)
    Real tail = maxd * w / (1 - inv);
    Real err = tail + abs(sum) * Real("1e-45") * (1 + n);
    return Approx{sum, err};
}

} // namespace arithdyn
