#include "arithdyn/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arithdyn {

namespace {

Real upper_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Integer integer_lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Rational to_rational(const Real& x)
{
    if (!isfinite(x))
        throw std::domain_error("cannot convert a non-finite real to a rational");
    if (x == 0)
        return Rational(0);
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.backend().data());
    Rational q(m);
    if (e >= 0) {
        mpz_class s = 1;
        mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        q *= s;
    } else {
        mpz_class s = 1;
        mpz_mul_2exp(s.get_mpz_t(), s.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        q /= s;
    }
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    if (s.empty())
        throw std::invalid_argument("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in '" + text + "'");
        Rational r = num / den;
        r.canonicalize();
        return r;
    }
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac = 0;
    bool seen_point = false, any = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            any = true;
            if (seen_point)
                ++frac;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any)
        throw std::invalid_argument("not a number: '" + text + "'");
    long exp10 = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E')
            throw std::invalid_argument("not a number: '" + text + "'");
        try {
            std::size_t used = 0;
            exp10 = std::stol(s.substr(i + 1), &used);
            if (used != s.size() - i - 1)
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent in '" + text + "'");
        }
    }
    Rational r{Integer(digits)};
    long shift = exp10 - frac;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0)
        r *= p;
    else
        r /= p;
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string format_real(const Real& x, int digits)
{
    return x.str(digits);
}

Integer floor_rational(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_rational(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

void poly_trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Rational poly_eval(const Poly& p, const Rational& x)
{
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

Poly poly_rem(const Poly& a, const Poly& b)
{
    Poly r = a;
    poly_trim(r);
    Poly d = b;
    poly_trim(d);
    if (d.empty())
        throw std::domain_error("polynomial division by zero");
    const Rational& lead = d.back();
    while (r.size() >= d.size()) {
        Rational t = r.back() / lead;
        std::size_t shift = r.size() - d.size();
        for (std::size_t i = 0; i < d.size(); ++i)
            r[shift + i] -= t * d[i];
        r.pop_back();
        poly_trim(r);
    }
    return r;
}

Poly poly_derivative(const Poly& p)
{
    Poly r;
    for (std::size_t i = 1; i < p.size(); ++i)
        r.push_back(p[i] * static_cast<long>(i));
    poly_trim(r);
    return r;
}

namespace {

int sign_changes(const std::vector<Poly>& seq, const Rational& x)
{
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sgn(poly_eval(p, x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

int sturm_count(const Poly& p, const Rational& a, const Rational& b)
{
    std::vector<Poly> seq;
    Poly p0 = p;
    poly_trim(p0);
    seq.push_back(p0);
    seq.push_back(poly_derivative(p0));
    while (!seq.back().empty()) {
        Poly r = poly_rem(seq[seq.size() - 2], seq.back());
        for (auto& c : r)
            c = -c;
        if (r.empty())
            break;
        seq.push_back(r);
    }
    return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<std::complex<long double>> complex_roots(const Poly& p_in)
{
    Poly p = p_in;
    poly_trim(p);
    const int m = static_cast<int>(p.size()) - 1;
    if (m < 1)
        return {};
    std::vector<long double> c(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        c[i] = static_cast<long double>(Rational(p[i] / p.back()).get_d());
    using C = std::complex<long double>;
    auto eval = [&](C z) {
        C acc = 0;
        for (int i = m; i >= 0; --i)
            acc = acc * z + c[i];
        return acc;
    };
    long double radius = 1;
    for (int i = 0; i < m; ++i)
        radius = std::max(radius, 1 + std::abs(c[i]));
    std::vector<C> z(m);
    const C seed(0.4L, 0.9L);
    C w = 1;
    for (int k = 0; k < m; ++k) {
        w *= seed;
        z[k] = w * (radius / 2);
    }
    for (int iter = 0; iter < 2000; ++iter) {
        long double change = 0;
        for (int k = 0; k < m; ++k) {
            C den = 1;
            for (int j = 0; j < m; ++j)
                if (j != k)
                    den *= (z[k] - z[j]);
            if (std::abs(den) == 0)
                den = C(1e-30L, 0);
            C step = eval(z[k]) / den;
            z[k] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-18L)
            break;
    }
    return z;
}

// ---------------------------------------------------------------- MinimalPolynomial

namespace {

// Scales a monic rational polynomial to a monic integer one by x = y / L.
std::vector<Integer> integer_monic(const Poly& p, Integer& scale)
{
    Integer L = 1;
    for (const auto& c : p)
        L = integer_lcm(L, c.get_den());
    scale = L;
    const std::size_t m = p.size() - 1;
    std::vector<Integer> q(p.size());
    for (std::size_t i = 0; i <= m; ++i) {
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(m - i));
        Rational v = p[i] * pw;
        if (!is_integer(v))
            throw std::logic_error("integer scaling failed");
        q[i] = v.get_num();
    }
    return q;
}

bool divides_exactly(const std::vector<Integer>& q, const std::vector<Integer>& d)
{
    Poly a(q.begin(), q.end()), b(d.begin(), d.end());
    return poly_rem(a, b).empty();
}

// True if some monic factor of degree <= m/2 is found; candidates come from
// numerical roots and every candidate is verified by exact division.
bool has_small_factor(const Poly& p)
{
    Integer L;
    std::vector<Integer> q = integer_monic(p, L);
    Poly qp(q.begin(), q.end());
    const int m = static_cast<int>(q.size()) - 1;
    auto roots = complex_roots(qp);
    for (int k = 1; k <= m / 2; ++k) {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<std::complex<long double>> prod{1};
            for (int i : idx) {
                std::vector<std::complex<long double>> next(prod.size() + 1, 0);
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    next[j + 1] += prod[j];
                    next[j] -= prod[j] * roots[i];
                }
                prod = std::move(next);
            }
            bool plausible = true;
            std::vector<Integer> cand;
            for (auto& v : prod) {
                long double re = std::round(v.real());
                if (std::abs(v.imag()) > 1e-6L * std::max<long double>(1, std::abs(v))
                    || std::abs(v.real() - re) > 1e-6L * std::max<long double>(1, std::abs(v))) {
                    plausible = false;
                    break;
                }
                cand.emplace_back(Integer(static_cast<double>(re)));
            }
            if (plausible && divides_exactly(q, cand))
                return true;
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == m - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++idx[pos];
            for (int j = pos + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

} // namespace

MinimalPolynomial::MinimalPolynomial(Poly coeffs, Rational lo, Rational hi, bool assume_irreducible)
    : coeffs_(std::move(coeffs)), lo_(std::move(lo)), hi_(std::move(hi))
{
    poly_trim(coeffs_);
    if (coeffs_.size() < 2)
        throw std::invalid_argument("minimal polynomial must have degree >= 1");
    if (coeffs_.back() != 1)
        throw std::invalid_argument("minimal polynomial must be monic");
    if (lo_ > hi_)
        throw std::invalid_argument("root interval has lo > hi");
    const int m = degree();
    if (m == 1) {
        Rational root = -coeffs_[0];
        if (root < lo_ || root > hi_)
            throw std::invalid_argument("root interval does not contain the root");
        lo_ = hi_ = root;
        verified_ = true;
    } else {
        if (m <= 6) {
            if (has_small_factor(coeffs_))
                throw std::invalid_argument("polynomial is reducible over the rationals");
            verified_ = true;
        } else if (!assume_irreducible) {
            throw std::invalid_argument("irreducibility above degree 6 must be asserted by the caller");
        }
        if (lo_ == hi_ || poly_eval(coeffs_, lo_) == 0 || poly_eval(coeffs_, hi_) == 0)
            throw std::invalid_argument("root interval endpoints must not be roots");
        if (sturm_count(coeffs_, lo_, hi_) != 1)
            throw std::invalid_argument("root interval must contain exactly one real root");
        if (hi_ <= 1)
            throw std::invalid_argument("designated root must exceed 1");
        if (lo_ < 1) {
            if (poly_eval(coeffs_, Rational(1)) == 0 || sturm_count(coeffs_, Rational(1), hi_) != 1)
                throw std::invalid_argument("designated root must exceed 1");
            lo_ = 1;
        }
    }
    if (lo_ < 1 || (m == 1 && lo_ == 1))
        throw std::invalid_argument("designated root must exceed 1");
    Rational a = lo_, b = hi_;
    for (unsigned bits : {64u, 256u, 1024u}) {
        bisect(a, b, bits);
        stages_.push_back(make_stage(a, b, bits));
    }
}

MinimalPolynomial MinimalPolynomial::largest_root(Poly coeffs, bool assume_irreducible)
{
    poly_trim(coeffs);
    if (coeffs.size() < 2 || coeffs.back() != 1)
        throw std::invalid_argument("minimal polynomial must be monic of degree >= 1");
    if (coeffs.size() == 2) {
        Rational r = -coeffs[0];
        return MinimalPolynomial(coeffs, r, r, assume_irreducible);
    }
    Rational bound = 1;
    for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
        bound += abs(coeffs[i]);
    Rational lo = 1, hi = bound;
    if (poly_eval(coeffs, lo) == 0 || sturm_count(coeffs, lo, hi) == 0)
        throw std::invalid_argument("polynomial has no real root greater than 1");
    while (sturm_count(coeffs, lo, hi) > 1) {
        Rational mid = (lo + hi) / 2;
        if (poly_eval(coeffs, mid) == 0)
            throw std::invalid_argument("polynomial has a rational root; it is reducible");
        if (sturm_count(coeffs, mid, hi) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return MinimalPolynomial(std::move(coeffs), lo, hi, assume_irreducible);
}

bool MinimalPolynomial::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), is_integer);
}

void MinimalPolynomial::bisect(Rational& lo, Rational& hi, unsigned bits) const
{
    if (lo == hi)
        return;
    Rational width;
    mpq_div_2exp(width.get_mpq_t(), Rational(1).get_mpq_t(), bits);
    int s_lo = sgn(poly_eval(coeffs_, lo));
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        int s = sgn(poly_eval(coeffs_, mid));
        if (s == 0) {
            lo = hi = mid;
            return;
        }
        if (s == s_lo)
            lo = mid;
        else
            hi = mid;
    }
}

MinimalPolynomial::Stage MinimalPolynomial::make_stage(Rational lo, Rational hi, unsigned bits) const
{
    Stage s{bits, lo, hi, {}, {}};
    Rational pl = 1, ph = 1;
    for (int i = 0; i < degree(); ++i) {
        s.lo_pow.push_back(pl);
        s.hi_pow.push_back(ph);
        pl *= lo;
        ph *= hi;
    }
    return s;
}

std::pair<Rational, Rational> MinimalPolynomial::root_interval(unsigned bits) const
{
    for (const auto& s : stages_)
        if (s.bits >= bits)
            return {s.lo, s.hi};
    Rational a = stages_.back().lo, b = stages_.back().hi;
    bisect(a, b, bits);
    return {a, b};
}

Real MinimalPolynomial::root_value() const
{
    auto [a, b] = root_interval(256);
    return to_real((a + b) / 2);
}

std::vector<std::complex<long double>> MinimalPolynomial::conjugates() const
{
    return complex_roots(coeffs_);
}

bool MinimalPolynomial::operator==(const MinimalPolynomial& other) const
{
    if (coeffs_ != other.coeffs_)
        return false;
    // Same polynomial: the designated roots agree iff the isolating intervals overlap.
    auto a = root_interval(64), b = other.root_interval(64);
    return !(a.second < b.first || b.second < a.first);
}

Field make_field(Poly coeffs, bool assume_irreducible)
{
    return std::make_shared<const MinimalPolynomial>(
        MinimalPolynomial::largest_root(std::move(coeffs), assume_irreducible));
}

Field make_field(Poly coeffs, Rational lo, Rational hi, bool assume_irreducible)
{
    return std::make_shared<const MinimalPolynomial>(std::move(coeffs), std::move(lo), std::move(hi),
                                                     assume_irreducible);
}

Field rational_field(const Rational& r)
{
    if (r <= 1)
        throw std::invalid_argument("base must exceed 1");
    return make_field(Poly{-r, Rational(1)}, r, r);
}

Field golden_field()
{
    static const Field f = make_field(Poly{-1, -1, 1});
    return f;
}

Field tribonacci_field()
{
    static const Field f = make_field(Poly{-1, -1, -1, 1});
    return f;
}

Field plastic_field()
{
    static const Field f = make_field(Poly{-1, -1, 0, 1});
    return f;
}

Field named_field(const std::string& name)
{
    if (name == "golden")
        return golden_field();
    if (name == "tribonacci")
        return tribonacci_field();
    if (name == "plastic")
        return plastic_field();
    throw std::invalid_argument("unknown named base '" + name + "'");
}

// ---------------------------------------------------------------- FieldElement

namespace {

// Reduces a polynomial in beta modulo the monic minimal polynomial.
std::vector<Rational> reduce(Poly p, const Poly& mod)
{
    const std::size_t m = mod.size() - 1;
    for (std::size_t k = p.size(); k-- > m;) {
        if (p[k] == 0)
            continue;
        Rational t = p[k];
        std::size_t shift = k - m;
        for (std::size_t i = 0; i <= m; ++i)
            p[shift + i] -= t * mod[i];
    }
    p.resize(m, Rational(0));
    return p;
}

// Solves A y = b exactly; A must be invertible.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            throw std::domain_error("division by zero in number field");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k)
                a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] /= a[i][i];
    return b;
}

} // namespace

Rational determinant(std::vector<std::vector<Rational>> m)
{
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k)
                m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

FieldElement::FieldElement(Field f) : field_(std::move(f))
{
    if (!field_)
        throw std::invalid_argument("null field");
    c_.assign(field_->degree(), Rational(0));
}

FieldElement::FieldElement(Field f, std::vector<Rational> coords) : field_(std::move(f)), c_(std::move(coords))
{
    if (!field_)
        throw std::invalid_argument("null field");
    const std::size_t m = field_->degree();
    if (c_.size() > m)
        c_ = reduce(c_, field_->coefficients());
    c_.resize(m, Rational(0));
}

FieldElement::FieldElement(Field f, const Rational& r) : FieldElement(std::move(f))
{
    c_[0] = r;
}

FieldElement FieldElement::generator(const Field& f)
{
    if (f->degree() == 1)
        return FieldElement(f, -f->coefficients()[0]);
    FieldElement e(f);
    e.c_[1] = 1;
    return e;
}

void FieldElement::check_same(const FieldElement& o) const
{
    if (!field_ || !o.field_)
        throw std::invalid_argument("uninitialised field element");
    if (field_ != o.field_ && !(*field_ == *o.field_))
        throw std::invalid_argument("field mismatch");
}

bool FieldElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const
{
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_integral() const
{
    return std::all_of(c_.begin(), c_.end(), is_integer);
}

std::pair<Rational, Rational> FieldElement::enclose_stage(const MinimalPolynomial::Stage& s) const
{
    Rational lo = 0, hi = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rational& c = c_[i];
        if (c == 0)
            continue;
        if (c > 0) {
            lo += c * s.lo_pow[i];
            hi += c * s.hi_pow[i];
        } else {
            lo += c * s.hi_pow[i];
            hi += c * s.lo_pow[i];
        }
    }
    return {lo, hi};
}

std::pair<Rational, Rational> FieldElement::enclosure(unsigned bits) const
{
    for (const auto& s : field_->stages_)
        if (s.bits >= bits)
            return enclose_stage(s);
    auto [a, b] = field_->root_interval(bits);
    return enclose_stage(field_->make_stage(a, b, bits));
}

int FieldElement::sign() const
{
    if (is_zero())
        return 0;
    if (is_rational())
        return sgn(c_[0]);
    for (const auto& s : field_->stages_) {
        auto [lo, hi] = enclose_stage(s);
        if (lo > 0)
            return 1;
        if (hi < 0)
            return -1;
    }
    // A nonzero element has a nonzero value, so refinement terminates.
    for (unsigned bits = field_->stages_.back().bits * 2;; bits *= 2) {
        auto [lo, hi] = enclosure(bits);
        if (lo > 0)
            return 1;
        if (hi < 0)
            return -1;
    }
}

FieldElement FieldElement::operator-() const
{
    FieldElement r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    check_same(o);
    if (o.is_rational())
        return *this *= o.c_[0];
    if (is_rational()) {
        Rational r = c_[0];
        c_ = o.c_;
        return *this *= r;
    }
    c_ = reduce(poly_mul(c_, o.c_), field_->coefficients());
    return *this;
}

FieldElement& FieldElement::operator*=(const Rational& r)
{
    for (auto& c : c_)
        c *= r;
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o)
{
    check_same(o);
    if (o.is_zero())
        throw std::domain_error("division by zero in number field");
    if (o.is_rational())
        return *this *= Rational(1 / o.c_[0]);
    c_ = solve(o.mult_matrix(), c_);
    return *this;
}

FieldElement FieldElement::inverse() const
{
    FieldElement one(field_, Rational(1));
    return one /= *this;
}

FieldElement FieldElement::pow(long e) const
{
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    FieldElement r(field_, Rational(1));
    while (n) {
        if (n & 1)
            r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

std::vector<std::vector<Rational>> FieldElement::mult_matrix() const
{
    const std::size_t m = c_.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    FieldElement col = *this;
    FieldElement beta = generator(field_);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i)
            a[i][j] = col.c_[i];
        if (j + 1 < m)
            col *= beta;
    }
    return a;
}

Rational FieldElement::norm() const
{
    return determinant(mult_matrix());
}

Rational FieldElement::trace() const
{
    auto a = mult_matrix();
    Rational t = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        t += a[i][i];
    return t;
}

Approx FieldElement::refine(const Real& eps) const
{
    if (!(eps > 0))
        throw std::invalid_argument("refine needs eps > 0");
    Rational eps_q = to_rational(eps);
    for (unsigned bits = 64; bits <= (1u << 16); bits *= 2) {
        auto [lo, hi] = enclosure(bits);
        Rational mid = (lo + hi) / 2;
        Real value = arithdyn::to_real(mid);
        Rational err = (hi - lo) / 2 + abs(mid - to_rational(value));
        if (err <= eps_q)
            return Approx{value, upper_real(err)};
        if ((hi - lo) / 2 <= eps_q / 4)
            break;   // the interval is fine enough; the float format is not
    }
    throw precision_error("requested accuracy exceeds the working precision of " +
                          std::to_string(real_digits) + " digits");
}

Real FieldElement::to_real() const
{
    if (is_zero())
        return Real(0);
    // refine until the box is narrow relative to the value, not just in absolute terms
    unsigned bits = 256;
    auto box = enclosure(bits);
    while (sgn(box.first) != sgn(box.second) || (box.second - box.first) * Rational(Integer(1) << 200) >
                                                   std::max(abs(box.first), abs(box.second))) {
        bits *= 2;
        box = enclosure(bits);
    }
    return arithdyn::to_real((box.first + box.second) / 2);
}

Integer FieldElement::floor() const
{
    if (is_rational())
        return floor_rational(c_[0]);
    unsigned bits = 64;
    auto box = enclosure(bits);
    while (box.second - box.first >= 1) {
        bits *= 2;
        box = enclosure(bits);
    }
    Integer k = floor_rational(box.first);
    while ((*this - Rational(k + 1)).sign() >= 0)
        ++k;
    while ((*this - Rational(k)).sign() < 0)
        --k;
    return k;
}

std::string FieldElement::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        if (!first)
            os << (c_[i] < 0 ? " - " : " + ");
        else if (c_[i] < 0)
            os << "-";
        Rational a = abs(c_[i]);
        if (i == 0 || a != 1)
            os << a.get_str();
        if (i >= 1)
            os << (i == 0 || a != 1 ? "*" : "") << "b" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
FieldElement operator+(FieldElement a, const Rational& b) { return a += FieldElement(a.field(), b); }
FieldElement operator-(FieldElement a, const Rational& b) { return a -= FieldElement(a.field(), b); }
FieldElement operator*(FieldElement a, const Rational& b) { return a *= b; }
FieldElement operator*(const Rational& b, FieldElement a) { return a *= b; }

int compare(const FieldElement& a, const FieldElement& b)
{
    return (a - b).sign();
}

bool CoordLess::operator()(const FieldElement& a, const FieldElement& b) const
{
    const auto& x = a.coords();
    const auto& y = b.coords();
    for (std::size_t i = 0; i < x.size(); ++i) {
        int c = cmp(x[i], y[i]);
        if (c != 0)
            return c < 0;
    }
    return false;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw std::invalid_argument("unknown arithmetic operation");
}

Rational discriminant(const Field& f)
{
    const int m = f->degree();
    FieldElement beta = FieldElement::generator(f);
    std::vector<Rational> traces(2 * m - 1);
    FieldElement p(f, Rational(1));
    for (int k = 0; k < 2 * m - 1; ++k) {
        traces[k] = p.trace();
        p *= beta;
    }
    std::vector<std::vector<Rational>> g(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g[i][j] = traces[i + j];
    return determinant(g);
}

Approx refine(const FieldElement& x, const Real& eps) { return x.refine(eps); }

Approx refine(const Rational& x, const Real& eps)
{
    if (!(eps > 0))
        throw std::invalid_argument("refine needs eps > 0");
    Real v = to_real(x);
    Rational err = abs(x - to_rational(v));
    Real e = upper_real(err);
    if (e > eps)
        throw precision_error("requested accuracy exceeds the working precision");
    return Approx{v, e};
}

FieldElement parse_field_element(const Field& f, const std::string& text)
{
    if (text.find(',') == std::string::npos)
        return FieldElement(f, parse_rational(text));
    std::vector<Rational> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        coords.push_back(parse_rational(item));
    if (coords.size() > static_cast<std::size_t>(f->degree()))
        throw std::invalid_argument("too many coordinates for field of degree " +
                                    std::to_string(f->degree()));
    return FieldElement(f, coords);
}

} // namespace arithdyn
