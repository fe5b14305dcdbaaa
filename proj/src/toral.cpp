#include "arithdyn/toral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace arithdyn {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

Integer parse_integer(const std::string& text)
{
    std::string t = trim(text);
    if (t.empty())
        throw std::invalid_argument("empty matrix entry");
    try {
        return Integer(t);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad matrix entry '" + t + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

void check_square(const IntMatrix& a)
{
    if (a.empty())
        throw std::invalid_argument("matrix is empty");
    for (const auto& row : a)
        if (row.size() != a.size())
            throw std::invalid_argument("matrix is not square");
}

IntMatrix integer_inverse(const IntMatrix& a)
{
    const std::size_t m = a.size();
    std::vector<std::vector<Rational>> w(m, std::vector<Rational>(2 * m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            w[i][j] = a[i][j];
        w[i][m + i] = 1;
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        while (p < m && w[p][c] == 0)
            ++p;
        if (p == m)
            throw std::invalid_argument("matrix is singular");
        std::swap(w[p], w[c]);
        Rational piv = w[c][c];
        for (auto& x : w[c])
            x /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c || w[r][c] == 0)
                continue;
            Rational f = w[r][c];
            for (std::size_t j = 0; j < 2 * m; ++j)
                w[r][j] -= f * w[c][j];
        }
    }
    IntMatrix inv(m, IntVector(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const Rational& x = w[i][m + j];
            if (x.get_den() != 1)
                throw std::invalid_argument("matrix inverse is not integral");
            inv[i][j] = x.get_num();
        }
    return inv;
}

std::vector<FieldElement> act(const IntMatrix& a, const std::vector<FieldElement>& v)
{
    std::vector<FieldElement> out;
    for (const auto& row : a) {
        FieldElement s(v[0].field(), 0);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0)
                s += v[j] * Rational(row[j]);
        out.push_back(std::move(s));
    }
    return out;
}

// Kernel vector of (M - beta I) with first coordinate 1.
std::vector<FieldElement> eigenvector(const IntMatrix& a, const Field& f)
{
    const std::size_t m = a.size();
    FieldElement beta = FieldElement::generator(f);
    // unknowns v_1..v_{m-1}; equation i: sum_{j>=1} (a_ij - beta d_ij) v_j = -(a_i0 - beta d_i0)
    std::vector<std::vector<FieldElement>> w(m, std::vector<FieldElement>(m, FieldElement(f, 0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 1; j < m; ++j)
            w[i][j - 1] = FieldElement(f, Rational(a[i][j])) - (i == j ? beta : FieldElement(f, 0));
        w[i][m - 1] = -(FieldElement(f, Rational(a[i][0])) - (i == 0 ? beta : FieldElement(f, 0)));
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_row(m - 1, m);
    for (std::size_t c = 0; c + 1 < m && row < m; ++c) {
        std::size_t p = row;
        while (p < m && w[p][c].is_zero())
            ++p;
        if (p == m)
            continue;
        std::swap(w[p], w[row]);
        FieldElement inv = w[row][c].inverse();
        for (auto& x : w[row])
            x *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || w[r][c].is_zero())
                continue;
            FieldElement fac = w[r][c];
            for (std::size_t j = c; j < m; ++j)
                w[r][j] -= fac * w[row][j];
        }
        pivot_row[c] = row++;
    }
    std::vector<FieldElement> v{FieldElement(f, 1)};
    for (std::size_t c = 0; c + 1 < m; ++c) {
        if (pivot_row[c] == m)
            throw std::logic_error("eigenspace of beta is not one-dimensional");
        v.push_back(w[pivot_row[c]][m - 1]);
    }
    return v;
}

FieldElement frac(const FieldElement& x)
{
    return x - Rational(x.floor());
}

} // namespace

IntMatrix parse_matrix(const std::string& text)
{
    IntMatrix m;
    if (text.find(';') != std::string::npos) {
        for (const auto& row : split(text, ';')) {
            IntVector r;
            for (const auto& e : split(row, ','))
                r.push_back(parse_integer(e));
            m.push_back(std::move(r));
        }
    } else {
        IntVector flat;
        for (const auto& e : split(text, ','))
            flat.push_back(parse_integer(e));
        std::size_t k = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
        if (k * k != flat.size())
            throw std::invalid_argument("matrix needs a square number of entries");
        for (std::size_t i = 0; i < k; ++i)
            m.emplace_back(flat.begin() + i * k, flat.begin() + (i + 1) * k);
    }
    check_square(m);
    return m;
}

std::string format_matrix(const IntMatrix& m)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i)
            out += ';';
        for (std::size_t j = 0; j < m[i].size(); ++j)
            out += (j ? "," : "") + m[i][j].get_str();
    }
    return out;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b)
{
    if (a.empty() || a[0].size() != b.size())
        throw std::invalid_argument("matrix shapes do not match");
    IntMatrix c(a.size(), IntVector(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < b[0].size(); ++j)
                    c[i][j] += a[i][k] * b[k][j];
    return c;
}

IntVector mat_vec(const IntMatrix& a, const IntVector& v)
{
    IntVector out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != v.size())
            throw std::invalid_argument("matrix and vector shapes do not match");
        for (std::size_t j = 0; j < v.size(); ++j)
            out[i] += a[i][j] * v[j];
    }
    return out;
}

Integer mat_det(const IntMatrix& a)
{
    check_square(a);
    // Bareiss fraction-free elimination
    IntMatrix w = a;
    const std::size_t m = w.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (w[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < m && w[p][k] == 0)
                ++p;
            if (p == m)
                return 0;
            std::swap(w[p], w[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i)
            for (std::size_t j = k + 1; j < m; ++j)
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
        prev = w[k][k];
    }
    return sign * w[m - 1][m - 1];
}

IntVector characteristic_recurrence(const IntMatrix& a)
{
    check_square(a);
    // Faddeev-LeVerrier: p(x) = x^m + c_{m-1} x^{m-1} + ... + c_0
    const std::size_t m = a.size();
    IntVector c(m + 1, 0);
    c[m] = 1;
    IntMatrix mk(m, IntVector(m, 0));
    for (std::size_t k = 1; k <= m; ++k) {
        IntMatrix prod = mat_mul(a, mk);
        for (std::size_t i = 0; i < m; ++i)
            prod[i][i] += c[m - k + 1];
        mk = prod;
        IntMatrix am = mat_mul(a, mk);
        Integer tr = 0;
        for (std::size_t i = 0; i < m; ++i)
            tr += am[i][i];
        c[m - k] = -tr / Integer(static_cast<long>(k));
    }
    IntVector rec(m);
    for (std::size_t i = 1; i <= m; ++i)
        rec[i - 1] = -c[m - i];
    return rec;
}

IntMatrix companion_matrix(const IntVector& k)
{
    const std::size_t m = k.size();
    if (m == 0)
        throw std::invalid_argument("empty recurrence");
    IntMatrix c(m, IntVector(m, 0));
    c[0] = k;
    for (std::size_t i = 1; i < m; ++i)
        c[i][i - 1] = 1;
    return c;
}

ToralAutomorphism::ToralAutomorphism(IntMatrix m) : m_(std::move(m))
{
    check_square(m_);
    if (m_.size() < 2)
        throw std::invalid_argument("toral automorphisms need dimension at least 2");
    Integer d = mat_det(m_);
    if (d != 1 && d != -1)
        throw std::invalid_argument("matrix determinant is " + d.get_str() + ", not +-1");
    inv_ = integer_inverse(m_);
    k_ = characteristic_recurrence(m_);

    const std::size_t dim = m_.size();
    Poly p(dim + 1);
    for (std::size_t i = 1; i <= dim; ++i)
        p[dim - i] = -Rational(k_[i - 1]);
    p[dim] = 1;
    const long double margin = 1e-9L;
    hyperbolic_ = true;
    verified_ = true;
    int outside = 0;
    bool outside_real_positive = false;
    for (const auto& z : complex_roots(p)) {
        long double r = std::abs(z);
        if (std::abs(r - 1) <= margin)
            verified_ = false;
        if (r > 1) {
            ++outside;
            outside_real_positive = z.real() > 1 && std::abs(z.imag()) <= margin;
        }
    }
    hyperbolic_ = verified_;
    if (hyperbolic_ && outside == 1 && outside_real_positive) {
        try {
            field_ = make_field(p);
        } catch (const std::exception&) {
            field_.reset();   // reducible or out of range: not a Pisot automorphism
        }
    }
    if (field_)
        v_ = eigenvector(m_, field_);
}

ToralAutomorphism ToralAutomorphism::companion(const Field& f)
{
    const Poly& p = f->coefficients();
    const std::size_t m = p.size() - 1;
    IntVector k(m);
    for (std::size_t i = 1; i <= m; ++i) {
        Rational c = -p[m - i];
        if (c.get_den() != 1)
            throw std::invalid_argument("beta is not an algebraic integer");
        k[i - 1] = c.get_num();
    }
    return ToralAutomorphism(companion_matrix(k));
}

bool ToralAutomorphism::is_companion() const
{
    return m_ == companion_matrix(k_);
}

const Field& ToralAutomorphism::field() const
{
    if (!field_)
        throw std::invalid_argument("automorphism is not Pisot");
    return field_;
}

bool in_pisot_group(const FieldElement& xi)
{
    FieldElement b = FieldElement::generator(xi.field());
    FieldElement a(xi.field(), 1);
    for (int j = 0; j < xi.degree(); ++j) {
        if ((a * xi).trace().get_den() != 1)
            return false;
        a *= b;
    }
    return true;
}

HomoclinicPoint::HomoclinicPoint(ToralAutomorphism t, FieldElement xi) : t_(std::move(t)), xi_(std::move(xi))
{
    if (!(*xi_.field() == *t_.field()))
        throw std::invalid_argument("xi lives in a different field");
    for (const auto& vi : t_.unstable_vector())
        if (!in_pisot_group(xi_ * vi))
            throw std::invalid_argument("point " + xi_.to_string() + " is not homoclinic");
}

std::vector<FieldElement> HomoclinicPoint::coordinates() const
{
    std::vector<FieldElement> c;
    for (const auto& vi : t_.unstable_vector())
        c.push_back(xi_ * vi);
    return c;
}

int TwoSidedSeq::at(long n) const
{
    long i = n - offset;
    if (i < 0 || i >= static_cast<long>(digits.size()))
        return 0;
    return digits[i];
}

TwoSidedSeq TwoSidedSeq::shifted() const
{
    return TwoSidedSeq{offset - 1, digits};
}

TwoSidedSeq TwoSidedSeq::parse(const std::string& text)
{
    TwoSidedSeq s;
    std::string body = trim(text);
    auto at = body.find('@');
    if (at != std::string::npos) {
        try {
            std::size_t used = 0;
            s.offset = std::stol(body.substr(at + 1), &used);
            if (used != body.size() - at - 1)
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad window offset in '" + text + "'");
        }
        body = body.substr(0, at);
    }
    for (char ch : body) {
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("bad digit '" + std::string(1, ch) + "' in window");
        s.digits.push_back(ch - '0');
    }
    return s;
}

std::string TwoSidedSeq::to_string() const
{
    std::string out;
    for (int d : digits)
        out += static_cast<char>('0' + d);
    return out + "@" + std::to_string(offset);
}

bool two_sided_admissible(const TwoSidedSeq& s, const Beta& beta)
{
    for (int d : s.digits)
        if (d < 0 || d > beta.max_digit())
            return false;
    return is_parry_admissible(DigitSeq::finite(s.digits, beta.max_digit()), expansion_of_one(beta));
}

ToralPoint reduce_mod_one(const std::vector<FieldElement>& x)
{
    ToralPoint p;
    for (const auto& c : x) {
        p.exact.push_back(frac(c));
        p.value.push_back(p.exact.back().to_real());
    }
    p.error_bound = Real("1e-45");
    return p;
}

ToralPoint homoclinic_eval(const HomoclinicPoint& t, const TwoSidedSeq& s)
{
    const ToralAutomorphism& a = t.automorphism();
    std::vector<FieldElement> w = t.coordinates();   // T^0 t
    const Field& f = a.field();
    std::vector<FieldElement> sum(a.dim(), FieldElement(f, 0));
    if (s.digits.empty())
        return reduce_mod_one(sum);
    for (long n = 0; n < s.offset; ++n)
        w = act(a.inverse(), w);
    for (long n = 0; n > s.offset; --n)
        w = act(a.matrix(), w);
    for (std::size_t i = 0; i < s.digits.size(); ++i) {
        if (s.digits[i] != 0)
            for (std::size_t j = 0; j < sum.size(); ++j)
                sum[j] += w[j] * Rational(s.digits[i]);
        if (i + 1 < s.digits.size())
            w = act(a.inverse(), w);
    }
    return reduce_mod_one(sum);
}

Real toral_distance(const ToralPoint& a, const ToralPoint& b)
{
    if (a.exact.size() != b.exact.size())
        throw std::invalid_argument("points have different dimensions");
    Real d = 0;
    for (std::size_t i = 0; i < a.exact.size(); ++i) {
        Real x = frac(a.exact[i] - b.exact[i]).to_real();
        d = max(d, min(x, Real(1 - x)));
    }
    return d;
}

IdentityCheck shift_commutation_check(const HomoclinicPoint& t, const TwoSidedSeq& s, const Real& tol)
{
    ToralPoint lhs = homoclinic_eval(t, s.shifted());
    ToralPoint rhs = reduce_mod_one(act(t.automorphism().matrix(), homoclinic_eval(t, s).exact));
    IdentityCheck c{toral_distance(lhs, rhs), tol};
    c.pass = c.distance <= tol;
    return c;
}

std::optional<TwoSidedSeq> finite_greedy(const FieldElement& x, const Beta& beta, std::size_t depth)
{
    if (x.sign() < 0)
        throw std::domain_error("greedy expansion needs x >= 0");
    if (x.is_zero())
        return TwoSidedSeq{};
    FieldElement b = beta.element();
    FieldElement bk(x.field(), 1);   // beta^K
    long K = 0;
    while (x >= bk) {
        bk *= b;
        ++K;
    }
    FieldElement binv = b.inverse();
    while (x < bk * binv) {
        bk *= binv;
        --K;
    }
    DigitSeq d = greedy_expand(x / bk, beta, depth);
    if (d.kind() != DigitSeq::Kind::finite)
        return std::nullopt;
    return TwoSidedSeq{1 - K, d.preperiod()};
}

TwoSidedSeq normalize_sum(const TwoSidedSeq& a, const TwoSidedSeq& b, const Beta& beta, std::size_t depth)
{
    FieldElement binv = beta.element().inverse();
    FieldElement x(beta.field(), 0);
    for (const TwoSidedSeq* s : {&a, &b})
        for (std::size_t i = 0; i < s->digits.size(); ++i)
            if (s->digits[i])
                x += binv.pow(s->offset + static_cast<long>(i)) * Rational(s->digits[i]);
    auto out = finite_greedy(x, beta, depth);
    if (!out)
        throw unresolved_error("sum has no finite expansion within " + std::to_string(depth) + " digits");
    return *out;
}

IdentityCheck additivity_check(const HomoclinicPoint& t, const TwoSidedSeq& a, const TwoSidedSeq& b, const Real& tol)
{
    Beta beta = Beta::algebraic(t.automorphism().field());
    TwoSidedSeq s = normalize_sum(a, b, beta);
    ToralPoint lhs = homoclinic_eval(t, s);
    ToralPoint ha = homoclinic_eval(t, a), hb = homoclinic_eval(t, b);
    std::vector<FieldElement> sum;
    for (std::size_t i = 0; i < ha.exact.size(); ++i)
        sum.push_back(ha.exact[i] + hb.exact[i]);
    IdentityCheck c{toral_distance(lhs, reduce_mod_one(sum)), tol};
    c.pass = c.distance <= tol;
    return c;
}

Integer preimage_count(const HomoclinicPoint& t)
{
    if (!t.automorphism().is_companion())
        throw std::invalid_argument("preimage count needs the companion matrix");
    Rational k = discriminant(t.xi().field()) * t.xi().norm();
    if (k.get_den() != 1)
        throw std::domain_error("|D N(xi)| = " + k.get_str() + " is not an integer");
    return abs(k.get_num());
}

IntMatrix b_matrix(const IntMatrix& m, const IntVector& n)
{
    check_square(m);
    const std::size_t dim = m.size();
    if (n.size() != dim)
        throw std::invalid_argument("vector has the wrong dimension");
    IntVector k = characteristic_recurrence(m);
    std::vector<IntVector> cols{mat_vec(m, n)};
    for (std::size_t j = 1; j + 1 < dim; ++j) {
        IntVector next = mat_vec(m, cols.back());
        for (std::size_t i = 0; i < dim; ++i)
            next[i] -= k[j - 1] * cols[0][i];
        cols.push_back(std::move(next));
    }
    IntVector last(dim);
    for (std::size_t i = 0; i < dim; ++i)
        last[i] = k[dim - 1] * n[i];
    cols.push_back(std::move(last));
    IntMatrix b(dim, IntVector(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            b[i][j] = cols[j][i];
    if (mat_mul(b, companion_matrix(k)) != mat_mul(m, b))
        throw std::logic_error("B M_beta != M B");
    return b;
}

Integer f_form(const IntMatrix& m, const IntVector& n)
{
    return mat_det(b_matrix(m, n));
}

BacResult bac_search(const IntMatrix& m, long bound)
{
    if (bound < 1)
        throw std::invalid_argument("bound must be at least 1");
    check_square(m);
    const std::size_t dim = m.size();
    BacResult best;
    auto better = [](const IntVector& a, const IntVector& b) {
        Integer sa = 0, sb = 0, la = 0, lb = 0;
        for (const auto& x : a) {
            sa = std::max<Integer>(sa, abs(x));
            la += abs(x);
        }
        for (const auto& x : b) {
            sb = std::max<Integer>(sb, abs(x));
            lb += abs(x);
        }
        if (sa != sb)
            return sa < sb;
        if (la != lb)
            return la < lb;
        return a > b;
    };
    IntVector n(dim, -bound);
    for (;;) {
        // f(-n) = +-f(n): scan only n whose first nonzero coordinate is positive
        auto first = std::find_if(n.begin(), n.end(), [](const Integer& x) { return x != 0; });
        if (first != n.end() && *first > 0) {
            ++best.scanned;
            Integer v = abs(f_form(m, n));
            if (v != 0) {
                bool take = best.n.empty() || v < best.value || (v == best.value && better(n, best.n));
                if (take) {
                    best.n = n;
                    best.value = v;
                }
            }
        }
        std::size_t i = dim;
        while (i > 0 && n[i - 1] == bound)
            n[--i] = -bound;
        if (i == 0)
            break;
        ++n[i - 1];
    }
    best.found = !best.n.empty() && best.value == 1;
    return best;
}

FinitaryReport finitary_probe(const Beta& beta, std::size_t samples, const Rational& delta, std::size_t search_depth,
                              std::uint64_t seed)
{
    if (!beta.is_algebraic() || !beta.field()->is_integral())
        throw std::invalid_argument("finitary probe needs an algebraic integer base");
    if (delta <= 0)
        throw std::invalid_argument("delta must be positive");
    const Field& f = beta.field();
    FieldElement b = beta.element(), binv = b.inverse();
    FieldElement small(f, 1);
    while (small >= FieldElement(f, delta))
        small *= binv;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-4, 4);
    FinitaryReport r;
    r.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        FieldElement x(f, 0);
        do {
            std::vector<Rational> c(f->degree());
            for (auto& v : c)
                v = coef(rng);
            x = FieldElement(f, c);
        } while (x.sign() <= 0);
        bool ok = false;
        FieldElement cand = small;
        for (int j = 0; j < 8 && !ok; ++j, cand *= binv)
            ok = finite_greedy(cand, beta, search_depth) && finite_greedy(x + cand, beta, search_depth);
        if (ok)
            ++r.successes;
        else
            ++r.unknown;
    }
    r.success_rate = samples ? static_cast<double>(r.successes) / samples : 0;
    return r;
}

} // namespace arithdyn
