// Exact arithmetic in real number fields Q(beta) and certified real approximations.
#ifndef ARITHDYN_EXACTNUM_HPP
#define ARITHDYN_EXACTNUM_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

#include "arithdyn/errors.hpp"

namespace arithdyn {

using Integer = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float_50;

inline constexpr int real_digits = 50;
inline constexpr int print_digits = 12;

// Value with a guaranteed error bound: the true number lies in value +- error_bound.
struct Approx {
    Real value;
    Real error_bound;

    bool contains(const Real& x) const { return abs(x - value) <= error_bound; }
};

Real to_real(const Rational& q);
Rational to_rational(const Real& x);   // exact value of the binary float
Rational parse_rational(const std::string& text);   // "3/2", "-7", "1.9", "2.5e-3"
std::string format_real(const Real& x, int digits = print_digits);
Integer floor_rational(const Rational& q);
Integer ceil_rational(const Rational& q);

// Polynomial helpers; coefficient vectors are stored low degree first.
using Poly = std::vector<Rational>;
void poly_trim(Poly& p);
Rational poly_eval(const Poly& p, const Rational& x);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);
// Number of distinct real roots in (a, b].
int sturm_count(const Poly& p, const Rational& a, const Rational& b);
std::vector<std::complex<long double>> complex_roots(const Poly& p);

// Monic polynomial with a designated real root beta > 1 isolated by [lo, hi].
class MinimalPolynomial {
public:
    // coeffs = c_0, ..., c_{m-1}, 1. Throws if the root interval is invalid or the
    // polynomial is reducible. Above degree 6 the caller must pass assume_irreducible.
    MinimalPolynomial(Poly coeffs, Rational lo, Rational hi, bool assume_irreducible = false);

    // Isolates the largest real root, which must exceed 1.
    static MinimalPolynomial largest_root(Poly coeffs, bool assume_irreducible = false);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Poly& coefficients() const { return coeffs_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool irreducibility_verified() const { return verified_; }
    bool is_integral() const;   // all coefficients integers, i.e. beta is an algebraic integer

    // Isolating interval of width at most 2^-bits.
    std::pair<Rational, Rational> root_interval(unsigned bits) const;
    Real root_value() const;
    std::vector<std::complex<long double>> conjugates() const;

    bool operator==(const MinimalPolynomial& other) const;

private:
    struct Stage {
        unsigned bits;
        Rational lo, hi;
        std::vector<Rational> lo_pow, hi_pow;
    };
    friend class FieldElement;

    Stage make_stage(Rational lo, Rational hi, unsigned bits) const;
    void bisect(Rational& lo, Rational& hi, unsigned bits) const;

    Poly coeffs_;
    Rational lo_, hi_;
    bool verified_ = false;
    std::vector<Stage> stages_;
};

using Field = std::shared_ptr<const MinimalPolynomial>;

Field make_field(Poly coeffs, bool assume_irreducible = false);
Field make_field(Poly coeffs, Rational lo, Rational hi, bool assume_irreducible = false);
Field rational_field(const Rational& r);   // Q with designated element r, r > 1
Field golden_field();       // x^2 - x - 1
Field tribonacci_field();   // x^3 - x^2 - x - 1
Field plastic_field();      // x^3 - x - 1
Field named_field(const std::string& name);   // golden | tribonacci | plastic

// Element of Q(beta) in the power basis 1, beta, ..., beta^{m-1}.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(Field f);
    FieldElement(Field f, std::vector<Rational> coords);
    FieldElement(Field f, const Rational& r);
    FieldElement(Field f, long r) : FieldElement(std::move(f), Rational(r)) {}
    FieldElement(Field f, int r) : FieldElement(std::move(f), Rational(r)) {}

    static FieldElement generator(const Field& f);

    const Field& field() const { return field_; }
    const std::vector<Rational>& coords() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()); }

    bool is_zero() const;
    bool is_rational() const;
    bool is_integral() const;   // coordinates all integers (element of Z[beta])
    int sign() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement& operator*=(const Rational& r);
    FieldElement inverse() const;
    FieldElement pow(long e) const;

    std::vector<std::vector<Rational>> mult_matrix() const;
    Rational norm() const;
    Rational trace() const;

    // Rational interval containing the element, using the 2^-bits root interval.
    std::pair<Rational, Rational> enclosure(unsigned bits) const;
    Approx refine(const Real& eps) const;
    Real to_real() const;
    Integer floor() const;

    std::string to_string() const;

private:
    void check_same(const FieldElement& o) const;
    std::pair<Rational, Rational> enclose_stage(const MinimalPolynomial::Stage& s) const;

    Field field_;
    std::vector<Rational> c_;
};

FieldElement operator+(FieldElement a, const FieldElement& b);
FieldElement operator-(FieldElement a, const FieldElement& b);
FieldElement operator*(FieldElement a, const FieldElement& b);
FieldElement operator/(FieldElement a, const FieldElement& b);
FieldElement operator+(FieldElement a, const Rational& b);
FieldElement operator-(FieldElement a, const Rational& b);
FieldElement operator*(FieldElement a, const Rational& b);
FieldElement operator*(const Rational& b, FieldElement a);

int compare(const FieldElement& a, const FieldElement& b);
inline bool operator==(const FieldElement& a, const FieldElement& b) { return compare(a, b) == 0; }
inline bool operator!=(const FieldElement& a, const FieldElement& b) { return compare(a, b) != 0; }
inline bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
inline bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }
inline bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) > 0; }
inline bool operator>=(const FieldElement& a, const FieldElement& b) { return compare(a, b) >= 0; }

// Strict weak ordering on coordinates, for orbit sets (not the real order).
struct CoordLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const;
};

enum class ArithOp { add, sub, mul, div };
FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);

Rational discriminant(const Field& f);
Approx refine(const FieldElement& x, const Real& eps);
Approx refine(const Rational& x, const Real& eps);

// Parses "a0,a1,...,a_{m-1}" coordinates or a rational into the field.
FieldElement parse_field_element(const Field& f, const std::string& text);

// Exact determinant over the rationals.
Rational determinant(std::vector<std::vector<Rational>> m);

} // namespace arithdyn

#endif
