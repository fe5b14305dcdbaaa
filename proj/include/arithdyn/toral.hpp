// Arithmetic codings of hyperbolic toral automorphisms by the two-sided beta-compactum.
#ifndef ARITHDYN_TORAL_HPP
#define ARITHDYN_TORAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/beta_core.hpp"

namespace arithdyn {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Row-major CSV: "1,1,1,0" (m*m entries) or rows separated by ';'.
IntMatrix parse_matrix(const std::string& text);
std::string format_matrix(const IntMatrix& m);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntVector mat_vec(const IntMatrix& a, const IntVector& v);
Integer mat_det(const IntMatrix& a);
// k_1..k_m with x^m = k_1 x^{m-1} + ... + k_m the characteristic equation.
IntVector characteristic_recurrence(const IntMatrix& a);
IntMatrix companion_matrix(const IntVector& k);

class ToralAutomorphism {
public:
    // Square integer matrix with det = +-1.
    explicit ToralAutomorphism(IntMatrix m);
    // The companion matrix of an integral unit beta.
    static ToralAutomorphism companion(const Field& f);

    std::size_t dim() const { return m_.size(); }
    const IntMatrix& matrix() const { return m_; }
    const IntMatrix& inverse() const { return inv_; }
    const IntVector& recurrence() const { return k_; }
    bool is_companion() const;

    // No eigenvalue within the margin of the unit circle; `hyperbolicity_verified` is false
    // when some eigenvalue modulus is within 1e-9 of 1.
    bool hyperbolic() const { return hyperbolic_; }
    bool hyperbolicity_verified() const { return verified_; }
    // Irreducible characteristic polynomial whose only root outside the unit disc is real > 1.
    bool is_pisot() const { return field_ != nullptr; }
    const Field& field() const;
    // Eigenvector for beta normalised by v_0 = 1; (1, 1/beta, ...) for a companion matrix.
    const std::vector<FieldElement>& unstable_vector() const { return v_; }

private:
    IntMatrix m_, inv_;
    IntVector k_;
    bool hyperbolic_ = false, verified_ = false;
    Field field_;
    std::vector<FieldElement> v_;
};

// Tr(a xi) in Z for a in the power basis of Z[beta].
bool in_pisot_group(const FieldElement& xi);

// t = xi * v mod Z^m for the unstable eigenvector v.
class HomoclinicPoint {
public:
    HomoclinicPoint(ToralAutomorphism t, FieldElement xi);
    const ToralAutomorphism& automorphism() const { return t_; }
    const FieldElement& xi() const { return xi_; }
    std::vector<FieldElement> coordinates() const;   // xi * v, not reduced

private:
    ToralAutomorphism t_;
    FieldElement xi_;
};

// Digits eps_n for n in [offset, offset + digits.size()), zero elsewhere.
struct TwoSidedSeq {
    long offset = 0;
    std::vector<int> digits;

    int at(long n) const;
    TwoSidedSeq shifted() const;   // (sigma eps)_n = eps_{n+1}
    static TwoSidedSeq parse(const std::string& text);   // "0100101@-3"
    std::string to_string() const;
};

bool two_sided_admissible(const TwoSidedSeq& s, const Beta& beta);

// Point of the torus with exact coordinates in [0,1).
struct ToralPoint {
    std::vector<FieldElement> exact;
    std::vector<Real> value;
    Real error_bound;
};

ToralPoint reduce_mod_one(const std::vector<FieldElement>& x);
// sum eps_n T^{-n} t over the window, by iterating the integer matrix and its inverse.
ToralPoint homoclinic_eval(const HomoclinicPoint& t, const TwoSidedSeq& s);
// max over coordinates of the distance to the nearest integer of a - b
Real toral_distance(const ToralPoint& a, const ToralPoint& b);

struct IdentityCheck {
    Real distance;
    Real tolerance;
    bool pass = false;
};
IdentityCheck shift_commutation_check(const HomoclinicPoint& t, const TwoSidedSeq& s, const Real& tol = Real("1e-9"));
// Digitwise sum re-expanded into an admissible window; throws unresolved_error when the
// greedy expansion does not terminate within `depth` digits.
TwoSidedSeq normalize_sum(const TwoSidedSeq& a, const TwoSidedSeq& b, const Beta& beta, std::size_t depth = 512);
std::optional<TwoSidedSeq> finite_greedy(const FieldElement& x, const Beta& beta, std::size_t depth);
IdentityCheck additivity_check(const HomoclinicPoint& t, const TwoSidedSeq& a, const TwoSidedSeq& b,
                               const Real& tol = Real("1e-9"));

// |D N(xi)| for T in companion form.
Integer preimage_count(const HomoclinicPoint& t);

// Columns M n, (M^2 - k_1 M) n, ..., k_m n; checks B M_beta = M B.
IntMatrix b_matrix(const IntMatrix& m, const IntVector& n);
Integer f_form(const IntMatrix& m, const IntVector& n);

struct BacResult {
    bool found = false;      // some n with |f(n)| = 1
    IntVector n;             // witness; empty when f vanishes on the whole box
    Integer value;           // |f(n)|
    std::uint64_t scanned = 0;
};
// Exhaustive over 0 < |n|_inf <= bound, preferring small sup norm, then small l1 norm, then
// lexicographically larger n. When nothing reaches 1, `value` is only the smallest nonzero
// |f| in the box, not a proven minimum.
BacResult bac_search(const IntMatrix& m, long bound);

struct FinitaryReport {
    std::size_t samples = 0;
    std::size_t successes = 0;
    std::size_t unknown = 0;   // no witness found within the search depth
    double success_rate = 0;
};
FinitaryReport finitary_probe(const Beta& beta, std::size_t samples, const Rational& delta, std::size_t search_depth,
                              std::uint64_t seed = 1);

} // namespace arithdyn

#endif
