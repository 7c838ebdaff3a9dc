#pragma once

#include <cstdint>
#include <vector>

#include "fibrecount/field.hpp"
#include "fibrecount/poly.hpp"

namespace fibrecount {

// Genus of y^2 = f for separable f: floor((deg f - 1) / 2).
int genus_hyper(const Poly& f);

// A hyperelliptic curve y^2 = f(x) with f separable of degree >= 1,
// in the smooth projective model.
class HyperellipticCurve {
  public:
    explicit HyperellipticCurve(Poly f);

    const Poly& f() const { return f_; }
    const FieldRef& field() const { return f_.field(); }
    int genus() const { return genus_; }

  private:
    Poly f_;
    int genus_ = 0;
};

// Number of affine points (x, y) in F_q^2 with y^2 = f(x).
int64_t affine_count(const HyperellipticCurve& c);

// Points at infinity of the smooth model: 1 for odd degree; for even degree
// 2 when the leading coefficient is a square, else 0.
int infinity_count(const HyperellipticCurve& c);

// A = q + 1 - |C(F_q)| with the infinity points included.
int64_t trace_A(const HyperellipticCurve& c);

// |C(F_{q^m})| by lifting the coefficients along the prime-subfield
// embedding.  Requires a prime base field and p^m within the cardinality
// limit.
int64_t count_over_extension(const HyperellipticCurve& c, int m);

// Traces a_j = q^j + 1 - |C(F_{q^j})| for j = 1..m_max.  Each entry is
// checked against the Weil bound |a_j| <= 2g q^(j/2).
struct TraceSequence {
    int64_t q = 0;
    int genus = 0;
    std::vector<int64_t> values; // a_1 .. a_m
};

TraceSequence trace_sequence(const HyperellipticCurve& c, int m_max);

// Numerator of the zeta function: an integer polynomial
// L(T) = 1 + c_1 T + ... + c_2g T^2g whose reciprocal roots are the
// Frobenius eigenvalues.  Validated on construction: c_2g = q^g, the
// functional equation c_{2g-i} = q^(g-i) c_i, and Weil-bounded power sums.
class LPolynomial {
  public:
    LPolynomial(int64_t q, int genus, std::vector<int64_t> coeffs);

    static LPolynomial one(int64_t q); // genus 0, L = 1

    int64_t q() const { return q_; }
    int genus() const { return genus_; }
    const std::vector<int64_t>& coeffs() const { return coeffs_; }

    // Power sums p_1..p_m of the reciprocal roots via the Newton recursion
    // run forward.
    std::vector<int64_t> power_sums(int m_max) const;

    // q^m + 1 - p_m: the point count this L-polynomial predicts.
    int64_t predicted_count(int m) const;

    // L(1), the group order of the Jacobian over F_q.
    int64_t jacobian_order() const;

    // Product with an L-polynomial over the same field; genus adds.
    LPolynomial operator*(const LPolynomial& rhs) const;

    bool operator==(const LPolynomial& rhs) const {
        return q_ == rhs.q_ && coeffs_ == rhs.coeffs_;
    }

  private:
    int64_t q_ = 0;
    int genus_ = 0;
    std::vector<int64_t> coeffs_; // c_0 .. c_2g, ascending
};

// Fit from traces a_1..a_g by Newton's identities in exact integer
// arithmetic, then complete with the functional equation.  Prime base
// field, genus >= 1, q^genus within the cardinality limit.
LPolynomial l_polynomial(const HyperellipticCurve& c);

} // namespace fibrecount
