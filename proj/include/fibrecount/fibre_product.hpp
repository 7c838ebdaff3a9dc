#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibrecount/field.hpp"
#include "fibrecount/hyperelliptic.hpp"
#include "fibrecount/poly.hpp"

namespace fibrecount {

// The fibre product of the hyperelliptic covers y_i^2 = f_i(x), i = 1..k,
// of the projective line.  Valid only when f_1 * ... * f_k is separable.
class CurveSystem {
  public:
    CurveSystem(FieldRef field, std::vector<Poly> polys);

    const FieldRef& field() const { return field_; }
    const std::vector<Poly>& polys() const { return polys_; }
    const std::vector<int>& degrees() const { return degrees_; }
    int k() const { return int(polys_.size()); }

  private:
    FieldRef field_;
    std::vector<Poly> polys_;
    std::vector<int> degrees_;
};

CurveSystem make_system(FieldRef field, std::vector<Poly> polys);

// Genus of the full fibre product and the parity correction delta:
// for k >= 2, g = 2^(k-2) (d_1 + ... + d_k - 4) + 1 + delta with
// delta = 2^(k-2) when some d_i is odd, else 0.  k = 1 is the plain
// hyperelliptic genus floor((d-1)/2), delta = 0.
std::pair<int, int> genus_fibre(const std::vector<int>& degrees);

// Points at infinity of the nonsingular model over the algebraic closure:
// 2^(k-1) when some degree is odd, else 2^k.
int geometric_infinity(const std::vector<int>& degrees);

// Serre's refinement of the Weil bound: q + 1 + g * floor(2 sqrt(q)).
int64_t hws_bound(int64_t q, int g);

// One row per non-empty subset I of the k covers, keyed by bitmask
// (bit i selects f_{i+1}).
struct SubsetReport {
    uint32_t mask = 0;
    int d = 0;        // deg f_I
    int genus = 0;    // floor((d-1)/2)
    int64_t affine = 0;
    int infinity = 0; // points at infinity of C_I, in {0,1,2}
    int64_t a = 0;    // q + 1 - |C_I(F_q)|

    bool operator==(const SubsetReport&) const = default;
};

struct RationalInfinity {
    int64_t count = 0;
    std::string method; // "direct" or "difference"

    bool operator==(const RationalInfinity&) const = default;
};

struct SystemReport {
    std::string field;
    int64_t q = 0;
    int k = 0;
    std::vector<int> degrees;
    std::vector<std::string> polys;
    int genus = 0;
    int delta = 0;
    int geometric_infinity = 0;
    int64_t n = 0; // q + 1 - sum of subset traces
    int64_t hws = 0;
    std::vector<SubsetReport> subsets;
    std::optional<int64_t> affine_oracle;
    std::optional<RationalInfinity> rational_infinity;

    bool operator==(const SystemReport&) const = default;
};

// All 2^k - 1 subset rows.  Character values are computed once per cover
// and combined multiplicatively per subset; past the char-table limit this
// falls back to counting each product curve directly.
std::vector<SubsetReport> subset_reports(const CurveSystem& sys);

// The headline count N = q + 1 - sum_I A_I with genus, bound, and the
// per-subset decomposition.  Oracle fields are left unset.
SystemReport point_count(const CurveSystem& sys);

// Independent affine count: sum over x in F_q of prod_i (1 + chi(f_i(x))),
// which equals the number of solutions of the full system in F_q^(k+1).
int64_t affine_oracle(const CurveSystem& sys);

// Rational points at infinity on the nonsingular model.  All degrees even:
// decided directly from the leading coefficients.  Otherwise derived as
// N - affine_oracle, which must land in [0, geometric_infinity].
RationalInfinity rational_infinity(const CurveSystem& sys);
RationalInfinity rational_infinity(const CurveSystem& sys, int64_t n, int64_t affine);

// Numerical check that the Jacobian of the fibre product splits into the
// product of the subset-curve Jacobians: the product of the subset
// L-polynomials must predict |C(F_{q^m})| up to points at infinity.
struct IsogenyCheck {
    int m = 0;
    int64_t predicted = 0; // q^m + 1 - p_m of the product L-polynomial
    int64_t affine = 0;    // affine count of the system over F_{q^m}
    int64_t defect = 0;    // predicted - affine
    bool ok = false;       // defect in [0, geometric_infinity]
};

struct IsogenyReport {
    int64_t q = 0;
    int genus = 0;
    int geometric_infinity = 0;
    std::vector<int64_t> product_coeffs;
    std::vector<IsogenyCheck> checks; // m = 1..g
    bool ok = false;
};

IsogenyReport verify_isogeny(const CurveSystem& sys);

} // namespace fibrecount
