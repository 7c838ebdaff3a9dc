#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibrecount/field.hpp"

namespace fibrecount {

// Dense univariate polynomial over a fixed field, coefficients stored in
// ascending order (constant term first).  Always normalized: no trailing
// zero coefficients, so the zero polynomial has an empty coefficient list.
// The zero polynomial has no degree; accessors that need one throw instead
// of returning a sentinel that could leak into arithmetic.
class Poly {
  public:
    Poly() = default;
    Poly(FieldRef field, std::vector<FieldElement> coeffs);

    static Poly from_ints(const FieldRef& field, const std::vector<int64_t>& coeffs);
    static Poly zero(FieldRef field);

    // Text format: comma-separated ascending coefficients.  Each coefficient
    // is an integer, or [c0,c1,...] coordinates for extension fields.
    static Poly parse(const FieldRef& field, std::string_view text);

    const FieldRef& field() const { return field_; }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const;                    // throws on the zero polynomial
    FieldElement leading_coeff() const;    // throws on the zero polynomial
    FieldElement coeff(size_t i) const;    // zero beyond the stored range

    FieldElement eval(const FieldElement& x) const;
    Poly derivative() const;
    Poly monic() const;                    // throws on the zero polynomial
    bool is_separable() const;             // throws on the zero polynomial

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    std::string to_string() const;         // round-trips through parse
    std::string pretty() const;            // "x^4 + x^3 + 16x^2 + 15x + 1"

    // Coefficients flattened to coordinate rows for FieldSpec::chi_row.
    // The zero polynomial yields one all-zero row.
    std::vector<int64_t> flat_coords() const;

  private:
    void normalize();
    FieldRef field_;
    std::vector<FieldElement> coeffs_;
};

// Quotient and remainder with g != 0.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);

// Monic gcd; rejects two zero inputs.
Poly gcd(const Poly& f, const Poly& g);

// Product over the subset of fs selected by mask (bit i selects fs[i]).
// The mask must be nonzero and within range.
Poly subset_product(const std::vector<Poly>& fs, uint32_t mask);

} // namespace fibrecount
