#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibrecount {

class FieldSpec;
using FieldRef = std::shared_ptr<const FieldSpec>;

// An element of F_q in the power basis of the field's modulus: n residues
// mod p, constant coordinate first.  Elements remember their field; mixing
// elements of structurally different fields is an error, never a coercion.
class FieldElement {
public:
    FieldElement() = default;

    const FieldRef& field() const { return field_; }
    const std::vector<int64_t>& coords() const { return coords_; }
    bool is_zero() const;
    // Position in the enumeration order (constant coordinate fastest).
    uint64_t index() const;
    // "7" for prime fields, "[c0,c1,...]" otherwise.
    std::string to_string() const;

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(uint64_t e) const;

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    friend class FieldSpec;
    FieldElement(FieldRef f, std::vector<int64_t> c) : field_(std::move(f)), coords_(std::move(c)) {}

    FieldRef field_;
    std::vector<int64_t> coords_;
};

// F_q, q = p^n, p an odd prime.  For n >= 2 the field carries a monic
// irreducible modulus of degree n over F_p (ascending coefficients).
// Immutable after construction; operations are pure and thread-safe.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    // All counting arithmetic stays in native 64-bit integers; any request
    // with q^m beyond this errors out instead of switching to big integers.
    static constexpr int64_t kCardinalityLimit = int64_t{1} << 62;
    // Largest q for which a char table / element vector is materialized.
    static constexpr int64_t kTableLimit = int64_t{1} << 25;

    // No modulus given with n >= 2 selects the lexicographically smallest
    // monic irreducible (coefficients compared from the constant term up),
    // so runs are reproducible.
    static FieldRef make(int64_t p, int n, std::optional<std::vector<int64_t>> modulus = std::nullopt);

    // Text format: "17", "13^2", "5^2:1,1,1" (explicit ascending modulus).
    static FieldRef parse(std::string_view text);

    int64_t p() const { return p_; }
    int n() const { return n_; }
    int64_t q() const { return q_; }
    const std::vector<int64_t>& modulus() const { return modulus_; } // empty when n == 1
    std::string to_string() const;

    // Structural identity; the compatibility test for arithmetic.
    bool same_field(const FieldSpec& other) const;

    FieldElement zero() const;
    FieldElement one() const;
    // Embeds v via the prime subfield (reduces mod p, accepts negatives).
    FieldElement from_int(int64_t v) const;
    // Coordinates are reduced mod p; must have exactly n entries.
    FieldElement from_coords(std::vector<int64_t> coords) const;
    FieldElement element_at(uint64_t index) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, uint64_t e) const;

    // 0 for zero, +1 for nonzero squares, -1 otherwise: a^((q-1)/2).
    int quad_char(const FieldElement& a) const;

    // All q elements in enumeration order.  Materializes; q <= kTableLimit.
    std::vector<FieldElement> elements() const;

    // char value per enumeration index; built once, cached.
    const std::vector<int8_t>& char_table() const;

    // --- flat kernels used by the counting and search loops -------------
    //
    // Coordinate buffers are length n, ascending.  None of these allocate.

    void raw_add(const int64_t* a, const int64_t* b, int64_t* out) const;
    void raw_sub(const int64_t* a, const int64_t* b, int64_t* out) const;
    // scratch must hold 2n-1 i128 slots; out may alias a or b.
    void raw_mul(const int64_t* a, const int64_t* b, int64_t* out, __int128* scratch) const;
    bool raw_is_zero(const int64_t* a) const;
    uint64_t raw_index(const int64_t* a) const;
    // Odometer step in enumeration order; returns false after the last
    // element wraps back to zero.
    bool raw_next(int64_t* a) const;
    int raw_quad_char(const int64_t* a) const; // pow path, allocates scratch internally

    // chi_row fills out[i] = quad_char(f(x_i)) for every element x_i in
    // enumeration order; f is given by num_coeffs ascending coefficients as
    // flat coordinate rows of length n.  chi_sum returns the sum of that row
    // without materializing it.  Both are O(q * deg) field operations.
    void chi_row(const int64_t* coeff_coords, int num_coeffs, int8_t* out) const;
    int64_t chi_sum(const int64_t* coeff_coords, int num_coeffs) const;

    ~FieldSpec() = default;

private:
    FieldSpec(int64_t p, int n, std::vector<int64_t> modulus);

    void check_owned(const FieldElement& a, const char* op) const;

    int64_t p_ = 0;
    int n_ = 1;
    int64_t q_ = 0;
    std::vector<int64_t> modulus_; // size n_+1 when n_ >= 2, monic

    mutable std::once_flag char_table_once_;
    mutable std::vector<int8_t> char_table_;
};

// True when f (ascending coefficients over F_p, not necessarily monic after
// reduction) is irreducible of degree n over F_p.  Exposed for tests.
bool poly_irreducible_mod_p(int64_t p, const std::vector<int64_t>& coeffs);

} // namespace fibrecount
