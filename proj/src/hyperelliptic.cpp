#include "fibrecount/hyperelliptic.hpp"

#include <cmath>

#include "fibrecount/errors.hpp"
#include "fibrecount/intmath.hpp"

namespace fibrecount {

using detail::i128;

namespace {

int64_t checked_i64(i128 v, const char* what) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
        throw validation_error(std::string(what) + " exceeds the native integer range");
    }
    return int64_t(v);
}

i128 ipow(int64_t base, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// |p_j| <= 2 g q^(j/2), with a hair of slack for the floating comparison.
void check_weil(int64_t q, int genus, const std::vector<int64_t>& sums, const char* what) {
    long double root = std::sqrt((long double)q);
    long double bound = 2.0L * genus;
    for (size_t j = 0; j < sums.size(); ++j) {
        bound *= root;
        if (std::fabs((long double)sums[j]) > bound * (1.0L + 1e-9L) + 1e-6L) {
            throw validation_error(std::string(what) + ": power sum p_" + std::to_string(j + 1) +
                                   " = " + std::to_string(sums[j]) + " violates the Weil bound");
        }
    }
}

} // namespace

int genus_hyper(const Poly& f) {
    if (f.is_zero() || f.degree() < 1) {
        throw validation_error("genus needs a polynomial of degree >= 1");
    }
    return (f.degree() - 1) / 2;
}

HyperellipticCurve::HyperellipticCurve(Poly f) : f_(std::move(f)) {
    if (f_.is_zero() || f_.degree() < 1) {
        throw validation_error("curve right-hand side must have degree >= 1");
    }
    if (!f_.is_separable()) {
        throw validation_error("curve right-hand side must be separable");
    }
    genus_ = genus_hyper(f_);
}

int64_t affine_count(const HyperellipticCurve& c) {
    const FieldRef& field = c.field();
    std::vector<int64_t> flat = c.f().flat_coords();
    int num = int(flat.size()) / field->n();
    return field->q() + field->chi_sum(flat.data(), num);
}

int infinity_count(const HyperellipticCurve& c) {
    if (c.f().degree() % 2 == 1) return 1;
    return c.field()->quad_char(c.f().leading_coeff()) == 1 ? 2 : 0;
}

int64_t trace_A(const HyperellipticCurve& c) {
    return c.field()->q() + 1 - (affine_count(c) + infinity_count(c));
}

int64_t count_over_extension(const HyperellipticCurve& c, int m) {
    const FieldRef& base = c.field();
    if (base->n() != 1) {
        throw validation_error("extension counting needs a prime base field");
    }
    if (m < 1) throw validation_error("extension degree must be >= 1");

    if (m == 1) return affine_count(c) + infinity_count(c);

    int64_t p = base->p();
    i128 qm = ipow(p, m);
    if (qm > i128(FieldSpec::kCardinalityLimit)) {
        throw validation_error("extension cardinality exceeds the 2^62 limit");
    }
    FieldRef ext = FieldSpec::make(p, m);

    std::vector<FieldElement> lifted;
    lifted.reserve(c.f().coeffs().size());
    for (const auto& coef : c.f().coeffs()) lifted.push_back(ext->from_int(coef.coords()[0]));
    Poly f_ext(ext, std::move(lifted));

    std::vector<int64_t> flat = f_ext.flat_coords();
    int num = int(flat.size()) / ext->n();
    int64_t affine = ext->q() + ext->chi_sum(flat.data(), num);

    int inf;
    if (f_ext.degree() % 2 == 1) {
        inf = 1;
    } else {
        inf = ext->quad_char(f_ext.leading_coeff()) == 1 ? 2 : 0;
    }
    return affine + inf;
}

TraceSequence trace_sequence(const HyperellipticCurve& c, int m_max) {
    if (m_max < 1) throw validation_error("trace sequence needs m >= 1");
    TraceSequence t;
    t.q = c.field()->q();
    t.genus = c.genus();
    t.values.reserve(size_t(m_max));
    for (int m = 1; m <= m_max; ++m) {
        i128 qm = ipow(t.q, m);
        i128 a = qm + 1 - i128(count_over_extension(c, m));
        t.values.push_back(checked_i64(a, "trace"));
    }
    check_weil(t.q, t.genus, t.values, "trace sequence");
    return t;
}

// ---------------------------------------------------------------------------
// LPolynomial
// ---------------------------------------------------------------------------

LPolynomial::LPolynomial(int64_t q, int genus, std::vector<int64_t> coeffs)
    : q_(q), genus_(genus), coeffs_(std::move(coeffs)) {
    if (q_ < 3) throw validation_error("L-polynomial needs q >= 3");
    if (genus_ < 0 || coeffs_.size() != size_t(2 * genus_) + 1) {
        throw validation_error("L-polynomial must have exactly 2g+1 coefficients");
    }
    if (coeffs_[0] != 1) throw validation_error("L-polynomial must have constant term 1");
    for (int i = 0; i <= genus_; ++i) {
        i128 expect = ipow(q_, genus_ - i) * coeffs_[size_t(i)];
        if (i128(coeffs_[size_t(2 * genus_ - i)]) != expect) {
            throw validation_error("L-polynomial violates the functional equation at index " +
                                   std::to_string(i));
        }
    }
    check_weil(q_, genus_, power_sums(std::max(2 * genus_, 1)), "L-polynomial");
}

LPolynomial LPolynomial::one(int64_t q) { return LPolynomial(q, 0, {1}); }

std::vector<int64_t> LPolynomial::power_sums(int m_max) const {
    std::vector<int64_t> p;
    p.reserve(size_t(m_max));
    for (int m = 1; m <= m_max; ++m) {
        i128 s = 0;
        if (m <= 2 * genus_) s += i128(m) * coeffs_[size_t(m)];
        for (int i = 1; i < m; ++i) {
            if (i <= 2 * genus_) s += i128(coeffs_[size_t(i)]) * p[size_t(m - i - 1)];
        }
        p.push_back(checked_i64(-s, "power sum"));
    }
    return p;
}

int64_t LPolynomial::predicted_count(int m) const {
    if (m < 1) throw validation_error("predicted_count needs m >= 1");
    std::vector<int64_t> p = power_sums(m);
    i128 n = ipow(q_, m) + 1 - i128(p[size_t(m - 1)]);
    return checked_i64(n, "predicted count");
}

int64_t LPolynomial::jacobian_order() const {
    i128 s = 0;
    for (int64_t c : coeffs_) s += c;
    int64_t v = checked_i64(s, "Jacobian order");
    if (v <= 0) throw internal_error("L(1) must be positive");
    return v;
}

LPolynomial LPolynomial::operator*(const LPolynomial& rhs) const {
    if (q_ != rhs.q_) throw validation_error("cannot multiply L-polynomials over different fields");
    std::vector<i128> prod(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            prod[i + j] += i128(coeffs_[i]) * rhs.coeffs_[j];
        }
    }
    std::vector<int64_t> out;
    out.reserve(prod.size());
    for (i128 v : prod) out.push_back(checked_i64(v, "L-polynomial product coefficient"));
    return LPolynomial(q_, genus_ + rhs.genus_, std::move(out));
}

LPolynomial l_polynomial(const HyperellipticCurve& c) {
    const FieldRef& base = c.field();
    if (base->n() != 1) throw validation_error("L-polynomial extraction needs a prime base field");
    int g = c.genus();
    if (g < 1) throw validation_error("L-polynomial extraction needs genus >= 1");
    if (ipow(base->q(), g) > i128(FieldSpec::kCardinalityLimit)) {
        throw validation_error("q^g exceeds the cardinality limit");
    }

    TraceSequence t = trace_sequence(c, g);
    int64_t q = base->q();

    std::vector<int64_t> coef(size_t(2 * g) + 1, 0);
    coef[0] = 1;
    for (int m = 1; m <= g; ++m) {
        i128 s = t.values[size_t(m - 1)];
        for (int i = 1; i < m; ++i) s += i128(coef[size_t(i)]) * t.values[size_t(m - i - 1)];
        if (s % m != 0) {
            throw internal_error("Newton recursion produced a fractional coefficient at m = " +
                                 std::to_string(m) + "; the underlying counts are inconsistent");
        }
        coef[size_t(m)] = checked_i64(-s / m, "L-polynomial coefficient");
    }
    for (int i = g - 1; i >= 0; --i) {
        coef[size_t(2 * g - i)] = checked_i64(ipow(q, g - i) * coef[size_t(i)], "L-polynomial coefficient");
    }
    return LPolynomial(q, g, std::move(coef));
}

} // namespace fibrecount
