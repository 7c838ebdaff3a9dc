#include "fibrecount/fibre_product.hpp"

#include <algorithm>
#include <bit>

#include "fibrecount/errors.hpp"
#include "fibrecount/intmath.hpp"

namespace fibrecount {

using detail::i128;

namespace {

constexpr int kMaxCovers = 20;

i128 ipow(int64_t base, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

CurveSystem::CurveSystem(FieldRef field, std::vector<Poly> polys)
    : field_(std::move(field)), polys_(std::move(polys)) {
    if (!field_) throw validation_error("system has no field");
    if (polys_.empty()) throw validation_error("system needs at least one cover");
    if (polys_.size() > kMaxCovers) {
        throw validation_error("subset enumeration over " + std::to_string(polys_.size()) +
                               " covers is out of scope");
    }
    degrees_.reserve(polys_.size());
    for (size_t i = 0; i < polys_.size(); ++i) {
        const Poly& f = polys_[i];
        if (!f.field() || !f.field()->same_field(*field_)) {
            throw validation_error("cover " + std::to_string(i + 1) + " is over a different field");
        }
        if (f.is_zero() || f.degree() < 1) {
            throw validation_error("cover " + std::to_string(i + 1) + " must have degree >= 1");
        }
        if (!f.is_separable()) {
            throw validation_error("cover " + std::to_string(i + 1) + " is not separable");
        }
        degrees_.push_back(f.degree());
    }
    for (size_t i = 0; i < polys_.size(); ++i) {
        for (size_t j = i + 1; j < polys_.size(); ++j) {
            if (gcd(polys_[i], polys_[j]).degree() != 0) {
                throw validation_error("covers " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                       " share a factor; the product is not separable");
            }
        }
    }
}

CurveSystem make_system(FieldRef field, std::vector<Poly> polys) {
    return CurveSystem(std::move(field), std::move(polys));
}

std::pair<int, int> genus_fibre(const std::vector<int>& degrees) {
    if (degrees.empty()) throw validation_error("genus needs at least one degree");
    int64_t sum = 0;
    bool any_odd = false;
    for (int d : degrees) {
        if (d < 1) throw validation_error("degrees must be >= 1");
        sum += d;
        any_odd = any_odd || (d % 2 == 1);
    }
    int k = int(degrees.size());
    if (k == 1) return {int((degrees[0] - 1) / 2), 0};
    if (k > kMaxCovers + 2) throw validation_error("too many covers");
    int64_t half = int64_t(1) << (k - 2);
    int64_t delta = any_odd ? half : 0;
    int64_t g = half * (sum - 4) + 1 + delta;
    if (g < 0 || g > INT32_MAX) throw validation_error("genus out of range");
    return {int(g), int(delta)};
}

int geometric_infinity(const std::vector<int>& degrees) {
    if (degrees.empty()) throw validation_error("need at least one degree");
    if (degrees.size() > kMaxCovers + 2) throw validation_error("too many covers");
    bool any_odd = std::any_of(degrees.begin(), degrees.end(), [](int d) { return d % 2 == 1; });
    int k = int(degrees.size());
    return any_odd ? 1 << (k - 1) : 1 << k;
}

int64_t hws_bound(int64_t q, int g) {
    if (q < 2) throw validation_error("hws_bound needs q >= 2");
    if (g < 0) throw validation_error("hws_bound needs g >= 0");
    int64_t s = detail::isqrt_i64(q);
    int64_t two_sqrt = 2 * s;
    if (i128(two_sqrt + 1) * (two_sqrt + 1) <= i128(4) * q) ++two_sqrt;
    i128 bound = i128(q) + 1 + i128(g) * two_sqrt;
    if (bound > i128(INT64_MAX)) throw validation_error("hws_bound overflows");
    return int64_t(bound);
}

std::vector<SubsetReport> subset_reports(const CurveSystem& sys) {
    const FieldRef& field = sys.field();
    const int k = sys.k();
    const int64_t q = field->q();
    const uint32_t full = (uint32_t(1) << k) - 1;

    std::vector<SubsetReport> out(full);
    for (uint32_t mask = 1; mask <= full; ++mask) {
        SubsetReport& r = out[mask - 1];
        r.mask = mask;
        for (int i = 0; i < k; ++i) {
            if (mask & (uint32_t(1) << i)) r.d += sys.degrees()[size_t(i)];
        }
        r.genus = (r.d - 1) / 2;
    }

    if (q <= FieldSpec::kTableLimit) {
        // chi(f_I(x)) = prod_{i in I} chi(f_i(x)): one character row per
        // cover, then a subset DP per x.
        std::vector<std::vector<int8_t>> rows(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) {
            rows[size_t(i)].resize(size_t(q));
            std::vector<int64_t> flat = sys.polys()[size_t(i)].flat_coords();
            field->chi_row(flat.data(), int(flat.size()) / field->n(), rows[size_t(i)].data());
        }
        std::vector<int64_t> sums(size_t(full) + 1, 0);
        std::vector<int8_t> sign(size_t(full) + 1, 1);
        for (int64_t x = 0; x < q; ++x) {
            for (uint32_t mask = 1; mask <= full; ++mask) {
                uint32_t low = mask & (~mask + 1);
                sign[mask] = int8_t(sign[mask ^ low] * rows[size_t(std::countr_zero(low))][size_t(x)]);
                sums[mask] += sign[mask];
            }
        }
        for (uint32_t mask = 1; mask <= full; ++mask) {
            SubsetReport& r = out[mask - 1];
            r.affine = q + sums[mask];
            if (r.d % 2 == 1) {
                r.infinity = 1;
            } else {
                int chi = 1;
                for (int i = 0; i < k; ++i) {
                    if (mask & (uint32_t(1) << i)) {
                        chi *= field->quad_char(sys.polys()[size_t(i)].leading_coeff());
                    }
                }
                r.infinity = chi == 1 ? 2 : 0;
            }
            r.a = q + 1 - (r.affine + r.infinity);
        }
        return out;
    }

    // Past the char-table limit, count each product curve on its own.
    for (uint32_t mask = 1; mask <= full; ++mask) {
        SubsetReport& r = out[mask - 1];
        HyperellipticCurve c(subset_product(sys.polys(), mask));
        r.affine = affine_count(c);
        r.infinity = infinity_count(c);
        r.a = q + 1 - (r.affine + r.infinity);
    }
    return out;
}

SystemReport point_count(const CurveSystem& sys) {
    SystemReport rep;
    const FieldRef& field = sys.field();
    rep.field = field->to_string();
    rep.q = field->q();
    rep.k = sys.k();
    rep.degrees = sys.degrees();
    for (const Poly& f : sys.polys()) rep.polys.push_back(f.to_string());

    auto [g, delta] = genus_fibre(sys.degrees());
    rep.genus = g;
    rep.delta = delta;
    rep.geometric_infinity = geometric_infinity(sys.degrees());
    rep.subsets = subset_reports(sys);

    int64_t trace_sum = 0;
    int64_t genus_sum = 0;
    for (const SubsetReport& r : rep.subsets) {
        trace_sum += r.a;
        genus_sum += r.genus;
    }
    if (genus_sum != g) {
        throw internal_error("subset genus sum " + std::to_string(genus_sum) +
                             " disagrees with the product formula " + std::to_string(g));
    }
    rep.n = rep.q + 1 - trace_sum;
    rep.hws = hws_bound(rep.q, g);
    if (rep.n > rep.hws) {
        throw internal_error("count " + std::to_string(rep.n) + " exceeds the Weil-Serre bound " +
                             std::to_string(rep.hws));
    }
    return rep;
}

int64_t affine_oracle(const CurveSystem& sys) {
    const FieldRef& field = sys.field();
    const int k = sys.k();
    std::vector<std::vector<int64_t>> flats;
    std::vector<int> ncoef;
    flats.reserve(size_t(k));
    for (const Poly& f : sys.polys()) {
        flats.push_back(f.flat_coords());
        ncoef.push_back(int(flats.back().size()) / field->n());
    }
    const bool tabulated = field->q() <= FieldSpec::kTableLimit;
    const int8_t* tab = tabulated ? field->char_table().data() : nullptr;
    int64_t total = 0;

    if (field->n() == 1 && field->p() < (int64_t(1) << 31)) {
        const int64_t p = field->p();
        for (int64_t x = 0; x < p; ++x) {
            int64_t prod = 1;
            for (int i = 0; i < k && prod != 0; ++i) {
                const auto& c = flats[size_t(i)];
                int d = ncoef[size_t(i)] - 1;
                int64_t acc = c[size_t(d)];
                for (int j = d - 1; j >= 0; --j) acc = (acc * x + c[size_t(j)]) % p;
                prod *= 1 + (tab ? tab[acc] : field->raw_quad_char(&acc));
            }
            total += prod;
        }
        return total;
    }

    const int n = field->n();
    std::vector<int64_t> x(size_t(n), 0), acc(size_t(n), 0);
    std::vector<i128> scratch(size_t(2 * n - 1));
    do {
        int64_t prod = 1;
        for (int i = 0; i < k && prod != 0; ++i) {
            const auto& c = flats[size_t(i)];
            int d = ncoef[size_t(i)] - 1;
            std::copy(c.begin() + size_t(d) * n, c.begin() + size_t(d + 1) * n, acc.begin());
            for (int j = d - 1; j >= 0; --j) {
                field->raw_mul(acc.data(), x.data(), acc.data(), scratch.data());
                field->raw_add(acc.data(), c.data() + size_t(j) * n, acc.data());
            }
            prod *= 1 + (tab ? tab[field->raw_index(acc.data())] : field->raw_quad_char(acc.data()));
        }
        total += prod;
    } while (field->raw_next(x.data()));
    return total;
}

RationalInfinity rational_infinity(const CurveSystem& sys, int64_t n, int64_t affine) {
    bool all_even = std::all_of(sys.degrees().begin(), sys.degrees().end(),
                                [](int d) { return d % 2 == 0; });
    if (all_even) {
        // Frobenius fixes a point at infinity iff every y_i-coordinate sign
        // is rational, i.e. every leading coefficient is a square.
        bool all_square = true;
        for (const Poly& f : sys.polys()) {
            if (sys.field()->quad_char(f.leading_coeff()) != 1) {
                all_square = false;
                break;
            }
        }
        return {all_square ? int64_t(1) << sys.k() : 0, "direct"};
    }
    int64_t diff = n - affine;
    int geom = geometric_infinity(sys.degrees());
    if (diff < 0 || diff > geom) {
        throw internal_error("points at infinity " + std::to_string(diff) + " fall outside [0, " +
                             std::to_string(geom) + "]");
    }
    return {diff, "difference"};
}

RationalInfinity rational_infinity(const CurveSystem& sys) {
    bool all_even = std::all_of(sys.degrees().begin(), sys.degrees().end(),
                                [](int d) { return d % 2 == 0; });
    if (all_even) return rational_infinity(sys, 0, 0);
    return rational_infinity(sys, point_count(sys).n, affine_oracle(sys));
}

namespace {

// The system with every cover lifted to F_{p^m} along the prime-subfield
// embedding.
CurveSystem lift_system(const CurveSystem& sys, int m) {
    const FieldRef& base = sys.field();
    if (m == 1) return sys;
    FieldRef ext = FieldSpec::make(base->p(), m);
    std::vector<Poly> lifted;
    lifted.reserve(sys.polys().size());
    for (const Poly& f : sys.polys()) {
        std::vector<FieldElement> coeffs;
        coeffs.reserve(f.coeffs().size());
        for (const FieldElement& c : f.coeffs()) coeffs.push_back(ext->from_int(c.coords()[0]));
        lifted.emplace_back(ext, std::move(coeffs));
    }
    return CurveSystem(ext, std::move(lifted));
}

} // namespace

IsogenyReport verify_isogeny(const CurveSystem& sys) {
    const FieldRef& base = sys.field();
    if (base->n() != 1) {
        throw validation_error("isogeny verification needs a prime base field");
    }
    auto [g, delta] = genus_fibre(sys.degrees());
    (void)delta;
    int64_t q = base->q();
    if (ipow(q, std::max(g, 1)) > i128(FieldSpec::kCardinalityLimit)) {
        throw validation_error("q^g exceeds the cardinality limit");
    }

    IsogenyReport rep;
    rep.q = q;
    rep.genus = g;
    rep.geometric_infinity = geometric_infinity(sys.degrees());

    LPolynomial product = LPolynomial::one(q);
    const uint32_t full = (uint32_t(1) << sys.k()) - 1;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        Poly f_subset = subset_product(sys.polys(), mask);
        if (genus_hyper(f_subset) == 0) continue;
        product = product * l_polynomial(HyperellipticCurve(std::move(f_subset)));
    }
    if (product.genus() != g) {
        throw internal_error("product L-polynomial has genus " + std::to_string(product.genus()) +
                             ", expected " + std::to_string(g));
    }
    rep.product_coeffs = product.coeffs();

    rep.ok = true;
    for (int m = 1; m <= g; ++m) {
        IsogenyCheck chk;
        chk.m = m;
        chk.predicted = product.predicted_count(m);
        chk.affine = affine_oracle(lift_system(sys, m));
        chk.defect = chk.predicted - chk.affine;
        chk.ok = chk.defect >= 0 && chk.defect <= rep.geometric_infinity;
        rep.ok = rep.ok && chk.ok;
        rep.checks.push_back(chk);
    }
    return rep;
}

} // namespace fibrecount
