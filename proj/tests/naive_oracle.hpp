#pragma once

// Brute-force references and random system generation shared by the test
// binaries.  The point counter here enumerates (x, y_1, ..., y_k) tuples
// literally, so it shares no logic with the character-sum implementation
// it checks.

#include <cstdint>
#include <optional>
#include <vector>

#include "fibrecount/errors.hpp"
#include "fibrecount/fibre_product.hpp"
#include "fibrecount/intmath.hpp"
#include "fibrecount/poly.hpp"

namespace testutil {

// Number of affine solutions of y_i^2 = f_i(x), counted one tuple at a time.
inline int64_t naive_affine_count(const fibrecount::CurveSystem& sys) {
    const fibrecount::FieldRef& field = sys.field();
    int64_t q = field->q();
    int k = sys.k();

    // index -> index of the square, so the inner loops are array lookups
    std::vector<int64_t> sq(static_cast<size_t>(q));
    for (int64_t i = 0; i < q; ++i) {
        fibrecount::FieldElement e = field->element_at(i);
        sq[size_t(i)] = field->mul(e, e).index();
    }

    int64_t count = 0;
    std::vector<int64_t> target(static_cast<size_t>(k));
    std::vector<int64_t> y(static_cast<size_t>(k), 0);
    for (int64_t xi = 0; xi < q; ++xi) {
        fibrecount::FieldElement x = field->element_at(xi);
        for (int i = 0; i < k; ++i) target[size_t(i)] = sys.polys()[size_t(i)].eval(x).index();

        std::fill(y.begin(), y.end(), 0);
        while (true) {
            bool all = true;
            for (int i = 0; i < k; ++i) {
                if (sq[size_t(y[size_t(i)])] != target[size_t(i)]) {
                    all = false;
                    break;
                }
            }
            if (all) ++count;

            int pos = 0;
            while (pos < k && ++y[size_t(pos)] == q) {
                y[size_t(pos)] = 0;
                ++pos;
            }
            if (pos == k) break;
        }
    }
    return count;
}

struct SystemSpec {
    std::vector<int> degrees;
    bool square_lc = false; // force square leading coefficients
};

// Draw one valid system (pairwise coprime covers, separable product) by
// rejection; returns nothing if the budget runs out, which for the q >= 5
// fields used in tests never happens in practice.
inline std::optional<fibrecount::CurveSystem> random_system(const fibrecount::FieldRef& field,
                                                            const SystemSpec& spec,
                                                            fibrecount::detail::SplitMix64& rng,
                                                            int attempts = 1000) {
    int64_t q = field->q();
    for (int tries = 0; tries < attempts; ++tries) {
        std::vector<fibrecount::Poly> polys;
        for (int d : spec.degrees) {
            std::vector<fibrecount::FieldElement> coeffs;
            for (int i = 0; i < d; ++i)
                coeffs.push_back(field->element_at(int64_t(rng.below(uint64_t(q)))));
            // leading coefficient: nonzero, optionally a square
            while (true) {
                fibrecount::FieldElement lc = field->element_at(int64_t(rng.below(uint64_t(q))));
                if (lc.is_zero()) continue;
                if (spec.square_lc && field->quad_char(lc) != 1) continue;
                coeffs.push_back(lc);
                break;
            }
            polys.emplace_back(field, std::move(coeffs));
        }
        try {
            return fibrecount::CurveSystem(field, std::move(polys));
        } catch (const fibrecount::validation_error&) {
            continue;
        }
    }
    return std::nullopt;
}

// Degree vector generator for the property-test batches.
inline SystemSpec random_spec(fibrecount::detail::SplitMix64& rng, int max_k, int max_degree,
                              bool all_even = false, bool square_lc = false) {
    SystemSpec spec;
    spec.square_lc = square_lc;
    int k = 1 + int(rng.below(uint64_t(max_k)));
    for (int i = 0; i < k; ++i) {
        int d = 1 + int(rng.below(uint64_t(max_degree)));
        if (all_even) {
            d += d % 2;
            if (d > max_degree) d -= 2;
            if (d < 2) d = 2;
        }
        spec.degrees.push_back(d);
    }
    return spec;
}

inline const std::vector<int64_t>& small_prime_powers() {
    static const std::vector<int64_t> qs{5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};
    return qs;
}

inline fibrecount::FieldRef field_for(int64_t q) {
    using fibrecount::FieldSpec;
    switch (q) {
        case 9: return FieldSpec::make(3, 2);
        case 25: return FieldSpec::make(5, 2);
        case 27: return FieldSpec::make(3, 3);
        case 49: return FieldSpec::make(7, 2);
        default: return FieldSpec::make(q, 1);
    }
}

} // namespace testutil
