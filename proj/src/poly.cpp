#include "fibrecount/poly.hpp"

#include <algorithm>
#include <charconv>

#include "fibrecount/errors.hpp"

namespace fibrecount {

namespace {

void require_field(const FieldRef& f, const char* what) {
    if (!f) throw validation_error(std::string(what) + ": polynomial has no field");
}

void require_same(const Poly& a, const Poly& b, const char* what) {
    require_field(a.field(), what);
    require_field(b.field(), what);
    if (!a.field()->same_field(*b.field())) {
        throw validation_error(std::string(what) + ": polynomials over different fields");
    }
}

bool parse_i64(std::string_view s, int64_t& out) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos) return false;
    s = s.substr(b, e - b + 1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

Poly::Poly(FieldRef field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    require_field(field_, "Poly");
    for (const auto& c : coeffs_) {
        if (!c.field() || !c.field()->same_field(*field_)) {
            throw validation_error("Poly: coefficient from a different field");
        }
    }
    normalize();
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::from_ints(const FieldRef& field, const std::vector<int64_t>& coeffs) {
    require_field(field, "from_ints");
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (int64_t v : coeffs) c.push_back(field->from_int(v));
    return Poly(field, std::move(c));
}

Poly Poly::zero(FieldRef field) { return Poly(std::move(field), {}); }

Poly Poly::parse(const FieldRef& field, std::string_view text) {
    require_field(field, "parse");
    auto fail = [&](const std::string& why) -> Poly {
        throw parse_error("bad polynomial '" + std::string(text) + "': " + why);
    };

    // Split on commas outside brackets.
    std::vector<std::string_view> tokens;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            tokens.push_back(text.substr(start, i - start));
            start = i + 1;
        } else if (text[i] == '[') {
            ++depth;
        } else if (text[i] == ']') {
            if (--depth < 0) return fail("unbalanced ']'");
        }
    }
    if (depth != 0) return fail("unbalanced '['");
    if (tokens.size() == 1 && tokens[0].find_first_not_of(" \t") == std::string_view::npos) {
        return fail("empty coefficient list");
    }

    std::vector<FieldElement> coeffs;
    for (std::string_view tok : tokens) {
        size_t b = tok.find_first_not_of(" \t");
        if (b == std::string_view::npos) return fail("empty coefficient");
        size_t e = tok.find_last_not_of(" \t");
        std::string_view body = tok.substr(b, e - b + 1);
        if (body.front() == '[') {
            if (body.back() != ']') return fail("bad coordinates '" + std::string(body) + "'");
            std::string_view inner = body.substr(1, body.size() - 2);
            std::vector<int64_t> coords;
            size_t pos = 0;
            while (pos <= inner.size()) {
                size_t comma = inner.find(',', pos);
                std::string_view piece =
                    inner.substr(pos, comma == std::string_view::npos ? inner.size() - pos : comma - pos);
                int64_t v;
                if (!parse_i64(piece, v)) return fail("bad coordinate '" + std::string(piece) + "'");
                coords.push_back(v);
                if (comma == std::string_view::npos) break;
                pos = comma + 1;
            }
            if (coords.size() != size_t(field->n())) {
                return fail("coordinate count " + std::to_string(coords.size()) + " does not match field degree " +
                            std::to_string(field->n()));
            }
            coeffs.push_back(field->from_coords(std::move(coords)));
        } else {
            int64_t v;
            if (!parse_i64(body, v)) return fail("bad coefficient '" + std::string(body) + "'");
            coeffs.push_back(field->from_int(v));
        }
    }
    return Poly(field, std::move(coeffs));
}

int Poly::degree() const {
    if (coeffs_.empty()) throw validation_error("the zero polynomial has no degree");
    return int(coeffs_.size()) - 1;
}

FieldElement Poly::leading_coeff() const {
    if (coeffs_.empty()) throw validation_error("the zero polynomial has no leading coefficient");
    return coeffs_.back();
}

FieldElement Poly::coeff(size_t i) const {
    require_field(field_, "coeff");
    return i < coeffs_.size() ? coeffs_[i] : field_->zero();
}

FieldElement Poly::eval(const FieldElement& x) const {
    require_field(field_, "eval");
    if (!x.field() || !x.field()->same_field(*field_)) {
        throw validation_error("eval: point from a different field");
    }
    FieldElement acc = field_->zero();
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Poly Poly::derivative() const {
    require_field(field_, "derivative");
    std::vector<FieldElement> out;
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        out.push_back(field_->from_int(int64_t(i)) * coeffs_[i]);
    }
    return Poly(field_, std::move(out));
}

Poly Poly::monic() const {
    FieldElement lc = leading_coeff();
    if (lc == field_->one()) return *this;
    FieldElement inv = lc.inverse();
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c * inv);
    return Poly(field_, std::move(out));
}

bool Poly::is_separable() const {
    if (is_zero()) throw validation_error("is_separable: zero polynomial");
    Poly d = derivative();
    if (d.is_zero()) return degree() == 0;
    return gcd(*this, d).degree() == 0;
}

Poly Poly::operator+(const Poly& rhs) const {
    require_same(*this, rhs, "add");
    std::vector<FieldElement> out;
    size_t m = std::max(coeffs_.size(), rhs.coeffs_.size());
    out.reserve(m);
    for (size_t i = 0; i < m; ++i) out.push_back(coeff(i) + rhs.coeff(i));
    return Poly(field_, std::move(out));
}

Poly Poly::operator-(const Poly& rhs) const {
    require_same(*this, rhs, "sub");
    std::vector<FieldElement> out;
    size_t m = std::max(coeffs_.size(), rhs.coeffs_.size());
    out.reserve(m);
    for (size_t i = 0; i < m; ++i) out.push_back(coeff(i) - rhs.coeff(i));
    return Poly(field_, std::move(out));
}

Poly Poly::operator*(const Poly& rhs) const {
    require_same(*this, rhs, "mul");
    if (is_zero() || rhs.is_zero()) return Poly(field_, {});
    std::vector<FieldElement> out(coeffs_.size() + rhs.coeffs_.size() - 1, field_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] = out[i + j] + coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Poly(field_, std::move(out));
}

bool Poly::operator==(const Poly& rhs) const {
    if (!field_ || !rhs.field_) return !field_ && !rhs.field_;
    return field_->same_field(*rhs.field_) && coeffs_ == rhs.coeffs_;
}

std::string Poly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ",";
        s += coeffs_[i].to_string();
    }
    return s;
}

std::string Poly::pretty() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        const FieldElement& c = coeffs_[i];
        if (c.is_zero() && coeffs_.size() > 1) continue;
        if (!s.empty()) s += " + ";
        bool unit = c.index() == 1;
        if (i == 0) {
            s += c.to_string();
        } else {
            if (!unit) s += c.to_string();
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

std::vector<int64_t> Poly::flat_coords() const {
    require_field(field_, "flat_coords");
    const int n = field_->n();
    std::vector<int64_t> out;
    if (coeffs_.empty()) {
        out.assign(size_t(n), 0);
        return out;
    }
    out.reserve(coeffs_.size() * size_t(n));
    for (const auto& c : coeffs_) {
        out.insert(out.end(), c.coords().begin(), c.coords().end());
    }
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    require_same(f, g, "divmod");
    if (g.is_zero()) throw validation_error("division by the zero polynomial");
    const FieldRef& field = f.field();
    if (f.is_zero() || f.coeffs().size() < g.coeffs().size()) {
        return {Poly::zero(field), f};
    }
    std::vector<FieldElement> rem(f.coeffs());
    size_t dq = f.coeffs().size() - g.coeffs().size();
    std::vector<FieldElement> quot(dq + 1, field->zero());
    FieldElement lead_inv = g.leading_coeff().inverse();
    for (size_t i = dq + 1; i-- > 0;) {
        FieldElement c = rem[i + g.coeffs().size() - 1] * lead_inv;
        quot[i] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < g.coeffs().size(); ++j) {
            rem[i + j] = rem[i + j] - c * g.coeffs()[j];
        }
    }
    return {Poly(field, std::move(quot)), Poly(field, std::move(rem))};
}

Poly gcd(const Poly& f, const Poly& g) {
    require_same(f, g, "gcd");
    if (f.is_zero() && g.is_zero()) throw validation_error("gcd(0, 0) is undefined");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly subset_product(const std::vector<Poly>& fs, uint32_t mask) {
    if (mask == 0) throw validation_error("subset_product: empty subset");
    if (fs.empty()) throw validation_error("subset_product: no polynomials");
    if (fs.size() < 32 && (mask >> fs.size()) != 0) {
        throw validation_error("subset_product: subset selects out-of-range polynomials");
    }
    Poly prod;
    bool first = true;
    for (size_t i = 0; i < fs.size(); ++i) {
        if (!(mask & (uint32_t(1) << i))) continue;
        prod = first ? fs[i] : prod * fs[i];
        first = false;
    }
    return prod;
}

} // namespace fibrecount
