#include "fibrecount/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "fibrecount/errors.hpp"
#include "fibrecount/intmath.hpp"

namespace fibrecount {

namespace {

using detail::i128;

constexpr int64_t kSmallPrime = int64_t{1} << 31;

int64_t norm_mod(int64_t v, int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

// ---- dense polynomial arithmetic over F_p, used only for modulus work ----

using Row = std::vector<int64_t>;

void trim(Row& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Row mulmod_poly(const Row& a, const Row& b, const Row& f, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Row prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + detail::mulmod_u64(uint64_t(a[i]), uint64_t(b[j]), uint64_t(p))) % p;
        }
    }
    // f is monic of degree n
    size_t n = f.size() - 1;
    for (size_t i = prod.size(); i-- > n;) {
        int64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (size_t j = 0; j < n; ++j) {
            int64_t t = prod[i - n + j] - int64_t(detail::mulmod_u64(uint64_t(c), uint64_t(f[j]), uint64_t(p)));
            prod[i - n + j] = norm_mod(t, p);
        }
    }
    prod.resize(n);
    trim(prod);
    return prod;
}

Row powmod_poly(Row base, uint64_t e, const Row& f, int64_t p) {
    Row r{1};
    while (e) {
        if (e & 1) r = mulmod_poly(r, base, f, p);
        base = mulmod_poly(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Row gcd_poly(Row a, Row b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        int64_t lead_inv = detail::mod_inverse_i64(b.back(), p);
        while (a.size() >= b.size()) {
            int64_t c = detail::mulmod_u64(uint64_t(a.back()), uint64_t(lead_inv), uint64_t(p));
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                int64_t t = a[shift + j] - int64_t(detail::mulmod_u64(uint64_t(c), uint64_t(b[j]), uint64_t(p)));
                a[shift + j] = norm_mod(t, p);
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

std::vector<int64_t> prime_divisors(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Lexicographically smallest monic irreducible of degree n over F_p,
// comparing coefficient vectors from the constant term upward.  Memoized:
// extension counting rebuilds the same towers over and over.
const Row& default_modulus(int64_t p, int n) {
    static std::map<std::pair<int64_t, int>, Row> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Row f(size_t(n) + 1, 0);
    f[size_t(n)] = 1;
    // Ascending lexicographic scan: c0 is the most significant position.
    std::vector<int64_t> digits(size_t(n), 0);
    for (;;) {
        for (int i = 0; i < n; ++i) f[size_t(i)] = digits[size_t(i)];
        if (poly_irreducible_mod_p(p, f)) {
            return cache.emplace(key, f).first->second;
        }
        int pos = n - 1;
        while (pos >= 0 && ++digits[size_t(pos)] == p) {
            digits[size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    throw internal_error("no irreducible polynomial found; this cannot happen");
}

} // namespace

bool poly_irreducible_mod_p(int64_t p, const std::vector<int64_t>& coeffs) {
    Row f(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) f[i] = norm_mod(coeffs[i], p);
    trim(f);
    if (f.size() < 2) return false;
    int64_t n = int64_t(f.size()) - 1;
    if (n == 1) return true;

    // Rabin: x^(p^n) == x mod f, and gcd(x^(p^(n/l)) - x, f) = 1 for all
    // prime divisors l of n.
    Row x{0, 1};
    std::vector<Row> frob(size_t(n) + 1);
    frob[1] = powmod_poly(x, uint64_t(p), f, p);
    for (int64_t j = 2; j <= n; ++j) frob[size_t(j)] = powmod_poly(frob[size_t(j - 1)], uint64_t(p), f, p);
    if (frob[size_t(n)] != x) return false;
    for (int64_t l : prime_divisors(n)) {
        Row u = frob[size_t(n / l)];
        if (u.size() < 2) u.resize(2, 0);
        u[1] = norm_mod(u[1] - 1, p);
        trim(u);
        Row g = gcd_poly(u, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

FieldSpec::FieldSpec(int64_t p, int n, std::vector<int64_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < n_; ++i) q_ *= p_;
}

FieldRef FieldSpec::make(int64_t p, int n, std::optional<std::vector<int64_t>> modulus) {
    if (p == 2) throw validation_error("characteristic 2 is not supported (curves are y^2 = f)");
    if (p < 3 || !detail::is_prime_u64(uint64_t(p))) {
        throw validation_error("field characteristic must be an odd prime, got " + std::to_string(p));
    }
    if (n < 1) throw validation_error("extension degree must be >= 1");

    // q = p^n within the native-integer budget.
    int64_t q = 1;
    for (int i = 0; i < n; ++i) {
        if (q > kCardinalityLimit / p) {
            throw validation_error("field cardinality p^n exceeds the 2^62 limit");
        }
        q *= p;
    }

    std::vector<int64_t> mod;
    if (n == 1) {
        if (modulus.has_value()) {
            throw validation_error("prime fields take no modulus");
        }
    } else if (modulus.has_value()) {
        mod = *modulus;
        if (mod.size() != size_t(n) + 1) {
            throw validation_error("modulus must have degree n: expected " + std::to_string(n + 1) +
                                   " coefficients, got " + std::to_string(mod.size()));
        }
        for (auto& c : mod) c = norm_mod(c, p);
        if (mod.back() != 1) throw validation_error("modulus must be monic");
        if (!poly_irreducible_mod_p(p, mod)) {
            throw validation_error("modulus is reducible over F_" + std::to_string(p));
        }
    } else {
        mod = default_modulus(p, n);
    }
    return FieldRef(new FieldSpec(p, n, std::move(mod)));
}

FieldRef FieldSpec::parse(std::string_view text) {
    auto fail = [&](const std::string& why) -> FieldRef {
        throw parse_error("bad field spec '" + std::string(text) + "': " + why);
    };
    auto parse_int = [](std::string_view s, int64_t& out) {
        const char* b = s.data();
        const char* e = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(b, e, out);
        return ec == std::errc() && ptr == e;
    };

    std::string_view body = text;
    std::optional<std::vector<int64_t>> modulus;
    if (auto colon = body.find(':'); colon != std::string_view::npos) {
        std::vector<int64_t> coeffs;
        std::string_view rest = body.substr(colon + 1);
        while (!rest.empty()) {
            auto comma = rest.find(',');
            std::string_view tok = rest.substr(0, comma);
            int64_t v;
            if (!parse_int(tok, v)) return fail("bad modulus coefficient '" + std::string(tok) + "'");
            coeffs.push_back(v);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (coeffs.empty()) return fail("empty modulus");
        modulus = std::move(coeffs);
        body = body.substr(0, colon);
    }

    int64_t p = 0, n = 1;
    if (auto caret = body.find('^'); caret != std::string_view::npos) {
        if (!parse_int(body.substr(0, caret), p)) return fail("bad characteristic");
        if (!parse_int(body.substr(caret + 1), n)) return fail("bad extension degree");
    } else {
        if (!parse_int(body, p)) return fail("not of the form p, p^n or p^n:c0,c1,...");
    }

    try {
        return make(p, int(n), std::move(modulus));
    } catch (const validation_error& e) {
        return fail(e.what());
    }
}

std::string FieldSpec::to_string() const {
    if (n_ == 1) return std::to_string(p_);
    std::string s = std::to_string(p_) + "^" + std::to_string(n_);
    if (modulus_ != default_modulus(p_, n_)) {
        s += ":";
        for (size_t i = 0; i < modulus_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(modulus_[i]);
        }
    }
    return s;
}

bool FieldSpec::same_field(const FieldSpec& other) const {
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
}

FieldElement FieldSpec::zero() const {
    return FieldElement(shared_from_this(), std::vector<int64_t>(size_t(n_), 0));
}

FieldElement FieldSpec::one() const { return from_int(1); }

FieldElement FieldSpec::from_int(int64_t v) const {
    std::vector<int64_t> c(size_t(n_), 0);
    c[0] = norm_mod(v, p_);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldSpec::from_coords(std::vector<int64_t> coords) const {
    if (coords.size() != size_t(n_)) {
        throw validation_error("expected " + std::to_string(n_) + " coordinates, got " +
                               std::to_string(coords.size()));
    }
    for (auto& c : coords) c = norm_mod(c, p_);
    return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement FieldSpec::element_at(uint64_t index) const {
    if (index >= uint64_t(q_)) throw validation_error("element index out of range");
    std::vector<int64_t> c(size_t(n_), 0);
    for (int i = 0; i < n_; ++i) {
        c[size_t(i)] = int64_t(index % uint64_t(p_));
        index /= uint64_t(p_);
    }
    return FieldElement(shared_from_this(), std::move(c));
}

void FieldSpec::check_owned(const FieldElement& a, const char* op) const {
    if (!a.field()) throw validation_error(std::string(op) + ": element has no field");
    if (!same_field(*a.field())) {
        throw validation_error(std::string(op) + ": mixing elements of F_" + a.field()->to_string() +
                               " and F_" + to_string());
    }
}

FieldElement FieldSpec::add(const FieldElement& a, const FieldElement& b) const {
    check_owned(a, "add");
    check_owned(b, "add");
    std::vector<int64_t> out(static_cast<size_t>(n_));
    raw_add(a.coords().data(), b.coords().data(), out.data());
    return FieldElement(shared_from_this(), std::move(out));
}

FieldElement FieldSpec::sub(const FieldElement& a, const FieldElement& b) const {
    check_owned(a, "sub");
    check_owned(b, "sub");
    std::vector<int64_t> out(static_cast<size_t>(n_));
    raw_sub(a.coords().data(), b.coords().data(), out.data());
    return FieldElement(shared_from_this(), std::move(out));
}

FieldElement FieldSpec::mul(const FieldElement& a, const FieldElement& b) const {
    check_owned(a, "mul");
    check_owned(b, "mul");
    std::vector<int64_t> out(static_cast<size_t>(n_));
    std::vector<i128> scratch(size_t(2 * n_ - 1));
    raw_mul(a.coords().data(), b.coords().data(), out.data(), scratch.data());
    return FieldElement(shared_from_this(), std::move(out));
}

FieldElement FieldSpec::neg(const FieldElement& a) const {
    check_owned(a, "neg");
    std::vector<int64_t> out(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) out[size_t(i)] = a.coords()[size_t(i)] == 0 ? 0 : p_ - a.coords()[size_t(i)];
    return FieldElement(shared_from_this(), std::move(out));
}

FieldElement FieldSpec::inv(const FieldElement& a) const {
    check_owned(a, "inv");
    if (a.is_zero()) throw validation_error("inv(0) is undefined");
    return pow(a, uint64_t(q_ - 2));
}

FieldElement FieldSpec::pow(const FieldElement& a, uint64_t e) const {
    check_owned(a, "pow");
    FieldElement r = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

int FieldSpec::quad_char(const FieldElement& a) const {
    check_owned(a, "quad_char");
    return raw_quad_char(a.coords().data());
}

std::vector<FieldElement> FieldSpec::elements() const {
    if (q_ > kTableLimit) {
        throw validation_error("refusing to materialize " + std::to_string(q_) + " field elements");
    }
    std::vector<FieldElement> out;
    out.reserve(size_t(q_));
    std::vector<int64_t> c(size_t(n_), 0);
    do {
        out.push_back(FieldElement(shared_from_this(), c));
    } while (raw_next(c.data()));
    return out;
}

const std::vector<int8_t>& FieldSpec::char_table() const {
    if (q_ > kTableLimit) {
        throw validation_error("char table for q = " + std::to_string(q_) + " exceeds the table limit");
    }
    std::call_once(char_table_once_, [this] {
        std::vector<int8_t> tab(size_t(q_), -1);
        tab[0] = 0;
        std::vector<int64_t> x(size_t(n_), 0);
        std::vector<int64_t> sq(static_cast<size_t>(n_));
        std::vector<i128> scratch(size_t(2 * n_ - 1));
        // Mark x^2 for every nonzero x; (q-1)/2 squares get +1.
        while (raw_next(x.data())) {
            raw_mul(x.data(), x.data(), sq.data(), scratch.data());
            tab[raw_index(sq.data())] = 1;
        }
        char_table_ = std::move(tab);
    });
    return char_table_;
}

// ---------------------------------------------------------------------------
// flat kernels
// ---------------------------------------------------------------------------

void FieldSpec::raw_add(const int64_t* a, const int64_t* b, int64_t* out) const {
    for (int i = 0; i < n_; ++i) {
        int64_t s = a[i] + b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldSpec::raw_sub(const int64_t* a, const int64_t* b, int64_t* out) const {
    for (int i = 0; i < n_; ++i) {
        int64_t s = a[i] - b[i];
        out[i] = s < 0 ? s + p_ : s;
    }
}

void FieldSpec::raw_mul(const int64_t* a, const int64_t* b, int64_t* out, i128* scratch) const {
    if (n_ == 1) {
        if (p_ < kSmallPrime) {
            out[0] = (a[0] * b[0]) % p_;
        } else {
            out[0] = int64_t(detail::mulmod_u64(uint64_t(a[0]), uint64_t(b[0]), uint64_t(p_)));
        }
        return;
    }
    const int n = n_;
    for (int i = 0; i < 2 * n - 1; ++i) scratch[i] = 0;
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) scratch[i + j] += i128(a[i]) * b[j];
    }
    // reduce by the monic modulus
    for (int i = 2 * n - 2; i >= n; --i) {
        int64_t c = int64_t(scratch[i] % p_);
        if (c < 0) c += p_;
        if (c == 0) continue;
        for (int j = 0; j < n; ++j) scratch[i - n + j] -= i128(c) * modulus_[size_t(j)];
    }
    for (int i = 0; i < n; ++i) {
        int64_t v = int64_t(scratch[i] % p_);
        out[i] = v < 0 ? v + p_ : v;
    }
}

bool FieldSpec::raw_is_zero(const int64_t* a) const {
    for (int i = 0; i < n_; ++i) {
        if (a[i] != 0) return false;
    }
    return true;
}

uint64_t FieldSpec::raw_index(const int64_t* a) const {
    uint64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * uint64_t(p_) + uint64_t(a[i]);
    return idx;
}

bool FieldSpec::raw_next(int64_t* a) const {
    for (int i = 0; i < n_; ++i) {
        if (++a[i] < p_) return true;
        a[i] = 0;
    }
    return false;
}

int FieldSpec::raw_quad_char(const int64_t* a) const {
    if (raw_is_zero(a)) return 0;
    // a^((q-1)/2) is +-1 for nonzero a.
    const int n = n_;
    std::vector<int64_t> base(a, a + n), acc(size_t(n), 0);
    acc[0] = 1;
    std::vector<i128> scratch(size_t(2 * n - 1));
    uint64_t e = uint64_t(q_ - 1) / 2;
    while (e) {
        if (e & 1) raw_mul(acc.data(), base.data(), acc.data(), scratch.data());
        raw_mul(base.data(), base.data(), base.data(), scratch.data());
        e >>= 1;
    }
    if (acc[0] == 1 && (n == 1 || raw_index(acc.data()) == 1)) return 1;
    if (acc[0] == p_ - 1 && (n == 1 || raw_index(acc.data()) == uint64_t(p_ - 1))) return -1;
    throw internal_error("quadratic character power was not 0 or +-1");
}

void FieldSpec::chi_row(const int64_t* coeff_coords, int num_coeffs, int8_t* out) const {
    if (num_coeffs <= 0) throw internal_error("chi_row needs at least one coefficient");
    const bool tabulated = q_ <= kTableLimit;
    const int8_t* tab = tabulated ? char_table().data() : nullptr;

    if (n_ == 1 && p_ < kSmallPrime) {
        const int64_t p = p_;
        const int d = num_coeffs - 1;
        for (int64_t x = 0; x < p; ++x) {
            int64_t acc = coeff_coords[d];
            for (int j = d - 1; j >= 0; --j) acc = (acc * x + coeff_coords[j]) % p;
            out[x] = tab ? tab[acc] : int8_t(raw_quad_char(&acc));
        }
        return;
    }

    const int n = n_;
    std::vector<int64_t> x(size_t(n), 0), acc(size_t(n), 0);
    std::vector<i128> scratch(size_t(2 * n - 1));
    const int d = num_coeffs - 1;
    uint64_t idx = 0;
    do {
        std::copy(coeff_coords + size_t(d) * n, coeff_coords + size_t(d + 1) * n, acc.begin());
        for (int j = d - 1; j >= 0; --j) {
            raw_mul(acc.data(), x.data(), acc.data(), scratch.data());
            raw_add(acc.data(), coeff_coords + size_t(j) * n, acc.data());
        }
        out[idx++] = tab ? tab[raw_index(acc.data())] : int8_t(raw_quad_char(acc.data()));
    } while (raw_next(x.data()));
}

int64_t FieldSpec::chi_sum(const int64_t* coeff_coords, int num_coeffs) const {
    if (num_coeffs <= 0) throw internal_error("chi_sum needs at least one coefficient");
    const bool tabulated = q_ <= kTableLimit;
    const int8_t* tab = tabulated ? char_table().data() : nullptr;
    int64_t sum = 0;

    if (n_ == 1 && p_ < kSmallPrime) {
        const int64_t p = p_;
        const int d = num_coeffs - 1;
        for (int64_t x = 0; x < p; ++x) {
            int64_t acc = coeff_coords[d];
            for (int j = d - 1; j >= 0; --j) acc = (acc * x + coeff_coords[j]) % p;
            sum += tab ? tab[acc] : raw_quad_char(&acc);
        }
        return sum;
    }

    const int n = n_;
    std::vector<int64_t> x(size_t(n), 0), acc(size_t(n), 0);
    std::vector<i128> scratch(size_t(2 * n - 1));
    const int d = num_coeffs - 1;
    do {
        std::copy(coeff_coords + size_t(d) * n, coeff_coords + size_t(d + 1) * n, acc.begin());
        for (int j = d - 1; j >= 0; --j) {
            raw_mul(acc.data(), x.data(), acc.data(), scratch.data());
            raw_add(acc.data(), coeff_coords + size_t(j) * n, acc.data());
        }
        sum += tab ? tab[raw_index(acc.data())] : raw_quad_char(acc.data());
    } while (raw_next(x.data()));
    return sum;
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

bool FieldElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](int64_t c) { return c == 0; });
}

uint64_t FieldElement::index() const {
    if (!field_) throw validation_error("element has no field");
    return field_->raw_index(coords_.data());
}

std::string FieldElement::to_string() const {
    if (!field_ || field_->n() == 1) return std::to_string(coords_.empty() ? 0 : coords_[0]);
    std::string s = "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(coords_[i]);
    }
    return s + "]";
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    if (!field_) throw validation_error("element has no field");
    return field_->add(*this, rhs);
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    if (!field_) throw validation_error("element has no field");
    return field_->sub(*this, rhs);
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    if (!field_) throw validation_error("element has no field");
    return field_->mul(*this, rhs);
}

FieldElement FieldElement::operator-() const {
    if (!field_) throw validation_error("element has no field");
    return field_->neg(*this);
}

FieldElement FieldElement::inverse() const {
    if (!field_) throw validation_error("element has no field");
    return field_->inv(*this);
}

FieldElement FieldElement::pow(uint64_t e) const {
    if (!field_) throw validation_error("element has no field");
    return field_->pow(*this, e);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!a.field_ || !b.field_) return !a.field_ && !b.field_;
    return a.field_->same_field(*b.field_) && a.coords_ == b.coords_;
}

} // namespace fibrecount
