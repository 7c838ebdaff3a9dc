#include "fibrecount/intmath.hpp"

#include <cmath>
#include <initializer_list>

namespace fibrecount::detail {

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This base set is a proven deterministic witness set for n < 2^64.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

int64_t isqrt_i64(int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

int64_t mod_inverse_i64(int64_t a, int64_t p) {
    int64_t t = 0, new_t = 1;
    int64_t r = p, new_r = a % p;
    if (new_r < 0) new_r += p;
    while (new_r != 0) {
        int64_t qt = r / new_r;
        int64_t tmp = t - qt * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - qt * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return t;
}

} // namespace fibrecount::detail
