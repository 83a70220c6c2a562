#include "numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace branchcover {

unsigned long long gcd_ull(unsigned long long a, unsigned long long b) {
    return std::gcd(a, b);
}

unsigned long long lcm_ull(unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

bool is_prime(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<unsigned long long, unsigned>> factorize(unsigned long long n) {
    require(n >= 1, "factorize: argument must be positive");
    std::vector<std::pair<unsigned long long, unsigned>> out;
    for (unsigned long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<unsigned long long> divisors(unsigned long long n) {
    std::vector<unsigned long long> out{1};
    for (auto [p, e] : factorize(n)) {
        size_t base = out.size();
        unsigned long long pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned long long euler_phi(unsigned long long n) {
    require(n >= 1, "euler_phi: argument must be positive");
    unsigned long long r = n;
    for (auto [p, e] : factorize(n)) {
        (void)e;
        r -= r / p;
    }
    return r;
}

unsigned long long pow_mod(unsigned long long base, unsigned long long exp,
                           unsigned long long mod) {
    ensure(mod >= 1, "pow_mod: modulus must be positive");
    unsigned long long r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = static_cast<unsigned long long>(
            static_cast<unsigned __int128>(r) * base % mod);
        base = static_cast<unsigned long long>(
            static_cast<unsigned __int128>(base) * base % mod);
        exp >>= 1;
    }
    return r;
}

unsigned long long inv_mod(unsigned long long a, unsigned long long mod) {
    a %= mod;
    ensure(std::gcd(a, mod) == 1, "inv_mod: argument not invertible");
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(mod), newr = static_cast<long long>(a);
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (t < 0) t += static_cast<long long>(mod);
    return static_cast<unsigned long long>(t);
}

unsigned long long multiplicative_order(unsigned long long a, unsigned long long n) {
    require(n >= 1, "multiplicative_order: modulus must be positive");
    require(std::gcd(a % n, n) == 1, "multiplicative_order: gcd(a, n) must be 1");
    if (n == 1) return 1;
    // The order divides phi(n); test divisors in increasing order.
    unsigned long long phi = euler_phi(n);
    for (unsigned long long d : divisors(phi))
        if (pow_mod(a, d, n) == 1) return d;
    ensure(false, "multiplicative_order: no divisor of phi(n) worked");
    return 0;
}

unsigned long long primitive_root(unsigned long long p) {
    require(is_prime(p), "primitive_root: modulus must be prime");
    if (p == 2) return 1;
    auto factors = factorize(p - 1);
    for (unsigned long long g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : factors) {
            (void)e;
            if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    ensure(false, "primitive_root: none found");
    return 0;
}

unsigned long long least_prime_1_mod(unsigned long long m, unsigned long long bound) {
    require(m >= 1, "least_prime_1_mod: modulus must be positive");
    unsigned long long p = (bound / m) * m + 1;
    if (p <= bound) p += m;
    for (;; p += m)
        if (is_prime(p)) return p;
}

unsigned long long least_element_of_order(unsigned long long n, unsigned long long q) {
    for (unsigned long long k = 2; k < q; ++k)
        if (multiplicative_order(k, q) == n) return k;
    return 0;
}

} // namespace branchcover
