#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace branchcover {

// Elementary number theory over machine integers.  Arguments are small (group
// orders, cyclotomic orders, search primes); everything is exact.

unsigned long long gcd_ull(unsigned long long a, unsigned long long b);
unsigned long long lcm_ull(unsigned long long a, unsigned long long b);

bool is_prime(unsigned long long n);
std::vector<std::pair<unsigned long long, unsigned>> factorize(unsigned long long n);
std::vector<unsigned long long> divisors(unsigned long long n);
unsigned long long euler_phi(unsigned long long n);

unsigned long long pow_mod(unsigned long long base, unsigned long long exp,
                           unsigned long long mod);
unsigned long long inv_mod(unsigned long long a, unsigned long long mod);

// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
unsigned long long multiplicative_order(unsigned long long a, unsigned long long n);

// Least generator of (Z/p)^* for prime p.
unsigned long long primitive_root(unsigned long long p);

// Least prime p = 1 (mod m) with p > bound.
unsigned long long least_prime_1_mod(unsigned long long m, unsigned long long bound);

// Least k >= 2 of multiplicative order exactly n modulo prime q; returns 0 if none.
unsigned long long least_element_of_order(unsigned long long n, unsigned long long q);

} // namespace branchcover
