#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rational.hpp"

namespace branchcover {

// An element of the cyclotomic field Q(zeta_n), stored as a rational
// polynomial of degree < phi(n) in zeta_n, reduced modulo the n-th
// cyclotomic polynomial.  Invariant: if the element is rational it is
// stored with order 1 (so order 2 never occurs, since Q(zeta_2) = Q).
// Equality, addition and multiplication across different orders lift
// both operands to the lcm order first.
class Cyclotomic {
public:
    Cyclotomic();                                      // zero in Q
    static Cyclotomic zero();
    static Cyclotomic one();
    static Cyclotomic from_rational(const Rational& r);
    static Cyclotomic from_integer(long long v);
    // zeta_n^k (k may be any integer; reduced mod n, then gcd-reduced so
    // that e.g. zeta_6^2 is stored as zeta_3).
    static Cyclotomic root_of_unity(unsigned long long n, long long k);
    // sum of c_k * zeta_n^{e_k} over the given (exponent, multiplicity) pairs.
    static Cyclotomic from_root_sum(
        unsigned long long n,
        const std::vector<std::pair<long long, Integer>>& terms);
    // sum of weights[i] * zeta_n^i for an integer weight vector of length n;
    // reduction stays in integer arithmetic (fast path for inner products).
    static Cyclotomic from_exponent_vector(unsigned long long n,
                                           const std::vector<long long>& weights);

    unsigned long long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // Throws invalid_input_error if not rational.
    Rational rational_value() const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    // Throws division_by_zero_error when dividing by zero.
    Cyclotomic operator/(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic inverse() const;
    Cyclotomic pow(long long e) const;
    // Applies the field automorphism zeta_n -> zeta_n^t; requires gcd(t, n) = 1.
    Cyclotomic galois(long long t) const;
    Cyclotomic conjugate() const;

    // Re-expresses the element in Q(zeta_m); m must be a multiple of order().
    Cyclotomic lifted_to(unsigned long long m) const;

    // Human-readable form like "1/2 + 3*z^2 (z = zeta_7)"; rationals render
    // as plain fractions.  parse() accepts exactly this grammar.
    std::string render() const;
    static Cyclotomic parse(const std::string& text);

    nlohmann::ordered_json to_json() const;
    static Cyclotomic from_json(const nlohmann::json& j);

private:
    Cyclotomic(unsigned long long order, std::vector<Rational> coeffs);
    void normalize();

    unsigned long long order_;
    std::vector<Rational> coeffs_;   // size phi(order_)
};

// The n-th cyclotomic polynomial as integer coefficients, constant term
// first; result has degree phi(n).  Cached internally.
const std::vector<Integer>& cyclotomic_polynomial(unsigned long long n);

} // namespace branchcover
