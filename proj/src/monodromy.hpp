#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "families.hpp"
#include "group.hpp"

namespace branchcover {

// A spherical system of generators: three nonidentity elements with
// x1*x2*x3 = 1 that together generate the group.  Each datum describes a
// Galois branched cover of the line with three branch points, the i-th local
// monodromy being conjugation-generated by x_i.
struct MonodromyDatum {
    std::shared_ptr<const FiniteGroup> group;
    std::array<Elt, 3> x{0, 0, 0};
};

// Orders of the three entries (branching indices), in datum order.
std::array<unsigned, 3> local_monodromy(const MonodromyDatum& datum);

// Genus of the covering curve via Riemann-Hurwitz for three branch points:
//   g = 1 - #G + (1/2) * sum_i (#G / m_i) * (m_i - 1).
// Always a nonnegative integer for a valid datum.
unsigned long genus(const MonodromyDatum& datum);

// All spherical systems of generators, ordered by (x1, x2) ascending; x3 is
// determined as (x1*x2)^-1.
std::vector<MonodromyDatum> enumerate_ssg(
    const std::shared_ptr<const FiniteGroup>& group);

// One equivalence class of data under the braid moves (which permute and
// conjugate the entries while fixing the product) together with simultaneous
// automorphisms of the group.  Two data in the same class give isomorphic
// covers.
struct HurwitzClass {
    MonodromyDatum representative; // least (x1, x2) in the class
    unsigned long orbit_size = 0;
    std::array<unsigned, 3> sorted_monodromy{0, 0, 0}; // ascending
};

// Partition of all spherical systems into equivalence classes, computed by
// breadth-first closure under the braid moves and the given automorphism
// generators; classes are sorted by representative.  The automorphism
// generators must generate a group containing all inner automorphisms or at
// least be closed enough for the intended equivalence; family instances
// provide generators of the full automorphism group.
std::vector<HurwitzClass> hurwitz_orbits(
    const std::shared_ptr<const FiniteGroup>& group,
    const std::vector<Automorphism>& aut_generators);

// Convenience overload: derives automorphism generators by brute force.
std::vector<HurwitzClass> hurwitz_orbits(
    const std::shared_ptr<const FiniteGroup>& group);

// The least datum equivalent to the given one: the representative of its
// class as produced by hurwitz_orbits with the same automorphism generators.
MonodromyDatum hurwitz_representative(
    const MonodromyDatum& datum,
    const std::vector<Automorphism>& aut_generators);

// Classifies a datum on a family group by its branching indices:
//   metacyclic: "metacyclic-main" for indices {q, n, n},
//               "metacyclic-cyclic-shadow" when every index divides n;
//   dicyclic:   "dicyclic-q44" for {q, 4, 4}, "dicyclic-2q44" for {2q, 4, 4};
//   quaternion8: "quaternion" (indices are always {4, 4, 4});
//   cyclic:     "cyclic".
// Any other pattern contradicts the structure of the family group and raises
// internal_error.
std::string classification_tag(const FamilySpec& spec,
                               const MonodromyDatum& datum);

// Evaluates a word in element labels: '*'-separated factors, each either a
// full element label or "label^exponent" with a signed integer exponent.
Elt parse_element_word(const FiniteGroup& G, const std::string& word);

// Parses "w1,w2,w3" (three element words) and validates the datum: entries
// nonidentity, product the identity, and joint generation.
MonodromyDatum parse_datum(const std::shared_ptr<const FiniteGroup>& group,
                           const std::string& literal);

// Canonical literal for a datum: the three element labels joined by commas.
std::string datum_literal(const MonodromyDatum& datum);

} // namespace branchcover
