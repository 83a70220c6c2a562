#pragma once

#include <memory>
#include <string>
#include <vector>

#include "chartable.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace branchcover {

// The built-in group families.  "metacyclic" is the split extension of Z/q by
// Z/n in which the Z/n generator acts by multiplication by k (an element of
// multiplicative order exactly n mod the odd prime q).  "dicyclic" has order
// 4q with presentation a^q = b^4 = 1, b^-1 a b = a^-1 (q an odd prime).
enum class FamilyKind { metacyclic, dicyclic, quaternion8, cyclic };

struct FamilySpec {
    FamilyKind kind = FamilyKind::cyclic;
    unsigned long q = 0; // odd prime parameter (metacyclic, dicyclic)
    unsigned long n = 0; // acting order (metacyclic) or cyclic order
    unsigned long k = 0; // resolved multiplier (metacyclic), 0 elsewhere

    // Grammar: "metacyclic:q=7,n=3[,k=2]", "dicyclic:q=5", "quaternion8",
    // "cyclic:n=9".  An omitted k resolves to the least element of order n
    // mod q.  Violated parameter conditions are named in the error message.
    static FamilySpec parse(const std::string& text);
    std::string to_string() const; // canonical form, resolved k included

    unsigned long group_order() const;
};

// Orbits of multiplication by k on the nonzero residues mod q, arranged in
// the order used to index the degree-n characters.  For even n every orbit is
// closed under negation and orbits appear by ascending least element.  For
// odd n orbits pair up with their negatives; the first half holds one orbit
// per pair (for n = 3 the orbit with member sum q, otherwise the one with
// the smaller least element) by ascending least element, and entry s/2 + i is
// the negative of entry i with rep[s/2 + i] = q - rep[i].
struct KOrbitData {
    unsigned long q = 0, n = 0, k = 0;
    std::vector<std::vector<unsigned long>> orbits; // members sorted ascending
    std::vector<unsigned long> sums;                // orbit -> sum of members
    std::vector<unsigned long> reps;                // orbit -> distinguished rep
    std::vector<size_t> orbit_of;                   // residue -> orbit index
};

KOrbitData k_orbit_data(unsigned long q, unsigned long n, unsigned long k);

// A fully built family instance: the multiplication table with canonical
// labels, the closed-form character table with role tags, the k-orbit data
// (metacyclic only) and a generating set of the automorphism group.
struct FamilyInstance {
    FamilySpec spec;
    std::shared_ptr<const FiniteGroup> group;
    std::shared_ptr<const CharacterTable> table;
    KOrbitData orbits;
    std::vector<Automorphism> aut_generators;
};

// Multiplication table and canonical labels only.
//   metacyclic: elements a^v b^u at index v*n + u, labels like "a^2*b".
//   dicyclic:   elements a^v b^u at index v*4 + u.
//   quaternion8: {1, -1, i, -i, j, -j, k, -k} in that order.
//   cyclic:      powers of g in exponent order.
FiniteGroup build_group(const FamilySpec& spec);

FamilyInstance build_family(const FamilySpec& spec);

// Dicyclic group of order 4m for any m >= 2 from the standard presentation
// x^{2m} = 1, y^2 = x^m, y^-1 x y = x^-1 (element x^v y^u at index v*2 + u).
// Used for table-level cross-checks; the family path requires m an odd prime,
// where this group is isomorphic to build_group(dicyclic:q=m).
FiniteGroup build_dicyclic_general(unsigned long m);

// Explicit matrix model of one irreducible character of a family instance.
// gen_images holds the images of the family generators in order: (a, b) for
// metacyclic and dicyclic, (i, j) for the quaternion group, (g) for cyclic.
struct MatrixRep {
    FamilySpec spec;
    unsigned char_index = 0;
    unsigned degree = 1;
    std::vector<CycloMatrix> gen_images;
};

MatrixRep matrix_rep(const FamilyInstance& fam, unsigned char_index);

// Image of an arbitrary element, assembled from the generator images along
// the canonical factorization of the element index.
CycloMatrix element_image(const MatrixRep& rep, Elt x);

// Checks the defining relations of the family presentation, the trace of
// every class representative against the table row, and the characteristic
// polynomial of every generator image against the certified eigenvalue
// profile.  Throws internal_error on any mismatch.
void verify_matrix_rep(const FamilyInstance& fam, const MatrixRep& rep);

// prod_alpha (x - zeta_m^alpha)^{profile[alpha]}, constant term first: the
// characteristic polynomial a matrix must have if the profile is its exact
// eigenvalue multiset.
std::vector<Cyclotomic> char_poly_from_profile(unsigned long long m,
                                               const std::vector<unsigned>& profile);

} // namespace branchcover
