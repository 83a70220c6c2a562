#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartable.hpp"
#include "families.hpp"
#include "monodromy.hpp"

namespace branchcover {

// Element of the group algebra with cyclotomic coefficients, indexed by group
// element.  base_order records the cyclotomic order of the intended
// coefficient field (1 for Q, 4 for Q(zeta_4)); arithmetic does not depend on
// it.
struct GroupAlgebraElement {
    std::shared_ptr<const FiniteGroup> group;
    unsigned long long base_order = 1;
    std::vector<Cyclotomic> coeffs;

    static GroupAlgebraElement zero(std::shared_ptr<const FiniteGroup> g);
    static GroupAlgebraElement one(std::shared_ptr<const FiniteGroup> g);

    GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
    GroupAlgebraElement& operator-=(const GroupAlgebraElement& o);
    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scaled(const Cyclotomic& c) const;
    bool operator==(const GroupAlgebraElement& o) const;
    bool operator!=(const GroupAlgebraElement& o) const {
        return !(*this == o);
    }

    bool is_idempotent() const;
    // Central elements of a group algebra are exactly the class functions.
    bool is_central() const;
};

enum class IdempotentBase { Q, Qi4 };

// Primitive central idempotent of the base-field group algebra containing the
// given row: the sum of the averaging idempotents
//   e(chi) = (chi(1)/#G) sum_x chi(x^-1) x
// over the base-field Galois orbit of the row.
GroupAlgebraElement central_idempotent(const CharacterTable& table, unsigned c,
                                       IdempotentBase base);

// A CM type presented as exact exponent data: one cyclotomic conductor per
// field factor, and for each chosen embedding the image exponent u of the
// distinguished root (zeta_N -> zeta_N^u).  Exactly one embedding per
// conjugate pair, phi(N)/2 per factor.
struct CMType {
    std::vector<unsigned long> conductors;
    std::vector<std::pair<unsigned, unsigned long>> embeddings;
};

void validate_cm_type(const CMType& type);

// The complex-conjugate type: every exponent negated mod its conductor.
CMType conjugate_type(const CMType& type);

// {field: {kind: "cyclotomic"|"product", conductors: [...]},
//  embeddings: [{factor, exponent}, ...]}
nlohmann::ordered_json cm_type_json(const CMType& type);

// CM type of the Jacobian for a degree-three metacyclic main datum: the field
// of q-th roots of unity with one embedding exponent t*k^j for each power j
// of each orbit representative t in the chosen half of the orbit pairing.
// Rejects branching degrees other than 3 with the classification reason.
CMType metacyclic_cm_type(const FamilyInstance& fam, const MonodromyDatum& d);

// Core of the above from the orbit data alone (no group or datum needed).
CMType metacyclic_type_from_orbits(const KOrbitData& orbits);

// CM type for a dicyclic datum: branching (q,4,4) gives the single field of
// 4q-th roots of unity with the q-1 embeddings zeta_4 * zeta_q^j; branching
// (2q,4,4) adds a zeta_4 factor whose embedding is forced by the linear
// multiplicities.
CMType dicyclic_cm_type(const FamilyInstance& fam, const MonodromyDatum& d);

// CM type for the quaternion cover: two zeta_4 factors with mutually
// conjugate embeddings.
CMType quaternion_cm_type();

// The two rank-one idempotents of the quaternion component, built by
// character averaging over the cyclic subgroup generated by k (k maps to
// zeta_4 resp. -zeta_4); their sum is the central idempotent of the degree-2
// row.
std::array<GroupAlgebraElement, 2> quaternion_component_idempotents(
    const FamilyInstance& fam);

// Assembles the action of the family's designated group-algebra generator on
// a model of the holomorphic differentials built from matrix representation
// blocks (repeated with their multiplicities), extracts the exact
// root-of-unity eigenvalue exponents, and compares them with the claimed
// type, accepting either the claim or its global complex conjugate.  On
// mismatch returns false and, when given, fills diagnostics with both
// exponent multisets.
bool verify_cm_type_via_matrices(const FamilyInstance& fam,
                                 const MonodromyDatum& d, const CMType& claimed,
                                 std::string* diagnostics = nullptr);

// Signature of the q-cyclic cover with rotation data (1, k, k^2), evaluated
// by the literal fractional-part formula f(u) = -1 + sum_j frac(-k^j u / q);
// checks f(u) + f(q-u) = 1 throughout and that the set {u : f(u) = 1} equals
// the metacyclic CM-type exponent set for the same (q, k).
bool cyclic_signature_crosscheck(unsigned long q, unsigned long k);

} // namespace branchcover
