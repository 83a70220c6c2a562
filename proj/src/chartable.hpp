#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyclotomic.hpp"
#include "group.hpp"

namespace branchcover {

// One irreducible complex character, stored per conjugacy class.  Values are
// canonical: each is re-synthesized from the certified eigenvalue profile, so
// equal characters have identical coefficient data regardless of how their
// values were first constructed.
struct Character {
    unsigned degree = 1;
    std::vector<Cyclotomic> values;              // class -> value
    // class -> eigenvalue counts: profiles[c][alpha] is the multiplicity of
    // zeta_m^alpha among the eigenvalues of the representing matrix of the
    // class representative, m = order of the representative.
    std::vector<std::vector<unsigned>> profiles;
    int indicator = 0;                           // Frobenius-Schur: -1, 0, +1
    unsigned dual = 0;                           // index of the conjugate row
    std::string role;                            // family tag, "" when generic
};

class CharacterTable {
public:
    std::shared_ptr<const FiniteGroup> group;
    ConjugacyClasses classes;
    unsigned identity_class = 0;
    unsigned long long group_exponent = 1;
    std::vector<Character> chars;                // rows in canonical sort order
    std::vector<std::vector<unsigned>> galois_orbits_Q;
    std::vector<std::vector<unsigned>> galois_orbits_Qi4;
    std::vector<unsigned> orbit_Q_of;            // char -> Q-orbit index
    std::vector<unsigned> orbit_Qi4_of;          // char -> Q(zeta_4)-orbit index

    unsigned char_count() const { return static_cast<unsigned>(chars.size()); }

    // Builds a table from raw irreducible character values (rows indexed like
    // the computed conjugacy classes).  Every row is certified: eigenvalue
    // profiles are recovered and checked exactly against the values at all
    // power classes; inconsistent rows are rejected.  Rows are then sorted
    // canonically and duals, indicators and Galois orbits are derived.
    static CharacterTable from_raw_values(
        std::shared_ptr<const FiniteGroup> G,
        std::vector<std::vector<Cyclotomic>> rows,
        std::vector<std::string> roles);

    // Full exact character table of an arbitrary group via the modular
    // class-matrix eigenvector method with exact cyclotomic lifting.
    static CharacterTable generic(std::shared_ptr<const FiniteGroup> G);

    // Index of the unique character carrying a family role tag; throws
    // invalid_input_error when absent.
    unsigned index_by_role(const std::string& role) const;

    nlohmann::ordered_json to_json() const;
};

struct SchurData {
    int indicator = 0;
    unsigned char_field_degree_Q = 1;  // [Q(chi) : Q]
    unsigned m_Q = 0;                  // Schur index over Q; 0 = unknown
    unsigned m_Qi4 = 0;                // Schur index over Q(zeta_4); 0 = unknown
    unsigned n_i = 0;                  // degree / m_Q when known, else 0
};

// Indicator, character-field degree and (partially) resolved Schur indices for
// one row.  Resolution rules: indicator -1 forces m_Q = 2; degree-1 rows and
// rows whose family construction realizes them over the character field have
// m_Q = 1; m_Qi4 = 1 when m_Q = 1 or a family matrix model over a
// Q(zeta_4)-composite exists.  Everything else stays unknown.
SchurData schur_data(const CharacterTable& table, unsigned c);

// Shape of the simple rational-algebra component housing the row: a matrix
// algebra of size n_i over a division algebra whose center has the given
// degree over Q.  n_i = 0 when the Schur index is unresolved.
struct RationalComponentDims {
    unsigned n_i = 0;
    unsigned center_degree = 1;
};

RationalComponentDims rational_component_dims(const CharacterTable& table,
                                              unsigned c);

// Verifies full first and second orthogonality exactly; throws internal_error
// naming the first failing relation.
void verify_orthogonality(const CharacterTable& table);

// Character of the rational irreducible representation containing the given
// Q-Galois orbit: m_Q times the sum of the orbit's rows.  Requires the orbit's
// Schur index to be resolved.
std::vector<Cyclotomic> rational_character(const CharacterTable& table,
                                           unsigned orbit_index);

unsigned long long group_exponent_of(const FiniteGroup& G);

} // namespace branchcover
