#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartable.hpp"
#include "monodromy.hpp"

namespace branchcover {

// Index of the trivial character row (all values 1).
unsigned trivial_character_index(const CharacterTable& table);

// Multiplicity of each irreducible character in the space of holomorphic
// differentials of the cover attached to the datum, computed from certified
// eigenvalue profiles:
//   mu_chi = -chi(1) + sum_i T_i / m_i   (+1 for the trivial character),
//   T_i    = sum_alpha E_{i,alpha} * ((m_i - alpha) mod m_i),
// where E_{i,alpha} counts eigenvalues zeta_{m_i}^alpha of the i-th entry.
// Postconditions checked: every mu is a nonnegative integer, the trivial
// multiplicity is 0, and sum mu_chi * chi(1) equals the genus.
std::vector<long long> chevalley_weil(const CharacterTable& table,
                                      const MonodromyDatum& datum);

// Reusable evaluator over one table: precomputes per-(character, class)
// eigenvalue weights once so that each datum costs only a handful of integer
// operations per character.  Intended for sweeps over many data of one group.
class MultiplicityEvaluator {
public:
    explicit MultiplicityEvaluator(const CharacterTable& table);
    std::vector<long long> mu(const MonodromyDatum& datum) const;
    unsigned trivial_index() const { return trivial_; }

private:
    const CharacterTable* table_;
    unsigned trivial_;
    std::vector<std::vector<long long>> weight_; // [char][class]
};

struct CharBreakdown {
    unsigned index = 0;
    unsigned degree = 1;
    long long mu = 0;
    int indicator = 0;
    unsigned dual = 0;
};

// Specialness analysis of a multiplicity vector: the invariant
//   N = (1/2) sum_chi mu_chi * (mu_{chi*} + iota_chi)
// (always an even sum before halving), the derived special flag N = 0, and --
// when N > 0 -- the itemized violated clauses of the three-part criterion:
// orthogonal rows need mu = 0, complex-conjugate pairs cannot both have
// mu > 0, and symplectic rows need mu <= 1.
struct SpecialReport {
    long long N = 0;
    bool special = false;
    std::vector<CharBreakdown> chars;
    std::vector<std::string> violated;
};

SpecialReport specialness(const CharacterTable& table,
                          const std::vector<long long>& mu);

nlohmann::ordered_json special_report_json(const std::string& group_name,
                                           const CharacterTable& table,
                                           const MonodromyDatum& datum,
                                           const SpecialReport& report);

// Dimension bookkeeping for one rational isotypic component (one Q-Galois
// orbit of characters): the Jacobian factor A_i cut out by the orbit's
// central idempotent has dim A_i = (1/2) sum_{sigma} (mu_{sigma chi} +
// mu_{sigma chi*}) * chi(1).  When the Schur index of the orbit is resolved
// the matrix size n_i and the multiplicity (mu_chi + mu_{chi*}) / m_Q of the
// simple rational representation inside the component of H^1 are included;
// otherwise a live component is flagged undetermined.
struct IsotypicComponent {
    unsigned orbit = 0;
    unsigned long dim = 0;
    unsigned n_i = 0;              // 0 when undetermined
    long long w_multiplicity = -1; // -1 when undetermined
    bool undetermined = false;
};

std::vector<IsotypicComponent> isotypic_dims(const CharacterTable& table,
                                             const std::vector<long long>& mu);

// Sufficient-condition test for complex multiplication on one component:
//   zero-component    : every mu in the orbit pair vanishes;
//   cm-complex        : complex rows (indicator 0) with Schur index 1 over Q
//                       and mu_chi + mu_{chi*} = 1;
//   cm-symplectic     : symplectic rows (indicator -1) with Schur index 1
//                       over Q(zeta_4) and mu_chi = 1;
//   not-cm-criterion  : the criterion is silent (not a disproof).
enum class CmCriterion {
    zero_component,
    cm_complex,
    cm_symplectic,
    not_cm_criterion,
};

const char* to_string(CmCriterion c);

CmCriterion cm_criterion(const CharacterTable& table,
                         const std::vector<long long>& mu,
                         unsigned orbit_index);

} // namespace branchcover
