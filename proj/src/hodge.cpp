#include "hodge.hpp"

#include <numeric>

#include "errors.hpp"

namespace branchcover {

// The weight of row j at class c is sum_alpha E_alpha * ((m - alpha) mod m),
// so that a datum evaluation only needs three lookups per character.
MultiplicityEvaluator::MultiplicityEvaluator(const CharacterTable& table)
    : table_(&table), trivial_(trivial_character_index(table)) {
    const unsigned rows = table.char_count();
    const unsigned cls = table.classes.count();
    weight_.assign(rows, std::vector<long long>(cls, 0));
    for (unsigned j = 0; j < rows; ++j) {
        for (unsigned c = 0; c < cls; ++c) {
            const std::vector<unsigned>& prof = table.chars[j].profiles[c];
            const long long m = static_cast<long long>(prof.size());
            long long t = 0;
            for (long long alpha = 0; alpha < m; ++alpha)
                t += static_cast<long long>(prof[alpha]) * ((m - alpha) % m);
            weight_[j][c] = t;
        }
    }
}

std::vector<long long> MultiplicityEvaluator::mu(
    const MonodromyDatum& datum) const {
    const CharacterTable& tab = *table_;
    ensure(tab.group.get() == datum.group.get(),
           "multiplicity evaluation needs the datum's own table");
    const unsigned long g = genus(datum);

    unsigned cls_of[3];
    long long m[3];
    for (int i = 0; i < 3; ++i) {
        cls_of[i] = tab.classes.class_of[datum.x[i]];
        m[i] = tab.classes.representative_order[cls_of[i]];
    }
    const long long L = std::lcm(std::lcm(m[0], m[1]), m[2]);

    const unsigned rows = tab.char_count();
    std::vector<long long> out(rows, 0);
    long long total = 0;
    for (unsigned j = 0; j < rows; ++j) {
        const long long d = tab.chars[j].degree;
        long long num = (-d + (j == trivial_ ? 1 : 0)) * L;
        for (int i = 0; i < 3; ++i)
            num += weight_[j][cls_of[i]] * (L / m[i]);
        ensure(num % L == 0, "character multiplicity is not an integer");
        const long long val = num / L;
        ensure(val >= 0, "character multiplicity is negative");
        out[j] = val;
        total += val * d;
    }
    ensure(out[trivial_] == 0,
           "trivial character must not appear in the differentials");
    ensure(total == static_cast<long long>(g),
           "multiplicities do not add up to the genus");
    return out;
}

unsigned trivial_character_index(const CharacterTable& table) {
    const unsigned cls = table.classes.count();
    unsigned found = table.char_count();
    for (unsigned j = 0; j < table.char_count(); ++j) {
        if (table.chars[j].degree != 1) continue;
        bool all_one = true;
        for (unsigned c = 0; c < cls && all_one; ++c)
            all_one = table.chars[j].values[c] == Cyclotomic::one();
        if (all_one) {
            ensure(found == table.char_count(),
                   "character table has two trivial rows");
            found = j;
        }
    }
    ensure(found < table.char_count(), "character table has no trivial row");
    return found;
}

std::vector<long long> chevalley_weil(const CharacterTable& table,
                                      const MonodromyDatum& datum) {
    return MultiplicityEvaluator(table).mu(datum);
}

SpecialReport specialness(const CharacterTable& table,
                          const std::vector<long long>& mu) {
    const unsigned rows = table.char_count();
    require(mu.size() == rows, "multiplicity vector has the wrong length");

    SpecialReport rep;
    long long twice_n = 0;
    for (unsigned j = 0; j < rows; ++j) {
        const Character& ch = table.chars[j];
        twice_n += mu[j] * (mu[ch.dual] + ch.indicator);
        rep.chars.push_back({j, ch.degree, mu[j], ch.indicator, ch.dual});
    }
    ensure(twice_n >= 0 && twice_n % 2 == 0,
           "specialness sum must be an even nonnegative integer");
    rep.N = twice_n / 2;
    rep.special = rep.N == 0;

    for (unsigned j = 0; j < rows; ++j) {
        const Character& ch = table.chars[j];
        if (ch.indicator == 1 && mu[j] > 0) {
            rep.violated.push_back("orthogonal-mu-positive: character " +
                                   std::to_string(j));
        } else if (ch.indicator == 0 && j < ch.dual && mu[j] > 0 &&
                   mu[ch.dual] > 0) {
            rep.violated.push_back("complex-pair-both-positive: characters " +
                                   std::to_string(j) + ", " +
                                   std::to_string(ch.dual));
        } else if (ch.indicator == -1 && mu[j] >= 2) {
            rep.violated.push_back("symplectic-mu-ge-2: character " +
                                   std::to_string(j));
        }
    }
    ensure(rep.special == rep.violated.empty(),
           "specialness flag disagrees with the clause analysis");
    return rep;
}

nlohmann::ordered_json special_report_json(const std::string& group_name,
                                           const CharacterTable& table,
                                           const MonodromyDatum& datum,
                                           const SpecialReport& report) {
    (void)table;
    nlohmann::ordered_json j;
    j["group"] = group_name;
    j["ssg"] = datum_literal(datum);
    const std::array<unsigned, 3> m = local_monodromy(datum);
    j["local_monodromy"] = {m[0], m[1], m[2]};
    j["genus"] = genus(datum);
    j["N"] = report.N;
    j["special"] = report.special;
    nlohmann::ordered_json chars = nlohmann::ordered_json::array();
    for (const CharBreakdown& cb : report.chars) {
        nlohmann::ordered_json row;
        row["index"] = cb.index;
        row["degree"] = cb.degree;
        row["mu"] = cb.mu;
        row["indicator"] = cb.indicator;
        row["dual"] = cb.dual;
        chars.push_back(std::move(row));
    }
    j["chars"] = std::move(chars);
    j["violated"] = report.violated;
    return j;
}

std::vector<IsotypicComponent> isotypic_dims(const CharacterTable& table,
                                             const std::vector<long long>& mu) {
    require(mu.size() == table.char_count(),
            "multiplicity vector has the wrong length");
    std::vector<IsotypicComponent> out;
    for (unsigned o = 0; o < table.galois_orbits_Q.size(); ++o) {
        const std::vector<unsigned>& orbit = table.galois_orbits_Q[o];
        IsotypicComponent comp;
        comp.orbit = o;

        const unsigned rep = orbit.front();
        const long long pair_sum = mu[rep] + mu[table.chars[rep].dual];
        long long total = 0;
        for (const unsigned c : orbit) {
            // The induced representation on H^1 is rational, so the paired
            // multiplicity must be constant along the Galois orbit.
            ensure(mu[c] + mu[table.chars[c].dual] == pair_sum,
                   "paired multiplicities vary along a Galois orbit");
            total += (mu[c] + mu[table.chars[c].dual]) *
                     static_cast<long long>(table.chars[c].degree);
        }
        ensure(total >= 0 && total % 2 == 0,
               "isotypic dimension total must be even");
        comp.dim = static_cast<unsigned long>(total / 2);

        const SchurData sd = schur_data(table, rep);
        if (sd.m_Q != 0) {
            comp.n_i = sd.n_i;
            ensure(pair_sum % sd.m_Q == 0,
                   "paired multiplicity is not divisible by the Schur index");
            comp.w_multiplicity = pair_sum / sd.m_Q;
        } else if (total > 0) {
            comp.undetermined = true;
        }
        out.push_back(comp);
    }
    return out;
}

const char* to_string(CmCriterion c) {
    switch (c) {
    case CmCriterion::zero_component: return "zero-component";
    case CmCriterion::cm_complex: return "cm-complex";
    case CmCriterion::cm_symplectic: return "cm-symplectic";
    case CmCriterion::not_cm_criterion: return "not-cm-criterion";
    }
    ensure(false, "unreachable CM criterion value");
    return "";
}

CmCriterion cm_criterion(const CharacterTable& table,
                         const std::vector<long long>& mu,
                         unsigned orbit_index) {
    require(mu.size() == table.char_count(),
            "multiplicity vector has the wrong length");
    require(orbit_index < table.galois_orbits_Q.size(),
            "orbit index out of range");
    const std::vector<unsigned>& orbit = table.galois_orbits_Q[orbit_index];
    const unsigned rep = orbit.front();
    const Character& ch = table.chars[rep];

    long long total = 0;
    for (const unsigned c : orbit)
        total += (mu[c] + mu[table.chars[c].dual]) *
                 static_cast<long long>(table.chars[c].degree);
    if (total == 0) return CmCriterion::zero_component;
    const long long dim = total / 2;

    const SchurData sd = schur_data(table, rep);
    const long long pair_sum = mu[rep] + mu[ch.dual];

    if (ch.indicator == 0) {
        if (sd.m_Q == 1 && pair_sum == 1) {
            // Equality case d0 = 2 dim A_i of the complex CM bound.
            const long long d0 = static_cast<long long>(sd.n_i) * sd.m_Q *
                                 sd.char_field_degree_Q;
            ensure(d0 == 2 * dim, "complex CM dimension equality fails");
            return CmCriterion::cm_complex;
        }
        return CmCriterion::not_cm_criterion;
    }
    if (ch.indicator == -1) {
        ensure(ch.dual == rep, "symplectic character must be self-dual");
        if (sd.m_Qi4 == 1 && sd.n_i != 0 && mu[rep] == 1) {
            // Equality case d1 = 2 dim A_i of the symplectic CM bound, with
            // [K(chi):Q] = 2 * (size of the Q(zeta_4)-Galois orbit).
            const long long orbit4 = static_cast<long long>(
                table.galois_orbits_Qi4[table.orbit_Qi4_of[rep]].size());
            const long long d1 =
                2 * static_cast<long long>(sd.n_i) * (2 * orbit4);
            ensure(d1 == 2 * dim, "symplectic CM dimension equality fails");
            return CmCriterion::cm_symplectic;
        }
        return CmCriterion::not_cm_criterion;
    }
    return CmCriterion::not_cm_criterion;
}

} // namespace branchcover
