#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "families.hpp"
#include "hodge.hpp"
#include "monodromy.hpp"
#include "rational.hpp"

using namespace branchcover;

namespace {

// Independent multiplicity oracle: the fractional-part form
//   mu = -d + sum_i sum_alpha E_{i,alpha} * frac(-alpha / m_i)  (+1 trivial)
// evaluated in exact rational arithmetic, with frac computed via floor.
long long mu_oracle(const CharacterTable& tab, const MonodromyDatum& d,
                    unsigned j, unsigned trivial) {
    Rational acc(-static_cast<long>(tab.chars[j].degree));
    for (int i = 0; i < 3; ++i) {
        const unsigned cls = tab.classes.class_of[d.x[i]];
        const std::vector<unsigned>& prof = tab.chars[j].profiles[cls];
        const long m = static_cast<long>(prof.size());
        for (long alpha = 0; alpha < m; ++alpha) {
            const Rational frac =
                fractional_part(Rational(-alpha) / Rational(m));
            acc += Rational(static_cast<long>(prof[alpha])) * frac;
        }
    }
    if (j == trivial) acc += 1;
    acc.canonicalize();
    REQUIRE(is_integer(acc));
    return to_longlong(Integer(acc.get_num()));
}

std::vector<long long> mu_of(const FamilyInstance& fam,
                             const std::string& literal) {
    return chevalley_weil(*fam.table, parse_datum(fam.group, literal));
}

std::vector<long long> sorted_role_mus(const FamilyInstance& fam,
                                       const std::vector<long long>& mu,
                                       const std::string& prefix,
                                       unsigned count) {
    std::vector<long long> vals;
    for (unsigned i = 1; i <= count; ++i)
        vals.push_back(
            mu[fam.table->index_by_role(prefix + std::to_string(i))]);
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace

TEST_CASE("eigenvalue profiles synthesize the character values on powers") {
    for (const char* text : {"metacyclic:q=7,n=3", "dicyclic:q=5"}) {
        CAPTURE(text);
        const FamilyInstance fam = build_family(FamilySpec::parse(text));
        const CharacterTable& tab = *fam.table;
        const FiniteGroup& G = *fam.group;
        for (unsigned j = 0; j < tab.char_count(); ++j) {
            for (unsigned c = 0; c < tab.classes.count(); ++c) {
                const Elt rep = tab.classes.representative[c];
                const std::vector<unsigned>& prof = tab.chars[j].profiles[c];
                const unsigned long m = prof.size();
                for (unsigned long e = 0; e < m; ++e) {
                    std::vector<std::pair<long long, Integer>> terms;
                    for (unsigned long alpha = 0; alpha < m; ++alpha)
                        if (prof[alpha] > 0)
                            terms.push_back(
                                {static_cast<long long>(alpha * e),
                                 Integer(prof[alpha])});
                    const Cyclotomic synth = Cyclotomic::from_root_sum(m, terms);
                    const unsigned pc = tab.classes.class_of[G.power(
                        rep, static_cast<long long>(e))];
                    CHECK(synth == tab.chars[j].values[pc]);
                }
            }
        }
    }
}

TEST_CASE("multiplicities match the published family values") {
    // Degree-5 character multiplicities of the largest degree-5 instance.
    const FamilyInstance g315 =
        build_family(FamilySpec::parse("metacyclic:q=31,n=5"));
    const std::vector<long long> mu315 = mu_of(g315, "a,b,b^4*a^-1");
    CHECK(sorted_role_mus(g315, mu315, "induced:", 6) ==
          std::vector<long long>{0, 1, 1, 2, 2, 3});
    for (unsigned i = 1; i <= 4; ++i)
        CHECK(mu315[g315.table->index_by_role("linear:" + std::to_string(i))] == 0);

    // Dicyclic branching (q,4,4): exactly the twisted two-dimensional rows.
    const FamilyInstance dic5 = build_family(FamilySpec::parse("dicyclic:q=5"));
    const std::vector<long long> mu_q44 = mu_of(dic5, "a,b,b^3*a^-1");
    for (unsigned j = 0; j < dic5.table->char_count(); ++j) {
        const std::string& role = dic5.table->chars[j].role;
        const bool twisted = role.rfind("psi1_chi:", 0) == 0;
        CHECK(mu_q44[j] == (twisted ? 1 : 0));
    }

    // Dicyclic branching (2q,4,4): additionally one linear character.
    const std::vector<long long> mu_2q44 = mu_of(dic5, "a*b^2,b,b*a^-1");
    CHECK(mu_2q44[dic5.table->index_by_role("linear:1")] == 1);
    CHECK(mu_2q44[dic5.table->index_by_role("linear:3")] == 0);
    CHECK(mu_2q44[dic5.table->index_by_role("linear:2")] == 0);
    for (unsigned i = 1; i <= 2; ++i) {
        CHECK(mu_2q44[dic5.table->index_by_role("psi1_chi:" +
                                                std::to_string(i))] == 1);
        CHECK(mu_2q44[dic5.table->index_by_role("chi:" + std::to_string(i))] ==
              0);
    }

    // Quaternion cover: the two-dimensional character exactly once.
    const FamilyInstance q8 = build_family(FamilySpec::parse("quaternion8"));
    const std::vector<long long> mu8 = mu_of(q8, "i,j,-k");
    for (unsigned j = 0; j < q8.table->char_count(); ++j)
        CHECK(mu8[j] == (q8.table->chars[j].role == "chi2" ? 1 : 0));
}

TEST_CASE("multiplicity engine agrees with the rational-arithmetic oracle") {
    for (const char* text : {"metacyclic:q=7,n=3", "metacyclic:q=13,n=4",
                             "dicyclic:q=5", "quaternion8", "cyclic:n=8"}) {
        CAPTURE(text);
        const FamilyInstance fam = build_family(FamilySpec::parse(text));
        const CharacterTable& tab = *fam.table;
        const unsigned trivial = trivial_character_index(tab);
        CHECK(tab.chars[trivial].degree == 1);
        const std::vector<MonodromyDatum> data = enumerate_ssg(fam.group);
        size_t step = data.size() > 60 ? data.size() / 60 : 1;
        for (size_t idx = 0; idx < data.size(); idx += step) {
            const std::vector<long long> mu = chevalley_weil(tab, data[idx]);
            for (unsigned j = 0; j < tab.char_count(); ++j)
                CHECK(mu[j] == mu_oracle(tab, data[idx], j, trivial));
        }
    }
}

TEST_CASE("specialness invariant and clause analysis") {
    const FamilyInstance g315 =
        build_family(FamilySpec::parse("metacyclic:q=31,n=5"));
    const std::vector<long long> mu315 = mu_of(g315, "a,b,b^4*a^-1");
    const SpecialReport rep315 = specialness(*g315.table, mu315);
    CHECK(rep315.N == 4);
    CHECK(!rep315.special);
    // The two dual pairs with multiplicities (1,2) violate the complex-pair
    // clause; the (0,3) pair does not.
    CHECK(rep315.violated.size() == 2);
    for (const std::string& v : rep315.violated)
        CHECK(v.rfind("complex-pair-both-positive", 0) == 0);

    // All-zero multiplicities are trivially special.
    const SpecialReport zero = specialness(
        *g315.table, std::vector<long long>(g315.table->char_count(), 0));
    CHECK(zero.N == 0);
    CHECK(zero.special);
    CHECK(zero.violated.empty());

    // Even n > 2: each self-dual degree-n row carries mu = n/2 - 1 = 1 and
    // violates the orthogonal clause; N = (number of such rows) * 1.
    const FamilyInstance g134 =
        build_family(FamilySpec::parse("metacyclic:q=13,n=4"));
    const std::vector<long long> mu134 = mu_of(g134, "a,b,b^3*a^-1");
    for (unsigned i = 1; i <= 3; ++i) {
        const unsigned c = g134.table->index_by_role("induced:" +
                                                     std::to_string(i));
        CHECK(mu134[c] == 1);
        CHECK(g134.table->chars[c].indicator == 1);
    }
    const SpecialReport rep134 = specialness(*g134.table, mu134);
    CHECK(rep134.N == 3);
    CHECK(rep134.violated.size() == 3);
    for (const std::string& v : rep134.violated)
        CHECK(v.rfind("orthogonal-mu-positive", 0) == 0);

    // Special family points: dicyclic (both branchings) and quaternion.
    const FamilyInstance dic5 = build_family(FamilySpec::parse("dicyclic:q=5"));
    CHECK(specialness(*dic5.table, mu_of(dic5, "a,b,b^3*a^-1")).N == 0);
    CHECK(specialness(*dic5.table, mu_of(dic5, "a*b^2,b,b*a^-1")).N == 0);
    const FamilyInstance q8 = build_family(FamilySpec::parse("quaternion8"));
    const SpecialReport rep8 = specialness(*q8.table, mu_of(q8, "i,j,-k"));
    CHECK(rep8.N == 0);
    CHECK(rep8.special);

    // JSON report shape.
    const MonodromyDatum d8 = parse_datum(q8.group, "i,j,-k");
    const nlohmann::ordered_json j8 =
        special_report_json("quaternion8", *q8.table, d8, rep8);
    CHECK(j8["group"] == "quaternion8");
    CHECK(j8["ssg"] == "i,j,-k");
    CHECK(j8["local_monodromy"] == nlohmann::json({4, 4, 4}));
    CHECK(j8["genus"] == 2);
    CHECK(j8["N"] == 0);
    CHECK(j8["special"] == true);
    CHECK(j8["chars"].size() == 5);
    CHECK(j8["chars"][4]["mu"] == 1);
    CHECK(j8["violated"].empty());
}

TEST_CASE("isotypic dimensions and CM criteria for the family points") {
    // Degree-3 metacyclic: one live component of dim (q-1)/2, matrix size 3.
    const FamilyInstance g73 =
        build_family(FamilySpec::parse("metacyclic:q=7,n=3"));
    const std::vector<long long> mu73 = mu_of(g73, "a,b,b^2*a^-1");
    const std::vector<IsotypicComponent> comps73 =
        isotypic_dims(*g73.table, mu73);
    unsigned live73 = 0;
    for (const IsotypicComponent& comp : comps73) {
        if (comp.dim == 0) {
            CHECK(cm_criterion(*g73.table, mu73, comp.orbit) ==
                  CmCriterion::zero_component);
            continue;
        }
        ++live73;
        CHECK(comp.dim == 3); // (q-1)/2
        CHECK(comp.n_i == 3); // A ~ B^3 with dim B = (q-1)/6 = 1
        CHECK(comp.dim % comp.n_i == 0);
        CHECK(comp.w_multiplicity == 1);
        CHECK(!comp.undetermined);
        CHECK(cm_criterion(*g73.table, mu73, comp.orbit) ==
              CmCriterion::cm_complex);
    }
    CHECK(live73 == 1);

    // The same group through the generic table: the live component's Schur
    // index is unresolved, so it is flagged undetermined and the criterion
    // stays silent.
    const CharacterTable generic73 = CharacterTable::generic(g73.group);
    const std::vector<long long> mu73g =
        chevalley_weil(generic73, parse_datum(g73.group, "a,b,b^2*a^-1"));
    const std::vector<IsotypicComponent> comps73g =
        isotypic_dims(generic73, mu73g);
    unsigned undetermined = 0;
    for (const IsotypicComponent& comp : comps73g) {
        if (comp.dim == 0) continue;
        CHECK(comp.dim == 3);
        CHECK(comp.undetermined);
        CHECK(cm_criterion(generic73, mu73g, comp.orbit) ==
              CmCriterion::not_cm_criterion);
        ++undetermined;
    }
    CHECK(undetermined == 1);

    // Dicyclic (q,4,4): one live symplectic component of dim q-1.
    const FamilyInstance dic5 = build_family(FamilySpec::parse("dicyclic:q=5"));
    const std::vector<long long> mu_q44 = mu_of(dic5, "a,b,b^3*a^-1");
    const std::vector<IsotypicComponent> comps_q44 =
        isotypic_dims(*dic5.table, mu_q44);
    unsigned live_q44 = 0;
    for (const IsotypicComponent& comp : comps_q44) {
        if (comp.dim == 0) continue;
        ++live_q44;
        CHECK(comp.dim == 4); // q - 1
        CHECK(comp.n_i == 1);
        CHECK(comp.w_multiplicity == 1); // 2*mu / m_Q = 2/2
        CHECK(cm_criterion(*dic5.table, mu_q44, comp.orbit) ==
              CmCriterion::cm_symplectic);
    }
    CHECK(live_q44 == 1);

    // Dicyclic (2q,4,4): the symplectic component plus one linear component.
    const std::vector<long long> mu_2q44 = mu_of(dic5, "a*b^2,b,b*a^-1");
    const std::vector<IsotypicComponent> comps_2q44 =
        isotypic_dims(*dic5.table, mu_2q44);
    std::map<unsigned long, CmCriterion> live_2q44;
    for (const IsotypicComponent& comp : comps_2q44)
        if (comp.dim != 0)
            live_2q44[comp.dim] =
                cm_criterion(*dic5.table, mu_2q44, comp.orbit);
    REQUIRE(live_2q44.size() == 2);
    CHECK(live_2q44[1] == CmCriterion::cm_complex); // psi_1 pair, dim 1
    CHECK(live_2q44[4] == CmCriterion::cm_symplectic);

    // Quaternion: a single symplectic component of dim 2.
    const FamilyInstance q8 = build_family(FamilySpec::parse("quaternion8"));
    const std::vector<long long> mu8 = mu_of(q8, "i,j,-k");
    const std::vector<IsotypicComponent> comps8 = isotypic_dims(*q8.table, mu8);
    unsigned live8 = 0;
    for (const IsotypicComponent& comp : comps8) {
        if (comp.dim == 0) continue;
        ++live8;
        CHECK(comp.dim == 2);
        CHECK(comp.n_i == 1);
        CHECK(cm_criterion(*q8.table, mu8, comp.orbit) ==
              CmCriterion::cm_symplectic);
    }
    CHECK(live8 == 1);

    // Even n: the live orthogonal component is not covered by the criterion.
    const FamilyInstance g134 =
        build_family(FamilySpec::parse("metacyclic:q=13,n=4"));
    const std::vector<long long> mu134 = mu_of(g134, "a,b,b^3*a^-1");
    for (const IsotypicComponent& comp : isotypic_dims(*g134.table, mu134))
        if (comp.dim != 0)
            CHECK(cm_criterion(*g134.table, mu134, comp.orbit) ==
                  CmCriterion::not_cm_criterion);

    CHECK(to_string(CmCriterion::zero_component) ==
          std::string("zero-component"));
    CHECK(to_string(CmCriterion::cm_complex) == std::string("cm-complex"));
    CHECK(to_string(CmCriterion::cm_symplectic) ==
          std::string("cm-symplectic"));
    CHECK(to_string(CmCriterion::not_cm_criterion) ==
          std::string("not-cm-criterion"));
}

TEST_CASE("H1 characters are rational and paired multiplicities behave") {
    for (const char* text : {"metacyclic:q=7,n=3", "metacyclic:q=13,n=4",
                             "dicyclic:q=5", "quaternion8", "cyclic:n=7"}) {
        CAPTURE(text);
        const FamilyInstance fam = build_family(FamilySpec::parse(text));
        const CharacterTable& tab = *fam.table;
        const std::vector<MonodromyDatum> data = enumerate_ssg(fam.group);
        size_t step = data.size() > 40 ? data.size() / 40 : 1;
        for (size_t idx = 0; idx < data.size(); idx += step) {
            const std::vector<long long> mu = chevalley_weil(tab, data[idx]);
            // Sum over rows of (mu + mu*) chi is the H^1 character: it must
            // be fixed by every Galois map, i.e. rational-valued.
            for (unsigned c = 0; c < tab.classes.count(); ++c) {
                Cyclotomic h1 = Cyclotomic::zero();
                for (unsigned j = 0; j < tab.char_count(); ++j) {
                    const long long w = mu[j] + mu[tab.chars[j].dual];
                    if (w != 0)
                        h1 += tab.chars[j].values[c] *
                              Cyclotomic::from_integer(w);
                }
                CHECK(h1.is_rational());
            }
            // Real rows have even paired multiplicity; exercise specialness
            // internal checks along the way.
            for (unsigned j = 0; j < tab.char_count(); ++j)
                if (tab.chars[j].dual == j)
                    CHECK((mu[j] + mu[tab.chars[j].dual]) % 2 == 0);
            specialness(tab, mu);
            isotypic_dims(tab, mu);
        }
    }
}

TEST_CASE("family genus closed forms") {
    // Degree-n metacyclic main data: g = (n-2)(q-1)/2.
    for (const auto& [text, literal, g] :
         {std::tuple<const char*, const char*, unsigned long>{
              "metacyclic:q=7,n=3", "a,b,b^2*a^-1", 3},
          {"metacyclic:q=13,n=3", "a,b,b^2*a^-1", 6},
          {"metacyclic:q=13,n=4", "a,b,b^3*a^-1", 12},
          {"metacyclic:q=31,n=5", "a,b,b^4*a^-1", 45},
          {"metacyclic:q=7,n=6", "a,b,b^5*a^-1", 12}}) {
        CAPTURE(text);
        const FamilyInstance fam = build_family(FamilySpec::parse(text));
        const MonodromyDatum d = parse_datum(fam.group, literal);
        CHECK(genus(d) == g);
        CHECK(classification_tag(fam.spec, d) == "metacyclic-main");
    }
    // Dicyclic: g = q - 1 for (q,4,4) and g = q for (2q,4,4).
    for (const unsigned q : {3u, 5u, 7u, 11u}) {
        const FamilyInstance fam = build_family(
            FamilySpec::parse("dicyclic:q=" + std::to_string(q)));
        CHECK(genus(parse_datum(fam.group, "a,b,b^3*a^-1")) == q - 1);
        CHECK(genus(parse_datum(fam.group, "a*b^2,b,b*a^-1")) == q);
    }
}
