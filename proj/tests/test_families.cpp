#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "config.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "test_builders.hpp"

using namespace branchcover;

namespace {

std::vector<unsigned> degrees(const CharacterTable& t) {
    std::vector<unsigned> out;
    for (const auto& ch : t.chars) out.push_back(ch.degree);
    return out;
}

std::vector<int> indicators(const CharacterTable& t) {
    std::vector<int> out;
    for (const auto& ch : t.chars) out.push_back(ch.indicator);
    return out;
}

void check_same_table(const CharacterTable& a, const CharacterTable& b) {
    REQUIRE(a.char_count() == b.char_count());
    REQUIRE(a.classes.count() == b.classes.count());
    for (unsigned i = 0; i < a.char_count(); ++i) {
        CHECK(a.chars[i].degree == b.chars[i].degree);
        CHECK(a.chars[i].profiles == b.chars[i].profiles);
        CHECK(a.chars[i].values == b.chars[i].values);
        CHECK(a.chars[i].indicator == b.chars[i].indicator);
        CHECK(a.chars[i].dual == b.chars[i].dual);
    }
}

void check_same_multiplication(const FiniteGroup& a, const FiniteGroup& b) {
    REQUIRE(a.order() == b.order());
    for (Elt x = 0; x < a.order(); ++x)
        for (Elt y = 0; y < a.order(); ++y) REQUIRE(a.mul(x, y) == b.mul(x, y));
}

// Exhaustive homomorphism + bijection check, independent of the construction
// path inside the library.
void check_is_automorphism(const FiniteGroup& G, const Automorphism& phi) {
    REQUIRE(phi.size() == G.order());
    std::set<Elt> image(phi.begin(), phi.end());
    REQUIRE(image.size() == G.order());
    for (Elt x = 0; x < G.order(); ++x)
        for (Elt y = 0; y < G.order(); ++y)
            REQUIRE(phi[G.mul(x, y)] == G.mul(phi[x], phi[y]));
}

size_t closure_size(const std::vector<Automorphism>& gens, unsigned n) {
    std::set<Automorphism> seen;
    Automorphism id(n);
    std::iota(id.begin(), id.end(), 0);
    seen.insert(id);
    std::vector<Automorphism> frontier{id};
    while (!frontier.empty()) {
        std::vector<Automorphism> next;
        for (const auto& f : frontier)
            for (const auto& g : gens) {
                Automorphism fg(n);
                for (unsigned x = 0; x < n; ++x) fg[x] = g[f[x]];
                if (seen.insert(fg).second) next.push_back(fg);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace

TEST_CASE("family specs parse, validate and round-trip") {
    FamilySpec m = FamilySpec::parse("metacyclic:q=7,n=3");
    CHECK(m.kind == FamilyKind::metacyclic);
    CHECK(m.q == 7);
    CHECK(m.n == 3);
    CHECK(m.k == 2); // least element of order 3 mod 7
    CHECK(m.group_order() == 21);
    CHECK(m.to_string() == "metacyclic:q=7,n=3,k=2");

    FamilySpec m4 = FamilySpec::parse("metacyclic:q=7,n=3,k=4");
    CHECK(m4.k == 4);
    CHECK(FamilySpec::parse(m4.to_string()).k == 4);

    FamilySpec d = FamilySpec::parse("dicyclic:q=5");
    CHECK(d.kind == FamilyKind::dicyclic);
    CHECK(d.group_order() == 20);
    CHECK(d.to_string() == "dicyclic:q=5");

    CHECK(FamilySpec::parse("quaternion8").group_order() == 8);
    CHECK(FamilySpec::parse("cyclic:n=9").group_order() == 9);

    CHECK_THROWS_AS(FamilySpec::parse("frobenius:q=7"), invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic"), invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=9,n=2"),
                    invalid_input_error); // q not prime
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=7,n=4"),
                    invalid_input_error); // n does not divide q-1
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=7,n=3,k=6"),
                    invalid_input_error); // order of 6 mod 7 is 2, not 3
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=7,n=3,x=1"),
                    invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=7,q=7,n=3"),
                    invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=7,n=three"),
                    invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("dicyclic:q=4"), invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("dicyclic:n=5"), invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("quaternion8:q=3"), invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("cyclic:n=0"), invalid_input_error);
    CHECK_THROWS_AS(FamilySpec::parse("cyclic:n=300"), resource_limit_error);
    CHECK_THROWS_AS(FamilySpec::parse("metacyclic:q=131,n=2"),
                    resource_limit_error);
    CHECK_THROWS_AS(FamilySpec::parse("dicyclic:q=67"), resource_limit_error);
}

TEST_CASE("family groups match independently built tables") {
    check_same_multiplication(build_group(FamilySpec::parse("cyclic:n=12")),
                              testutil::make_cyclic(12));
    check_same_multiplication(build_group(FamilySpec::parse("quaternion8")),
                              testutil::make_q8());
    check_same_multiplication(
        build_group(FamilySpec::parse("metacyclic:q=7,n=3")),
        testutil::make_metacyclic(7, 3, 2));
    check_same_multiplication(
        build_group(FamilySpec::parse("metacyclic:q=13,n=4")),
        testutil::make_metacyclic(13, 4, 5));
    check_same_multiplication(build_group(FamilySpec::parse("dicyclic:q=5")),
                              testutil::make_dicyclic(5));

    const FiniteGroup G = build_group(FamilySpec::parse("metacyclic:q=7,n=3"));
    CHECK(G.label(0) == "1");
    CHECK(G.label(1) == "b");
    CHECK(G.label(3) == "a");
    CHECK(G.label(3 * 3 + 2) == "a^3*b^2");
    CHECK(G.element_by_label("a^3*b^2") == 11);
    const Elt a = 3, b = 1;
    CHECK(G.mul(G.mul(G.inverse(b), a), b) == G.power(a, 2)); // b^-1 a b = a^2
}

TEST_CASE("k-orbit data obeys the orbit sum and pairing laws") {
    // q=7, n=3, k=2: orbits {1,2,4} (sum 7) and {3,5,6} (sum 14).
    KOrbitData d7 = k_orbit_data(7, 3, 2);
    REQUIRE(d7.orbits.size() == 2);
    CHECK(d7.orbits[0] == std::vector<unsigned long>{1, 2, 4});
    CHECK(d7.orbits[1] == std::vector<unsigned long>{3, 5, 6});
    CHECK(d7.sums == std::vector<unsigned long>{7, 14});
    CHECK(d7.reps == std::vector<unsigned long>{1, 6});
    CHECK(d7.orbit_of[4] == 0);
    CHECK(d7.orbit_of[5] == 1);

    // q=13, n=3, k=3: sum-q orbits {1,3,9} and {2,5,6} come first; the
    // second half pairs by negation with reps q - l.
    KOrbitData d13 = k_orbit_data(13, 3, 3);
    REQUIRE(d13.orbits.size() == 4);
    CHECK(d13.orbits[0] == std::vector<unsigned long>{1, 3, 9});
    CHECK(d13.orbits[1] == std::vector<unsigned long>{2, 5, 6});
    CHECK(d13.orbits[2] == std::vector<unsigned long>{4, 10, 12});
    CHECK(d13.orbits[3] == std::vector<unsigned long>{7, 8, 11});
    CHECK(d13.sums == std::vector<unsigned long>{13, 13, 26, 26});
    CHECK(d13.reps == std::vector<unsigned long>{1, 2, 12, 11});

    // Even n: every orbit is closed under negation and sums to nq/2.
    KOrbitData d61 = k_orbit_data(61, 4, 11);
    REQUIRE(d61.orbits.size() == 15);
    for (size_t i = 0; i < d61.orbits.size(); ++i) {
        CHECK(d61.sums[i] == 4 * 61 / 2);
        CHECK(d61.reps[i] == d61.orbits[i][0]);
        for (unsigned long m : d61.orbits[i])
            CHECK(d61.orbit_of[61 - m] == i);
    }
    for (size_t i = 1; i < d61.orbits.size(); ++i)
        CHECK(d61.orbits[i - 1][0] < d61.orbits[i][0]);

    // Odd n > 3: the first half holds the smaller least element of each pair.
    KOrbitData d31 = k_orbit_data(31, 5, 2);
    REQUIRE(d31.orbits.size() == 6);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(d31.orbits[i][0] < d31.orbits[3 + i][0]);
        CHECK(d31.reps[3 + i] == 31 - d31.reps[i]);
        for (unsigned long m : d31.orbits[i])
            CHECK(d31.orbit_of[31 - m] == 3 + i);
    }
    // The multiset of all orbit members is exactly 1..q-1.
    std::vector<char> hit(31, 0);
    for (const auto& orbit : d31.orbits)
        for (unsigned long m : orbit) {
            CHECK(!hit[m]);
            hit[m] = 1;
        }

    CHECK_THROWS_AS(k_orbit_data(7, 3, 3), invalid_input_error); // ord(3)=6
    CHECK_THROWS_AS(k_orbit_data(8, 2, 3), invalid_input_error); // q not prime
}

TEST_CASE("closed-form family tables agree with the generic algorithm") {
    for (const char* text :
         {"metacyclic:q=7,n=3", "metacyclic:q=13,n=4", "metacyclic:q=7,n=6",
          "metacyclic:q=31,n=5", "dicyclic:q=5", "quaternion8", "cyclic:n=12"}) {
        CAPTURE(text);
        FamilyInstance fam = build_family(FamilySpec::parse(text));
        check_same_table(*fam.table, CharacterTable::generic(fam.group));
        verify_orthogonality(*fam.table);
    }
}

TEST_CASE("family table shapes and roles match the constructions") {
    FamilyInstance g315 = build_family(FamilySpec::parse("metacyclic:q=31,n=5"));
    CHECK(degrees(*g315.table) ==
          std::vector<unsigned>{1, 1, 1, 1, 1, 5, 5, 5, 5, 5, 5});
    for (unsigned i = 1; i <= 6; ++i) {
        const unsigned c = g315.table->index_by_role("induced:" + std::to_string(i));
        CHECK(g315.table->chars[c].degree == 5);
    }

    FamilyInstance g73 = build_family(FamilySpec::parse("metacyclic:q=7,n=3"));
    const unsigned chi1 = g73.table->index_by_role("induced:1");
    const FiniteGroup& G = *g73.group;
    const unsigned cls_a3 = g73.table->classes.class_of[G.element_by_label("a^3")];
    CHECK(g73.table->chars[chi1].values[cls_a3] ==
          Cyclotomic::from_root_sum(7, {{3, Integer(1)},
                                        {6, Integer(1)},
                                        {12, Integer(1)}}));
    CHECK(g73.table->chars[chi1].indicator == 0);
    CHECK(g73.table->chars[g73.table->chars[chi1].dual].role == "induced:2");

    FamilyInstance dic5 = build_family(FamilySpec::parse("dicyclic:q=5"));
    CHECK(degrees(*dic5.table) == std::vector<unsigned>{1, 1, 1, 1, 2, 2, 2, 2});
    CHECK(indicators(*dic5.table) ==
          std::vector<int>{1, 0, 1, 0, 1, 1, -1, -1});
    CHECK(dic5.table->chars[dic5.table->index_by_role("psi1_chi:1")].indicator ==
          -1);
    CHECK(dic5.table->chars[dic5.table->index_by_role("chi:2")].indicator == 1);

    FamilyInstance q8 = build_family(FamilySpec::parse("quaternion8"));
    CHECK(degrees(*q8.table) == std::vector<unsigned>{1, 1, 1, 1, 2});
    CHECK(q8.table->chars[q8.table->index_by_role("chi2")].indicator == -1);
    const SchurData sd = schur_data(*q8.table, q8.table->index_by_role("chi2"));
    CHECK(sd.m_Q == 2);
    CHECK(sd.m_Qi4 == 1); // realized over Q(zeta_4) by the explicit model

    // Rational component shapes: M_{n_i}(division algebra with given center).
    const RationalComponentDims q8_dims =
        rational_component_dims(*q8.table, q8.table->index_by_role("chi2"));
    CHECK(q8_dims.n_i == 1);           // quaternion algebra component
    CHECK(q8_dims.center_degree == 1); // center Q
    const RationalComponentDims dic_dims = rational_component_dims(
        *dic5.table, dic5.table->index_by_role("psi1_chi:1"));
    CHECK(dic_dims.n_i == 1);           // degree-4 division algebra
    CHECK(dic_dims.center_degree == 2); // center of degree (q-1)/2
    const RationalComponentDims g315_dims = rational_component_dims(
        *g315.table, g315.table->index_by_role("induced:1"));
    CHECK(g315_dims.n_i == 5);           // full matrix algebra M_5
    CHECK(g315_dims.center_degree == 6); // (q-1)/n = 30/5
}

TEST_CASE("matrix models verify against tables and profiles") {
    for (const char* text :
         {"metacyclic:q=7,n=3", "metacyclic:q=13,n=4", "metacyclic:q=31,n=5",
          "dicyclic:q=3", "dicyclic:q=5", "quaternion8", "cyclic:n=9"}) {
        CAPTURE(text);
        FamilyInstance fam = build_family(FamilySpec::parse(text));
        for (unsigned c = 0; c < fam.table->char_count(); ++c)
            verify_matrix_rep(fam, matrix_rep(fam, c));
    }

    // The quaternion degree-2 model is the standard one over Q(zeta_4).
    FamilyInstance q8 = build_family(FamilySpec::parse("quaternion8"));
    MatrixRep chi = matrix_rep(q8, q8.table->index_by_role("chi2"));
    const CycloMatrix K = element_image(chi, q8.group->element_by_label("k"));
    CHECK(K.at(0, 0) == Cyclotomic::root_of_unity(4, 1));
    CHECK(K.at(1, 1) == Cyclotomic::root_of_unity(4, 3));
    CHECK(K.at(0, 1).is_zero());

    // Degree-5 metacyclic model: a acts by the diagonal of orbit exponents.
    FamilyInstance g315 = build_family(FamilySpec::parse("metacyclic:q=31,n=5"));
    MatrixRep rho = matrix_rep(g315, g315.table->index_by_role("induced:1"));
    std::multiset<unsigned long> diag_exps;
    for (unsigned v = 0; v < 5; ++v) {
        const Cyclotomic d = rho.gen_images[0].at(v, v);
        for (unsigned long e = 0; e < 31; ++e)
            if (d == Cyclotomic::root_of_unity(31, static_cast<long long>(e)))
                diag_exps.insert(e);
    }
    CHECK(diag_exps == std::multiset<unsigned long>(
                           g315.orbits.orbits[0].begin(),
                           g315.orbits.orbits[0].end()));
}

TEST_CASE("automorphism generators are valid and generate the right group") {
    FamilyInstance q8 = build_family(FamilySpec::parse("quaternion8"));
    for (const auto& phi : q8.aut_generators)
        check_is_automorphism(*q8.group, phi);
    CHECK(closure_size(q8.aut_generators, 8) == 24); // Aut(Q8) = S4

    FamilyInstance g73 = build_family(FamilySpec::parse("metacyclic:q=7,n=3"));
    for (const auto& phi : g73.aut_generators)
        check_is_automorphism(*g73.group, phi);
    CHECK(closure_size(g73.aut_generators, 21) == 42); // Hol(Z/7) = q(q-1)

    FamilyInstance dic5 = build_family(FamilySpec::parse("dicyclic:q=5"));
    for (const auto& phi : dic5.aut_generators)
        check_is_automorphism(*dic5.group, phi);
    const size_t dic5_auts = automorphisms(*dic5.group).size();
    CHECK(closure_size(dic5.aut_generators, 20) == dic5_auts);

    FamilyInstance c12 = build_family(FamilySpec::parse("cyclic:n=12"));
    for (const auto& phi : c12.aut_generators)
        check_is_automorphism(*c12.group, phi);
    CHECK(closure_size(c12.aut_generators, 12) == 4); // phi(12) units
}

TEST_CASE("general dicyclic construction cross-checks") {
    // 4m = 8: the quaternion group in disguise.
    FiniteGroup dic2 = build_dicyclic_general(2);
    CharacterTable t2 = CharacterTable::generic(
        std::make_shared<const FiniteGroup>(std::move(dic2)));
    CHECK(degrees(t2) == std::vector<unsigned>{1, 1, 1, 1, 2});
    CHECK(t2.chars[4].indicator == -1);

    // Odd m: isomorphic to the family group; compare invariants.
    FiniteGroup dic3 = build_dicyclic_general(3);
    CHECK(dic3.order() == 12);
    CharacterTable t3 = CharacterTable::generic(
        std::make_shared<const FiniteGroup>(std::move(dic3)));
    FamilyInstance fam3 = build_family(FamilySpec::parse("dicyclic:q=3"));
    CHECK(degrees(t3) == degrees(*fam3.table));
    CHECK(indicators(t3) == indicators(*fam3.table));

    // m = 4: the generalized quaternion group of order 16.
    FiniteGroup dic4 = build_dicyclic_general(4);
    const Elt x = 2, y = 1; // x^1 y^0 and x^0 y^1
    CHECK(dic4.element_order(x) == 8);
    CHECK(dic4.mul(y, y) == dic4.power(x, 4)); // y^2 = x^m
    CharacterTable t4 = CharacterTable::generic(
        std::make_shared<const FiniteGroup>(std::move(dic4)));
    CHECK(degrees(t4) == std::vector<unsigned>{1, 1, 1, 1, 2, 2, 2});

    CHECK_THROWS_AS(build_dicyclic_general(1), invalid_input_error);
    CHECK_THROWS_AS(build_dicyclic_general(70), resource_limit_error);
}
