// Acceptance suite: ten end-to-end checks of the classification engine, one
// pass/fail line each.  All comparisons are exact; the stated time limits are
// part of the checks.  Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "numtheory.hpp"

using namespace branchcover;

namespace {

using clock_type = std::chrono::steady_clock;

struct failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw failure(what);
}

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Every canonical family instance with group order at most 256.  The two
// parametric families are exhaustive in that range; the cyclic family is
// sampled up to order 36 to keep the sweep proportionate.
const std::vector<FamilyInstance>& instances256() {
    static const std::vector<FamilyInstance> built = [] {
        std::vector<FamilyInstance> out;
        for (unsigned long q = 3; q <= 255; q += 2) {
            if (!is_prime(q)) continue;
            for (unsigned long n = 2; n < q; ++n)
                if ((q - 1) % n == 0 && q * n <= 256)
                    out.push_back(build_family(FamilySpec::parse(
                        "metacyclic:q=" + std::to_string(q) +
                        ",n=" + std::to_string(n))));
            if (4 * q <= 256)
                out.push_back(build_family(
                    FamilySpec::parse("dicyclic:q=" + std::to_string(q))));
        }
        out.push_back(build_family(FamilySpec::parse("quaternion8")));
        for (unsigned long n = 2; n <= 36; ++n)
            out.push_back(
                build_family(FamilySpec::parse("cyclic:n=" + std::to_string(n))));
        return out;
    }();
    return built;
}

std::vector<Elt> family_generators(const FamilySpec& spec) {
    switch (spec.kind) {
    case FamilyKind::metacyclic:
        return {static_cast<Elt>(spec.n), static_cast<Elt>(1)};
    case FamilyKind::dicyclic:
        return {static_cast<Elt>(4), static_cast<Elt>(1)};
    case FamilyKind::quaternion8:
        return {static_cast<Elt>(2), static_cast<Elt>(4)};
    case FamilyKind::cyclic:
        return {static_cast<Elt>(1)};
    }
    throw internal_error("unreachable family kind");
}

std::vector<unsigned long> odd_primes_upto(unsigned long bound) {
    std::vector<unsigned long> out;
    for (unsigned long q = 3; q <= bound; q += 2)
        if (is_prime(q)) out.push_back(q);
    return out;
}

// --- criterion bodies ------------------------------------------------------

void criterion_1() {
    const auto start = clock_type::now();
    const FamilyInstance fam =
        build_family(FamilySpec::parse("metacyclic:q=31,n=5"));
    unsigned mains = 0;
    for (const ClassifiedCover& c : classify_instance(fam)) {
        if (c.tag != "metacyclic-main") continue;
        ++mains;
        const std::vector<long long> mu =
            chevalley_weil(*fam.table, c.representative);
        std::vector<long long> deg5;
        for (unsigned i = 0; i < fam.table->char_count(); ++i)
            if (fam.table->chars[i].degree == 5) deg5.push_back(mu[i]);
        std::sort(deg5.begin(), deg5.end());
        expect(deg5 == std::vector<long long>({0, 1, 1, 2, 2, 3}),
               "degree-5 multiplicities of " + c.class_id +
                   " must sort to 0,1,1,2,2,3");
        expect(c.report.N == 4, "invariant N of " + c.class_id + " must be 4");
        expect(!c.report.special, "the class must not be special");
    }
    expect(mains >= 1, "no class with branching orders (31,5,5) found");
    expect(seconds_since(start) < 1.0, "must finish within 1 s");
}

void criterion_2() {
    const auto start = clock_type::now();
    for (const unsigned long q : odd_primes_upto(31)) {
        for (unsigned long n = 2; n <= 6; ++n) {
            if ((q - 1) % n != 0) continue;
            const FamilyInstance fam = build_family(FamilySpec::parse(
                "metacyclic:q=" + std::to_string(q) +
                ",n=" + std::to_string(n)));
            unsigned mains = 0;
            for (const ClassifiedCover& c : classify_instance(fam)) {
                if (c.tag != "metacyclic-main") continue;
                ++mains;
                const bool want_special = n == 2 || n == 3;
                expect(c.report.special == want_special,
                       "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                           ": main class specialness must be " +
                           (want_special ? "true" : "false"));
                if (n != 3) continue;
                expect(c.cm_status == kCmStatusType,
                       "q=" + std::to_string(q) +
                           " n=3: main class must carry a CM type");
                expect(c.cm_type->conductors ==
                           std::vector<unsigned long>{q},
                       "q=" + std::to_string(q) +
                           " n=3: CM field conductor must be q");
                expect(c.cm_type->embeddings.size() == (q - 1) / 2,
                       "q=" + std::to_string(q) +
                           " n=3: CM type must have (q-1)/2 embeddings");
            }
            expect(mains >= 1, "q=" + std::to_string(q) +
                                   " n=" + std::to_string(n) +
                                   ": no main class found");
        }
    }
    expect(seconds_since(start) < 20.0, "must finish within 20 s");
}

void criterion_3() {
    const auto start = clock_type::now();
    for (const unsigned long q : odd_primes_upto(31)) {
        const FamilyInstance fam =
            build_family(FamilySpec::parse("dicyclic:q=" + std::to_string(q)));
        const std::vector<ClassifiedCover> covers = classify_instance(fam);
        expect(covers.size() == 2, "q=" + std::to_string(q) +
                                       ": exactly two Hurwitz classes");
        const ClassifiedCover* q44 = nullptr;
        const ClassifiedCover* q244 = nullptr;
        for (const ClassifiedCover& c : covers) {
            expect(c.report.N == 0 && c.report.special,
                   "q=" + std::to_string(q) +
                       ": every class must be special with N = 0");
            if (c.tag == "dicyclic-q44") q44 = &c;
            if (c.tag == "dicyclic-2q44") q244 = &c;
        }
        expect(q44 != nullptr && q244 != nullptr,
               "q=" + std::to_string(q) +
                   ": classes must have branching {q,4,4} and {2q,4,4}");
        expect(q44->cm_status == kCmStatusType &&
                   q44->cm_type->conductors ==
                       std::vector<unsigned long>{4 * q},
               "q=" + std::to_string(q) + ": {q,4,4} conductor must be 4q");
        std::set<unsigned long> got, want;
        for (const auto& [factor, u] : q44->cm_type->embeddings) {
            expect(factor == 0, "single-factor type");
            got.insert(u);
        }
        for (unsigned long j = 1; j < q; ++j) want.insert((q + 4 * j) % (4 * q));
        expect(got.size() == q - 1,
               "q=" + std::to_string(q) + ": q-1 distinct embeddings");
        expect(got == want, "q=" + std::to_string(q) +
                                ": embedding exponents must be q+4j mod 4q");
    }
    expect(seconds_since(start) < 20.0, "must finish within 20 s");
}

void criterion_4() {
    const auto start = clock_type::now();
    const FamilyInstance fam = build_family(FamilySpec::parse("quaternion8"));
    const std::vector<ClassifiedCover> covers = classify_instance(fam);
    expect(covers.size() == 1, "exactly one Hurwitz class");
    const ClassifiedCover& c = covers.front();
    expect(c.genus == 2, "genus must be 2");
    expect(c.report.N == 0 && c.report.special, "special with N = 0");

    const unsigned chi = fam.table->index_by_role("chi2");
    const std::vector<long long> mu =
        chevalley_weil(*fam.table, c.representative);
    for (unsigned i = 0; i < fam.table->char_count(); ++i)
        expect(mu[i] == (i == chi ? 1 : 0),
               "only the degree-2 character may appear, with multiplicity 1");
    expect(fam.table->chars[chi].indicator == -1,
           "the degree-2 character must be symplectic");

    expect(c.cm_status == kCmStatusType, "a CM type must be reported");
    expect(c.cm_type->conductors == std::vector<unsigned long>({4, 4}),
           "the CM algebra must be a product of two conductor-4 fields");
    using Emb = std::pair<unsigned, unsigned long>;
    expect(c.cm_type->embeddings ==
               std::vector<Emb>({{0, 1}, {1, 3}}),
           "embeddings must send the two factors to conjugate roots");

    const std::array<GroupAlgebraElement, 2> es =
        quaternion_component_idempotents(fam);
    expect(es[0] + es[1] ==
               central_idempotent(*fam.table, chi, IdempotentBase::Q),
           "component idempotents must sum to the character idempotent");
    expect(seconds_since(start) < 1.0, "must finish within 1 s");
}

void criterion_5() {
    for (const FamilyInstance& fam : instances256()) {
        const MultiplicityEvaluator evaluator(*fam.table);
        std::vector<long long> degrees;
        for (unsigned i = 0; i < fam.table->char_count(); ++i)
            degrees.push_back(fam.table->chars[i].degree);
        for (const MonodromyDatum& d : enumerate_ssg(fam.group)) {
            const std::vector<long long> mu = evaluator.mu(d);
            long long dot = 0;
            for (size_t i = 0; i < degrees.size(); ++i)
                dot += mu[i] * degrees[i];
            const unsigned long g = genus(d);
            expect(dot >= 0 && static_cast<unsigned long>(dot) == g,
                   fam.spec.to_string() + " " + datum_literal(d) +
                       ": multiplicity total must equal the genus");
            const std::string tag = classification_tag(fam.spec, d);
            if (tag == "metacyclic-main")
                expect(g == (fam.spec.n - 2) * (fam.spec.q - 1) / 2,
                       fam.spec.to_string() +
                           ": main-class genus must be (n-2)(q-1)/2");
            else if (tag == "dicyclic-q44")
                expect(g == fam.spec.q - 1,
                       fam.spec.to_string() + ": {q,4,4} genus must be q-1");
            else if (tag == "dicyclic-2q44")
                expect(g == fam.spec.q,
                       fam.spec.to_string() + ": {2q,4,4} genus must be q");
            else if (tag == "quaternion")
                expect(g == 2, "quaternion genus must be 2");
        }
    }
}

void criterion_6() {
    for (const FamilyInstance& fam : instances256()) {
        const CharacterTable& table = *fam.table;
        verify_orthogonality(table);
        unsigned long long degree_square_sum = 0;
        for (unsigned c = 0; c < table.char_count(); ++c) {
            const Character& chi = table.chars[c];
            degree_square_sum +=
                static_cast<unsigned long long>(chi.degree) * chi.degree;
            expect(chi.indicator >= -1 && chi.indicator <= 1,
                   "indicator must be -1, 0 or 1");
            expect(table.chars[chi.dual].dual == c,
                   "duality must be an involution");
            for (unsigned cl = 0; cl < table.classes.count(); ++cl)
                expect(table.chars[chi.dual].values[cl] ==
                           chi.values[table.classes.inverse_class[cl]],
                       "dual row must be the conjugate row");
        }
        expect(degree_square_sum == fam.group->order(),
               fam.spec.to_string() +
                   ": degree squares must sum to the group order");

        const CharacterTable generic = CharacterTable::generic(fam.group);
        expect(generic.char_count() == table.char_count(),
               fam.spec.to_string() + ": generic table row count");
        for (unsigned c = 0; c < table.char_count(); ++c) {
            expect(generic.chars[c].degree == table.chars[c].degree &&
                       generic.chars[c].indicator == table.chars[c].indicator &&
                       generic.chars[c].dual == table.chars[c].dual,
                   fam.spec.to_string() + ": generic row metadata");
            for (unsigned cl = 0; cl < table.classes.count(); ++cl)
                expect(generic.chars[c].values[cl] == table.chars[c].values[cl],
                       fam.spec.to_string() +
                           ": generic and closed-form values must agree");
        }
    }
}

void criterion_7() {
    for (const FamilyInstance& fam : instances256()) {
        for (unsigned c = 0; c < fam.table->char_count(); ++c) {
            const MatrixRep rep = matrix_rep(fam, c);
            for (const Elt g : family_generators(fam.spec)) {
                const unsigned cls = fam.table->classes.class_of[g];
                expect(element_image(rep, g).char_poly() ==
                           char_poly_from_profile(
                               fam.group->element_order(g),
                               fam.table->chars[c].profiles[cls]),
                       fam.spec.to_string() + " character " +
                           std::to_string(c) + ": matrix eigenvalues at " +
                           fam.group->label(g) +
                           " must match the certified profile");
            }
        }
    }
}

void criterion_8() {
    for (const unsigned long q : odd_primes_upto(199)) {
        for (unsigned long n = 2; n < q; ++n) {
            if ((q - 1) % n != 0) continue;
            for (unsigned long k = 2; k < q; ++k) {
                if (multiplicative_order(k, q) != n) continue;
                const KOrbitData od = k_orbit_data(q, n, k);
                const std::string where = "q=" + std::to_string(q) +
                                          " n=" + std::to_string(n) +
                                          " k=" + std::to_string(k);
                if (n % 2 == 0) {
                    for (const unsigned long s : od.sums)
                        expect(s == n * q / 2,
                               where + ": even-order orbit sums must be nq/2");
                } else if (n == 3) {
                    unsigned long residues_q = 0;
                    for (unsigned long l = 1; l < q; ++l) {
                        const unsigned long s = od.sums[od.orbit_of[l]];
                        expect(s == q || s == 2 * q,
                               where + ": order-3 orbit sums must be q or 2q");
                        if (s == q) ++residues_q;
                    }
                    expect(residues_q == (q - 1) / 2,
                           where +
                               ": exactly (q-1)/2 residues must have sum q");
                } else {
                    bool found = false;
                    for (unsigned long l = 1; l < q && !found; ++l)
                        if (od.sums[od.orbit_of[l]] > q &&
                            od.sums[od.orbit_of[q - l]] > q)
                            found = true;
                    expect(found, where +
                                      ": some l must have both S_l and "
                                      "S_{q-l} above q");
                }
            }
        }
    }
}

void criterion_9() {
    unsigned checked = 0;
    for (const unsigned long q : odd_primes_upto(31)) {
        if ((q - 1) % 3 != 0) continue;
        for (unsigned long k = 2; k < q; ++k) {
            if (multiplicative_order(k, q) != 3) continue;
            expect(cyclic_signature_crosscheck(q, k),
                   "signature cross-check failed for q=" + std::to_string(q) +
                       " k=" + std::to_string(k));
            ++checked;
        }
    }
    expect(checked == 8, "two multipliers for each of q = 7, 13, 19, 31");
}

void criterion_10() {
    unsigned long verified = 0;
    const auto sweep = [&](const FamilyInstance& fam) {
        for (const ClassifiedCover& c : classify_instance(fam)) {
            if (!c.cm_type) continue;
            expect(c.cm_verified,
                   fam.spec.to_string() + " " + c.class_id +
                       ": reported CM type must pass matrix verification");
            ++verified;
        }
    };
    for (const unsigned long q : {7ul, 13ul, 19ul, 31ul})
        sweep(build_family(
            FamilySpec::parse("metacyclic:q=" + std::to_string(q) + ",n=3")));
    for (const unsigned long q : odd_primes_upto(31))
        sweep(build_family(
            FamilySpec::parse("dicyclic:q=" + std::to_string(q))));
    sweep(build_family(FamilySpec::parse("quaternion8")));
    expect(verified >= 25, "expected at least 25 verified CM types, found " +
                               std::to_string(verified));
}

struct Criterion {
    int index;
    const char* name;
    std::function<void()> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "main-class multiplicity profile for q=31, n=5", criterion_1},
        {2, "metacyclic specialness sweep (q <= 31, n <= 6)", criterion_2},
        {3, "dicyclic classification sweep (q <= 31)", criterion_3},
        {4, "quaternion cover analysis", criterion_4},
        {5, "genus identities across all spherical systems (#G <= 256)",
         criterion_5},
        {6, "character-table property suite (#G <= 256)", criterion_6},
        {7, "generator eigenvalue profiles vs explicit matrices",
         criterion_7},
        {8, "multiplier-orbit sum laws (q <= 199)", criterion_8},
        {9, "cyclic signature cross-check (q <= 31)", criterion_9},
        {10, "CM-type matrix verification across all reports", criterion_10},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = clock_type::now();
        std::string reason;
        try {
            c.body();
        } catch (const std::exception& e) {
            reason = e.what();
        }
        const double elapsed = seconds_since(start);
        if (reason.empty()) {
            std::printf("criterion %2d [%s]: PASS (%.2fs)\n", c.index, c.name,
                        elapsed);
        } else {
            ++failed;
            std::printf("criterion %2d [%s]: FAIL (%.2fs): %s\n", c.index,
                        c.name, elapsed, reason.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/10 criteria passed\n",
                10 - failed);
    return failed;
}
