#include "cm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "hodge.hpp"
#include "matrix.hpp"
#include "numtheory.hpp"
#include "rational.hpp"

namespace branchcover {

namespace {

void check_same_group(const GroupAlgebraElement& a,
                      const GroupAlgebraElement& b) {
    require(a.group != nullptr && a.group.get() == b.group.get(),
            "group algebra operands must share a group");
}

} // namespace

GroupAlgebraElement GroupAlgebraElement::zero(
    std::shared_ptr<const FiniteGroup> g) {
    require(g != nullptr, "group must not be null");
    GroupAlgebraElement e;
    e.group = std::move(g);
    e.coeffs.assign(e.group->order(), Cyclotomic::zero());
    return e;
}

GroupAlgebraElement GroupAlgebraElement::one(
    std::shared_ptr<const FiniteGroup> g) {
    GroupAlgebraElement e = zero(std::move(g));
    e.coeffs[e.group->identity()] = Cyclotomic::one();
    return e;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(
    const GroupAlgebraElement& o) {
    check_same_group(*this, o);
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(
    const GroupAlgebraElement& o) {
    check_same_group(*this, o);
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

GroupAlgebraElement GroupAlgebraElement::operator+(
    const GroupAlgebraElement& o) const {
    GroupAlgebraElement out = *this;
    out += o;
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator-(
    const GroupAlgebraElement& o) const {
    GroupAlgebraElement out = *this;
    out -= o;
    return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(
    const GroupAlgebraElement& o) const {
    check_same_group(*this, o);
    const FiniteGroup& G = *group;
    GroupAlgebraElement out = zero(group);
    out.base_order = base_order;
    const unsigned n = G.order();
    for (unsigned x = 0; x < n; ++x) {
        if (coeffs[x].is_zero()) continue;
        for (unsigned y = 0; y < n; ++y) {
            if (o.coeffs[y].is_zero()) continue;
            out.coeffs[G.mul(static_cast<Elt>(x), static_cast<Elt>(y))] +=
                coeffs[x] * o.coeffs[y];
        }
    }
    return out;
}

GroupAlgebraElement GroupAlgebraElement::scaled(const Cyclotomic& c) const {
    GroupAlgebraElement out = *this;
    for (Cyclotomic& v : out.coeffs) v *= c;
    return out;
}

bool GroupAlgebraElement::operator==(const GroupAlgebraElement& o) const {
    check_same_group(*this, o);
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != o.coeffs[i]) return false;
    return true;
}

bool GroupAlgebraElement::is_idempotent() const {
    return (*this) * (*this) == *this;
}

bool GroupAlgebraElement::is_central() const {
    const FiniteGroup& G = *group;
    const unsigned n = G.order();
    for (unsigned x = 0; x < n; ++x) {
        const Elt xi = G.inverse(static_cast<Elt>(x));
        for (unsigned z = 0; z < n; ++z) {
            const Elt zz = static_cast<Elt>(z);
            if (coeffs[G.mul(xi, zz)] != coeffs[G.mul(zz, xi)]) return false;
        }
    }
    return true;
}

GroupAlgebraElement central_idempotent(const CharacterTable& table, unsigned c,
                                       IdempotentBase base) {
    require(c < table.char_count(), "character index out of range");
    const std::vector<unsigned>& orbit =
        base == IdempotentBase::Q
            ? table.galois_orbits_Q[table.orbit_Q_of[c]]
            : table.galois_orbits_Qi4[table.orbit_Qi4_of[c]];
    const FiniteGroup& G = *table.group;
    GroupAlgebraElement e = GroupAlgebraElement::zero(table.group);
    e.base_order = base == IdempotentBase::Q ? 1 : 4;
    const Cyclotomic scale = Cyclotomic::from_rational(
        Rational(static_cast<long>(table.chars[c].degree),
                 static_cast<long>(G.order())));
    for (unsigned x = 0; x < G.order(); ++x) {
        const unsigned cls =
            table.classes.class_of[G.inverse(static_cast<Elt>(x))];
        Cyclotomic sum = Cyclotomic::zero();
        for (const unsigned cc : orbit) sum += table.chars[cc].values[cls];
        e.coeffs[x] = sum * scale;
    }
    return e;
}

void validate_cm_type(const CMType& type) {
    require(!type.conductors.empty(), "CM type needs at least one factor");
    for (const unsigned long N : type.conductors)
        require(N >= 3, "CM factor conductor must be at least 3");
    std::vector<std::set<unsigned long>> per_factor(type.conductors.size());
    for (const auto& [f, u] : type.embeddings) {
        require(f < type.conductors.size(),
                "embedding references a missing factor");
        const unsigned long N = type.conductors[f];
        require(u > 0 && u < N && gcd_ull(u, N) == 1,
                "embedding exponent must be a unit mod the conductor");
        require(per_factor[f].insert(u).second, "duplicate embedding");
        require(per_factor[f].find(N - u) == per_factor[f].end(),
                "embedding set contains a conjugate pair");
    }
    for (size_t f = 0; f < type.conductors.size(); ++f)
        require(per_factor[f].size() == euler_phi(type.conductors[f]) / 2,
                "embedding count must be half the field degree");
}

CMType conjugate_type(const CMType& type) {
    CMType out;
    out.conductors = type.conductors;
    for (const auto& [f, u] : type.embeddings)
        out.embeddings.push_back({f, (type.conductors[f] - u)});
    return out;
}

nlohmann::ordered_json cm_type_json(const CMType& type) {
    nlohmann::ordered_json j;
    j["field"]["kind"] =
        type.conductors.size() == 1 ? "cyclotomic" : "product";
    j["field"]["conductors"] = type.conductors;
    nlohmann::ordered_json emb = nlohmann::ordered_json::array();
    for (const auto& [f, u] : type.embeddings) {
        nlohmann::ordered_json one;
        one["factor"] = f;
        one["exponent"] = u;
        emb.push_back(std::move(one));
    }
    j["embeddings"] = std::move(emb);
    return j;
}

CMType metacyclic_type_from_orbits(const KOrbitData& orbits) {
    require(orbits.n == 3,
            "CM-type construction needs branching degree 3; degree " +
                std::to_string(orbits.n) +
                " covers are not special (or have genus 0 for degree 2)");
    CMType type;
    type.conductors = {orbits.q};
    const size_t half = orbits.reps.size() / 2;
    for (size_t i = 0; i < half; ++i) {
        unsigned long u = orbits.reps[i] % orbits.q;
        for (unsigned j = 0; j < 3; ++j) {
            type.embeddings.push_back({0, u});
            u = (u * orbits.k) % orbits.q;
        }
    }
    validate_cm_type(type);
    return type;
}

CMType metacyclic_cm_type(const FamilyInstance& fam, const MonodromyDatum& d) {
    require(fam.spec.kind == FamilyKind::metacyclic,
            "metacyclic CM type requested for a different family");
    const std::string tag = classification_tag(fam.spec, d);
    require(tag == "metacyclic-main",
            "CM-type construction needs the main branching class, not " + tag);
    CMType type = metacyclic_type_from_orbits(fam.orbits);
    const SpecialReport rep =
        specialness(*fam.table, chevalley_weil(*fam.table, d));
    ensure(rep.N == 0, "degree-three main datum must be special");
    ensure(type.embeddings.size() == genus(d),
           "embedding count must equal the genus");
    return type;
}

CMType dicyclic_cm_type(const FamilyInstance& fam, const MonodromyDatum& d) {
    require(fam.spec.kind == FamilyKind::dicyclic,
            "dicyclic CM type requested for a different family");
    const std::string tag = classification_tag(fam.spec, d);
    const unsigned long q = fam.spec.q;

    const std::vector<long long> mu = chevalley_weil(*fam.table, d);
    const SpecialReport rep = specialness(*fam.table, mu);
    ensure(rep.N == 0, "dicyclic data must be special");

    CMType type;
    if (tag == "dicyclic-q44") {
        type.conductors = {4 * q};
        for (unsigned long j = 1; j < q; ++j)
            type.embeddings.push_back({0, (q + 4 * j) % (4 * q)});
    } else {
        ensure(tag == "dicyclic-2q44", "unexpected dicyclic tag " + tag);
        const long long mu1 = mu[fam.table->index_by_role("linear:1")];
        const long long mu3 = mu[fam.table->index_by_role("linear:3")];
        ensure(mu1 + mu3 == 1,
               "exactly one faithful linear character must be live");
        type.conductors = {4, 4 * q};
        type.embeddings.push_back({0, mu1 == 1 ? 1ul : 3ul});
        for (unsigned long j = 1; j < q; ++j)
            type.embeddings.push_back({1, (q + 4 * j) % (4 * q)});
    }
    validate_cm_type(type);
    ensure(type.embeddings.size() == genus(d),
           "embedding count must equal the genus");
    return type;
}

CMType quaternion_cm_type() {
    CMType type;
    type.conductors = {4, 4};
    type.embeddings = {{0, 1}, {1, 3}};
    validate_cm_type(type);
    return type;
}

std::array<GroupAlgebraElement, 2> quaternion_component_idempotents(
    const FamilyInstance& fam) {
    require(fam.spec.kind == FamilyKind::quaternion8,
            "quaternion idempotents requested for a different family");
    const FiniteGroup& G = *fam.group;
    const Elt k = G.element_by_label("k");
    std::array<GroupAlgebraElement, 2> out = {
        GroupAlgebraElement::zero(fam.group),
        GroupAlgebraElement::zero(fam.group)};
    const Cyclotomic quarter = Cyclotomic::from_rational(Rational(1, 4));
    for (int t = 0; t < 2; ++t) {
        const long long p = t == 0 ? 1 : 3;
        out[t].base_order = 4;
        for (long long s = 0; s < 4; ++s)
            out[t].coeffs[G.power(k, s)] +=
                Cyclotomic::root_of_unity(4, -s * p) * quarter;
    }
    return out;
}

namespace {

// Exact eigenvalue exponents of a matrix whose spectrum lies among the N-th
// roots of unity: repeatedly locate a root of the characteristic polynomial
// among zeta_N^u and deflate.  Returns false when some eigenvalue is not an
// N-th root of unity.
bool eigen_exponents(const CycloMatrix& M, unsigned long N,
                     std::multiset<unsigned long>& out) {
    std::vector<Cyclotomic> poly = M.char_poly(); // constant first
    while (poly.size() > 1) {
        bool found = false;
        for (unsigned long u = 0; u < N && !found; ++u) {
            const Cyclotomic r =
                Cyclotomic::root_of_unity(N, static_cast<long long>(u));
            Cyclotomic acc = Cyclotomic::zero();
            Cyclotomic powr = Cyclotomic::one();
            for (const Cyclotomic& cf : poly) {
                acc += cf * powr;
                powr *= r;
            }
            if (!acc.is_zero()) continue;
            found = true;
            out.insert(u);
            // Synthetic division by (x - r).
            const size_t deg = poly.size() - 1;
            std::vector<Cyclotomic> quot(deg, Cyclotomic::zero());
            quot[deg - 1] = poly[deg];
            for (size_t i = deg - 1; i >= 1; --i)
                quot[i - 1] = poly[i] + r * quot[i];
            ensure((poly[0] + r * quot[0]).is_zero(),
                   "polynomial deflation left a remainder");
            poly = std::move(quot);
        }
        if (!found) return false;
    }
    return true;
}

std::string render_pairs(
    const std::multiset<std::pair<unsigned, unsigned long>>& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [f, u] : s) {
        if (!first) os << ", ";
        first = false;
        os << f << ":" << u;
    }
    os << "}";
    return os.str();
}

} // namespace

bool verify_cm_type_via_matrices(const FamilyInstance& fam,
                                 const MonodromyDatum& d, const CMType& claimed,
                                 std::string* diagnostics) {
    const CharacterTable& tab = *fam.table;
    const FiniteGroup& G = *fam.group;
    const std::vector<long long> mu = chevalley_weil(tab, d);

    std::multiset<std::pair<unsigned, unsigned long>> assembled;
    std::vector<unsigned long> conductors;

    switch (fam.spec.kind) {
    case FamilyKind::metacyclic: {
        require(classification_tag(fam.spec, d) == "metacyclic-main",
                "matrix verification needs a main branching datum");
        require(fam.spec.n == 3,
                "matrix verification covers branching degree 3 only");
        const unsigned long q = fam.spec.q;
        conductors = {q};
        for (unsigned j = 0; j < tab.char_count(); ++j) {
            if (tab.chars[j].role.rfind("induced:", 0) != 0) {
                ensure(mu[j] == 0, "unexpected live non-induced row");
                continue;
            }
            if (mu[j] == 0) continue;
            const MatrixRep rep = matrix_rep(fam, j);
            std::multiset<unsigned long> exps;
            if (!eigen_exponents(rep.gen_images[0], q, exps)) {
                if (diagnostics)
                    *diagnostics = "eigenvalue outside the root lattice";
                return false;
            }
            for (long long copy = 0; copy < mu[j]; ++copy)
                for (const unsigned long u : exps) assembled.insert({0, u});
        }
        break;
    }
    case FamilyKind::dicyclic: {
        const std::string tag = classification_tag(fam.spec, d);
        const unsigned long q = fam.spec.q;
        const Elt b2a = G.element_by_label("a*b^2"); // b^2 is central
        const unsigned twisted_factor = tag == "dicyclic-q44" ? 0 : 1;
        conductors = tag == "dicyclic-q44"
                         ? std::vector<unsigned long>{4 * q}
                         : std::vector<unsigned long>{4, 4 * q};
        const Cyclotomic i4 = Cyclotomic::root_of_unity(4, 1);
        for (unsigned j = 0; j < tab.char_count(); ++j) {
            if (mu[j] == 0) continue;
            const std::string& role = tab.chars[j].role;
            if (role.rfind("psi1_chi:", 0) == 0) {
                const MatrixRep rep = matrix_rep(fam, j);
                const CycloMatrix M = element_image(rep, b2a) * i4;
                std::multiset<unsigned long> exps;
                if (!eigen_exponents(M, 4 * q, exps)) {
                    if (diagnostics)
                        *diagnostics = "eigenvalue outside the root lattice";
                    return false;
                }
                for (long long copy = 0; copy < mu[j]; ++copy)
                    for (const unsigned long u : exps)
                        assembled.insert({twisted_factor, u});
            } else if (role == "linear:1" || role == "linear:3") {
                ensure(tag == "dicyclic-2q44",
                       "linear rows live only in the doubled branching class");
                const MatrixRep rep = matrix_rep(fam, j);
                const CycloMatrix M = element_image(rep, b2a) * i4;
                std::multiset<unsigned long> exps;
                if (!eigen_exponents(M, 4, exps) || exps.size() != 1) {
                    if (diagnostics)
                        *diagnostics = "linear eigenvalue outside zeta_4";
                    return false;
                }
                assembled.insert({0, *exps.begin()});
            } else {
                ensure(false, "unexpected live row for a dicyclic datum");
            }
        }
        break;
    }
    case FamilyKind::quaternion8: {
        conductors = {4, 4};
        const unsigned chi = tab.index_by_role("chi2");
        ensure(mu[chi] == 1, "quaternion datum must use the degree-2 row once");
        const MatrixRep rep = matrix_rep(fam, chi);
        const std::array<GroupAlgebraElement, 2> es =
            quaternion_component_idempotents(fam);
        const CycloMatrix K = element_image(rep, G.element_by_label("k"));
        for (unsigned t = 0; t < 2; ++t) {
            CycloMatrix E(rep.degree, rep.degree);
            for (unsigned x = 0; x < G.order(); ++x)
                if (!es[t].coeffs[x].is_zero())
                    E = E + element_image(rep, static_cast<Elt>(x)) *
                                es[t].coeffs[x];
            ensure(E * E == E, "component idempotent image must be idempotent");
            ensure(E.trace() == Cyclotomic::one(),
                   "component idempotent image must have rank one");
            const Cyclotomic val = (K * E).trace();
            bool matched = false;
            for (unsigned long u = 0; u < 4 && !matched; ++u) {
                if (val == Cyclotomic::root_of_unity(4, u)) {
                    assembled.insert({t, u});
                    matched = true;
                }
            }
            if (!matched) {
                if (diagnostics)
                    *diagnostics = "component action is not a zeta_4 power";
                return false;
            }
        }
        break;
    }
    case FamilyKind::cyclic:
        require(false, "no matrix CM verification for the cyclic family path");
    }

    if (conductors != claimed.conductors) {
        if (diagnostics)
            *diagnostics = "claimed conductors do not match the construction";
        return false;
    }
    std::multiset<std::pair<unsigned, unsigned long>> want, want_conj;
    for (const auto& [f, u] : claimed.embeddings) want.insert({f, u});
    for (const auto& [f, u] : conjugate_type(claimed).embeddings)
        want_conj.insert({f, u % claimed.conductors[f]});
    if (assembled == want || assembled == want_conj) return true;
    if (diagnostics)
        *diagnostics = "assembled " + render_pairs(assembled) + " vs claimed " +
                       render_pairs(want);
    return false;
}

bool cyclic_signature_crosscheck(unsigned long q, unsigned long k) {
    require(is_prime(q) && q >= 3, "q must be an odd prime");
    require(k % q != 0 && multiplicative_order(k % q, q) == 3,
            "k must have order 3 mod q");

    std::set<unsigned long> ones;
    std::vector<long long> f(q, 0);
    for (unsigned long u = 1; u < q; ++u) {
        Rational acc(-1);
        for (unsigned j = 0; j < 3; ++j) {
            const unsigned long r = (pow_mod(k, j, q) * u) % q;
            acc += Rational(static_cast<long>(q - r), static_cast<long>(q));
        }
        acc.canonicalize();
        if (!is_integer(acc)) return false;
        const long long val = to_longlong(Integer(acc.get_num()));
        if (val != 0 && val != 1) return false;
        f[u] = val;
        if (val == 1) ones.insert(u);
    }
    for (unsigned long u = 1; u < q; ++u)
        if (f[u] + f[q - u] != 1) return false;

    const CMType type = metacyclic_type_from_orbits(
        k_orbit_data(q, 3, k));
    std::set<unsigned long> type_set;
    for (const auto& [fac, u] : type.embeddings) {
        (void)fac;
        type_set.insert(u);
    }
    return ones == type_set;
}

} // namespace branchcover
