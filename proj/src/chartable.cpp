#include "chartable.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "config.hpp"
#include "errors.hpp"
#include "numtheory.hpp"

namespace branchcover {

unsigned long long group_exponent_of(const FiniteGroup& G) {
    unsigned long long e = 1;
    for (Elt x = 0; x < G.order(); ++x) e = lcm_ull(e, G.element_order(x));
    return e;
}

namespace {

using ull = unsigned long long;

ull mulmod(ull a, ull b, ull p) {
    return static_cast<ull>(static_cast<unsigned __int128>(a) * b % p);
}

// Image of a cyclotomic value under the ring homomorphism determined by
// zeta_L -> omega_L, where omega_L has multiplicative order L in F_p and the
// value's order divides L.
ull value_mod_p(const Cyclotomic& v, ull p, ull omega_L, ull L) {
    const ull o = v.order();
    ensure(L % o == 0, "modular embedding: value order does not divide L");
    const ull omega_o = pow_mod(omega_L, L / o, p);
    ull acc = 0, w = 1;
    for (const Rational& c : v.coeffs()) {
        const ull nv = mpz_fdiv_ui(mpq_numref(c.get_mpq_t()), p);
        const ull dv = mpz_fdiv_ui(mpq_denref(c.get_mpq_t()), p);
        ensure(dv != 0, "modular embedding: denominator divisible by p");
        if (nv != 0) acc = (acc + mulmod(mulmod(nv, inv_mod(dv, p), p), w, p)) % p;
        w = mulmod(w, omega_o, p);
    }
    return acc;
}

// ------------------------------------------------------------------ profiles

struct ProfileContext {
    const FiniteGroup* G;
    const ConjugacyClasses* cls;
    unsigned identity_class;
    ull e;                       // group exponent
    ull p;                       // prime = 1 mod e, > max(2e, 256)
    ull omega_e;                 // element of order e in F_p
    std::vector<std::vector<unsigned>> power_class; // class -> class of rep^j
};

ProfileContext make_profile_context(const FiniteGroup& G,
                                    const ConjugacyClasses& cls) {
    ProfileContext ctx;
    ctx.G = &G;
    ctx.cls = &cls;
    ctx.identity_class = cls.class_of[G.identity()];
    ctx.e = group_exponent_of(G);
    const ull bound = std::max<ull>(2 * ctx.e, 256);
    ctx.p = least_prime_1_mod(ctx.e, bound);
    const ull g = primitive_root(ctx.p);
    ctx.omega_e = pow_mod(g, (ctx.p - 1) / ctx.e, ctx.p);
    ctx.power_class.resize(cls.count());
    for (unsigned c = 0; c < cls.count(); ++c) {
        const Elt x = cls.representative[c];
        const unsigned m = cls.representative_order[c];
        ctx.power_class[c].resize(m);
        Elt pw = G.identity();
        for (unsigned j = 0; j < m; ++j) {
            ctx.power_class[c][j] = cls.class_of[pw];
            pw = G.mul(pw, x);
        }
    }
    return ctx;
}

// Recovers the eigenvalue profile of one row at one class by modular inverse
// DFT, then certifies it exactly: the synthesized value must equal the given
// value, and power-class consistency (checked by the caller across classes)
// extends the identity to all powers via Galois conjugation.
std::vector<unsigned> profile_at_class(const ProfileContext& ctx,
                                       const std::vector<ull>& row_mod,
                                       unsigned degree, unsigned c) {
    const unsigned m = ctx.cls->representative_order[c];
    const ull p = ctx.p;
    std::vector<ull> v(m);
    for (unsigned j = 0; j < m; ++j) v[j] = row_mod[ctx.power_class[c][j]];
    const ull omega_m = pow_mod(ctx.omega_e, ctx.e / m, p);
    const ull omega_m_inv = inv_mod(omega_m, p);
    const ull m_inv = inv_mod(m, p);
    std::vector<unsigned> E(m);
    unsigned long long total = 0;
    for (unsigned alpha = 0; alpha < m; ++alpha) {
        const ull step = pow_mod(omega_m_inv, alpha, p);
        ull acc = 0, w = 1;
        for (unsigned j = 0; j < m; ++j) {
            acc = (acc + mulmod(v[j], w, p)) % p;
            w = mulmod(w, step, p);
        }
        const ull count = mulmod(acc, m_inv, p);
        require(count <= degree,
                "character row is inconsistent: eigenvalue multiplicity out of "
                "range at a class of order " + std::to_string(m));
        E[alpha] = static_cast<unsigned>(count);
        total += count;
    }
    require(total == degree,
            "character row is inconsistent: eigenvalue multiplicities do not "
            "sum to the degree");
    return E;
}

Cyclotomic synthesize_profile(unsigned m, const std::vector<unsigned>& E) {
    std::vector<long long> weights(E.begin(), E.end());
    return Cyclotomic::from_exponent_vector(m, weights);
}

// Generators of the group of units mod e, or (when fixing_zeta4 and 4 | e) of
// the subgroup of units congruent to 1 mod 4.  The subgroup is exactly the
// set of automorphisms of Q(zeta_e) that fix zeta_4; when 4 does not divide e
// every automorphism extends to one fixing zeta_4, so the full group is used.
std::vector<ull> unit_group_generators(ull e, bool fixing_zeta4) {
    std::vector<ull> gens;
    if (e <= 2) return gens;
    const bool restrict4 = fixing_zeta4 && e % 4 == 0;
    auto crt_lift = [&](ull g, ull pa) -> ull {
        // t = g mod pa, t = 1 mod e/pa
        const ull rest = e / pa;
        const ull delta = (g % pa + pa - 1) % pa;
        const ull t = (1 + rest * ((delta * inv_mod(rest % pa, pa)) % pa)) % e;
        ensure(t % pa == g % pa && t % rest == 1 % rest, "CRT lift failed");
        return t;
    };
    for (auto [p, a] : factorize(e)) {
        ull pa = 1;
        for (unsigned i = 0; i < a; ++i) pa *= p;
        if (p == 2) {
            if (a >= 3) {
                gens.push_back(crt_lift(5 % pa, pa));
                if (!restrict4) gens.push_back(crt_lift(pa - 1, pa));
            } else if (a == 2 && !restrict4) {
                gens.push_back(crt_lift(3, pa));
            }
            continue;
        }
        ull g = primitive_root(p);
        if (a >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
        gens.push_back(crt_lift(g % pa, pa));
    }
    return gens;
}

// ---------------------------------------------------- polynomials over F_p

using PolyP = std::vector<ull>; // constant term first

int pdeg(const PolyP& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)]) return i;
    return -1;
}

void ptrim(PolyP& f) { f.resize(static_cast<size_t>(pdeg(f) + 1)); }

PolyP pmul(const PolyP& a, const PolyP& b, ull p) {
    const int da = pdeg(a), db = pdeg(b);
    if (da < 0 || db < 0) return {};
    PolyP out(static_cast<size_t>(da + db) + 1, 0);
    for (int i = 0; i <= da; ++i) {
        if (!a[static_cast<size_t>(i)]) continue;
        for (int j = 0; j <= db; ++j)
            out[static_cast<size_t>(i + j)] =
                (out[static_cast<size_t>(i + j)] +
                 mulmod(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)], p)) %
                p;
    }
    return out;
}

void pdivmod(const PolyP& num, const PolyP& den, PolyP& quot, PolyP& rem,
             ull p) {
    const int dd = pdeg(den);
    ensure(dd >= 0, "pdivmod: zero divisor");
    rem = num;
    ptrim(rem);
    int dn = pdeg(rem);
    quot.assign(dn >= dd ? static_cast<size_t>(dn - dd) + 1 : 1, 0);
    const ull lead_inv = inv_mod(den[static_cast<size_t>(dd)], p);
    while (dn >= dd) {
        const ull c = mulmod(rem[static_cast<size_t>(dn)], lead_inv, p);
        quot[static_cast<size_t>(dn - dd)] = c;
        for (int j = 0; j <= dd; ++j) {
            auto& slot = rem[static_cast<size_t>(dn - dd + j)];
            slot = (slot + p - mulmod(c, den[static_cast<size_t>(j)], p)) % p;
        }
        dn = pdeg(rem);
    }
}

PolyP pmod(const PolyP& num, const PolyP& den, ull p) {
    PolyP q, r;
    pdivmod(num, den, q, r, p);
    ptrim(r);
    return r;
}

PolyP pgcd(PolyP a, PolyP b, ull p) {
    ptrim(a);
    ptrim(b);
    while (pdeg(b) >= 0) {
        PolyP r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    const int d = pdeg(a);
    if (d >= 0) {
        const ull inv = inv_mod(a[static_cast<size_t>(d)], p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

PolyP ppowmod(PolyP base, ull e, const PolyP& f, ull p) {
    PolyP acc{1};
    base = pmod(base, f, p);
    while (e) {
        if (e & 1) acc = pmod(pmul(acc, base, p), f, p);
        e >>= 1;
        if (e) base = pmod(pmul(base, base, p), f, p);
    }
    return acc;
}

// Roots of a squarefree polynomial that splits into linear factors over F_p
// (Cantor-Zassenhaus with a fixed-seed generator for determinism).
void split_roots(const PolyP& f, ull p, std::mt19937_64& rng,
                 std::vector<ull>& out) {
    const int d = pdeg(f);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(mulmod(p - f[0] % p, inv_mod(f[1], p), p));
        return;
    }
    for (;;) {
        const ull c = rng() % p;
        PolyP g = ppowmod(PolyP{c, 1}, (p - 1) / 2, f, p);
        if (g.empty()) g.assign(1, 0);
        g[0] = (g[0] + p - 1) % p;
        PolyP h = pgcd(f, g, p);
        const int dh = pdeg(h);
        if (dh <= 0 || dh >= d) continue;
        PolyP q, r;
        pdivmod(f, h, q, r, p);
        ensure(pdeg(r) < 0, "split_roots: non-exact factor division");
        split_roots(h, p, rng, out);
        split_roots(q, p, rng, out);
        return;
    }
}

// Minimal polynomial of a dim x dim matrix over F_p (lcm of the annihilators
// of the standard basis vectors, found by Krylov iteration).
PolyP matrix_min_poly(const std::vector<std::vector<ull>>& R, ull p) {
    const size_t dim = R.size();
    PolyP f{1};
    for (size_t t = 0; t < dim && static_cast<size_t>(pdeg(f)) < dim; ++t) {
        // Echelon basis of the Krylov space of e_t with coefficient tracking.
        std::vector<std::vector<ull>> basis;   // echelon vectors, leading 1
        std::vector<size_t> lead;              // leading index per basis row
        std::vector<PolyP> combo;              // expression in powers R^j e_t
        std::vector<ull> w(dim, 0);
        w[t] = 1;
        PolyP ann;
        for (size_t j = 0;; ++j) {
            std::vector<ull> u = w;
            PolyP cu(j + 1, 0);
            cu[j] = 1;
            for (size_t b = 0; b < basis.size(); ++b) {
                const ull factor = u[lead[b]];
                if (!factor) continue;
                for (size_t i = 0; i < dim; ++i)
                    u[i] = (u[i] + p - mulmod(factor, basis[b][i], p)) % p;
                for (size_t i = 0; i < combo[b].size(); ++i)
                    cu[i] = (cu[i] + p - mulmod(factor, combo[b][i], p)) % p;
            }
            size_t l = dim;
            for (size_t i = 0; i < dim; ++i)
                if (u[i]) { l = i; break; }
            if (l == dim) {
                ann = std::move(cu);
                break;
            }
            const ull inv = inv_mod(u[l], p);
            for (auto& x : u) x = mulmod(x, inv, p);
            for (auto& x : cu) x = mulmod(x, inv, p);
            basis.push_back(std::move(u));
            lead.push_back(l);
            combo.push_back(std::move(cu));
            // advance w = R * w
            std::vector<ull> nw(dim, 0);
            for (size_t i = 0; i < dim; ++i) {
                ull acc = 0;
                for (size_t k = 0; k < dim; ++k)
                    acc = (acc + mulmod(R[i][k], w[k], p)) % p;
                nw[i] = acc;
            }
            w = std::move(nw);
        }
        const PolyP g = pgcd(f, ann, p);
        PolyP q, r;
        pdivmod(pmul(f, ann, p), g, q, r, p);
        ensure(pdeg(r) < 0, "matrix_min_poly: lcm division not exact");
        f = std::move(q);
        ptrim(f);
        const ull inv = inv_mod(f[f.size() - 1], p);
        for (auto& c : f) c = mulmod(c, inv, p);
    }
    return f;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(std::vector<std::vector<ull>>& rows, ull p) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    const size_t ncols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        const ull inv = inv_mod(rows[rank][col], p);
        for (auto& x : rows[rank]) x = mulmod(x, inv, p);
        for (size_t rr = 0; rr < rows.size(); ++rr) {
            if (rr == rank || rows[rr][col] == 0) continue;
            const ull factor = rows[rr][col];
            for (size_t cc = 0; cc < ncols; ++cc)
                rows[rr][cc] =
                    (rows[rr][cc] + p - mulmod(factor, rows[rank][cc], p)) % p;
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

// Kernel basis of a square matrix over F_p.
std::vector<std::vector<ull>> kernel_basis(std::vector<std::vector<ull>> A,
                                           ull p) {
    const size_t dim = A.empty() ? 0 : A[0].size();
    const std::vector<size_t> pivots = rref(A, p);
    std::vector<bool> is_pivot(dim, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<ull>> out;
    for (size_t free_col = 0; free_col < dim; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<ull> v(dim, 0);
        v[free_col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = (p - A[r][free_col] % p) % p;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

// ------------------------------------------------------------ table assembly

CharacterTable CharacterTable::from_raw_values(
    std::shared_ptr<const FiniteGroup> Gp,
    std::vector<std::vector<Cyclotomic>> rows, std::vector<std::string> roles) {
    ensure(Gp != nullptr, "from_raw_values: null group");
    const FiniteGroup& G = *Gp;
    CharacterTable table;
    table.group = Gp;
    table.classes = ConjugacyClasses::compute(G);
    const unsigned r = table.classes.count();
    table.identity_class = table.classes.class_of[G.identity()];
    table.group_exponent = group_exponent_of(G);

    require(rows.size() == r,
            "character table needs exactly one row per conjugacy class");
    if (roles.empty()) roles.assign(r, std::string());
    ensure(roles.size() == r, "role list length mismatch");

    const ProfileContext ctx = make_profile_context(G, table.classes);

    // Degrees and modular embeddings.
    std::vector<Character> chars(r);
    unsigned long long degree_square_sum = 0;
    for (unsigned i = 0; i < r; ++i) {
        require(rows[i].size() == r, "character row has wrong length");
        const Cyclotomic& dval = rows[i][table.identity_class];
        require(dval.is_rational() && is_integer(dval.rational_value()) &&
                    dval.rational_value() > 0,
                "character degree must be a positive integer");
        const Integer dz = dval.rational_value().get_num();
        require(dz <= Integer(static_cast<unsigned long>(G.order())),
                "character degree exceeds the group order");
        chars[i].degree = static_cast<unsigned>(to_longlong(dz));
        degree_square_sum += static_cast<unsigned long long>(chars[i].degree) *
                             chars[i].degree;
    }
    require(degree_square_sum == G.order(),
            "character degrees do not satisfy the sum-of-squares identity");

    // Profiles with exact certification, and canonical value synthesis.  One
    // inverse DFT is run per power-orbit of classes; the profiles of all
    // power classes follow by mapping eigenvalue exponents, and every class
    // must then reproduce its supplied value exactly.  This certifies the
    // identity value(rep^j) = sum_alpha E_alpha zeta_m^{alpha j} for every
    // class and every power j, which pins the profiles uniquely.
    for (unsigned i = 0; i < r; ++i) {
        std::vector<ull> row_mod(r);
        for (unsigned c = 0; c < r; ++c) {
            require(ctx.e % rows[i][c].order() == 0,
                    "character value order does not divide the group exponent");
            row_mod[c] = value_mod_p(rows[i][c], ctx.p, ctx.omega_e, ctx.e);
        }
        chars[i].profiles.assign(r, {});
        chars[i].values.resize(r);
        std::vector<char> filled(r, 0);
        for (unsigned c = 0; c < r; ++c) {
            if (filled[c]) continue;
            const unsigned m = table.classes.representative_order[c];
            const std::vector<unsigned> E =
                profile_at_class(ctx, row_mod, chars[i].degree, c);
            for (unsigned t = 0; t < m; ++t) {
                const unsigned target = ctx.power_class[c][t];
                const unsigned g =
                    t == 0 ? m : static_cast<unsigned>(gcd_ull(t, m));
                const unsigned mt = m / g;
                ensure(mt == table.classes.representative_order[target],
                       "power class has unexpected element order");
                std::vector<unsigned> Et(mt, 0);
                for (unsigned alpha = 0; alpha < m; ++alpha)
                    if (E[alpha])
                        Et[static_cast<size_t>(
                            (static_cast<ull>(t) * alpha % m) / g)] += E[alpha];
                if (!filled[target]) {
                    const Cyclotomic synth = synthesize_profile(mt, Et);
                    require(synth == rows[i][target],
                            "character row fails exact eigenvalue certification");
                    chars[i].profiles[target] = std::move(Et);
                    chars[i].values[target] = synth;
                    filled[target] = 1;
                } else {
                    require(chars[i].profiles[target] == Et,
                            "character row fails power-class profile "
                            "consistency");
                }
            }
        }
        for (unsigned c = 0; c < r; ++c)
            ensure(filled[c], "class missed by power-orbit certification");
        chars[i].role = roles[i];
    }

    // Canonical row order: ascending degree; ties broken by the profile table
    // in descending lexicographic order, which puts rows with eigenvalues
    // concentrated at exponent 0 first (so the trivial character is row 0).
    std::vector<unsigned> perm(r);
    for (unsigned i = 0; i < r; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](unsigned x, unsigned y) {
        if (chars[x].degree != chars[y].degree)
            return chars[x].degree < chars[y].degree;
        return chars[x].profiles > chars[y].profiles;
    });
    table.chars.reserve(r);
    for (unsigned i = 0; i < r; ++i) table.chars.push_back(std::move(chars[perm[i]]));
    for (unsigned i = 0; i + 1 < r; ++i)
        require(table.chars[i].profiles != table.chars[i + 1].profiles,
                "duplicate character rows");

    // Index by profile table for dual / Galois lookups.
    std::map<std::vector<std::vector<unsigned>>, unsigned> by_profile;
    for (unsigned i = 0; i < r; ++i) by_profile.emplace(table.chars[i].profiles, i);

    auto mapped_index = [&](unsigned i, ull t) -> unsigned {
        // Profile table of sigma_t applied to row i: alpha -> t*alpha mod m.
        std::vector<std::vector<unsigned>> mapped(r);
        for (unsigned c = 0; c < r; ++c) {
            const unsigned m = table.classes.representative_order[c];
            mapped[c].assign(m, 0);
            for (unsigned alpha = 0; alpha < m; ++alpha)
                mapped[c][static_cast<size_t>(
                    (static_cast<ull>(alpha) * (t % m)) % m)] +=
                    table.chars[i].profiles[c][alpha];
        }
        const auto it = by_profile.find(mapped);
        ensure(it != by_profile.end(),
               "Galois conjugate of a character row is missing from the table");
        return it->second;
    };

    const ull conj_t = table.group_exponent > 1 ? table.group_exponent - 1 : 1;
    for (unsigned i = 0; i < r; ++i) table.chars[i].dual = mapped_index(i, conj_t);
    for (unsigned i = 0; i < r; ++i)
        ensure(table.chars[table.chars[i].dual].dual == i,
               "dual map is not an involution");

    // Frobenius-Schur indicators, exactly (integer exponent accumulation).
    const ull e = table.group_exponent;
    const std::vector<unsigned> sq = square_class_map(G, table.classes);
    for (unsigned i = 0; i < r; ++i) {
        std::vector<long long> acc(e, 0);
        for (unsigned c = 0; c < r; ++c) {
            const unsigned target = sq[c];
            const unsigned m = table.classes.representative_order[target];
            const ull mult = e / m;
            const auto& E = table.chars[i].profiles[target];
            for (unsigned alpha = 0; alpha < m; ++alpha)
                if (E[alpha])
                    acc[(alpha * mult) % e] +=
                        static_cast<long long>(table.classes.size[c]) * E[alpha];
        }
        const Cyclotomic fs = Cyclotomic::from_exponent_vector(e, acc);
        ensure(fs.is_rational(), "Frobenius-Schur sum is not rational");
        const Rational iota =
            fs.rational_value() / Rational(static_cast<long>(G.order()));
        ensure(iota == Rational(-1) || iota == Rational(0) || iota == Rational(1),
               "Frobenius-Schur indicator outside {-1, 0, 1}: corrupt table");
        table.chars[i].indicator =
            iota == Rational(-1) ? -1 : (iota == Rational(1) ? 1 : 0);
        ensure((table.chars[i].indicator == 0) == (table.chars[i].dual != i),
               "indicator zero must coincide with a non-self-dual row");
    }

    // Galois orbits over Q and over Q(zeta_4), by uniting each row with its
    // image under generators of the relevant group of units mod e.
    std::vector<unsigned> parent_q(r), parent_i4(r);
    for (unsigned i = 0; i < r; ++i) parent_q[i] = parent_i4[i] = i;
    auto find = [](std::vector<unsigned>& par, unsigned x) -> unsigned {
        while (par[x] != x) {
            par[x] = par[par[x]];
            x = par[x];
        }
        return x;
    };
    auto unite = [&](std::vector<unsigned>& par, unsigned a, unsigned b) {
        a = find(par, a);
        b = find(par, b);
        if (a != b) par[std::max(a, b)] = std::min(a, b);
    };
    for (ull t : unit_group_generators(e, false))
        for (unsigned i = 0; i < r; ++i) unite(parent_q, i, mapped_index(i, t));
    for (ull t : unit_group_generators(e, true))
        for (unsigned i = 0; i < r; ++i) unite(parent_i4, i, mapped_index(i, t));
    auto collect = [&](std::vector<unsigned>& par,
                       std::vector<std::vector<unsigned>>& orbits,
                       std::vector<unsigned>& of) {
        std::map<unsigned, unsigned> root_to_orbit;
        of.assign(r, 0);
        for (unsigned i = 0; i < r; ++i) {
            const unsigned root = find(par, i);
            auto it = root_to_orbit.find(root);
            if (it == root_to_orbit.end()) {
                it = root_to_orbit.emplace(root, static_cast<unsigned>(orbits.size()))
                         .first;
                orbits.emplace_back();
            }
            of[i] = it->second;
            orbits[it->second].push_back(i);
        }
    };
    collect(parent_q, table.galois_orbits_Q, table.orbit_Q_of);
    collect(parent_i4, table.galois_orbits_Qi4, table.orbit_Qi4_of);
    return table;
}

unsigned CharacterTable::index_by_role(const std::string& role) const {
    for (unsigned i = 0; i < char_count(); ++i)
        if (chars[i].role == role) return i;
    throw invalid_input_error("no character with role '" + role + "'");
}

nlohmann::ordered_json CharacterTable::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = group->order();
    j["exponent"] = group_exponent;
    nlohmann::ordered_json cl = nlohmann::ordered_json::array();
    for (unsigned c = 0; c < classes.count(); ++c) {
        nlohmann::ordered_json one;
        one["representative"] = group->label(classes.representative[c]);
        one["size"] = classes.size[c];
        one["element_order"] = classes.representative_order[c];
        cl.push_back(std::move(one));
    }
    j["classes"] = std::move(cl);
    nlohmann::ordered_json ch = nlohmann::ordered_json::array();
    for (unsigned i = 0; i < char_count(); ++i) {
        nlohmann::ordered_json one;
        one["index"] = i;
        one["degree"] = chars[i].degree;
        if (!chars[i].role.empty()) one["role"] = chars[i].role;
        one["indicator"] = chars[i].indicator;
        one["dual"] = chars[i].dual;
        nlohmann::ordered_json vals = nlohmann::ordered_json::array();
        for (const auto& v : chars[i].values) vals.push_back(v.to_json());
        one["values"] = std::move(vals);
        ch.push_back(std::move(one));
    }
    j["characters"] = std::move(ch);
    return j;
}

// -------------------------------------------------------- generic table

CharacterTable CharacterTable::generic(std::shared_ptr<const FiniteGroup> Gp) {
    ensure(Gp != nullptr, "generic: null group");
    const FiniteGroup& G = *Gp;
    if (G.order() > config::max_group_order())
        throw resource_limit_error(
            "character table: group order exceeds the configured bound");
    const ConjugacyClasses cls = ConjugacyClasses::compute(G);
    const unsigned r = cls.count();
    const unsigned identity_class = cls.class_of[G.identity()];
    const ull e = group_exponent_of(G);

    // Working prime: least p = 1 (mod exponent) beyond 2 * sqrt(#G) * exponent.
    ull sq = 1;
    while (sq * sq < G.order()) ++sq;
    const ull p = least_prime_1_mod(e, 2 * sq * e);
    const ull g = primitive_root(p);
    const ull omega_e = pow_mod(g, (p - 1) / e, p);

    std::vector<std::vector<unsigned>> power_class(r);
    for (unsigned c = 0; c < r; ++c) {
        const unsigned m = cls.representative_order[c];
        power_class[c].resize(m);
        Elt pw = G.identity();
        const Elt x = cls.representative[c];
        for (unsigned j = 0; j < m; ++j) {
            power_class[c][j] = cls.class_of[pw];
            pw = G.mul(pw, x);
        }
    }

    // Split F_p^r into the common eigenspaces of the class matrices.
    std::vector<std::vector<std::vector<ull>>> spaces; // RREF bases
    {
        std::vector<std::vector<ull>> full(r, std::vector<ull>(r, 0));
        for (unsigned i = 0; i < r; ++i) full[i][i] = 1;
        spaces.push_back(std::move(full));
    }
    std::mt19937_64 rng(0x5eed5eed5eedULL);
    for (unsigned i = 0; i < r; ++i) {
        if (i == identity_class) continue;
        bool any_big = false;
        for (const auto& S : spaces) any_big = any_big || S.size() > 1;
        if (!any_big) break;

        // Class matrix M[j][k]: structure constants of class i against the
        // class-sum basis (count of u in C_i with u^{-1} * rep_k in C_j).
        std::vector<std::vector<ull>> M(r, std::vector<ull>(r, 0));
        for (Elt u : cls.members[i])
            for (unsigned k = 0; k < r; ++k) {
                const Elt v = G.mul(G.inverse(u), cls.representative[k]);
                M[cls.class_of[v]][k] += 1;
            }

        std::vector<std::vector<std::vector<ull>>> next;
        for (auto& S : spaces) {
            const size_t dim = S.size();
            if (dim == 1) {
                next.push_back(std::move(S));
                continue;
            }
            // Pivot columns of the RREF basis give coordinates.
            std::vector<size_t> pivots;
            {
                std::vector<std::vector<ull>> copy = S;
                pivots = rref(copy, p);
                ensure(pivots.size() == dim, "subspace basis lost rank");
            }
            std::vector<std::vector<ull>> images(dim, std::vector<ull>(r, 0));
            for (size_t c = 0; c < dim; ++c)
                for (unsigned row = 0; row < r; ++row) {
                    ull acc = 0;
                    for (unsigned k = 0; k < r; ++k)
                        acc = (acc + mulmod(M[row][k], S[c][k], p)) % p;
                    images[c][row] = acc;
                }
            std::vector<std::vector<ull>> R(dim, std::vector<ull>(dim, 0));
            for (size_t c = 0; c < dim; ++c)
                for (size_t t = 0; t < dim; ++t) R[t][c] = images[c][pivots[t]];

            const PolyP f = matrix_min_poly(R, p);
            std::vector<ull> roots;
            split_roots(f, p, rng, roots);
            std::sort(roots.begin(), roots.end());
            ensure(!roots.empty(), "class matrix with no eigenvalues");
            if (roots.size() == 1) {
                next.push_back(std::move(S));
                continue;
            }
            for (ull lam : roots) {
                std::vector<std::vector<ull>> A = R;
                for (size_t t = 0; t < dim; ++t) A[t][t] = (A[t][t] + p - lam) % p;
                std::vector<std::vector<ull>> ker = kernel_basis(std::move(A), p);
                ensure(!ker.empty(), "eigenvalue with empty eigenspace");
                std::vector<std::vector<ull>> lifted;
                for (const auto& kv : ker) {
                    std::vector<ull> vec(r, 0);
                    for (size_t t = 0; t < dim; ++t) {
                        if (!kv[t]) continue;
                        for (unsigned col = 0; col < r; ++col)
                            vec[col] =
                                (vec[col] + mulmod(kv[t], S[t][col], p)) % p;
                    }
                    lifted.push_back(std::move(vec));
                }
                rref(lifted, p);
                next.push_back(std::move(lifted));
            }
        }
        spaces = std::move(next);
    }
    ensure(spaces.size() == r, "simultaneous eigenspace splitting incomplete");

    // Normalize central characters, recover degrees and modular row values.
    std::vector<std::vector<Cyclotomic>> rows;
    rows.reserve(r);
    unsigned long long degree_square_sum = 0;
    for (const auto& S : spaces) {
        ensure(S.size() == 1, "eigenspace of dimension > 1 after splitting");
        std::vector<ull> w = S[0];
        ensure(w[identity_class] != 0,
               "central character vanishes on the identity class");
        const ull scale = inv_mod(w[identity_class], p);
        for (auto& x : w) x = mulmod(x, scale, p);

        ull denom = 0;
        for (unsigned k = 0; k < r; ++k) {
            const ull term = mulmod(w[k], w[cls.inverse_class[k]], p);
            denom = (denom + mulmod(term, inv_mod(cls.size[k], p), p)) % p;
        }
        ensure(denom != 0, "degree recovery: zero norm sum");
        const ull d_sq = mulmod(G.order() % p, inv_mod(denom, p), p);
        unsigned degree = 0;
        for (unsigned d = 1; static_cast<ull>(d) * d <= G.order(); ++d)
            if (mulmod(d, d, p) == d_sq) {
                degree = d;
                break;
            }
        ensure(degree != 0, "degree recovery failed");
        degree_square_sum += static_cast<unsigned long long>(degree) * degree;

        std::vector<ull> chi_mod(r);
        for (unsigned k = 0; k < r; ++k)
            chi_mod[k] =
                mulmod(mulmod(degree % p, w[k], p), inv_mod(cls.size[k], p), p);

        // Exact lift: one inverse DFT per power-orbit of classes, with the
        // profiles of power classes derived by exponent mapping.  Any slip
        // here is caught by the full recertification in from_raw_values.
        std::vector<Cyclotomic> row(r);
        std::vector<char> filled(r, 0);
        for (unsigned c = 0; c < r; ++c) {
            if (filled[c]) continue;
            const unsigned m = cls.representative_order[c];
            std::vector<ull> v(m);
            for (unsigned j = 0; j < m; ++j) v[j] = chi_mod[power_class[c][j]];
            const ull omega_m = pow_mod(omega_e, e / m, p);
            const ull omega_m_inv = inv_mod(omega_m, p);
            const ull m_inv = inv_mod(m, p);
            std::vector<unsigned> E(m);
            for (unsigned alpha = 0; alpha < m; ++alpha) {
                const ull step = pow_mod(omega_m_inv, alpha, p);
                ull acc = 0, wj = 1;
                for (unsigned j = 0; j < m; ++j) {
                    acc = (acc + mulmod(v[j], wj, p)) % p;
                    wj = mulmod(wj, step, p);
                }
                const ull count = mulmod(acc, m_inv, p);
                ensure(count <= degree,
                       "modular lift produced an out-of-range multiplicity");
                E[alpha] = static_cast<unsigned>(count);
            }
            for (unsigned t = 0; t < m; ++t) {
                const unsigned target = power_class[c][t];
                if (filled[target]) continue;
                const unsigned g =
                    t == 0 ? m : static_cast<unsigned>(gcd_ull(t, m));
                const unsigned mt = m / g;
                std::vector<unsigned> Et(mt, 0);
                for (unsigned alpha = 0; alpha < m; ++alpha)
                    if (E[alpha])
                        Et[static_cast<size_t>(
                            (static_cast<ull>(t) * alpha % m) / g)] += E[alpha];
                row[target] = synthesize_profile(mt, Et);
                filled[target] = 1;
            }
        }
        rows.push_back(std::move(row));
    }
    ensure(degree_square_sum == G.order(),
           "recovered degrees violate the sum-of-squares identity");

    try {
        return from_raw_values(Gp, std::move(rows), {});
    } catch (const invalid_input_error& ex) {
        throw internal_error(std::string("generic character table failed "
                                         "certification: ") +
                             ex.what());
    }
}

// ------------------------------------------------------------ derived data

SchurData schur_data(const CharacterTable& table, unsigned c) {
    ensure(c < table.char_count(), "schur_data: index out of range");
    const Character& ch = table.chars[c];
    SchurData out;
    out.indicator = ch.indicator;
    out.char_field_degree_Q = static_cast<unsigned>(
        table.galois_orbits_Q[table.orbit_Q_of[c]].size());
    const auto has_prefix = [&](const char* p) {
        return ch.role.rfind(p, 0) == 0;
    };
    if (ch.indicator == -1)
        out.m_Q = 2;
    else if (ch.degree == 1)
        out.m_Q = 1;
    else if (has_prefix("induced:") || has_prefix("chi:"))
        out.m_Q = 1;
    if (out.m_Q == 1 || has_prefix("psi1_chi:") || ch.role == "chi2")
        out.m_Qi4 = 1;
    if (out.m_Q != 0) {
        ensure(ch.degree % out.m_Q == 0, "Schur index does not divide degree");
        out.n_i = ch.degree / out.m_Q;
    }
    return out;
}

RationalComponentDims rational_component_dims(const CharacterTable& table,
                                              unsigned c) {
    const SchurData sd = schur_data(table, c);
    RationalComponentDims out;
    out.n_i = sd.n_i; // stays 0 when the Schur index is unresolved
    out.center_degree = sd.char_field_degree_Q;
    return out;
}

std::vector<Cyclotomic> rational_character(const CharacterTable& table,
                                           unsigned orbit_index) {
    require(orbit_index < table.galois_orbits_Q.size(),
            "rational_character: orbit index out of range");
    const auto& orbit = table.galois_orbits_Q[orbit_index];
    const SchurData sd = schur_data(table, orbit.front());
    require(sd.m_Q != 0,
            "rational_character: Schur index unresolved for this orbit");
    const unsigned r = table.classes.count();
    std::vector<Cyclotomic> out(r, Cyclotomic::zero());
    for (unsigned c : orbit)
        for (unsigned k = 0; k < r; ++k) out[k] += table.chars[c].values[k];
    for (unsigned k = 0; k < r; ++k)
        out[k] *= Cyclotomic::from_integer(sd.m_Q);
    return out;
}

void verify_orthogonality(const CharacterTable& table) {
    const unsigned r = table.char_count();
    const ull e = table.group_exponent;
    const unsigned long long order = table.group->order();

    // Sparse profile views: per char, per class, list of (exponent in zeta_e,
    // multiplicity) pairs.
    std::vector<std::vector<std::vector<std::pair<unsigned, long long>>>> sparse(
        r);
    for (unsigned i = 0; i < r; ++i) {
        sparse[i].resize(table.classes.count());
        for (unsigned c = 0; c < table.classes.count(); ++c) {
            const unsigned m = table.classes.representative_order[c];
            const ull mult = e / m;
            for (unsigned alpha = 0; alpha < m; ++alpha)
                if (const unsigned cnt = table.chars[i].profiles[c][alpha])
                    sparse[i][c].emplace_back(
                        static_cast<unsigned>((alpha * mult) % e),
                        static_cast<long long>(cnt));
        }
    }

    std::vector<long long> acc(e);
    // First orthogonality: sum over classes of size * chi_a * conj(chi_b).
    for (unsigned a = 0; a < r; ++a)
        for (unsigned b = a; b < r; ++b) {
            std::fill(acc.begin(), acc.end(), 0);
            for (unsigned c = 0; c < table.classes.count(); ++c) {
                const long long sz = table.classes.size[c];
                for (const auto& [ea, ma] : sparse[a][c])
                    for (const auto& [eb, mb] : sparse[b][c])
                        acc[(ea + e - eb) % e] += sz * ma * mb;
            }
            const Cyclotomic ip = Cyclotomic::from_exponent_vector(e, acc);
            const Cyclotomic want =
                a == b ? Cyclotomic::from_integer(static_cast<long long>(order))
                       : Cyclotomic::zero();
            ensure(ip == want, "row orthogonality failed for characters " +
                                   std::to_string(a) + ", " + std::to_string(b));
        }

    // Second orthogonality: sum over characters of chi(c1) * conj(chi(c2)).
    for (unsigned c1 = 0; c1 < table.classes.count(); ++c1)
        for (unsigned c2 = c1; c2 < table.classes.count(); ++c2) {
            std::fill(acc.begin(), acc.end(), 0);
            for (unsigned i = 0; i < r; ++i)
                for (const auto& [ea, ma] : sparse[i][c1])
                    for (const auto& [eb, mb] : sparse[i][c2])
                        acc[(ea + e - eb) % e] += ma * mb;
            const Cyclotomic ip = Cyclotomic::from_exponent_vector(e, acc);
            const Cyclotomic want =
                c1 == c2 ? Cyclotomic::from_integer(static_cast<long long>(
                               order / table.classes.size[c1]))
                         : Cyclotomic::zero();
            ensure(ip == want, "column orthogonality failed for classes " +
                                   std::to_string(c1) + ", " +
                                   std::to_string(c2));
        }
}

} // namespace branchcover
