#include "families.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "config.hpp"
#include "errors.hpp"
#include "numtheory.hpp"

namespace branchcover {

namespace {

std::string power_label(const std::string& g, unsigned long e) {
    if (e == 0) return "";
    if (e == 1) return g;
    return g + "^" + std::to_string(e);
}

std::string word_label(const std::string& ga, unsigned long ea,
                       const std::string& gb, unsigned long eb) {
    const std::string pa = power_label(ga, ea), pb = power_label(gb, eb);
    if (pa.empty() && pb.empty()) return "1";
    if (pa.empty()) return pb;
    if (pb.empty()) return pa;
    return pa + "*" + pb;
}

unsigned long parse_number(const std::string& text, size_t offset,
                           const std::string& value) {
    require(!value.empty(), "spec parse error at offset " +
                                std::to_string(offset) + ": empty value in '" +
                                text + "'");
    for (char c : value)
        require(c >= '0' && c <= '9',
                "spec parse error at offset " + std::to_string(offset) +
                    ": value '" + value + "' is not a number");
    char* end = nullptr;
    const unsigned long v = std::strtoul(value.c_str(), &end, 10);
    require(end && *end == '\0' && v <= 1000000,
            "spec parse error at offset " + std::to_string(offset) +
                ": value '" + value + "' out of range");
    return v;
}

FamilySpec validated(FamilySpec s) {
    switch (s.kind) {
    case FamilyKind::metacyclic: {
        require(s.q >= 3 && s.q % 2 == 1 && is_prime(s.q),
                "metacyclic parameter q must be an odd prime, got " +
                    std::to_string(s.q));
        require(s.n >= 2, "metacyclic parameter n must be at least 2, got " +
                              std::to_string(s.n));
        require((s.q - 1) % s.n == 0,
                "metacyclic parameter n must divide q-1 (n=" +
                    std::to_string(s.n) + ", q=" + std::to_string(s.q) + ")");
        if (s.k == 0) {
            s.k = least_element_of_order(s.n, s.q);
            ensure(s.k != 0, "no element of order n mod q despite n | q-1");
        } else {
            s.k %= s.q;
            require(s.k != 0 && multiplicative_order(s.k, s.q) == s.n,
                    "metacyclic parameter k must have multiplicative order n "
                    "mod q (k=" + std::to_string(s.k) +
                        ", n=" + std::to_string(s.n) +
                        ", q=" + std::to_string(s.q) + ")");
        }
        break;
    }
    case FamilyKind::dicyclic:
        require(s.q >= 3 && s.q % 2 == 1 && is_prime(s.q),
                "dicyclic parameter q must be an odd prime, got " +
                    std::to_string(s.q));
        require(s.n == 0 && s.k == 0, "dicyclic takes only the parameter q");
        break;
    case FamilyKind::quaternion8:
        require(s.q == 0 && s.n == 0 && s.k == 0,
                "quaternion8 takes no parameters");
        break;
    case FamilyKind::cyclic:
        require(s.n >= 1, "cyclic parameter n must be at least 1");
        require(s.q == 0 && s.k == 0, "cyclic takes only the parameter n");
        break;
    }
    const unsigned long order = s.group_order();
    if (order > config::max_group_order())
        throw resource_limit_error(
            "group order " + std::to_string(order) +
            " exceeds the configured bound " +
            std::to_string(config::max_group_order()));
    return s;
}

} // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
    const size_t colon = text.find(':');
    const std::string head =
        colon == std::string::npos ? text : text.substr(0, colon);
    FamilySpec s;
    bool expects_params = true;
    if (head == "metacyclic") {
        s.kind = FamilyKind::metacyclic;
    } else if (head == "dicyclic") {
        s.kind = FamilyKind::dicyclic;
    } else if (head == "quaternion8") {
        s.kind = FamilyKind::quaternion8;
        expects_params = false;
    } else if (head == "cyclic") {
        s.kind = FamilyKind::cyclic;
    } else {
        throw invalid_input_error(
            "spec parse error at offset 0: unknown family '" + head +
            "' (expected metacyclic, dicyclic, quaternion8 or cyclic)");
    }
    if (colon == std::string::npos) {
        require(!expects_params, "spec parse error at offset " +
                                     std::to_string(text.size()) + ": family '" +
                                     head + "' requires parameters");
        return validated(s);
    }
    require(expects_params, "spec parse error at offset " +
                                std::to_string(colon) + ": family '" + head +
                                "' takes no parameters");
    size_t pos = colon + 1;
    bool saw_q = false, saw_n = false, saw_k = false;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        const size_t eq = item.find('=');
        require(eq != std::string::npos,
                "spec parse error at offset " + std::to_string(pos) +
                    ": expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const unsigned long value =
            parse_number(text, pos + eq + 1, item.substr(eq + 1));
        bool* seen = nullptr;
        unsigned long* slot = nullptr;
        if (key == "q" && s.kind != FamilyKind::cyclic) {
            seen = &saw_q;
            slot = &s.q;
        } else if (key == "n" &&
                   (s.kind == FamilyKind::metacyclic ||
                    s.kind == FamilyKind::cyclic)) {
            seen = &saw_n;
            slot = &s.n;
        } else if (key == "k" && s.kind == FamilyKind::metacyclic) {
            seen = &saw_k;
            slot = &s.k;
        } else {
            throw invalid_input_error("spec parse error at offset " +
                                      std::to_string(pos) + ": unknown key '" +
                                      key + "' for family '" + head + "'");
        }
        require(!*seen, "spec parse error at offset " + std::to_string(pos) +
                            ": duplicate key '" + key + "'");
        *seen = true;
        *slot = value;
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    switch (s.kind) {
    case FamilyKind::metacyclic:
        require(saw_q && saw_n, "metacyclic requires parameters q and n");
        break;
    case FamilyKind::dicyclic:
        require(saw_q, "dicyclic requires the parameter q");
        break;
    case FamilyKind::cyclic:
        require(saw_n, "cyclic requires the parameter n");
        break;
    case FamilyKind::quaternion8:
        break;
    }
    return validated(s);
}

std::string FamilySpec::to_string() const {
    switch (kind) {
    case FamilyKind::metacyclic:
        return "metacyclic:q=" + std::to_string(q) + ",n=" + std::to_string(n) +
               ",k=" + std::to_string(k);
    case FamilyKind::dicyclic:
        return "dicyclic:q=" + std::to_string(q);
    case FamilyKind::quaternion8:
        return "quaternion8";
    case FamilyKind::cyclic:
        return "cyclic:n=" + std::to_string(n);
    }
    throw internal_error("unreachable family kind");
}

unsigned long FamilySpec::group_order() const {
    switch (kind) {
    case FamilyKind::metacyclic:
        return q * n;
    case FamilyKind::dicyclic:
        return 4 * q;
    case FamilyKind::quaternion8:
        return 8;
    case FamilyKind::cyclic:
        return n;
    }
    throw internal_error("unreachable family kind");
}

KOrbitData k_orbit_data(unsigned long q, unsigned long n, unsigned long k) {
    require(q >= 3 && q % 2 == 1 && is_prime(q), "q must be an odd prime");
    require(n >= 2 && (q - 1) % n == 0, "n must divide q-1 and be at least 2");
    require(k % q != 0 && multiplicative_order(k % q, q) == n,
            "k must have multiplicative order n mod q");
    k %= q;

    const size_t s = (q - 1) / n;
    std::vector<std::vector<unsigned long>> raw;
    std::vector<unsigned long> rawsum;
    std::vector<size_t> raw_of(q, SIZE_MAX);
    for (unsigned long l = 1; l < q; ++l) {
        if (raw_of[l] != SIZE_MAX) continue;
        std::vector<unsigned long> orbit;
        unsigned long m = l, sum = 0;
        do {
            orbit.push_back(m);
            raw_of[m] = raw.size();
            sum += m;
            m = (m * k) % q;
        } while (m != l);
        ensure(orbit.size() == n, "k-orbit has wrong length");
        std::sort(orbit.begin(), orbit.end());
        ensure(orbit.front() == l, "ascending scan must find the least member");
        raw.push_back(std::move(orbit));
        rawsum.push_back(sum);
    }
    ensure(raw.size() == s, "wrong number of k-orbits");
    for (unsigned long sum : rawsum)
        ensure(sum % q == 0, "orbit sum must be divisible by q");

    KOrbitData D;
    D.q = q;
    D.n = n;
    D.k = k;
    D.orbit_of.assign(q, SIZE_MAX);
    if (n % 2 == 0) {
        for (size_t i = 0; i < s; ++i) {
            ensure(std::binary_search(raw[i].begin(), raw[i].end(),
                                      q - raw[i][0]),
                   "even-n orbit must be closed under negation");
            ensure(rawsum[i] == n * q / 2, "even-n orbit sum must be nq/2");
            D.reps.push_back(raw[i][0]);
        }
        D.orbits = std::move(raw);
        D.sums = std::move(rawsum);
    } else {
        ensure(s % 2 == 0, "odd n needs an even number of orbits");
        std::vector<char> used(s, 0);
        std::vector<std::pair<size_t, size_t>> pairs; // (chosen, negative)
        for (size_t i = 0; i < s; ++i) {
            if (used[i]) continue;
            const size_t j = raw_of[q - raw[i][0]];
            ensure(j != i && !used[j], "odd-n orbit must pair with a distinct "
                                       "negative orbit");
            used[i] = used[j] = 1;
            size_t pick = i;
            if (n == 3) {
                ensure((rawsum[i] == q) != (rawsum[j] == q),
                       "n=3 pair must contain exactly one sum-q orbit");
                ensure(rawsum[i] + rawsum[j] == 3 * q,
                       "n=3 pair sums must total 3q");
                pick = rawsum[i] == q ? i : j;
            }
            pairs.emplace_back(pick, pick == i ? j : i);
        }
        std::sort(pairs.begin(), pairs.end(),
                  [&](const auto& x, const auto& y) {
                      return raw[x.first][0] < raw[y.first][0];
                  });
        for (const auto& [pick, other] : pairs) {
            (void)other;
            D.orbits.push_back(raw[pick]);
            D.sums.push_back(rawsum[pick]);
            D.reps.push_back(raw[pick][0]);
        }
        for (const auto& [pick, other] : pairs) {
            D.orbits.push_back(raw[other]);
            D.sums.push_back(rawsum[other]);
            D.reps.push_back(q - raw[pick][0]);
        }
        for (size_t i = 0; i < s / 2; ++i)
            ensure(std::binary_search(D.orbits[s / 2 + i].begin(),
                                      D.orbits[s / 2 + i].end(), D.reps[s / 2 + i]),
                   "second-half rep must lie in the paired orbit");
    }
    for (size_t idx = 0; idx < D.orbits.size(); ++idx)
        for (unsigned long m : D.orbits[idx]) D.orbit_of[m] = idx;
    return D;
}

FiniteGroup build_group(const FamilySpec& spec0) {
    const FamilySpec spec = validated(spec0);
    switch (spec.kind) {
    case FamilyKind::metacyclic: {
        const unsigned long q = spec.q, n = spec.n;
        const size_t N = q * n;
        const unsigned long kinv = inv_mod(spec.k, q);
        std::vector<unsigned long> act(n); // kinv^u mod q
        act[0] = 1;
        for (unsigned long u = 1; u < n; ++u) act[u] = act[u - 1] * kinv % q;
        std::vector<std::vector<Elt>> mul(N, std::vector<Elt>(N));
        std::vector<std::string> labels(N);
        for (unsigned long v1 = 0; v1 < q; ++v1)
            for (unsigned long u1 = 0; u1 < n; ++u1) {
                labels[v1 * n + u1] = word_label("a", v1, "b", u1);
                for (unsigned long v2 = 0; v2 < q; ++v2)
                    for (unsigned long u2 = 0; u2 < n; ++u2) {
                        const unsigned long v = (v1 + v2 * act[u1]) % q;
                        const unsigned long u = (u1 + u2) % n;
                        mul[v1 * n + u1][v2 * n + u2] =
                            static_cast<Elt>(v * n + u);
                    }
            }
        return FiniteGroup::from_table(std::move(mul), std::move(labels));
    }
    case FamilyKind::dicyclic: {
        const unsigned long q = spec.q;
        const size_t N = 4 * q;
        std::vector<std::vector<Elt>> mul(N, std::vector<Elt>(N));
        std::vector<std::string> labels(N);
        for (unsigned long v1 = 0; v1 < q; ++v1)
            for (unsigned long u1 = 0; u1 < 4; ++u1) {
                labels[v1 * 4 + u1] = word_label("a", v1, "b", u1);
                for (unsigned long v2 = 0; v2 < q; ++v2)
                    for (unsigned long u2 = 0; u2 < 4; ++u2) {
                        const unsigned long w = u1 % 2 ? (q - v2) % q : v2;
                        const unsigned long v = (v1 + w) % q;
                        const unsigned long u = (u1 + u2) % 4;
                        mul[v1 * 4 + u1][v2 * 4 + u2] =
                            static_cast<Elt>(v * 4 + u);
                    }
            }
        return FiniteGroup::from_table(std::move(mul), std::move(labels));
    }
    case FamilyKind::quaternion8: {
        static const unsigned axmul[4][4] = {
            {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const unsigned sgn[4][4] = {
            {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        std::vector<std::string> labels = {"1", "-1", "i", "-i",
                                           "j", "-j", "k", "-k"};
        std::vector<std::vector<Elt>> mul(8, std::vector<Elt>(8));
        for (unsigned x = 0; x < 8; ++x)
            for (unsigned y = 0; y < 8; ++y) {
                const unsigned a1 = x / 2, s1 = x % 2, a2 = y / 2, s2 = y % 2;
                const unsigned axis = axmul[a1][a2];
                const unsigned sign = s1 ^ s2 ^ sgn[a1][a2];
                mul[x][y] = static_cast<Elt>(axis * 2 + sign);
            }
        return FiniteGroup::from_table(std::move(mul), std::move(labels));
    }
    case FamilyKind::cyclic: {
        const unsigned long n = spec.n;
        std::vector<std::vector<Elt>> mul(n, std::vector<Elt>(n));
        std::vector<std::string> labels(n);
        for (unsigned long x = 0; x < n; ++x) {
            labels[x] = x == 0 ? "1" : power_label("g", x);
            for (unsigned long y = 0; y < n; ++y)
                mul[x][y] = static_cast<Elt>((x + y) % n);
        }
        return FiniteGroup::from_table(std::move(mul), std::move(labels));
    }
    }
    throw internal_error("unreachable family kind");
}

FiniteGroup build_dicyclic_general(unsigned long m) {
    require(m >= 2, "dicyclic order parameter must be at least 2");
    const unsigned long N = 4 * m;
    if (N > config::max_group_order())
        throw resource_limit_error("group order " + std::to_string(N) +
                                   " exceeds the configured bound " +
                                   std::to_string(config::max_group_order()));
    std::vector<std::vector<Elt>> mul(N, std::vector<Elt>(N));
    std::vector<std::string> labels(N);
    for (unsigned long v1 = 0; v1 < 2 * m; ++v1)
        for (unsigned long u1 = 0; u1 < 2; ++u1) {
            labels[v1 * 2 + u1] = word_label("x", v1, "y", u1);
            for (unsigned long v2 = 0; v2 < 2 * m; ++v2)
                for (unsigned long u2 = 0; u2 < 2; ++u2) {
                    const unsigned long w = u1 ? (2 * m - v2) % (2 * m) : v2;
                    const unsigned long carry = (u1 && u2) ? m : 0;
                    const unsigned long v = (v1 + w + carry) % (2 * m);
                    mul[v1 * 2 + u1][v2 * 2 + u2] =
                        static_cast<Elt>(v * 2 + (u1 + u2) % 2);
                }
        }
    return FiniteGroup::from_table(std::move(mul), std::move(labels));
}

namespace {

// Builds the automorphism defined by mapping each generator to the given
// image, verifying along the way that the map is a well-defined bijective
// homomorphism (every product edge x -> x*gen is checked).
Automorphism automorphism_from_images(const FiniteGroup& G,
                                      const std::vector<Elt>& gens,
                                      const std::vector<Elt>& images) {
    const unsigned n = G.order();
    std::vector<int> phi(n, -1);
    std::vector<Elt> discovered;
    phi[G.identity()] = G.identity();
    discovered.push_back(G.identity());
    for (size_t idx = 0; idx < discovered.size(); ++idx) {
        const Elt x = discovered[idx];
        for (size_t t = 0; t < gens.size(); ++t) {
            const Elt y = G.mul(x, gens[t]);
            const Elt im = G.mul(static_cast<Elt>(phi[x]), images[t]);
            if (phi[y] < 0) {
                phi[y] = im;
                discovered.push_back(y);
            } else {
                ensure(phi[y] == im,
                       "generator images do not extend to an automorphism");
            }
        }
    }
    ensure(discovered.size() == n, "generators do not generate the group");
    std::vector<char> hit(n, 0);
    Automorphism out(n);
    for (unsigned x = 0; x < n; ++x) {
        ensure(phi[x] >= 0 && !hit[phi[x]],
               "generator images do not define a bijection");
        hit[phi[x]] = 1;
        out[x] = static_cast<Elt>(phi[x]);
    }
    return out;
}

std::vector<Automorphism> family_aut_generators(const FamilySpec& spec,
                                                const FiniteGroup& G) {
    std::vector<Automorphism> out;
    switch (spec.kind) {
    case FamilyKind::metacyclic: {
        const Elt a = static_cast<Elt>(spec.n), b = 1;
        const Elt ag = G.power(a, static_cast<long long>(primitive_root(spec.q)));
        out.push_back(automorphism_from_images(G, {a, b}, {ag, b}));
        out.push_back(automorphism_from_images(G, {a, b}, {a, G.mul(a, b)}));
        break;
    }
    case FamilyKind::dicyclic: {
        const Elt a = 4, b = 1;
        const Elt ag = G.power(a, static_cast<long long>(primitive_root(spec.q)));
        out.push_back(automorphism_from_images(G, {a, b}, {ag, b}));
        out.push_back(automorphism_from_images(G, {a, b}, {a, G.mul(a, b)}));
        out.push_back(automorphism_from_images(G, {a, b}, {a, G.power(b, 3)}));
        break;
    }
    case FamilyKind::quaternion8: {
        const Elt i = 2, j = 4, k = 6;
        out.push_back(automorphism_from_images(G, {i, j}, {j, k}));
        out.push_back(automorphism_from_images(G, {i, j}, {j, i}));
        break;
    }
    case FamilyKind::cyclic: {
        for (unsigned long t = 2; t < spec.n; ++t) {
            if (gcd_ull(t, spec.n) != 1) continue;
            Automorphism phi(spec.n);
            for (unsigned long v = 0; v < spec.n; ++v)
                phi[v] = static_cast<Elt>(v * t % spec.n);
            out.push_back(std::move(phi));
        }
        break;
    }
    }
    return out;
}

std::vector<std::vector<Cyclotomic>> family_rows(const FamilySpec& spec,
                                                 const ConjugacyClasses& cls,
                                                 const KOrbitData& orb,
                                                 std::vector<std::string>& roles) {
    std::vector<std::vector<Cyclotomic>> rows;
    const unsigned nc = cls.count();
    switch (spec.kind) {
    case FamilyKind::metacyclic: {
        const unsigned long q = spec.q, n = spec.n;
        for (unsigned long j = 0; j < n; ++j) {
            std::vector<Cyclotomic> row(nc);
            for (unsigned c = 0; c < nc; ++c) {
                const unsigned long u = cls.representative[c] % n;
                row[c] = Cyclotomic::root_of_unity(
                    n, static_cast<long long>(j * u));
            }
            rows.push_back(std::move(row));
            roles.push_back("linear:" + std::to_string(j));
        }
        for (size_t i = 0; i < orb.orbits.size(); ++i) {
            std::vector<Cyclotomic> row(nc);
            for (unsigned c = 0; c < nc; ++c) {
                const unsigned long v = cls.representative[c] / n;
                const unsigned long u = cls.representative[c] % n;
                if (u != 0) {
                    row[c] = Cyclotomic::zero();
                    continue;
                }
                std::vector<std::pair<long long, Integer>> terms;
                for (unsigned long m : orb.orbits[i])
                    terms.emplace_back(static_cast<long long>(m * v % q),
                                       Integer(1));
                row[c] = Cyclotomic::from_root_sum(q, terms);
            }
            rows.push_back(std::move(row));
            roles.push_back("induced:" + std::to_string(i + 1));
        }
        break;
    }
    case FamilyKind::dicyclic: {
        const unsigned long q = spec.q;
        for (unsigned long j = 0; j < 4; ++j) {
            std::vector<Cyclotomic> row(nc);
            for (unsigned c = 0; c < nc; ++c) {
                const unsigned long u = cls.representative[c] % 4;
                row[c] = Cyclotomic::root_of_unity(
                    4, static_cast<long long>(j * u));
            }
            rows.push_back(std::move(row));
            roles.push_back("linear:" + std::to_string(j));
        }
        for (int twist = 0; twist < 2; ++twist) {
            for (unsigned long i = 1; i <= (q - 1) / 2; ++i) {
                std::vector<Cyclotomic> row(nc);
                for (unsigned c = 0; c < nc; ++c) {
                    const unsigned long v = cls.representative[c] / 4;
                    const unsigned long u = cls.representative[c] % 4;
                    if (u % 2 == 1) {
                        row[c] = Cyclotomic::zero();
                        continue;
                    }
                    const long sign = (twist && u == 2) ? -1 : 1;
                    const long long e = static_cast<long long>(i * v % q);
                    row[c] = Cyclotomic::from_root_sum(
                        q, {{e, Integer(sign)}, {-e, Integer(sign)}});
                }
                rows.push_back(std::move(row));
                roles.push_back((twist ? "psi1_chi:" : "chi:") +
                                std::to_string(i));
            }
        }
        break;
    }
    case FamilyKind::quaternion8: {
        for (unsigned t = 0; t < 4; ++t) {
            std::vector<Cyclotomic> row(nc);
            for (unsigned c = 0; c < nc; ++c) {
                const unsigned axis = cls.representative[c] / 2;
                const bool plus = t == 0 || axis == 0 || axis == t;
                row[c] = Cyclotomic::from_integer(plus ? 1 : -1);
            }
            rows.push_back(std::move(row));
            roles.push_back("linear:" + std::to_string(t));
        }
        {
            std::vector<Cyclotomic> row(nc);
            for (unsigned c = 0; c < nc; ++c) {
                const unsigned axis = cls.representative[c] / 2;
                const unsigned sign = cls.representative[c] % 2;
                row[c] = Cyclotomic::from_integer(
                    axis != 0 ? 0 : (sign ? -2 : 2));
            }
            rows.push_back(std::move(row));
            roles.push_back("chi2");
        }
        break;
    }
    case FamilyKind::cyclic: {
        const unsigned long n = spec.n;
        for (unsigned long j = 0; j < n; ++j) {
            std::vector<Cyclotomic> row(nc);
            for (unsigned c = 0; c < nc; ++c)
                row[c] = Cyclotomic::root_of_unity(
                    n, static_cast<long long>(j) *
                           static_cast<long long>(cls.representative[c]));
            rows.push_back(std::move(row));
            roles.push_back("linear:" + std::to_string(j));
        }
        break;
    }
    }
    return rows;
}

} // namespace

FamilyInstance build_family(const FamilySpec& spec0) {
    FamilyInstance fam;
    fam.spec = validated(spec0);
    auto G = std::make_shared<FiniteGroup>(build_group(fam.spec));
    fam.group = G;
    if (fam.spec.kind == FamilyKind::metacyclic)
        fam.orbits = k_orbit_data(fam.spec.q, fam.spec.n, fam.spec.k);
    const ConjugacyClasses cls = ConjugacyClasses::compute(*G);
    std::vector<std::string> roles;
    std::vector<std::vector<Cyclotomic>> rows =
        family_rows(fam.spec, cls, fam.orbits, roles);
    fam.table = std::make_shared<CharacterTable>(CharacterTable::from_raw_values(
        G, std::move(rows), std::move(roles)));
    fam.aut_generators = family_aut_generators(fam.spec, *G);
    return fam;
}

namespace {

unsigned long role_index(const std::string& role, const std::string& prefix) {
    if (role.compare(0, prefix.size(), prefix) != 0) return 0;
    return std::strtoul(role.c_str() + prefix.size(), nullptr, 10);
}

} // namespace

MatrixRep matrix_rep(const FamilyInstance& fam, unsigned char_index) {
    require(fam.table && char_index < fam.table->char_count(),
            "character index out of range");
    const Character& ch = fam.table->chars[char_index];
    MatrixRep rep;
    rep.spec = fam.spec;
    rep.char_index = char_index;
    rep.degree = ch.degree;
    const std::string& role = ch.role;
    switch (fam.spec.kind) {
    case FamilyKind::metacyclic: {
        const unsigned long q = fam.spec.q, n = fam.spec.n;
        if (role.rfind("linear:", 0) == 0) {
            const unsigned long j = role_index(role, "linear:");
            CycloMatrix A = CycloMatrix::identity(1);
            CycloMatrix B(1, 1);
            B.at(0, 0) = Cyclotomic::root_of_unity(n, static_cast<long long>(j));
            rep.gen_images = {A, B};
        } else if (role.rfind("induced:", 0) == 0) {
            const unsigned long i = role_index(role, "induced:");
            ensure(i >= 1 && i <= fam.orbits.orbits.size(),
                   "induced role index out of range");
            const unsigned long t = fam.orbits.reps[i - 1];
            CycloMatrix A(static_cast<unsigned>(n), static_cast<unsigned>(n));
            CycloMatrix B(static_cast<unsigned>(n), static_cast<unsigned>(n));
            unsigned long e = t;
            for (unsigned v = 0; v < n; ++v) {
                A.at(v, v) =
                    Cyclotomic::root_of_unity(q, static_cast<long long>(e));
                e = e * fam.spec.k % q;
                B.at(static_cast<unsigned>((v + 1) % n), v) = Cyclotomic::one();
            }
            rep.gen_images = {A, B};
        } else {
            throw internal_error("metacyclic row without a family role");
        }
        break;
    }
    case FamilyKind::dicyclic: {
        const unsigned long q = fam.spec.q;
        if (role.rfind("linear:", 0) == 0) {
            const unsigned long j = role_index(role, "linear:");
            CycloMatrix A = CycloMatrix::identity(1);
            CycloMatrix B(1, 1);
            B.at(0, 0) = Cyclotomic::root_of_unity(4, static_cast<long long>(j));
            rep.gen_images = {A, B};
        } else {
            const bool twist = role.rfind("psi1_chi:", 0) == 0;
            ensure(twist || role.rfind("chi:", 0) == 0,
                   "dicyclic row without a family role");
            const unsigned long i =
                role_index(role, twist ? "psi1_chi:" : "chi:");
            ensure(i >= 1 && i <= (q - 1) / 2, "dicyclic role index out of range");
            const Cyclotomic c =
                Cyclotomic::root_of_unity(q, static_cast<long long>(i)) +
                Cyclotomic::root_of_unity(q, -static_cast<long long>(i));
            CycloMatrix A(2, 2), B(2, 2);
            A.at(0, 1) = Cyclotomic::one();
            A.at(1, 0) = -Cyclotomic::one();
            A.at(1, 1) = c;
            B.at(0, 0) = Cyclotomic::one();
            B.at(0, 1) = -c;
            B.at(1, 1) = -Cyclotomic::one();
            if (twist) B = B * Cyclotomic::root_of_unity(4, 1);
            rep.gen_images = {A, B};
        }
        break;
    }
    case FamilyKind::quaternion8: {
        if (role.rfind("linear:", 0) == 0) {
            const unsigned long t = role_index(role, "linear:");
            CycloMatrix I(1, 1), J(1, 1);
            I.at(0, 0) = Cyclotomic::from_integer(t == 0 || t == 1 ? 1 : -1);
            J.at(0, 0) = Cyclotomic::from_integer(t == 0 || t == 2 ? 1 : -1);
            rep.gen_images = {I, J};
        } else {
            ensure(role == "chi2", "quaternion row without a family role");
            CycloMatrix I(2, 2), J(2, 2);
            I.at(0, 1) = -Cyclotomic::one();
            I.at(1, 0) = Cyclotomic::one();
            J.at(0, 1) = -Cyclotomic::root_of_unity(4, 1);
            J.at(1, 0) = -Cyclotomic::root_of_unity(4, 1);
            rep.gen_images = {I, J};
        }
        break;
    }
    case FamilyKind::cyclic: {
        const unsigned long j = role_index(role, "linear:");
        ensure(role.rfind("linear:", 0) == 0, "cyclic row without a family role");
        CycloMatrix M(1, 1);
        M.at(0, 0) = Cyclotomic::root_of_unity(std::max(fam.spec.n, 1ul),
                                               static_cast<long long>(j));
        rep.gen_images = {M};
        break;
    }
    }
    return rep;
}

CycloMatrix element_image(const MatrixRep& rep, Elt x) {
    switch (rep.spec.kind) {
    case FamilyKind::metacyclic: {
        const unsigned long n = rep.spec.n;
        return rep.gen_images[0].pow(x / n) * rep.gen_images[1].pow(x % n);
    }
    case FamilyKind::dicyclic:
        return rep.gen_images[0].pow(x / 4) * rep.gen_images[1].pow(x % 4);
    case FamilyKind::quaternion8: {
        const unsigned axis = x / 2, sign = x % 2;
        const CycloMatrix& I = rep.gen_images[0];
        const CycloMatrix& J = rep.gen_images[1];
        CycloMatrix base = CycloMatrix::identity(rep.degree);
        if (axis == 1) base = I;
        else if (axis == 2) base = J;
        else if (axis == 3) base = I * J;
        return sign ? I.pow(2) * base : base;
    }
    case FamilyKind::cyclic:
        return rep.gen_images[0].pow(x);
    }
    throw internal_error("unreachable family kind");
}

std::vector<Cyclotomic> char_poly_from_profile(unsigned long long m,
                                               const std::vector<unsigned>& profile) {
    std::vector<Cyclotomic> poly{Cyclotomic::one()};
    for (size_t alpha = 0; alpha < profile.size(); ++alpha) {
        const Cyclotomic root =
            Cyclotomic::root_of_unity(m, static_cast<long long>(alpha));
        for (unsigned rep = 0; rep < profile[alpha]; ++rep) {
            std::vector<Cyclotomic> next(poly.size() + 1, Cyclotomic::zero());
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= root * poly[i];
            }
            poly = std::move(next);
        }
    }
    return poly;
}

void verify_matrix_rep(const FamilyInstance& fam, const MatrixRep& rep) {
    const CharacterTable& T = *fam.table;
    const FiniteGroup& G = *fam.group;
    const Character& ch = T.chars[rep.char_index];
    const CycloMatrix id = CycloMatrix::identity(rep.degree);
    std::vector<Elt> gens;
    switch (fam.spec.kind) {
    case FamilyKind::metacyclic: {
        const CycloMatrix& A = rep.gen_images[0];
        const CycloMatrix& B = rep.gen_images[1];
        ensure(A.pow(static_cast<long long>(fam.spec.q)) == id,
               "matrix model violates a^q = 1");
        ensure(B.pow(static_cast<long long>(fam.spec.n)) == id,
               "matrix model violates b^n = 1");
        ensure(B.pow(static_cast<long long>(fam.spec.n - 1)) * A * B ==
                   A.pow(static_cast<long long>(fam.spec.k)),
               "matrix model violates b^-1 a b = a^k");
        gens = {static_cast<Elt>(fam.spec.n), 1};
        break;
    }
    case FamilyKind::dicyclic: {
        const CycloMatrix& A = rep.gen_images[0];
        const CycloMatrix& B = rep.gen_images[1];
        ensure(A.pow(static_cast<long long>(fam.spec.q)) == id,
               "matrix model violates a^q = 1");
        ensure(B.pow(4) == id, "matrix model violates b^4 = 1");
        ensure(B.pow(3) * A * B == A.pow(static_cast<long long>(fam.spec.q - 1)),
               "matrix model violates b^-1 a b = a^-1");
        gens = {4, 1};
        break;
    }
    case FamilyKind::quaternion8: {
        const CycloMatrix& I = rep.gen_images[0];
        const CycloMatrix& J = rep.gen_images[1];
        ensure(I.pow(2) == J.pow(2), "matrix model violates i^2 = j^2");
        ensure(I.pow(4) == id, "matrix model violates i^4 = 1");
        ensure(J.pow(3) * I * J == I.pow(3),
               "matrix model violates j^-1 i j = i^-1");
        gens = {2, 4};
        break;
    }
    case FamilyKind::cyclic: {
        ensure(rep.gen_images[0].pow(static_cast<long long>(
                   std::max(fam.spec.n, 1ul))) == id,
               "matrix model violates g^n = 1");
        if (fam.spec.n > 1) gens = {1};
        break;
    }
    }
    for (unsigned c = 0; c < T.classes.count(); ++c)
        ensure(element_image(rep, T.classes.representative[c]).trace() ==
                   ch.values[c],
               "matrix model trace disagrees with the table at class " +
                   std::to_string(c));
    for (Elt g : gens) {
        const unsigned cls = T.classes.class_of[g];
        const CycloMatrix img = element_image(rep, g);
        ensure(img.char_poly() ==
                   char_poly_from_profile(G.element_order(g), ch.profiles[cls]),
               "matrix eigenvalues disagree with the certified profile at " +
                   G.label(g));
    }
}

} // namespace branchcover
