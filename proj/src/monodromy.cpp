#include "monodromy.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>

#include "errors.hpp"

namespace branchcover {

namespace {

void check_datum_group(const MonodromyDatum& datum) {
    ensure(datum.group != nullptr, "monodromy datum has no group attached");
}

Elt third_entry(const FiniteGroup& G, Elt x1, Elt x2) {
    return G.inverse(G.mul(x1, x2));
}

// Reusable-buffer subgroup closure test: true when {x1, x2} generates G.
// `seen` must be of size G.order() and all false on entry; it is restored on
// exit.
bool generates_pair(const FiniteGroup& G, Elt x1, Elt x2,
                    std::vector<Elt>& stack, std::vector<char>& seen) {
    stack.clear();
    const Elt e = G.identity();
    seen[e] = 1;
    stack.push_back(e);
    size_t head = 0;
    const Elt gens[2] = {x1, x2};
    while (head < stack.size()) {
        const Elt y = stack[head++];
        for (const Elt g : gens) {
            const Elt z = G.mul(y, g);
            if (!seen[z]) {
                seen[z] = 1;
                stack.push_back(z);
            }
        }
    }
    const bool all = stack.size() == G.order();
    for (const Elt y : stack) seen[y] = 0;
    return all;
}

// Applies every equivalence move to d and hands the resulting (x1, x2) pairs
// to visit: the three braid twists, one inverse twist (enough for closure,
// since orbits are finite) and the automorphism generators.
template <typename Visit>
void braid_neighbors(const FiniteGroup& G, const MonodromyDatum& d,
                     const std::vector<Automorphism>& aut_generators,
                     Visit&& visit) {
    const Elt x1 = d.x[0], x2 = d.x[1], x3 = d.x[2];
    visit(G.mul(x1, G.mul(x2, G.inverse(x1))), x1);
    visit(x1, G.mul(x2, G.mul(x3, G.inverse(x2))));
    visit(x2, G.mul(G.inverse(x2), G.mul(x1, x2)));
    visit(x1, x3);
    for (const Automorphism& f : aut_generators) visit(f[x1], f[x2]);
}

} // namespace

std::array<unsigned, 3> local_monodromy(const MonodromyDatum& datum) {
    check_datum_group(datum);
    const FiniteGroup& G = *datum.group;
    return {G.element_order(datum.x[0]), G.element_order(datum.x[1]),
            G.element_order(datum.x[2])};
}

unsigned long genus(const MonodromyDatum& datum) {
    check_datum_group(datum);
    const long long order = static_cast<long long>(datum.group->order());
    const std::array<unsigned, 3> m = local_monodromy(datum);
    long long twice = 2 - 2 * order;
    for (const unsigned mi : m) {
        ensure(mi > 0 && order % mi == 0, "branching index must divide the group order");
        twice += (order / mi) * static_cast<long long>(mi - 1);
    }
    ensure(twice >= 0 && twice % 2 == 0,
           "Riemann-Hurwitz count must be an even nonnegative integer");
    return static_cast<unsigned long>(twice / 2);
}

std::vector<MonodromyDatum> enumerate_ssg(
    const std::shared_ptr<const FiniteGroup>& group) {
    require(group != nullptr, "group must not be null");
    const FiniteGroup& G = *group;
    const unsigned n = G.order();
    const Elt e = G.identity();

    std::vector<MonodromyDatum> out;
    std::vector<Elt> stack;
    stack.reserve(n);
    std::vector<char> seen(n, 0);

    for (unsigned a = 0; a < n; ++a) {
        if (a == e) continue;
        for (unsigned b = 0; b < n; ++b) {
            if (b == e) continue;
            const Elt x1 = static_cast<Elt>(a);
            const Elt x2 = static_cast<Elt>(b);
            if (third_entry(G, x1, x2) == e) continue;
            if (!generates_pair(G, x1, x2, stack, seen)) continue;
            MonodromyDatum d;
            d.group = group;
            d.x = {x1, x2, third_entry(G, x1, x2)};
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::vector<HurwitzClass> hurwitz_orbits(
    const std::shared_ptr<const FiniteGroup>& group,
    const std::vector<Automorphism>& aut_generators) {
    require(group != nullptr, "group must not be null");
    const FiniteGroup& G = *group;
    const size_t n = G.order();
    for (const Automorphism& f : aut_generators)
        require(f.size() == n, "automorphism generator has wrong size");

    const std::vector<MonodromyDatum> data = enumerate_ssg(group);
    std::vector<std::int32_t> pos(n * n, -1);
    for (size_t i = 0; i < data.size(); ++i) {
        const size_t key =
            static_cast<size_t>(data[i].x[0]) * n + data[i].x[1];
        pos[key] = static_cast<std::int32_t>(i);
    }

    const auto index_of = [&](Elt y1, Elt y2) {
        const std::int32_t j = pos[static_cast<size_t>(y1) * n + y2];
        ensure(j >= 0,
               "equivalence move left the set of spherical generating systems");
        return static_cast<size_t>(j);
    };

    std::vector<char> visited(data.size(), 0);
    std::vector<size_t> queue;
    std::vector<HurwitzClass> classes;

    for (size_t root = 0; root < data.size(); ++root) {
        if (visited[root]) continue;
        visited[root] = 1;
        queue.assign(1, root);
        size_t head = 0;
        const auto visit = [&](size_t j) {
            if (!visited[j]) {
                visited[j] = 1;
                queue.push_back(j);
            }
        };
        while (head < queue.size()) {
            const MonodromyDatum& d = data[queue[head++]];
            braid_neighbors(G, d, aut_generators, [&](Elt y1, Elt y2) {
                visit(index_of(y1, y2));
            });
        }
        HurwitzClass cl;
        cl.representative = data[root];
        cl.orbit_size = queue.size();
        cl.sorted_monodromy = local_monodromy(data[root]);
        std::sort(cl.sorted_monodromy.begin(), cl.sorted_monodromy.end());
        classes.push_back(std::move(cl));
    }
    return classes;
}

std::vector<HurwitzClass> hurwitz_orbits(
    const std::shared_ptr<const FiniteGroup>& group) {
    require(group != nullptr, "group must not be null");
    const std::vector<Automorphism> auts = automorphisms(*group);
    const std::vector<size_t> subset = generating_automorphism_subset(auts);
    std::vector<Automorphism> gens;
    gens.reserve(subset.size());
    for (const size_t i : subset) gens.push_back(auts[i]);
    return hurwitz_orbits(group, gens);
}

MonodromyDatum hurwitz_representative(
    const MonodromyDatum& datum,
    const std::vector<Automorphism>& aut_generators) {
    check_datum_group(datum);
    const FiniteGroup& G = *datum.group;
    const size_t n = G.order();
    for (const Automorphism& f : aut_generators)
        require(f.size() == n, "automorphism generator has wrong size");

    const std::vector<MonodromyDatum> data = enumerate_ssg(datum.group);
    std::vector<std::int32_t> pos(n * n, -1);
    for (size_t i = 0; i < data.size(); ++i) {
        const size_t key =
            static_cast<size_t>(data[i].x[0]) * n + data[i].x[1];
        pos[key] = static_cast<std::int32_t>(i);
    }
    const std::int32_t seed =
        pos[static_cast<size_t>(datum.x[0]) * n + datum.x[1]];
    require(seed >= 0, "datum is not a spherical generating system");

    const auto index_of = [&](Elt y1, Elt y2) {
        const std::int32_t j = pos[static_cast<size_t>(y1) * n + y2];
        ensure(j >= 0,
               "equivalence move left the set of spherical generating systems");
        return static_cast<size_t>(j);
    };

    std::vector<char> visited(data.size(), 0);
    std::vector<size_t> queue;
    visited[static_cast<size_t>(seed)] = 1;
    queue.assign(1, static_cast<size_t>(seed));
    size_t head = 0;
    size_t least = static_cast<size_t>(seed);
    while (head < queue.size()) {
        const MonodromyDatum& d = data[queue[head++]];
        braid_neighbors(G, d, aut_generators, [&](Elt y1, Elt y2) {
            const size_t j = index_of(y1, y2);
            if (!visited[j]) {
                visited[j] = 1;
                queue.push_back(j);
                least = std::min(least, j);
            }
        });
    }
    return data[least];
}

std::string classification_tag(const FamilySpec& spec,
                               const MonodromyDatum& datum) {
    check_datum_group(datum);
    std::array<unsigned, 3> m = local_monodromy(datum);
    std::sort(m.begin(), m.end());
    const auto is = [&m](unsigned a, unsigned b, unsigned c) {
        std::array<unsigned, 3> want{a, b, c};
        std::sort(want.begin(), want.end());
        return m == want;
    };
    switch (spec.kind) {
    case FamilyKind::metacyclic:
        if (is(spec.q, spec.n, spec.n)) return "metacyclic-main";
        if (spec.n % m[0] == 0 && spec.n % m[1] == 0 && spec.n % m[2] == 0)
            return "metacyclic-cyclic-shadow";
        ensure(false, "metacyclic datum violates the branching dichotomy");
        break;
    case FamilyKind::dicyclic:
        if (is(spec.q, 4, 4)) return "dicyclic-q44";
        if (is(2 * spec.q, 4, 4)) return "dicyclic-2q44";
        ensure(false, "dicyclic datum violates the branching dichotomy");
        break;
    case FamilyKind::quaternion8:
        ensure(is(4, 4, 4), "quaternion datum must have branching (4,4,4)");
        return "quaternion";
    case FamilyKind::cyclic:
        return "cyclic";
    }
    ensure(false, "unreachable family kind");
    return {};
}

Elt parse_element_word(const FiniteGroup& G, const std::string& word) {
    require(!word.empty(), "element word must not be empty");
    Elt acc = G.identity();
    size_t start = 0;
    while (start <= word.size()) {
        const size_t stop = std::min(word.find('*', start), word.size());
        const std::string factor = word.substr(start, stop - start);
        require(!factor.empty(), "element word has an empty factor: " + word);
        Elt value;
        bool direct = false;
        try {
            value = G.element_by_label(factor);
            direct = true;
        } catch (const invalid_input_error&) {
            direct = false;
        }
        if (!direct) {
            const size_t caret = factor.find('^');
            require(caret != std::string::npos && caret > 0,
                    "unknown element label: " + factor);
            const std::string base = factor.substr(0, caret);
            const std::string exp_text = factor.substr(caret + 1);
            require(!exp_text.empty(),
                    "element word factor is missing an exponent: " + factor);
            long long exponent = 0;
            const char* first = exp_text.data();
            const char* last = first + exp_text.size();
            const auto res = std::from_chars(first, last, exponent);
            require(res.ec == std::errc() && res.ptr == last,
                    "bad exponent in element word factor: " + factor);
            value = G.power(G.element_by_label(base), exponent);
        }
        acc = G.mul(acc, value);
        start = stop + 1;
        if (stop == word.size()) break;
    }
    return acc;
}

MonodromyDatum parse_datum(const std::shared_ptr<const FiniteGroup>& group,
                           const std::string& literal) {
    require(group != nullptr, "group must not be null");
    const FiniteGroup& G = *group;

    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t stop = std::min(literal.find(',', start), literal.size());
        std::string piece = literal.substr(start, stop - start);
        const size_t lo = piece.find_first_not_of(" \t");
        const size_t hi = piece.find_last_not_of(" \t");
        parts.push_back(lo == std::string::npos
                            ? std::string()
                            : piece.substr(lo, hi - lo + 1));
        if (stop == literal.size()) break;
        start = stop + 1;
    }
    require(parts.size() == 3,
            "datum literal must have exactly three comma-separated entries: " +
                literal);

    MonodromyDatum d;
    d.group = group;
    for (size_t i = 0; i < 3; ++i) {
        require(!parts[i].empty(), "datum entry " + std::to_string(i + 1) +
                                       " is empty: " + literal);
        d.x[i] = parse_element_word(G, parts[i]);
        require(d.x[i] != G.identity(), "datum entry " + std::to_string(i + 1) +
                                            " is the identity: " + literal);
    }
    require(G.mul(d.x[0], G.mul(d.x[1], d.x[2])) == G.identity(),
            "datum entries must multiply to the identity: " + literal);
    require(generates(G, {d.x[0], d.x[1], d.x[2]}),
            "datum entries do not generate the group: " + literal);
    return d;
}

std::string datum_literal(const MonodromyDatum& datum) {
    check_datum_group(datum);
    const FiniteGroup& G = *datum.group;
    return G.label(datum.x[0]) + "," + G.label(datum.x[1]) + "," +
           G.label(datum.x[2]);
}

} // namespace branchcover
