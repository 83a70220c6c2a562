#include "group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "config.hpp"
#include "errors.hpp"

namespace branchcover {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Elt>> mul,
                                    std::vector<std::string> labels) {
    FiniteGroup G;
    const size_t n = mul.size();
    require(n >= 1, "group table must be nonempty");
    if (n > config::max_group_order())
        throw resource_limit_error(
            "group order " + std::to_string(n) + " exceeds the configured bound " +
            std::to_string(config::max_group_order()));
    G.n_ = static_cast<unsigned>(n);
    G.table_.resize(n * n);
    for (size_t i = 0; i < n; ++i) {
        require(mul[i].size() == n, "group table must be square");
        for (size_t j = 0; j < n; ++j) {
            require(mul[i][j] < n, "group table entry out of range");
            G.table_[i * n + j] = mul[i][j];
        }
    }
    if (labels.empty()) {
        labels.reserve(n);
        for (size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    }
    require(labels.size() == n, "label count must match the group order");
    G.labels_ = std::move(labels);
    G.finalize();
    return G;
}

void FiniteGroup::finalize() {
    const unsigned n = n_;
    // Identity: the unique e with e*x = x*e = x for all x.
    bool found = false;
    for (Elt e = 0; e < n; ++e) {
        bool ok = true;
        for (Elt x = 0; x < n && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            identity_ = e;
            found = true;
            break;
        }
    }
    require(found, "table has no identity element");

    // Inverses: each row must contain the identity exactly once.
    inv_.assign(n, 0);
    for (Elt x = 0; x < n; ++x) {
        bool have = false;
        for (Elt y = 0; y < n; ++y) {
            if (mul(x, y) == identity_) {
                require(mul(y, x) == identity_, "one-sided inverse in table");
                inv_[x] = y;
                have = true;
                break;
            }
        }
        require(have, "element without inverse in table");
    }

    // Full associativity check: O(n^3) is affordable at the configured bound.
    for (Elt x = 0; x < n; ++x)
        for (Elt y = 0; y < n; ++y) {
            const Elt xy = mul(x, y);
            for (Elt z = 0; z < n; ++z)
                require(mul(xy, z) == mul(x, mul(y, z)),
                        "multiplication table is not associative");
        }

    elt_order_.assign(n, 0);
    for (Elt x = 0; x < n; ++x) {
        unsigned ord = 1;
        Elt p = x;
        while (p != identity_) {
            p = mul(p, x);
            ++ord;
        }
        elt_order_[x] = ord;
    }

    std::set<std::string> seen(labels_.begin(), labels_.end());
    require(seen.size() == n, "element labels must be distinct");
}

Elt FiniteGroup::power(Elt x, long long e) const {
    if (e < 0) return power(inv_[x], -e);
    Elt acc = identity_, base = x;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1) acc = mul(acc, base);
        if (k >>= 1) base = mul(base, base);
    }
    return acc;
}

Elt FiniteGroup::element_by_label(const std::string& label) const {
    for (Elt x = 0; x < n_; ++x)
        if (labels_[x] == label) return x;
    throw invalid_input_error("no element labeled '" + label + "'");
}

bool FiniteGroup::is_abelian() const {
    for (Elt x = 0; x < n_; ++x)
        for (Elt y = static_cast<Elt>(x + 1); y < n_; ++y)
            if (mul(x, y) != mul(y, x)) return false;
    return true;
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("order") && j.contains("mul"),
            "group json: need {order, mul, labels?}");
    require(j["order"].is_number_integer() || j["order"].is_number_unsigned(),
            "group json: order must be an integer");
    const long long n = j["order"].get<long long>();
    require(n >= 1 && n <= static_cast<long long>(config::kHardMaxGroupOrder),
            "group json: order out of range");
    require(j["mul"].is_array() && j["mul"].size() == static_cast<size_t>(n),
            "group json: mul must be an order x order array");
    std::vector<std::vector<Elt>> mul(static_cast<size_t>(n));
    for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
        const auto& row = j["mul"][i];
        require(row.is_array() && row.size() == static_cast<size_t>(n),
                "group json: mul rows must have length order");
        mul[i].reserve(static_cast<size_t>(n));
        for (const auto& v : row) {
            require(v.is_number_integer() || v.is_number_unsigned(),
                    "group json: mul entries must be integers");
            const long long e = v.get<long long>();
            require(e >= 0 && e < n, "group json: mul entry out of range");
            mul[i].push_back(static_cast<Elt>(e));
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels") && !j["labels"].is_null()) {
        require(j["labels"].is_array() &&
                    j["labels"].size() == static_cast<size_t>(n),
                "group json: labels must list one name per element");
        for (const auto& v : j["labels"]) {
            require(v.is_string(), "group json: labels must be strings");
            labels.push_back(v.get<std::string>());
        }
    }
    return from_table(std::move(mul), std::move(labels));
}

nlohmann::ordered_json FiniteGroup::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = n_;
    nlohmann::ordered_json mul = nlohmann::ordered_json::array();
    for (Elt x = 0; x < n_; ++x) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Elt y = 0; y < n_; ++y) row.push_back(this->mul(x, y));
        mul.push_back(std::move(row));
    }
    j["mul"] = std::move(mul);
    j["labels"] = labels_;
    return j;
}

ConjugacyClasses ConjugacyClasses::compute(const FiniteGroup& G) {
    const unsigned n = G.order();
    ConjugacyClasses cc;
    cc.class_of.assign(n, n); // n = unassigned marker
    for (Elt x = 0; x < n; ++x) {
        if (cc.class_of[x] != n) continue;
        const unsigned id = cc.count();
        std::set<Elt> members;
        for (Elt g = 0; g < n; ++g)
            members.insert(G.mul(G.mul(g, x), G.inverse(g)));
        for (Elt m : members) {
            ensure(cc.class_of[m] == n, "conjugacy classes are not disjoint");
            cc.class_of[m] = id;
        }
        cc.representative.push_back(x); // least: ascending scan
        cc.size.push_back(static_cast<unsigned>(members.size()));
        cc.members.emplace_back(members.begin(), members.end());
        cc.representative_order.push_back(G.element_order(x));
    }
    unsigned long long total = 0;
    for (unsigned s : cc.size) {
        total += s;
        ensure(n % s == 0, "class size does not divide the group order");
    }
    ensure(total == n, "class sizes do not sum to the group order");

    cc.inverse_class.resize(cc.count());
    for (unsigned c = 0; c < cc.count(); ++c)
        cc.inverse_class[c] = cc.class_of[G.inverse(cc.representative[c])];
    return cc;
}

std::vector<Elt> generated_subgroup(const FiniteGroup& G,
                                    const std::vector<Elt>& gens) {
    std::vector<bool> in(G.order(), false);
    std::vector<Elt> queue{G.identity()};
    in[G.identity()] = true;
    for (size_t head = 0; head < queue.size(); ++head) {
        for (Elt g : gens) {
            const Elt next = G.mul(queue[head], g);
            if (!in[next]) {
                in[next] = true;
                queue.push_back(next);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

bool generates(const FiniteGroup& G, const std::vector<Elt>& gens) {
    return generated_subgroup(G, gens).size() == G.order();
}

std::vector<unsigned> square_class_map(const FiniteGroup& G,
                                       const ConjugacyClasses& cls) {
    std::vector<unsigned> out(cls.count());
    for (unsigned c = 0; c < cls.count(); ++c) {
        const Elt rep = cls.representative[c];
        out[c] = cls.class_of[G.mul(rep, rep)];
        for (Elt m : cls.members[c])
            ensure(cls.class_of[G.mul(m, m)] == out[c],
                   "square map depends on the class representative");
    }
    return out;
}

std::vector<Elt> small_generating_set(const FiniteGroup& G) {
    std::vector<Elt> gens;
    std::vector<Elt> closure{G.identity()};
    std::vector<bool> in(G.order(), false);
    in[G.identity()] = true;
    for (Elt x = 0; x < G.order(); ++x) {
        if (in[x]) continue;
        gens.push_back(x);
        closure = generated_subgroup(G, gens);
        in.assign(G.order(), false);
        for (Elt y : closure) in[y] = true;
        if (closure.size() == G.order()) break;
    }
    return gens; // empty for the trivial group
}

namespace {

// Attempts to extend a partial homomorphism (defined on the subgroup generated
// by the already-imaged generators) by one more generator image.  `img` maps
// element -> image or n for undefined; `defined` lists the defined elements.
bool extend_homomorphism(const FiniteGroup& G, std::vector<Elt>& img,
                         std::vector<Elt>& defined, Elt gen, Elt gen_image) {
    const unsigned n = G.order();
    const size_t first_new = defined.size();
    auto set_image = [&](Elt x, Elt y) -> bool {
        if (img[x] != n) return img[x] == y;
        img[x] = y;
        defined.push_back(x);
        return true;
    };
    if (!set_image(gen, gen_image)) return img[gen] == gen_image;
    for (size_t head = first_new; head < defined.size(); ++head) {
        const Elt d = defined[head];
        for (size_t i = 0; i < defined.size(); ++i) {
            const Elt e = defined[i];
            if (!set_image(G.mul(d, e), G.mul(img[d], img[e]))) return false;
            if (!set_image(G.mul(e, d), G.mul(img[e], img[d]))) return false;
        }
    }
    return true;
}

void search_automorphisms(const FiniteGroup& G, const std::vector<Elt>& gens,
                          const std::vector<std::vector<Elt>>& candidates,
                          size_t depth, std::vector<Elt>& img,
                          std::vector<Elt>& defined,
                          std::vector<Automorphism>& out) {
    const unsigned n = G.order();
    if (depth == gens.size()) {
        if (defined.size() != n) return;
        std::vector<bool> hit(n, false);
        for (Elt x = 0; x < n; ++x) {
            if (hit[img[x]]) return;
            hit[img[x]] = true;
        }
        out.push_back(img);
        return;
    }
    for (Elt cand : candidates[depth]) {
        std::vector<Elt> img2 = img;
        std::vector<Elt> defined2 = defined;
        if (extend_homomorphism(G, img2, defined2, gens[depth], cand))
            search_automorphisms(G, gens, candidates, depth + 1, img2, defined2,
                                 out);
    }
}

} // namespace

std::vector<Automorphism> automorphisms(const FiniteGroup& G) {
    const unsigned n = G.order();
    if (n > config::max_group_order())
        throw resource_limit_error(
            "automorphism search: group order exceeds the configured bound");
    const std::vector<Elt> gens = small_generating_set(G);
    if (gens.empty()) return {Automorphism{G.identity()}};

    std::vector<std::vector<Elt>> candidates(gens.size());
    unsigned long long product = 1;
    for (size_t i = 0; i < gens.size(); ++i) {
        for (Elt x = 0; x < n; ++x)
            if (G.element_order(x) == G.element_order(gens[i]))
                candidates[i].push_back(x);
        product *= candidates[i].size();
        if (product > 10000000ULL)
            throw resource_limit_error(
                "automorphism search space too large for this group");
    }

    std::vector<Elt> img(n, static_cast<Elt>(n));
    std::vector<Elt> defined;
    img[G.identity()] = G.identity();
    defined.push_back(G.identity());

    std::vector<Automorphism> out;
    search_automorphisms(G, gens, candidates, 0, img, defined, out);
    ensure(!out.empty(), "automorphism search lost the identity map");

    for (const auto& a : out)
        ensure(a[G.identity()] == G.identity(), "automorphism moves identity");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<size_t> generating_automorphism_subset(
    const std::vector<Automorphism>& auts) {
    if (auts.empty()) return {};
    const Automorphism* identity = nullptr;
    for (const auto& a : auts) {
        bool is_id = true;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != i) { is_id = false; break; }
        if (is_id) { identity = &a; break; }
    }
    ensure(identity != nullptr, "automorphism list lacks the identity");

    std::set<Automorphism> closure{*identity};
    std::vector<Automorphism> frontier{*identity};
    std::vector<size_t> chosen;
    auto compose = [](const Automorphism& f, const Automorphism& g) {
        Automorphism h(f.size());
        for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
        return h;
    };
    for (size_t idx = 0; idx < auts.size() && closure.size() < auts.size();
         ++idx) {
        if (closure.count(auts[idx])) continue;
        chosen.push_back(idx);
        // Re-close under composition with everything chosen so far.
        std::vector<Automorphism> work{*identity};
        std::set<Automorphism> seen{*identity};
        std::vector<Automorphism> gens;
        for (size_t c : chosen) gens.push_back(auts[c]);
        for (size_t head = 0; head < work.size(); ++head) {
            for (const auto& g : gens) {
                Automorphism h = compose(work[head], g);
                if (seen.insert(h).second) work.push_back(h);
            }
        }
        closure = std::move(seen);
    }
    ensure(closure.size() == auts.size(),
           "generating subset does not reach the full automorphism group");
    return chosen;
}

} // namespace branchcover
