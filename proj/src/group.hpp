#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace branchcover {

using Elt = std::uint16_t;

// A finite group given by its full multiplication table.  Construction
// validates the group axioms exhaustively (closure, associativity, identity,
// inverses), so any FiniteGroup in circulation is a genuine group.
class FiniteGroup {
public:
    // mul[i][j] = index of the product (row element) * (column element).
    static FiniteGroup from_table(std::vector<std::vector<Elt>> mul,
                                  std::vector<std::string> labels);
    static FiniteGroup from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;

    unsigned order() const { return n_; }
    Elt identity() const { return identity_; }
    Elt mul(Elt x, Elt y) const { return table_[static_cast<size_t>(x) * n_ + y]; }
    Elt inverse(Elt x) const { return inv_[x]; }
    // x^e for any integer e (negative exponents use the inverse).
    Elt power(Elt x, long long e) const;
    unsigned element_order(Elt x) const { return elt_order_[x]; }

    const std::string& label(Elt x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    // Index of the element with the given label; throws invalid_input_error
    // if absent.
    Elt element_by_label(const std::string& label) const;

    bool is_abelian() const;

private:
    FiniteGroup() = default;
    void finalize(); // computes identity, inverses, element orders; validates

    unsigned n_ = 0;
    std::vector<Elt> table_; // row-major n x n
    std::vector<std::string> labels_;
    Elt identity_ = 0;
    std::vector<Elt> inv_;
    std::vector<unsigned> elt_order_;
};

// Partition of a group into conjugacy classes.  Classes are ordered by their
// least element index, which is also the representative.
struct ConjugacyClasses {
    std::vector<unsigned> class_of;          // element -> class
    std::vector<Elt> representative;         // class -> least element
    std::vector<unsigned> size;              // class -> cardinality
    std::vector<std::vector<Elt>> members;   // class -> sorted elements
    std::vector<unsigned> inverse_class;     // class of the inverses
    std::vector<unsigned> representative_order;

    unsigned count() const { return static_cast<unsigned>(representative.size()); }

    static ConjugacyClasses compute(const FiniteGroup& G);
};

// Closure of the given elements under multiplication (always contains the
// identity); returned sorted.
std::vector<Elt> generated_subgroup(const FiniteGroup& G,
                                    const std::vector<Elt>& gens);

bool generates(const FiniteGroup& G, const std::vector<Elt>& gens);

// For each class with representative x, the class containing x^2.  Verified to
// be independent of the representative choice.
std::vector<unsigned> square_class_map(const FiniteGroup& G,
                                       const ConjugacyClasses& cls);

// An automorphism stored as the image permutation on element indices.
using Automorphism = std::vector<Elt>;

// The full automorphism group by brute-force search over images of a small
// generating set; deterministic order.  Throws resource_limit_error when the
// candidate search space exceeds an internal bound.
std::vector<Automorphism> automorphisms(const FiniteGroup& G);

// Indices into `auts` of a small subset that generates the whole automorphism
// group under composition.
std::vector<size_t> generating_automorphism_subset(
    const std::vector<Automorphism>& auts);

// Greedily chosen generating set of the group itself (ascending element scan).
std::vector<Elt> small_generating_set(const FiniteGroup& G);

} // namespace branchcover
