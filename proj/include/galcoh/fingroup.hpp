#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "galcoh/abgroup.hpp"

namespace galcoh {

// Finite group given by its multiplication table. Elements are 0..n-1 with
// 0 the identity. The table is checked to be a group law at construction.
// Immutable and cheap to copy.
class FinGroup {
public:
    FinGroup();  // trivial group
    static FinGroup from_table(std::vector<std::vector<int>> table);
    static FinGroup cyclic(int n);
    static FinGroup direct_product(const FinGroup& a, const FinGroup& b);
    // Permutation group generated by the given permutations of {0..points-1}.
    static FinGroup from_permutations(int points, const std::vector<std::vector<int>>& gens);
    static FinGroup symmetric(int n);  // n <= 5
    static FinGroup dihedral(int n);   // order 2n
    static FinGroup quaternion8();
    static FinGroup klein_four();

    int order() const;
    int mult(int a, int b) const;
    int inverse(int a) const;
    int element_order(int a) const;
    bool is_abelian() const;
    bool same_table(const FinGroup& other) const {
        return table_ == other.table_ || *table_ == *other.table_;
    }

private:
    std::shared_ptr<const std::vector<int>> table_;  // row-major order x order
    int order_ = 1;
};

// Subgroup of a FinGroup, stored as the sorted member list.
class Subgroup {
public:
    Subgroup() = default;
    Subgroup(FinGroup parent, std::vector<int> members);  // checks closure
    static Subgroup trivial(const FinGroup& g);
    static Subgroup full(const FinGroup& g);
    static Subgroup generated(const FinGroup& g, const std::vector<int>& gens);

    const FinGroup& parent() const { return parent_; }
    const std::vector<int>& members() const { return members_; }
    int order() const { return static_cast<int>(members_.size()); }
    int index() const { return parent_.order() / order(); }
    bool contains(int g) const;
    bool contains_subgroup(const Subgroup& other) const;
    bool operator==(const Subgroup& other) const { return members_ == other.members_; }

    // Small generating set (greedy).
    std::vector<int> generators() const;
    bool is_cyclic() const;
    bool is_normal() const;
    Subgroup conjugate(int g) const;  // g S g^{-1}

    // Representatives of right cosets S\G; `variant` picks a different
    // section (transfer must not depend on the choice).
    std::vector<int> right_transversal(int variant = 0) const;
    // Representatives of left cosets G/S, identity first.
    std::vector<int> left_transversal() const;
    // Index of the left coset g·S in left_transversal order.
    int left_coset_index(int g) const;

    // The subgroup as an abstract group; element i of the result is
    // members()[i] (identity first since members are sorted).
    FinGroup as_group() const;

    // This subgroup re-indexed as a subgroup of ambient.as_group();
    // requires members() to be contained in ambient.members().
    Subgroup as_subgroup_of(const Subgroup& ambient) const;

private:
    FinGroup parent_;
    std::vector<int> members_;
};

struct GroupAnalysis {
    std::vector<Subgroup> all_subgroups;
    // Indices into all_subgroups, one vector per conjugacy class.
    std::vector<std::vector<std::size_t>> subgroup_conjugacy_classes;
    std::vector<Subgroup> cyclic_representatives;  // one per class of cyclic subgroups
    std::vector<Int> abelianization;               // invariant factors of G/[G,G]
    bool sylow_cyclic = false;
};

// Throws std::domain_error when the order exceeds `order_bound`.
GroupAnalysis group_analysis(const FinGroup& g, int order_bound = 64);

// Subgroup enumeration alone (no conjugacy or abelianization work).
std::vector<Subgroup> all_subgroups(const FinGroup& g, int order_bound = 64);

// Invariant factors of a finite abelian group presented by a table.
std::vector<Int> abelian_invariants(const FinGroup& g);

}  // namespace galcoh
