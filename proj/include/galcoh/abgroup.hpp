#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galcoh/intmatrix.hpp"

namespace galcoh {

class GroupElement;

// Finitely generated abelian group Z^n / (column lattice of relations),
// normalized by Smith form. Canonical coordinates are the torsion
// coordinates (moduli d_1 | d_2 | ... | d_r, each >= 2) followed by the
// free coordinates; invariant factors equal to 1 are dropped. Immutable.
class FgAbGroup {
public:
    FgAbGroup();  // trivial group (rank 0)
    static FgAbGroup from_presentation(std::size_t ambient_rank, const IntMatrix& relations);
    static FgAbGroup free_group(std::size_t rank);
    static FgAbGroup cyclic(const Int& n);
    static FgAbGroup from_invariant_factors(const std::vector<Int>& factors, std::size_t free_rank);

    std::size_t ambient_rank() const;
    const IntMatrix& relations() const;
    const std::vector<Int>& invariant_factors() const;
    std::size_t free_rank() const;
    std::size_t torsion_rank() const { return invariant_factors().size(); }
    std::size_t canonical_rank() const { return torsion_rank() + free_rank(); }

    bool is_trivial() const;
    bool is_finite() const { return free_rank() == 0; }
    Int order() const;                 // throws if infinite
    Int exponent() const;              // lcm of invariant factors; 1 for trivial; throws if infinite
    std::size_t min_generators() const { return canonical_rank(); }

    // Class of an ambient-coordinate vector.
    GroupElement element(const std::vector<Int>& ambient_coords) const;
    // Element from canonical coordinates (reduced on input).
    GroupElement from_canonical(const std::vector<Int>& canonical_coords) const;
    GroupElement zero() const;
    GroupElement canonical_generator(std::size_t i) const;

    // Some ambient representative of a canonical coordinate vector.
    std::vector<Int> lift(const std::vector<Int>& canonical_coords) const;

    // All elements, torsion part only (canonical coordinate order). Throws
    // if the torsion subgroup has more than `limit` elements.
    std::vector<GroupElement> torsion_elements(std::size_t limit = 1u << 20) const;

    bool same_group(const FgAbGroup& other) const { return impl_ == other.impl_; }
    bool isomorphic(const FgAbGroup& other) const;
    std::string describe() const;  // e.g. "Z/2 + Z/4 + Z^2"

private:
    struct Impl;
    static std::shared_ptr<const Impl> build_impl(std::size_t n, const IntMatrix& relations);
    std::shared_ptr<const Impl> impl_;
    friend class GroupElement;
};

// Element of an FgAbGroup in reduced canonical coordinates. Two elements
// are equal iff their reduced coordinates are identical.
class GroupElement {
public:
    const FgAbGroup& parent() const { return parent_; }
    const std::vector<Int>& coords() const { return coords_; }

    bool is_zero() const;
    bool operator==(const GroupElement& rhs) const;
    GroupElement operator+(const GroupElement& rhs) const;
    GroupElement operator-(const GroupElement& rhs) const;
    GroupElement operator-() const;
    GroupElement scaled(const Int& n) const;

    // Least n >= 1 with n*x = 0, nullopt when x has a free coordinate.
    std::optional<Int> order() const;

    std::vector<Int> ambient_lift() const { return parent_.lift(coords_); }
    std::string to_string() const;

private:
    GroupElement(FgAbGroup parent, std::vector<Int> reduced)
        : parent_(std::move(parent)), coords_(std::move(reduced)) {}
    FgAbGroup parent_;
    std::vector<Int> coords_;
    friend class FgAbGroup;
};

// Homomorphism between presented groups, stored on ambient coordinates.
// matrix has target.ambient_rank() rows and source.ambient_rank() columns.
struct AbHom {
    FgAbGroup source;
    FgAbGroup target;
    IntMatrix matrix;

    GroupElement apply(const GroupElement& x) const;
    // Images of the source relation columns must vanish in the target.
    bool is_well_defined() const;
    AbHom compose_after(const AbHom& inner) const;  // this ∘ inner
    static AbHom identity(const FgAbGroup& g);
    static AbHom multiplication(const FgAbGroup& g, const Int& n);
};

// Kernel, image, and cokernel of a homomorphism. The kernel comes with an
// embedding into the source, the cokernel with a projection from the target.
struct HomParts {
    FgAbGroup kernel;
    AbHom kernel_embedding;   // kernel -> source
    FgAbGroup image;
    AbHom image_embedding;    // image -> target
    FgAbGroup cokernel;
    AbHom cokernel_projection;  // target -> cokernel
};

// Throws std::invalid_argument("not a homomorphism") when f does not
// respect the source relations.
HomParts hom_parts(const AbHom& f);

// Torsion subgroup with its inclusion map.
struct TorsionPart {
    FgAbGroup group;
    AbHom embedding;  // group -> parent
};
TorsionPart torsion_subgroup(const FgAbGroup& g);

}  // namespace galcoh
