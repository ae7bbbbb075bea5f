#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "galcoh/gmodule.hpp"

namespace galcoh {

enum class PlaceKind { finite, real, complex };

// The three nontrivial square classes of a non-archimedean local field of
// odd residue characteristic: a unit non-square, a uniformizer, and their
// product.
enum class SquareClass { eps = 0, pi = 1, eps_pi = 2 };

// A place of the base field in the model: a name, a kind, and the
// decomposition subgroup of Gamma at a chosen place above it. Real places
// carry sigma_v (an element of order dividing 2) through a subgroup of
// order at most 2. Finite places may declare the residue size q and, for
// the strict quadratic analysis, which index-2 subgroups of the
// decomposition group fix the three quadratic extensions of each square
// class (absent entry = that quadratic extension is linearly disjoint
// from the splitting field).
struct PlaceSpec {
    std::string name;
    PlaceKind kind = PlaceKind::finite;
    Subgroup decomposition;
    std::optional<Int> residue_size;
    std::array<std::optional<Subgroup>, 3> quadratic_classes;

    void validate() const;
    // sigma_v for real places (identity allowed).
    int conjugation_element() const;
};

// H^1(K_v, G) in the coinvariants model at one place:
//   finite  -> torsion of M_{Delta_v}
//   real    -> Tate H^{-1} of the order-2 group acting through sigma_v
//   complex -> trivial group
struct LocalGroup {
    PlaceSpec place;
    Coinvariants coinv;     // M_{Delta_v} with projection and torsion part
    FgAbGroup h1;           // the model group
    AbHom h1_embedding;     // h1 -> coinv.quotient
};

LocalGroup h1_local(const GModule& m, const PlaceSpec& place);

struct LocalClass {
    PlaceSpec place;
    GroupElement value;  // element of the LocalGroup h1 group
    bool is_neutral() const { return value.is_zero(); }
};

// Parity power rule at a real place: x for odd n, neutral for even n.
LocalClass nabla(const LocalClass& x, const Int& n);

// Finite places: multiplication by d. Real places: nabla.
LocalClass power_local(const LocalClass& cls, const Int& d);
Int period_local(const LocalClass& cls);

// Greatest divisor of theta dividing some power of n.
Int capacity(const Int& n, const Int& theta);

struct SplitDegreeBounds {
    Int bound_ab;   // n * cp(n, theta^ab)
    Int bound_pow;  // n^(floor(log2 theta) + 1)
};
SplitDegreeBounds split_degree_local(const GModule& m, const PlaceSpec& place, const Int& n);

// An abstract finite separable extension of the local field: the subgroup
// cut out inside the splitting field plus the degree of the linearly
// disjoint part. Total degree [Delta_v : delta] * multiplier.
struct ExtensionModelLocal {
    Subgroup delta;
    Int multiplier{1};
    Int total_degree(const PlaceSpec& place) const;
};

// Restriction of a local class along an extension model:
// multiplier * transfer to ext.delta, valued in the coinvariants torsion
// of the smaller subgroup.
LocalClass restrict_local(const GModule& m, const LocalClass& cls,
                          const ExtensionModelLocal& ext);

struct LocalIndexResult {
    Int divisibility_lower_bound;
    Int gcd_splitting_degrees;       // 0 when no splitting model was found
    std::vector<Int> killing_degrees;  // total degrees <= bound that split
};

// Search all extension models of total degree <= degree_bound for those
// killing the class. In strict quadratic mode (odd residue size declared)
// even-degree models must admit a quadratic subextension consistent with
// the declared square-class data, wild multipliers are excluded, and the
// coprimality argument may raise the divisibility bound from the period
// to lcm(period, 4).
LocalIndexResult local_index(const GModule& m, const LocalClass& cls, const Int& degree_bound,
                             bool strict_quadratic);

// The divisibility bound alone (no search); used by the global index
// aggregation.
Int local_divisibility_bound(const GModule& m, const LocalClass& cls, bool strict_quadratic);

struct SquareClassModel {
    Int residue_size;
    // Class indices: 0 = trivial, 1..3 = eps, pi, eps*pi.
    int multiply(int a, int b) const;
    static const char* class_name(int c);
};

// Throws std::domain_error("wild case unsupported") for even q.
SquareClassModel square_class_model(const Int& q);

// Square classes whose quadratic extension can sit inside an even-degree
// extension model, given the place's declared class data.
std::vector<SquareClass> quadratic_subextensions(const PlaceSpec& place,
                                                 const ExtensionModelLocal& ext);

}  // namespace galcoh
