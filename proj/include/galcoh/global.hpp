#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "galcoh/local.hpp"

namespace galcoh {

// Finite truncation of the set of places: the named places plus, per
// conjugacy class of cyclic subgroups of Gamma, `reservoir_depth`
// anonymous finite orbits with that decomposition subgroup, plus the same
// number of free orbits. The reservoir stands in for the existence of
// places with prescribed cyclic decomposition.
struct PlaceModel {
    std::vector<PlaceSpec> named_places;
    int reservoir_depth = 1;
};

std::size_t max_orbits_limit();  // 64, overridable via GALCOH_MAX_ORBITS

// One Gamma-orbit of places of the splitting field.
struct PlaceOrbit {
    PlaceSpec spec;
    bool from_reservoir = false;
};

// The abelianized global cohomology group (M[S]_0)_{Gamma,Tors} together
// with its verified localization and Tate-sum homomorphisms.
class GlobalAbGroup {
public:
    GlobalAbGroup(GModule m, PlaceModel pm);

    const GModule& module() const { return m_; }
    const PlaceModel& place_model() const { return pm_; }
    const std::vector<PlaceOrbit>& orbits() const { return orbits_; }
    std::optional<std::size_t> orbit_index(const std::string& name) const;

    // The group where abelianized global classes live.
    const FgAbGroup& group() const { return global_; }
    // Full coinvariants (possibly with a free part) containing it.
    const FgAbGroup& coinvariants_group() const { return coinv_.quotient; }

    // Localization of a class at an orbit, valued in the coinvariants of
    // the decomposition subgroup at that orbit.
    GroupElement localize(const GroupElement& cls, std::size_t orbit) const;
    // Tate sum: total projection to M_{Gamma,Tors}.
    GroupElement mu(const GroupElement& cls) const;
    GroupElement mu_of_local(std::size_t orbit, const GroupElement& local_value) const;

    const LocalGroup& local_group(std::size_t orbit) const { return local_groups_[orbit]; }
    const Coinvariants& gamma_coinvariants() const { return gamma_coinv_; }

    // Kernel-module machinery, exposed for restriction.
    const GModule& kernel_module() const { return kernel_module_; }
    const Coinvariants& kernel_coinvariants() const { return coinv_; }

    GroupElement embed(const GroupElement& cls) const;  // group() -> coinvariants_group()
    // Torsion part of a coinvariants element (throws if not torsion).
    GroupElement torsion_part(const GroupElement& coinv_cls) const;

    std::size_t big_rank() const { return big_.base().ambient_rank(); }
    std::size_t block_offset(std::size_t orbit) const { return block_offset_.at(orbit); }
    const IntMatrix& kernel_basis() const { return kernel_basis_; }
    const IntMatrix& localization_matrix(std::size_t orbit) const {
        return localizations_.at(orbit).matrix;
    }
    // Class of a sum-zero coefficient vector, when it is torsion.
    std::optional<GroupElement> class_of_big_vector(const std::vector<Int>& x) const;

private:
    GModule m_;
    PlaceModel pm_;
    std::vector<PlaceOrbit> orbits_;
    GModule big_;            // direct sum of the orbit coefficient modules
    GModule kernel_module_;  // M[S]_0 with its action
    IntMatrix kernel_basis_;
    std::shared_ptr<const IntSolver> lift_solver_;  // for [basis | relations]
    Coinvariants coinv_;     // of the kernel module under Gamma
    FgAbGroup global_;       // torsion part
    std::vector<AbHom> localizations_;  // coinv.quotient -> local coinv quotient
    AbHom mu_;                          // coinv.quotient -> M_Gamma coinvariants
    std::vector<LocalGroup> local_groups_;
    Coinvariants gamma_coinv_;
    std::vector<std::size_t> block_offset_;  // ambient offset per orbit in big_
};

// Archimedean component of a global class at one real place: either an
// element of the Tate H^{-1} group (torus mode) or a point of a declared
// finite pointed set with a map into the local coinvariants torsion
// (abstract mode).
struct RealComponent {
    struct Abstract {
        std::vector<GroupElement> theta_images;  // values in local coinv quotient; index 0 neutral
        std::size_t index = 0;
    };
    std::variant<GroupElement, Abstract> value;

    bool is_torus() const { return std::holds_alternative<GroupElement>(value); }
    bool is_neutral() const;
    RealComponent parity_power(const Int& n) const;  // nabla
    GroupElement theta(const LocalGroup& lg) const;  // image in local coinv quotient
};

struct GlobalClass {
    GroupElement ab_part;                    // element of GlobalAbGroup::group()
    std::vector<RealComponent> inf_parts;    // one per real orbit, in orbit order
};

struct GlobalContext {
    std::shared_ptr<const GlobalAbGroup> ab;
    std::vector<std::size_t> real_orbits;  // orbit indices of kind real

    explicit GlobalContext(GModule m, PlaceModel pm);
    const GlobalAbGroup& group() const { return *ab; }

    // Cartesian condition at every real place.
    bool is_compatible(const GlobalClass& cls, std::string* offending = nullptr) const;
    GlobalClass make_class(GroupElement ab_part, std::vector<RealComponent> inf_parts) const;
    // Torus-mode class from the abelian part alone; fails when some real
    // localization is outside the image of theta.
    std::optional<GlobalClass> class_from_ab(const GroupElement& ab_part) const;
    GlobalClass neutral_class() const;

    GlobalClass power(const GlobalClass& cls, const Int& d) const;
    Int period(const GlobalClass& cls) const;
    bool is_neutral(const GlobalClass& cls) const;

    LocalClass localize_class(const GlobalClass& cls, std::size_t orbit) const;

    // All global classes (torus mode). Throws if the group is too large.
    std::vector<GlobalClass> enumerate(std::size_t limit = 1u << 16) const;
};

// Result of gluing prescribed local classes: either a class or the
// nonzero Tate-sum obstruction.
struct GlueOutcome {
    std::optional<GlobalClass> cls;
    std::optional<GroupElement> obstruction;  // in M_{Gamma} coinvariants
    int used_reservoir_depth = 0;
};

// Prescriptions name orbits; unnamed orbits must localize to neutral.
// Retries with a deeper reservoir before giving up; for cyclic Gamma a
// vanishing obstruction guarantees success, so exhaustion is an error.
GlueOutcome glue_local_classes(const GModule& m, const PlaceModel& pm,
                               const std::map<std::string, std::vector<Int>>& prescribed,
                               int retry_limit = 2);

// Single attempt in a prebuilt context; both fields empty when the model
// admits no solution at this depth.
GlueOutcome glue_local_classes_in(const GlobalContext& ctx,
                                  const std::map<std::string, std::vector<Int>>& prescribed);

struct ShaResult {
    FgAbGroup group;
    bool stable = false;  // same invariant factors at depth r and r+1
};

ShaResult sha_kernel(const GModule& m, const PlaceModel& pm);

// Restriction of a global class along an abstract extension model
// (subgroup Delta, disjoint-degree multiplier, complexified real places).
struct RestrictedGlobalClass {
    GroupElement ab_part;  // in the Delta-coinvariants of the kernel module
    std::vector<std::optional<RealComponent>> inf_parts;  // nullopt = complexified
    bool is_neutral() const;
};

RestrictedGlobalClass restrict_global(const GlobalContext& ctx, const GlobalClass& cls,
                                      const Subgroup& delta, const Int& multiplier,
                                      const std::vector<std::string>& complexified);

struct GlobalSplitGuarantee {
    Int guarantee_degree;        // n * cp(n, #Theta)
    bool sylow_cyclic_guarantee; // full splitting rather than into-Sha
};
GlobalSplitGuarantee split_degree_global(const GModule& m, const Int& n);

struct IndexBounds {
    Int lower;
    Int upper;
    std::optional<Int> achieved;
    Int exponent_d;
};
IndexBounds index_bounds_global(const GlobalContext& ctx, const GlobalClass& cls,
                                const Int& search_bound);

bool period2_property(const GModule& m);
bool per_equals_ind_guarantee(const GModule& m);

// For a module with 2M != 0: a class of period > 2 prescribed at
// trivial-decomposition places, demonstrating the failure of the period-2
// property.
std::optional<GlobalClass> period2_witness(const GlobalContext& ctx);

}  // namespace galcoh
