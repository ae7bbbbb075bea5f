#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "galcoh/abgroup.hpp"
#include "galcoh/fingroup.hpp"

namespace galcoh {

// Finitely generated abelian group with an action of a finite group by
// automorphisms. Action matrices live on the ambient coordinates of the
// base presentation; two matrices induce the same automorphism when their
// difference maps into the relation lattice.
class GModule {
public:
    GModule() = default;

    // Actions given on a generating set and closed over the group; the
    // closure is checked for consistency (same element reached twice must
    // induce the same map) and each matrix must preserve the relations.
    static GModule from_generator_actions(
        FinGroup group, FgAbGroup base,
        const std::vector<std::pair<int, IntMatrix>>& generator_actions);
    static GModule trivial(FinGroup group, FgAbGroup base);
    // Free module Z[G]^copies with G permuting coordinates.
    static GModule regular(FinGroup group, std::size_t copies);
    // Direct sum over a common group.
    static GModule direct_sum(const GModule& a, const GModule& b);

    const FinGroup& group() const { return group_; }
    const FgAbGroup& base() const { return base_; }
    const IntMatrix& action(int g) const { return action_.at(g); }

    GroupElement act(int g, const GroupElement& x) const;
    // The module viewed over a subgroup (same base, restricted action).
    GModule restrict_to(const Subgroup& sub) const;

    // True when every 2x vanishes (period 2 criterion on the module side).
    bool has_exponent_two() const;

private:
    FinGroup group_;
    FgAbGroup base_;
    std::vector<IntMatrix> action_;
};

// --- coinvariants -----------------------------------------------------

struct Coinvariants {
    FgAbGroup quotient;       // M_Delta
    AbHom projection;         // M.base -> M_Delta
    FgAbGroup torsion;        // (M_Delta)_Tors
    AbHom torsion_embedding;  // torsion -> M_Delta
};

// Quotient of the base by the lattice spanned by {a(gamma) x - x} for
// subgroup generators gamma and ambient basis vectors x.
Coinvariants coinvariants(const GModule& m, const Subgroup& delta);

// --- Tate H^{-1} -------------------------------------------------------

struct TateHMinus1 {
    FgAbGroup group;          // kernel of the norm on coinvariants
    AbHom embedding;          // group -> M_Delta
    Coinvariants coinv;       // the ambient coinvariants data
};

TateHMinus1 tate_h_minus1(const GModule& m, const Subgroup& delta);

// --- transfer ----------------------------------------------------------

// Coset-sum map M_Gamma -> M_Delta realizing restriction of classes.
// `section_variant` switches the right-coset section; the result must not
// depend on it.
AbHom transfer_hom(const GModule& m, const Subgroup& delta, int section_variant = 0);
GroupElement transfer(const GModule& m, const Subgroup& delta, const GroupElement& cls,
                      int section_variant = 0);

// --- induction ---------------------------------------------------------

// Module over gamma induced from a module over delta.as_group(); the base
// is indexed by left cosets, permuted by gamma and twisted by n's action.
GModule induced_module(const FinGroup& gamma, const Subgroup& delta, const GModule& n);

// Coefficient module M[Gamma/Delta]: one copy of M per left coset, gamma
// sends the copy at c to the copy at gamma*c acting by a(gamma) inside.
GModule place_module(const GModule& m, const Subgroup& delta);
// Shapiro map (M[Gamma/Delta])_Gamma -> M_Delta on ambient coordinates:
// sum over cosets of rep(c)^{-1} applied to the coefficient at c.
IntMatrix shapiro_matrix(const GModule& m, const Subgroup& delta);

// --- duality -----------------------------------------------------------

// Value in Q/Z, reduced with 0 <= num < den.
struct QmodZ {
    Int num{0};
    Int den{1};
    bool operator==(const QmodZ&) const = default;
    static QmodZ make(const Int& num, const Int& den);
    QmodZ operator+(const QmodZ& other) const;
    bool is_zero() const { return num == 0; }
};

struct DualPairing {
    FgAbGroup a_dual_mod_b_dual;  // A^vee / B^vee
    FgAbGroup b_mod_a;            // B / A
    bool perfect = false;
    // Pairing evaluated on arbitrary elements of the two quotients.
    QmodZ value(const GroupElement& phi, const GroupElement& b) const;

    IntMatrix inclusion;  // the inclusion matrix A -> B in their bases
    Int exponent{1};
};

// `inclusion` has the coordinates of A's basis in B's basis as columns;
// throws std::invalid_argument("not finite index") when not full rank.
DualPairing dual_pairing(const IntMatrix& inclusion);

// --- Pontryagin duality -------------------------------------------------

// Dual of a finite module with the contragredient action; throws on
// infinite base.
GModule pontryagin_dual(const GModule& x);

// --- resolutions ---------------------------------------------------------

struct FreeKernelResolution {
    GModule module;             // the resolved module M
    std::size_t free_rank = 0;  // s with M^{-1} = Z[Gamma]^s
    GModule m_minus1;
    GModule m0;
    AbHom kappa;   // M^{-1} -> M^0
    AbHom lambda;  // M^0 -> M
    std::size_t m0_rank = 0;
    bool rank_bound_achieved = false;  // m0_rank <= #Gamma * gen(M)
};

FreeKernelResolution free_kernel_resolution(const GModule& m);

// Exactness verifier: kappa injective, lambda surjective, im kappa =
// ker lambda, M^0 torsion-free. Used both inside the constructor and as
// the independent oracle in tests.
bool verify_resolution(const FreeKernelResolution& r, std::string* why = nullptr);

std::size_t min_generators(const FgAbGroup& g);

// --- effective image -----------------------------------------------------

// The image of a subgroup in Aut(base): elements modulo acting trivially.
struct EffectiveImage {
    FinGroup quotient;
    std::vector<int> class_of;  // parent subgroup member index -> quotient element
    Int order() const { return quotient.order(); }
};

EffectiveImage effective_image(const GModule& m, const Subgroup& delta);

}  // namespace galcoh
