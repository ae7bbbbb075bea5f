#include "galcoh/gmodule.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace galcoh {

namespace {

// Matrices induce the same map on the base iff their difference maps the
// ambient basis into the relation lattice.
bool same_map_on_base(const FgAbGroup& base, const IntMatrix& a, const IntMatrix& b) {
    IntMatrix diff = a - b;
    for (std::size_t j = 0; j < diff.cols(); ++j)
        if (!base.element(diff.column_vec(j)).is_zero()) return false;
    return true;
}

bool preserves_relations(const FgAbGroup& base, const IntMatrix& a) {
    const IntMatrix& rel = base.relations();
    for (std::size_t j = 0; j < rel.cols(); ++j)
        if (!base.element(a.apply(rel.column_vec(j))).is_zero()) return false;
    return true;
}

}  // namespace

GModule GModule::from_generator_actions(
    FinGroup group, FgAbGroup base,
    const std::vector<std::pair<int, IntMatrix>>& generator_actions) {
    const std::size_t r = base.ambient_rank();
    const int n = group.order();
    for (const auto& [g, mat] : generator_actions) {
        if (g < 0 || g >= n) throw std::invalid_argument("generator index out of range");
        if (mat.rows() != r || mat.cols() != r)
            throw std::invalid_argument("action matrix shape mismatch");
        if (!preserves_relations(base, mat))
            throw std::invalid_argument("action matrix does not preserve the relation lattice");
    }

    std::vector<IntMatrix> action(n);
    std::vector<char> known(n, 0);
    action[0] = IntMatrix::identity(r);
    known[0] = 1;

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        int g = frontier.back();
        frontier.pop_back();
        for (const auto& [h, mat] : generator_actions) {
            int gh = group.mult(g, h);
            IntMatrix a = action[g] * mat;
            if (!known[gh]) {
                action[gh] = std::move(a);
                known[gh] = 1;
                frontier.push_back(gh);
            } else if (!same_map_on_base(base, action[gh], a)) {
                throw std::invalid_argument("inconsistent generator actions");
            }
        }
    }
    for (int g = 0; g < n; ++g)
        if (!known[g]) throw std::invalid_argument("generators do not generate the group");
    if (!same_map_on_base(base, action[0], IntMatrix::identity(r)))
        throw std::invalid_argument("identity does not act trivially");

    GModule m;
    m.group_ = std::move(group);
    m.base_ = std::move(base);
    m.action_ = std::move(action);
    return m;
}

GModule GModule::trivial(FinGroup group, FgAbGroup base) {
    GModule m;
    m.action_.assign(group.order(), IntMatrix::identity(base.ambient_rank()));
    m.group_ = std::move(group);
    m.base_ = std::move(base);
    return m;
}

GModule GModule::regular(FinGroup group, std::size_t copies) {
    const int n = group.order();
    const std::size_t rank = copies * n;
    GModule m;
    m.base_ = FgAbGroup::free_group(rank);
    m.action_.reserve(n);
    for (int g = 0; g < n; ++g) {
        IntMatrix p(rank, rank);
        for (std::size_t j = 0; j < copies; ++j)
            for (int h = 0; h < n; ++h)
                p.at(j * n + group.mult(g, h), j * n + h) = 1;
        m.action_.push_back(std::move(p));
    }
    m.group_ = std::move(group);
    return m;
}

GModule GModule::direct_sum(const GModule& a, const GModule& b) {
    if (!a.group_.same_table(b.group_))
        throw std::invalid_argument("direct sum over different groups");
    std::size_t ra = a.base_.ambient_rank(), rb = b.base_.ambient_rank();
    IntMatrix rel(ra + rb, a.base_.relations().cols() + b.base_.relations().cols());
    for (std::size_t j = 0; j < a.base_.relations().cols(); ++j)
        for (std::size_t i = 0; i < ra; ++i) rel.at(i, j) = a.base_.relations().at(i, j);
    for (std::size_t j = 0; j < b.base_.relations().cols(); ++j)
        for (std::size_t i = 0; i < rb; ++i)
            rel.at(ra + i, a.base_.relations().cols() + j) = b.base_.relations().at(i, j);

    GModule m;
    m.group_ = a.group_;
    m.base_ = FgAbGroup::from_presentation(ra + rb, rel);
    for (int g = 0; g < a.group_.order(); ++g) {
        IntMatrix block(ra + rb, ra + rb);
        for (std::size_t i = 0; i < ra; ++i)
            for (std::size_t j = 0; j < ra; ++j) block.at(i, j) = a.action_[g].at(i, j);
        for (std::size_t i = 0; i < rb; ++i)
            for (std::size_t j = 0; j < rb; ++j) block.at(ra + i, ra + j) = b.action_[g].at(i, j);
        m.action_.push_back(std::move(block));
    }
    return m;
}

GroupElement GModule::act(int g, const GroupElement& x) const {
    return base_.element(action_[g].apply(x.ambient_lift()));
}

GModule GModule::restrict_to(const Subgroup& sub) const {
    GModule m;
    m.group_ = sub.as_group();
    m.base_ = base_;
    m.action_.reserve(sub.members().size());
    for (int member : sub.members()) m.action_.push_back(action_[member]);
    return m;
}

bool GModule::has_exponent_two() const {
    return base_.free_rank() == 0 && (base_.is_trivial() || base_.exponent() <= 2);
}

Coinvariants coinvariants(const GModule& m, const Subgroup& delta) {
    const std::size_t r = m.base().ambient_rank();
    std::vector<int> gens = delta.generators();
    IntMatrix extra(r, gens.size() * r);
    std::size_t col = 0;
    for (int g : gens) {
        IntMatrix diff = m.action(g) - IntMatrix::identity(r);
        for (std::size_t j = 0; j < r; ++j, ++col)
            for (std::size_t i = 0; i < r; ++i) extra.at(i, col) = diff.at(i, j);
    }
    Coinvariants out;
    out.quotient = FgAbGroup::from_presentation(r, m.base().relations().hconcat(extra));
    out.projection = AbHom{m.base(), out.quotient, IntMatrix::identity(r)};
    TorsionPart t = torsion_subgroup(out.quotient);
    out.torsion = t.group;
    out.torsion_embedding = t.embedding;
    return out;
}

TateHMinus1 tate_h_minus1(const GModule& m, const Subgroup& delta) {
    const std::size_t r = m.base().ambient_rank();
    Coinvariants coinv = coinvariants(m, delta);
    IntMatrix norm(r, r);
    for (int g : delta.members()) norm = norm + m.action(g);
    AbHom norm_hom{coinv.quotient, m.base(), norm};
    HomParts parts = hom_parts(norm_hom);
    return TateHMinus1{parts.kernel, parts.kernel_embedding, std::move(coinv)};
}

AbHom transfer_hom(const GModule& m, const Subgroup& delta, int section_variant) {
    const std::size_t r = m.base().ambient_rank();
    Coinvariants src = coinvariants(m, Subgroup::full(m.group()));
    Coinvariants dst = coinvariants(m, delta);
    IntMatrix t(r, r);
    for (int rep : delta.right_transversal(section_variant)) t = t + m.action(rep);
    return AbHom{src.quotient, dst.quotient, t};
}

GroupElement transfer(const GModule& m, const Subgroup& delta, const GroupElement& cls,
                      int section_variant) {
    return transfer_hom(m, delta, section_variant).apply(cls);
}

GModule induced_module(const FinGroup& gamma, const Subgroup& delta, const GModule& n) {
    if (n.group().order() != delta.order())
        throw std::invalid_argument("module is not over the given subgroup");
    const FinGroup& sub = n.group();
    const std::vector<int>& members = delta.members();
    std::vector<int> reps = delta.left_transversal();
    const std::size_t k = reps.size();
    const std::size_t r = n.base().ambient_rank();
    const IntMatrix& nrel = n.base().relations();

    IntMatrix rel(k * r, k * nrel.cols());
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < nrel.cols(); ++j)
            for (std::size_t i = 0; i < r; ++i)
                rel.at(c * r + i, c * nrel.cols() + j) = nrel.at(i, j);
    FgAbGroup base = FgAbGroup::from_presentation(k * r, rel);

    auto member_index = [&](int g) {
        auto it = std::lower_bound(members.begin(), members.end(), g);
        if (it == members.end() || *it != g) throw std::logic_error("twist not in subgroup");
        return static_cast<int>(it - members.begin());
    };
    (void)sub;

    std::vector<IntMatrix> actions;
    actions.reserve(gamma.order());
    for (int g = 0; g < gamma.order(); ++g) {
        IntMatrix a(k * r, k * r);
        for (std::size_t i = 0; i < k; ++i) {
            int gi = gamma.mult(g, reps[i]);
            int j = delta.left_coset_index(gi);
            int twist = gamma.mult(gamma.inverse(reps[j]), gi);
            const IntMatrix& block = n.action(member_index(twist));
            for (std::size_t bi = 0; bi < r; ++bi)
                for (std::size_t bj = 0; bj < r; ++bj)
                    a.at(j * r + bi, i * r + bj) = block.at(bi, bj);
        }
        actions.push_back(std::move(a));
    }

    std::vector<std::pair<int, IntMatrix>> gen_actions;
    for (int g = 0; g < gamma.order(); ++g) gen_actions.emplace_back(g, actions[g]);
    return GModule::from_generator_actions(gamma, std::move(base), gen_actions);
}

GModule place_module(const GModule& m, const Subgroup& delta) {
    const FinGroup& gamma = m.group();
    std::vector<int> reps = delta.left_transversal();
    const std::size_t k = reps.size();
    const std::size_t r = m.base().ambient_rank();
    const IntMatrix& mrel = m.base().relations();

    IntMatrix rel(k * r, k * mrel.cols());
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t j = 0; j < mrel.cols(); ++j)
            for (std::size_t i = 0; i < r; ++i)
                rel.at(c * r + i, c * mrel.cols() + j) = mrel.at(i, j);
    FgAbGroup base = FgAbGroup::from_presentation(k * r, rel);

    std::vector<std::pair<int, IntMatrix>> gen_actions;
    for (int g = 0; g < gamma.order(); ++g) {
        IntMatrix a(k * r, k * r);
        for (std::size_t i = 0; i < k; ++i) {
            int j = delta.left_coset_index(gamma.mult(g, reps[i]));
            const IntMatrix& block = m.action(g);
            for (std::size_t bi = 0; bi < r; ++bi)
                for (std::size_t bj = 0; bj < r; ++bj)
                    a.at(j * r + bi, i * r + bj) = block.at(bi, bj);
        }
        gen_actions.emplace_back(g, std::move(a));
    }
    return GModule::from_generator_actions(gamma, std::move(base), gen_actions);
}

IntMatrix shapiro_matrix(const GModule& m, const Subgroup& delta) {
    std::vector<int> reps = delta.left_transversal();
    const std::size_t k = reps.size();
    const std::size_t r = m.base().ambient_rank();
    IntMatrix s(r, k * r);
    for (std::size_t c = 0; c < k; ++c) {
        const IntMatrix& inv = m.action(m.group().inverse(reps[c]));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) s.at(i, c * r + j) = inv.at(i, j);
    }
    return s;
}

QmodZ QmodZ::make(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Int d = den < 0 ? Int(-den) : den;
    Int n = den < 0 ? Int(-num) : num;
    n %= d;
    if (n < 0) n += d;
    Int g = gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    return QmodZ{n, d};
}

QmodZ QmodZ::operator+(const QmodZ& other) const {
    return make(num * other.den + other.num * den, den * other.den);
}

QmodZ DualPairing::value(const GroupElement& phi, const GroupElement& b) const {
    std::vector<Int> p = a_dual_mod_b_dual.lift(phi.coords());
    std::vector<Int> q = b_mod_a.lift(b.coords());
    for (Int& x : q) x *= exponent;
    auto w = solve_integer(inclusion, q);
    if (!w) throw std::logic_error("pairing witness not solvable");
    Int acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * (*w)[i];
    return QmodZ::make(acc, exponent);
}

DualPairing dual_pairing(const IntMatrix& inclusion) {
    if (inclusion.rows() != inclusion.cols() || inclusion.determinant() == 0)
        throw std::invalid_argument("not finite index");
    const std::size_t r = inclusion.rows();

    DualPairing out;
    out.inclusion = inclusion;
    out.b_mod_a = FgAbGroup::from_presentation(r, inclusion);
    out.a_dual_mod_b_dual = FgAbGroup::from_presentation(r, inclusion.transpose());
    out.exponent = out.b_mod_a.is_trivial() ? Int(1) : out.b_mod_a.exponent();

    // Perfect pairing check by enumerating both radical annihilators.
    auto phis = out.a_dual_mod_b_dual.torsion_elements();
    auto bs = out.b_mod_a.torsion_elements();
    out.perfect = true;
    for (const auto& phi : phis) {
        if (phi.is_zero()) continue;
        bool hits = false;
        for (const auto& b : bs)
            if (!out.value(phi, b).is_zero()) { hits = true; break; }
        if (!hits) { out.perfect = false; return out; }
    }
    for (const auto& b : bs) {
        if (b.is_zero()) continue;
        bool hits = false;
        for (const auto& phi : phis)
            if (!out.value(phi, b).is_zero()) { hits = true; break; }
        if (!hits) { out.perfect = false; return out; }
    }
    return out;
}

GModule pontryagin_dual(const GModule& x) {
    if (!x.base().is_finite()) throw std::invalid_argument("pontryagin dual of infinite base");
    const auto& d = x.base().invariant_factors();
    const std::size_t r = d.size();
    FgAbGroup dual_base = FgAbGroup::from_invariant_factors(d, 0);

    // Canonical-coordinate action of each element on x.
    const int n = x.group().order();
    std::vector<IntMatrix> canonical(n, IntMatrix(r, r));
    for (int g = 0; g < n; ++g)
        for (std::size_t i = 0; i < r; ++i)
            canonical[g].set_column(i, x.base()
                                           .element(x.action(g).apply(
                                               x.base().lift(x.base().canonical_generator(i).coords())))
                                           .coords());

    std::vector<std::pair<int, IntMatrix>> gen_actions;
    for (int g = 0; g < n; ++g) {
        const IntMatrix& b = canonical[x.group().inverse(g)];
        IntMatrix dg(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Int t = d[i] * b.at(j, i);
                if (t % d[j] != 0) throw std::logic_error("contragredient entry not integral");
                dg.at(i, j) = t / d[j];
            }
        gen_actions.emplace_back(g, std::move(dg));
    }
    return GModule::from_generator_actions(x.group(), std::move(dual_base), gen_actions);
}

std::size_t min_generators(const FgAbGroup& g) { return g.min_generators(); }

namespace {

// Does x lie in span(columns) modulo the relations of parent?
bool in_span_mod_relations(const FgAbGroup& parent, const IntMatrix& span,
                           const std::vector<Int>& x) {
    IntMatrix sys = span.hconcat(parent.relations());
    return solve_integer(sys, x).has_value();
}

}  // namespace

FreeKernelResolution free_kernel_resolution(const GModule& m) {
    const FinGroup& gamma = m.group();
    const int n = gamma.order();
    const FgAbGroup& base = m.base();
    const std::size_t ambient = base.ambient_rank();
    const std::size_t k = base.min_generators();

    FreeKernelResolution out;
    out.module = m;

    if (base.invariant_factors().empty()) {
        // Torsion-free module: no kernel needed.
        out.free_rank = 0;
        out.m_minus1 = GModule::regular(gamma, 0);
        out.m0 = m;
        out.kappa = AbHom{out.m_minus1.base(), base, IntMatrix(ambient, 0)};
        out.lambda = AbHom::identity(base);
        out.m0_rank = base.free_rank();
        out.rank_bound_achieved = out.m0_rank <= std::size_t(n) * k;
        return out;
    }

    // Free cover F0 = Z[Gamma]^k onto M, one module generator per abelian
    // generator of M.
    GModule f0 = GModule::regular(gamma, k);
    IntMatrix lambda0(ambient, std::size_t(n) * k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Int> gen = base.lift(base.canonical_generator(j).coords());
        for (int h = 0; h < n; ++h) {
            std::vector<Int> img = m.action(h).apply(gen);
            for (std::size_t i = 0; i < ambient; ++i) lambda0.at(i, j * std::size_t(n) + h) = img[i];
        }
    }

    // Kernel lattice K of lambda0 with its Gamma-action in basis coordinates.
    IntMatrix kbasis = lattice_basis(preimage_lattice(lambda0, base.relations()));
    const std::size_t d = kbasis.cols();
    IntSolver kernel_solver(kbasis);
    std::vector<IntMatrix> kact(n);
    for (int g = 0; g < n; ++g) {
        IntMatrix rhs = f0.action(g) * kbasis;
        IntMatrix xg(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            auto col = kernel_solver.solve(rhs.column_vec(j));
            if (!col) throw std::logic_error("kernel lattice is not stable under the action");
            xg.set_column(j, *col);
        }
        kact[g] = std::move(xg);
    }

    // Gamma-generating set of the dual lattice K^vee (contragredient action).
    std::vector<IntMatrix> kdual(n);
    for (int g = 0; g < n; ++g) kdual[g] = kact[gamma.inverse(g)].transpose();
    std::vector<std::size_t> chosen;
    IntMatrix span(d, 0);
    std::optional<IntSolver> span_solver;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Int> fi(d, Int(0));
        fi[i] = 1;
        if (span_solver && span_solver->solve(fi).has_value()) continue;
        chosen.push_back(i);
        IntMatrix orbit(d, n);
        for (int g = 0; g < n; ++g) orbit.set_column(g, kdual[g].apply(fi));
        span = lattice_basis(span.hconcat(orbit));
        span_solver.emplace(span);
        if (span.cols() == d) {
            bool full = true;  // span might still be a finite-index sublattice
            for (std::size_t j = 0; j < d && full; ++j) {
                std::vector<Int> e(d, Int(0));
                e[j] = 1;
                full = span_solver->solve(e).has_value();
            }
            if (full) break;
        }
    }
    const std::size_t t = chosen.size();

    // Surjection pi: Z[Gamma]^t -> K^vee and its dual embedding j: K -> Z[Gamma]^t.
    GModule f1 = GModule::regular(gamma, t);
    IntMatrix pi(d, std::size_t(n) * t);
    for (std::size_t j = 0; j < t; ++j) {
        std::vector<Int> fj(d, Int(0));
        fj[chosen[j]] = 1;
        for (int h = 0; h < n; ++h) pi.set_column(j * std::size_t(n) + h, kdual[h].apply(fj));
    }
    // j(k) has coordinate <pi(e_{j,h}), k> at e_{j,h}; Z[Gamma] is self-dual
    // on these coordinates.
    IntMatrix jmat = pi.transpose();

    // Pushout P = (Z[Gamma]^t + F0) / <(j(x), -x)>.
    const std::size_t pr = std::size_t(n) * t + std::size_t(n) * k;
    IntMatrix prel(pr, d);
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t i = 0; i < std::size_t(n) * t; ++i) prel.at(i, c) = jmat.at(i, c);
        for (std::size_t i = 0; i < std::size_t(n) * k; ++i)
            prel.at(std::size_t(n) * t + i, c) = -kbasis.at(i, c);
    }
    FgAbGroup pbase = FgAbGroup::from_presentation(pr, prel);
    std::vector<std::pair<int, IntMatrix>> pacts;
    for (int g = 0; g < n; ++g) {
        IntMatrix a(pr, pr);
        for (std::size_t i = 0; i < std::size_t(n) * t; ++i)
            for (std::size_t j = 0; j < std::size_t(n) * t; ++j)
                a.at(i, j) = f1.action(g).at(i, j);
        for (std::size_t i = 0; i < std::size_t(n) * k; ++i)
            for (std::size_t j = 0; j < std::size_t(n) * k; ++j)
                a.at(std::size_t(n) * t + i, std::size_t(n) * t + j) = f0.action(g).at(i, j);
        pacts.emplace_back(g, std::move(a));
    }

    out.free_rank = t;
    out.m_minus1 = f1;
    out.m0 = GModule::from_generator_actions(gamma, pbase, pacts);
    IntMatrix kap(pr, std::size_t(n) * t);
    for (std::size_t i = 0; i < std::size_t(n) * t; ++i) kap.at(i, i) = 1;
    out.kappa = AbHom{f1.base(), out.m0.base(), std::move(kap)};
    IntMatrix lam(ambient, pr);
    for (std::size_t i = 0; i < ambient; ++i)
        for (std::size_t j = 0; j < std::size_t(n) * k; ++j)
            lam.at(i, std::size_t(n) * t + j) = lambda0.at(i, j);
    out.lambda = AbHom{out.m0.base(), base, std::move(lam)};
    out.m0_rank = out.m0.base().free_rank();
    out.rank_bound_achieved = out.m0.base().invariant_factors().empty() &&
                              out.m0_rank <= std::size_t(n) * k;
    return out;
}

bool verify_resolution(const FreeKernelResolution& r, std::string* why) {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (!r.kappa.is_well_defined() || !r.lambda.is_well_defined())
        return fail("maps are not well-defined");
    if (!r.m0.base().invariant_factors().empty()) return fail("M0 has torsion");

    HomParts kp = hom_parts(r.kappa);
    if (!kp.kernel.is_trivial()) return fail("kappa is not injective");
    HomParts lp = hom_parts(r.lambda);
    if (!lp.cokernel.is_trivial()) return fail("lambda is not surjective");

    // im(kappa) = ker(lambda): factor kappa through the kernel embedding and
    // demand the factored map be surjective.
    const AbHom& emb = lp.kernel_embedding;
    IntSolver sys(emb.matrix.hconcat(r.m0.base().relations()));
    IntMatrix factored(emb.source.ambient_rank(), r.kappa.matrix.cols());
    for (std::size_t j = 0; j < r.kappa.matrix.cols(); ++j) {
        auto sol = sys.solve(r.kappa.matrix.column_vec(j));
        if (!sol) return fail("im(kappa) not contained in ker(lambda)");
        std::vector<Int> head(sol->begin(), sol->begin() + emb.source.ambient_rank());
        factored.set_column(j, head);
    }
    AbHom fac{r.m_minus1.base(), emb.source, factored};
    if (!fac.is_well_defined()) return fail("factored map ill-defined");
    if (!hom_parts(fac).cokernel.is_trivial()) return fail("ker(lambda) not contained in im(kappa)");

    // Both maps must be Gamma-equivariant.
    for (int g = 0; g < r.m0.group().order(); ++g) {
        IntMatrix dk = r.m0.action(g) * r.kappa.matrix - r.kappa.matrix * r.m_minus1.action(g);
        for (std::size_t j = 0; j < dk.cols(); ++j)
            if (!r.m0.base().element(dk.column_vec(j)).is_zero())
                return fail("kappa not equivariant");
        IntMatrix dl = r.module.action(g) * r.lambda.matrix - r.lambda.matrix * r.m0.action(g);
        for (std::size_t j = 0; j < dl.cols(); ++j)
            if (!r.module.base().element(dl.column_vec(j)).is_zero())
                return fail("lambda not equivariant");
    }
    return true;
}

EffectiveImage effective_image(const GModule& m, const Subgroup& delta) {
    const auto& members = delta.members();
    const std::size_t sz = members.size();
    std::vector<int> cls(sz, -1);
    std::vector<int> reps;
    for (std::size_t i = 0; i < sz; ++i) {
        for (std::size_t c = 0; c < reps.size(); ++c)
            if (same_map_on_base(m.base(), m.action(members[i]), m.action(members[reps[c]]))) {
                cls[i] = static_cast<int>(c);
                break;
            }
        if (cls[i] < 0) {
            cls[i] = static_cast<int>(reps.size());
            reps.push_back(static_cast<int>(i));
        }
    }
    int q = static_cast<int>(reps.size());
    const FinGroup& gamma = m.group();
    auto member_index = [&](int g) {
        auto it = std::lower_bound(members.begin(), members.end(), g);
        return static_cast<int>(it - members.begin());
    };
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[a][b] = cls[member_index(gamma.mult(members[reps[a]], members[reps[b]]))];
    EffectiveImage out;
    out.quotient = FinGroup::from_table(std::move(table));
    out.class_of = std::move(cls);
    return out;
}

}  // namespace galcoh
