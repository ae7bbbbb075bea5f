#include "galcoh/global.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace galcoh {

std::size_t max_orbits_limit() {
    if (const char* env = std::getenv("GALCOH_MAX_ORBITS")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 64;
}

namespace {

std::vector<PlaceOrbit> derive_orbits(const GModule& m, const PlaceModel& pm) {
    std::vector<PlaceOrbit> orbits;
    for (const auto& spec : pm.named_places) {
        spec.validate();
        if (!spec.decomposition.parent().same_table(m.group()))
            throw std::invalid_argument("place decomposition not a subgroup of Gamma");
        orbits.push_back(PlaceOrbit{spec, false});
    }
    if (pm.reservoir_depth > 0) {
        GroupAnalysis an = group_analysis(m.group());
        int counter = 0;
        for (const auto& rep : an.cyclic_representatives) {
            for (int i = 0; i < pm.reservoir_depth; ++i) {
                PlaceSpec spec;
                std::ostringstream name;
                name << "res:c" << rep.order() << "." << counter << ":" << i;
                spec.name = name.str();
                spec.kind = PlaceKind::finite;
                spec.decomposition = rep;
                orbits.push_back(PlaceOrbit{std::move(spec), true});
            }
            ++counter;
        }
        for (int i = 0; i < pm.reservoir_depth; ++i) {
            PlaceSpec spec;
            spec.name = "res:free:" + std::to_string(i);
            spec.kind = PlaceKind::finite;
            spec.decomposition = Subgroup::trivial(m.group());
            orbits.push_back(PlaceOrbit{std::move(spec), true});
        }
    }
    if (orbits.empty()) throw std::invalid_argument("place model has no orbits");
    if (orbits.size() > max_orbits_limit())
        throw std::domain_error("orbit count exceeds the size guard");
    return orbits;
}

}  // namespace

GlobalAbGroup::GlobalAbGroup(GModule m, PlaceModel pm) : m_(std::move(m)), pm_(std::move(pm)) {
    orbits_ = derive_orbits(m_, pm_);
    const std::size_t r = m_.base().ambient_rank();
    const int n = m_.group().order();

    // Direct sum of the coefficient modules, one per orbit.
    std::size_t offset = 0;
    for (std::size_t o = 0; o < orbits_.size(); ++o) {
        block_offset_.push_back(offset);
        GModule block = place_module(m_, orbits_[o].spec.decomposition);
        big_ = (o == 0) ? block : GModule::direct_sum(big_, block);
        offset += block.base().ambient_rank();
    }
    const std::size_t big_rank = big_.base().ambient_rank();

    // Total-sum homomorphism onto M and the kernel module M[S]_0.
    IntMatrix sum(r, big_rank);
    for (std::size_t o = 0; o < orbits_.size(); ++o) {
        std::size_t k = static_cast<std::size_t>(orbits_[o].spec.decomposition.index());
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t i = 0; i < r; ++i) sum.at(i, block_offset_[o] + c * r + i) = 1;
    }
    kernel_basis_ = lattice_basis(preimage_lattice(sum, m_.base().relations()));
    const IntMatrix& kernel_basis = kernel_basis_;
    const std::size_t kr = kernel_basis.cols();
    FgAbGroup kernel_base = FgAbGroup::from_presentation(
        kr, preimage_lattice(kernel_basis, big_.base().relations()));
    lift_solver_ = std::make_shared<IntSolver>(kernel_basis.hconcat(big_.base().relations()));
    const IntSolver& lift = *lift_solver_;

    std::vector<std::pair<int, IntMatrix>> kacts;
    for (int g = 0; g < n; ++g) {
        IntMatrix rhs = big_.action(g) * kernel_basis;
        IntMatrix xg(kr, kr);
        for (std::size_t j = 0; j < kr; ++j) {
            auto sol = lift.solve(rhs.column_vec(j));
            if (!sol) throw std::logic_error("sum-zero kernel not stable under the action");
            std::vector<Int> head(sol->begin(), sol->begin() + kr);
            xg.set_column(j, head);
        }
        kacts.emplace_back(g, std::move(xg));
    }
    kernel_module_ = GModule::from_generator_actions(m_.group(), kernel_base, kacts);

    coinv_ = coinvariants(kernel_module_, Subgroup::full(m_.group()));
    global_ = coinv_.torsion;
    gamma_coinv_ = coinvariants(m_, Subgroup::full(m_.group()));

    // Verified localization homomorphisms and the Tate sum.
    IntMatrix mu_matrix(r, kr);
    for (std::size_t o = 0; o < orbits_.size(); ++o) {
        local_groups_.push_back(h1_local(m_, orbits_[o].spec));
        IntMatrix shapiro = shapiro_matrix(m_, orbits_[o].spec.decomposition);
        std::size_t block = shapiro.cols();
        IntMatrix lmat(r, kr);
        for (std::size_t j = 0; j < kr; ++j) {
            std::vector<Int> slice(block);
            for (std::size_t i = 0; i < block; ++i)
                slice[i] = kernel_basis.at(block_offset_[o] + i, j);
            lmat.set_column(j, shapiro.apply(slice));
        }
        mu_matrix = mu_matrix + lmat;
        AbHom l{coinv_.quotient, local_groups_[o].coinv.quotient, std::move(lmat)};
        if (!l.is_well_defined())
            throw std::logic_error("localization map failed verification at " +
                                   orbits_[o].spec.name);
        localizations_.push_back(std::move(l));
    }
    mu_ = AbHom{coinv_.quotient, gamma_coinv_.quotient, std::move(mu_matrix)};
    if (!mu_.is_well_defined()) throw std::logic_error("Tate sum map failed verification");
}

std::optional<std::size_t> GlobalAbGroup::orbit_index(const std::string& name) const {
    for (std::size_t o = 0; o < orbits_.size(); ++o)
        if (orbits_[o].spec.name == name) return o;
    return std::nullopt;
}

GroupElement GlobalAbGroup::localize(const GroupElement& cls, std::size_t orbit) const {
    return localizations_.at(orbit).apply(cls);
}

GroupElement GlobalAbGroup::mu(const GroupElement& cls) const { return mu_.apply(cls); }

GroupElement GlobalAbGroup::mu_of_local(std::size_t orbit, const GroupElement& local_value) const {
    GroupElement in_coinv = local_groups_.at(orbit).h1_embedding.apply(local_value);
    return gamma_coinv_.quotient.element(in_coinv.ambient_lift());
}

GroupElement GlobalAbGroup::embed(const GroupElement& cls) const {
    return coinv_.torsion_embedding.apply(cls);
}

GroupElement GlobalAbGroup::torsion_part(const GroupElement& coinv_cls) const {
    const auto& coords = coinv_cls.coords();
    std::size_t tr = global_.canonical_rank();
    for (std::size_t i = tr; i < coords.size(); ++i)
        if (coords[i] != 0) throw std::invalid_argument("class is not torsion");
    return global_.from_canonical(std::vector<Int>(coords.begin(), coords.begin() + tr));
}

std::optional<GroupElement> GlobalAbGroup::class_of_big_vector(const std::vector<Int>& x) const {
    auto sol = lift_solver_->solve(x);
    if (!sol) return std::nullopt;  // not in the sum-zero subgroup
    std::vector<Int> head(sol->begin(), sol->begin() + kernel_basis_.cols());
    GroupElement cls = coinv_.quotient.element(head);
    const auto& coords = cls.coords();
    for (std::size_t i = global_.canonical_rank(); i < coords.size(); ++i)
        if (coords[i] != 0) return std::nullopt;  // lands outside the torsion part
    return torsion_part(cls);
}

bool RealComponent::is_neutral() const {
    if (const auto* t = std::get_if<GroupElement>(&value)) return t->is_zero();
    return std::get<Abstract>(value).index == 0;
}

RealComponent RealComponent::parity_power(const Int& n) const {
    if (n % 2 != 0) return *this;
    RealComponent out = *this;
    if (auto* t = std::get_if<GroupElement>(&out.value))
        *t = t->parent().zero();
    else
        std::get<Abstract>(out.value).index = 0;
    return out;
}

GroupElement RealComponent::theta(const LocalGroup& lg) const {
    if (const auto* t = std::get_if<GroupElement>(&value)) return lg.h1_embedding.apply(*t);
    const auto& a = std::get<Abstract>(value);
    return a.theta_images.at(a.index);
}

GlobalContext::GlobalContext(GModule m, PlaceModel pm)
    : ab(std::make_shared<GlobalAbGroup>(std::move(m), std::move(pm))) {
    for (std::size_t o = 0; o < ab->orbits().size(); ++o)
        if (ab->orbits()[o].spec.kind == PlaceKind::real) real_orbits.push_back(o);
}

bool GlobalContext::is_compatible(const GlobalClass& cls, std::string* offending) const {
    if (cls.inf_parts.size() != real_orbits.size()) {
        if (offending) *offending = "wrong number of archimedean components";
        return false;
    }
    GroupElement emb = ab->embed(cls.ab_part);
    for (std::size_t i = 0; i < real_orbits.size(); ++i) {
        std::size_t o = real_orbits[i];
        GroupElement lv = ab->localize(emb, o);
        if (!(lv == cls.inf_parts[i].theta(ab->local_group(o)))) {
            if (offending) *offending = ab->orbits()[o].spec.name;
            return false;
        }
    }
    return true;
}

GlobalClass GlobalContext::make_class(GroupElement ab_part,
                                      std::vector<RealComponent> inf_parts) const {
    // Declared archimedean maps factor through a group of exponent 2, so
    // their values must be 2-torsion for the parity powers to stay inside
    // the fiber product.
    for (const auto& comp : inf_parts)
        if (const auto* a = std::get_if<RealComponent::Abstract>(&comp.value)) {
            if (a->theta_images.empty() || !a->theta_images[0].is_zero())
                throw std::invalid_argument("abstract fiber must map its base point to zero");
            for (const auto& img : a->theta_images)
                if (!img.scaled(2).is_zero())
                    throw std::invalid_argument("abstract fiber image must be 2-torsion");
        }
    GlobalClass cls{std::move(ab_part), std::move(inf_parts)};
    std::string offending;
    if (!is_compatible(cls, &offending))
        throw std::invalid_argument("incompatible pair at place " + offending);
    return cls;
}

std::optional<GlobalClass> GlobalContext::class_from_ab(const GroupElement& ab_part) const {
    GlobalClass cls{ab_part, {}};
    GroupElement emb = ab->embed(ab_part);
    for (std::size_t o : real_orbits) {
        const LocalGroup& lg = ab->local_group(o);
        GroupElement lv = ab->localize(emb, o);
        bool found = false;
        for (const auto& h : lg.h1.torsion_elements()) {
            if (lg.h1_embedding.apply(h) == lv) {
                cls.inf_parts.push_back(RealComponent{h});
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;  // fiber empty over this abelian part
    }
    return cls;
}

GlobalClass GlobalContext::neutral_class() const {
    GlobalClass cls{ab->group().zero(), {}};
    for (std::size_t o : real_orbits)
        cls.inf_parts.push_back(RealComponent{ab->local_group(o).h1.zero()});
    return cls;
}

GlobalClass GlobalContext::power(const GlobalClass& cls, const Int& d) const {
    GlobalClass out{cls.ab_part.scaled(d), {}};
    for (const auto& c : cls.inf_parts) out.inf_parts.push_back(c.parity_power(d));
    std::string offending;
    if (!is_compatible(out, &offending))
        throw std::logic_error("power of a class lost compatibility at " + offending);
    return out;
}

bool GlobalContext::is_neutral(const GlobalClass& cls) const {
    if (!cls.ab_part.is_zero()) return false;
    for (const auto& c : cls.inf_parts)
        if (!c.is_neutral()) return false;
    return true;
}

Int GlobalContext::period(const GlobalClass& cls) const {
    auto ord = cls.ab_part.order();
    if (!ord) throw std::logic_error("abelian part of infinite order");
    bool inf_neutral = true;
    for (const auto& c : cls.inf_parts) inf_neutral = inf_neutral && c.is_neutral();
    Int p = inf_neutral ? *ord : lcm(*ord, Int(2));
    // the least n >= 1 with the n-th power neutral, checked by scan
    for (Int i = 1; i < p; ++i)
        if (is_neutral(power(cls, i))) throw std::logic_error("period formula not minimal");
    if (!is_neutral(power(cls, p))) throw std::logic_error("period formula not annihilating");
    return p;
}

LocalClass GlobalContext::localize_class(const GlobalClass& cls, std::size_t orbit) const {
    const PlaceOrbit& po = ab->orbits()[orbit];
    const LocalGroup& lg = ab->local_group(orbit);
    switch (po.spec.kind) {
        case PlaceKind::finite: {
            GroupElement lv = ab->localize(ab->embed(cls.ab_part), orbit);
            const auto& coords = lv.coords();
            std::size_t tr = lg.h1.canonical_rank();
            for (std::size_t i = tr; i < coords.size(); ++i)
                if (coords[i] != 0) throw std::logic_error("localization not torsion");
            return LocalClass{po.spec, lg.h1.from_canonical(std::vector<Int>(
                                           coords.begin(), coords.begin() + tr))};
        }
        case PlaceKind::real: {
            std::size_t i = std::find(real_orbits.begin(), real_orbits.end(), orbit) -
                            real_orbits.begin();
            const auto& comp = cls.inf_parts.at(i);
            if (const auto* t = std::get_if<GroupElement>(&comp.value))
                return LocalClass{po.spec, *t};
            throw std::logic_error("abstract archimedean component has no local class value");
        }
        case PlaceKind::complex:
            return LocalClass{po.spec, lg.h1.zero()};
    }
    throw std::logic_error("unreachable");
}

std::vector<GlobalClass> GlobalContext::enumerate(std::size_t limit) const {
    std::vector<GlobalClass> out;
    for (const auto& x : ab->group().torsion_elements(limit)) {
        auto cls = class_from_ab(x);
        if (cls) out.push_back(std::move(*cls));
    }
    return out;
}

namespace {

struct Prescription {
    std::size_t orbit;
    GroupElement h1_value;  // in the orbit's h1 group
};

std::optional<GlobalClass> try_glue(const GlobalContext& ctx,
                                    const std::vector<Prescription>& pres) {
    const GlobalAbGroup& gab = ctx.group();
    const GModule& m = gab.module();
    const std::size_t r = m.base().ambient_rank();

    auto matches = [&](const GroupElement& candidate) {
        GroupElement emb = gab.embed(candidate);
        for (std::size_t o = 0; o < gab.orbits().size(); ++o) {
            GroupElement lv = gab.localize(emb, o);
            GroupElement want = gab.local_group(o).coinv.quotient.zero();
            for (const auto& p : pres)
                if (p.orbit == o) want = gab.local_group(o).h1_embedding.apply(p.h1_value);
            if (!(lv == want)) return false;
        }
        return true;
    };

    // Constructive path: prescribed representatives at the distinguished
    // coset, total sum cancelled on a free orbit.
    std::optional<std::size_t> free_orbit;
    for (std::size_t o = 0; o < gab.orbits().size(); ++o) {
        if (gab.orbits()[o].spec.decomposition.order() != 1) continue;
        bool prescribed = false;
        for (const auto& p : pres) prescribed = prescribed || p.orbit == o;
        if (!prescribed) { free_orbit = o; break; }
    }

    if (free_orbit) {
        std::vector<Int> x(gab.big_rank(), Int(0));
        std::vector<Int> total(r, Int(0));
        for (const auto& p : pres) {
            GroupElement in_coinv = gab.local_group(p.orbit).h1_embedding.apply(p.h1_value);
            std::vector<Int> rep = in_coinv.ambient_lift();
            std::size_t off = gab.block_offset(p.orbit);
            for (std::size_t i = 0; i < r; ++i) {
                x[off + i] += rep[i];
                total[i] += rep[i];
            }
        }
        // total = sum over generators of (a(g) - 1) y_g + relations c
        std::vector<int> gens = Subgroup::full(m.group()).generators();
        IntMatrix cert(r, gens.size() * r + m.base().relations().cols());
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            IntMatrix diff = m.action(gens[gi]) - IntMatrix::identity(r);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < r; ++i) cert.at(i, gi * r + j) = diff.at(i, j);
        }
        for (std::size_t j = 0; j < m.base().relations().cols(); ++j)
            for (std::size_t i = 0; i < r; ++i)
                cert.at(i, gens.size() * r + j) = m.base().relations().at(i, j);
        auto sol = solve_integer(cert, total);
        if (sol) {
            std::size_t off = gab.block_offset(*free_orbit);
            const Subgroup& triv = gab.orbits()[*free_orbit].spec.decomposition;
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                std::vector<Int> y(sol->begin() + gi * r, sol->begin() + (gi + 1) * r);
                std::vector<Int> gy = m.action(gens[gi]).apply(y);
                int coset = triv.left_coset_index(gens[gi]);
                int ecoset = triv.left_coset_index(0);
                for (std::size_t i = 0; i < r; ++i) {
                    x[off + static_cast<std::size_t>(coset) * r + i] -= gy[i];
                    x[off + static_cast<std::size_t>(ecoset) * r + i] += y[i];
                }
            }
            auto candidate = gab.class_of_big_vector(x);
            if (candidate && matches(*candidate)) {
                auto cls = ctx.class_from_ab(*candidate);
                if (cls) return cls;
            }
        }
    }

    // Enumeration fallback over the finite global group.
    Int order = gab.group().order();
    if (order <= (1 << 16)) {
        for (const auto& cand : gab.group().torsion_elements(1u << 16)) {
            if (!matches(cand)) continue;
            auto cls = ctx.class_from_ab(cand);
            if (cls) return cls;
        }
    }
    return std::nullopt;
}

}  // namespace

GlueOutcome glue_local_classes_in(const GlobalContext& ctx,
                                  const std::map<std::string, std::vector<Int>>& prescribed) {
    const GlobalAbGroup& gab = ctx.group();
    std::vector<Prescription> pres;
    for (const auto& [name, coords] : prescribed) {
        auto o = gab.orbit_index(name);
        if (!o) throw std::invalid_argument("unknown place in prescription: " + name);
        pres.push_back(Prescription{*o, gab.local_group(*o).h1.from_canonical(coords)});
    }

    GroupElement obstruction = gab.gamma_coinvariants().quotient.zero();
    for (const auto& p : pres) obstruction = obstruction + gab.mu_of_local(p.orbit, p.h1_value);
    if (!obstruction.is_zero())
        return GlueOutcome{std::nullopt, obstruction, gab.place_model().reservoir_depth};

    auto cls = try_glue(ctx, pres);
    if (cls)
        return GlueOutcome{std::move(cls), std::nullopt, gab.place_model().reservoir_depth};
    return GlueOutcome{std::nullopt, std::nullopt, gab.place_model().reservoir_depth};
}

GlueOutcome glue_local_classes(const GModule& m, const PlaceModel& pm,
                               const std::map<std::string, std::vector<Int>>& prescribed,
                               int retry_limit) {
    for (int extra = 0; extra <= retry_limit; ++extra) {
        PlaceModel attempt = pm;
        attempt.reservoir_depth = pm.reservoir_depth + extra;
        GlobalContext ctx(m, attempt);
        GlueOutcome out = glue_local_classes_in(ctx, prescribed);
        if (out.cls || out.obstruction) return out;
    }
    if (Subgroup::full(m.group()).is_cyclic())
        throw std::runtime_error(
            "gluing failed for cyclic Gamma despite vanishing obstruction");
    throw std::runtime_error("model too small");
}

ShaResult sha_kernel(const GModule& m, const PlaceModel& pm) {
    auto compute = [&](int depth) {
        PlaceModel attempt = pm;
        attempt.reservoir_depth = depth;
        GlobalAbGroup gab(m, attempt);
        const std::size_t r = m.base().ambient_rank();
        const std::size_t orbits = gab.orbits().size();

        // Stacked localization into the direct sum of the local groups.
        IntMatrix rel(r * orbits, 0);
        IntMatrix stacked(r * orbits, gab.coinvariants_group().ambient_rank());
        {
            IntMatrix relcols(r * orbits, 0);
            std::size_t total_cols = 0;
            std::vector<IntMatrix> blocks;
            for (std::size_t o = 0; o < orbits; ++o) {
                blocks.push_back(gab.local_group(o).coinv.quotient.relations());
                total_cols += blocks.back().cols();
            }
            IntMatrix all(r * orbits, total_cols);
            std::size_t col = 0;
            for (std::size_t o = 0; o < orbits; ++o) {
                for (std::size_t j = 0; j < blocks[o].cols(); ++j, ++col)
                    for (std::size_t i = 0; i < r; ++i)
                        all.at(o * r + i, col) = blocks[o].at(i, j);
            }
            rel = std::move(all);
        }
        for (std::size_t o = 0; o < orbits; ++o) {
            const IntMatrix& l = gab.localization_matrix(o);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < l.cols(); ++j) stacked.at(o * r + i, j) = l.at(i, j);
        }
        FgAbGroup target = FgAbGroup::from_presentation(r * orbits, rel);
        AbHom loc{gab.coinvariants_group(), target, stacked};
        HomParts parts = hom_parts(loc);
        return torsion_subgroup(parts.kernel).group;
    };

    FgAbGroup at_r = compute(pm.reservoir_depth);
    FgAbGroup at_r1 = compute(pm.reservoir_depth + 1);
    return ShaResult{at_r, at_r.invariant_factors() == at_r1.invariant_factors()};
}

bool RestrictedGlobalClass::is_neutral() const {
    if (!ab_part.is_zero()) return false;
    for (const auto& c : inf_parts)
        if (c && !c->is_neutral()) return false;
    return true;
}

RestrictedGlobalClass restrict_global(const GlobalContext& ctx, const GlobalClass& cls,
                                      const Subgroup& delta, const Int& multiplier,
                                      const std::vector<std::string>& complexified) {
    const GlobalAbGroup& gab = ctx.group();
    if (!delta.parent().same_table(gab.module().group()))
        throw std::invalid_argument("restriction subgroup not inside Gamma");
    if (multiplier < 1) throw std::invalid_argument("multiplier must be positive");

    auto is_complexified = [&](const std::string& name) {
        return std::find(complexified.begin(), complexified.end(), name) != complexified.end();
    };
    // Full-local-degree convention: an even disjoint part must complexify
    // every real place; an odd one cannot complexify anything, and places
    // whose conjugation leaves delta become complex regardless.
    for (std::size_t i = 0; i < ctx.real_orbits.size(); ++i) {
        const PlaceSpec& spec = gab.orbits()[ctx.real_orbits[i]].spec;
        bool sigma_in_delta = delta.contains(spec.conjugation_element());
        if (multiplier % 2 == 0 && !is_complexified(spec.name))
            throw std::invalid_argument("parity violation: even multiplier requires complexifying " +
                                        spec.name);
        if (multiplier % 2 != 0 && is_complexified(spec.name) && sigma_in_delta)
            throw std::invalid_argument("parity violation: odd multiplier cannot complexify " +
                                        spec.name);
    }

    RestrictedGlobalClass out{
        transfer(gab.kernel_module(), delta, gab.embed(cls.ab_part)).scaled(multiplier), {}};
    for (std::size_t i = 0; i < ctx.real_orbits.size(); ++i) {
        const PlaceSpec& spec = gab.orbits()[ctx.real_orbits[i]].spec;
        bool sigma_in_delta = delta.contains(spec.conjugation_element());
        bool complex_now = is_complexified(spec.name) || !sigma_in_delta || multiplier % 2 == 0;
        if (complex_now)
            out.inf_parts.push_back(std::nullopt);
        else
            out.inf_parts.push_back(cls.inf_parts.at(i));
    }
    return out;
}

GlobalSplitGuarantee split_degree_global(const GModule& m, const Int& n) {
    EffectiveImage theta = effective_image(m, Subgroup::full(m.group()));
    Int order = theta.quotient.order();
    GroupAnalysis an = group_analysis(theta.quotient);
    return GlobalSplitGuarantee{n * capacity(n, order), an.sylow_cyclic};
}

namespace {

Int int_pow(const Int& b, const Int& e) {
    Int out = 1;
    for (Int i = 0; i < e; ++i) out *= b;
    return out;
}

Int floor_log2(const Int& x) {
    Int v = 0, y = x;
    while (y >= 2) {
        y /= 2;
        ++v;
    }
    return v;
}

}  // namespace

IndexBounds index_bounds_global(const GlobalContext& ctx, const GlobalClass& cls,
                                const Int& search_bound) {
    const GlobalAbGroup& gab = ctx.group();
    const GModule& m = gab.module();

    IndexBounds out;
    Int per = ctx.period(cls);
    out.lower = per;
    for (std::size_t o = 0; o < gab.orbits().size(); ++o) {
        const PlaceOrbit& po = gab.orbits()[o];
        if (po.from_reservoir || po.spec.kind != PlaceKind::finite) continue;
        LocalClass lc = ctx.localize_class(cls, o);
        bool strict = po.spec.residue_size && *po.spec.residue_size % 2 != 0;
        out.lower = lcm(out.lower, local_divisibility_bound(m, lc, strict));
    }

    EffectiveImage theta = effective_image(m, Subgroup::full(m.group()));
    Int vartheta = theta.quotient.order();
    out.exponent_d = Int(m.base().min_generators()) * vartheta + floor_log2(vartheta) + 1;
    out.upper = int_pow(per, out.exponent_d);

    // Smallest splitting degree among restriction models.
    std::vector<Subgroup> subs = all_subgroups(m.group());
    std::vector<std::string> all_real;
    for (std::size_t o : ctx.real_orbits) all_real.push_back(gab.orbits()[o].spec.name);
    for (Int degree = 1; degree <= search_bound && !out.achieved; ++degree) {
        for (const auto& delta : subs) {
            Int index = delta.index();
            if (degree % index != 0) continue;
            Int mult = degree / index;
            std::vector<std::string> complexified;
            if (mult % 2 == 0) complexified = all_real;
            RestrictedGlobalClass res = restrict_global(ctx, cls, delta, mult, complexified);
            if (res.is_neutral()) {
                out.achieved = degree;
                break;
            }
        }
    }
    return out;
}

bool period2_property(const GModule& m) { return m.has_exponent_two(); }

bool per_equals_ind_guarantee(const GModule& m) {
    return effective_image(m, Subgroup::full(m.group())).quotient.order() == 1;
}

std::optional<GlobalClass> period2_witness(const GlobalContext& ctx) {
    const GModule& m = ctx.group().module();
    if (m.has_exponent_two()) return std::nullopt;

    // A torsion element of M of order > 2, prescribed with its negative at
    // two trivial-decomposition orbits so the Tate sum vanishes.
    const auto& factors = m.base().invariant_factors();
    std::optional<std::size_t> gen_index;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i] > 2) gen_index = i;
    if (!gen_index) return std::nullopt;

    std::vector<std::size_t> trivial_orbits;
    for (std::size_t o = 0; o < ctx.group().orbits().size(); ++o)
        if (ctx.group().orbits()[o].spec.decomposition.order() == 1 &&
            ctx.group().orbits()[o].spec.kind == PlaceKind::finite)
            trivial_orbits.push_back(o);
    if (trivial_orbits.size() < 2) return std::nullopt;

    const LocalGroup& lg0 = ctx.group().local_group(trivial_orbits[0]);
    const LocalGroup& lg1 = ctx.group().local_group(trivial_orbits[1]);
    // At a trivial-decomposition place the local group is Tors(M) itself.
    GroupElement x = lg0.h1.canonical_generator(*gen_index);
    GroupElement minus_x = -lg1.h1.canonical_generator(*gen_index);

    std::map<std::string, std::vector<Int>> pres;
    pres[ctx.group().orbits()[trivial_orbits[0]].spec.name] = x.coords();
    pres[ctx.group().orbits()[trivial_orbits[1]].spec.name] = minus_x.coords();
    GlueOutcome glued = glue_local_classes(m, ctx.group().place_model(), pres);
    if (!glued.cls) return std::nullopt;
    return glued.cls;
}

}  // namespace galcoh
