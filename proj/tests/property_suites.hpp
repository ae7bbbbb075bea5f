#pragma once

// Randomized property suites shared by the unit runner and the acceptance
// gate. Every suite runs a fixed number of cases from a fixed seed and
// reports the first failure it sees.

#include <random>
#include <sstream>
#include <string>

#include "galcoh/global.hpp"
#include "test_util.hpp"

namespace galcoh::props {

struct SuiteResult {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
    void fail(const std::string& what) {
        if (failures == 0) first_failure = what;
        ++failures;
    }
};

// Exact determinant by cofactor expansion; the independent unimodularity
// oracle for the SNF transforms.
inline Int det_expansion(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int acc = 0;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = m.at(i, c);
            }
        }
        if (m.at(0, j) != 0) acc += sign * m.at(0, j) * det_expansion(minor);
        sign = -sign;
    }
    return acc;
}

inline SuiteResult snf_identities(std::uint64_t seed, std::size_t cases) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(0, 6), entry(-9, 9);
    SuiteResult out;
    for (std::size_t c = 0; c < cases; ++c) {
        IntMatrix a(dim(rng), dim(rng));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
        SnfResult s = snf_decompose(a);
        ++out.cases;
        if (!(s.u * a * s.v == s.d)) {
            out.fail("U*A*V != D");
            continue;
        }
        Int du = det_expansion(s.u), dv = det_expansion(s.v);
        if (!((du == 1 || du == -1) && (dv == 1 || dv == -1))) {
            out.fail("transform not unimodular");
            continue;
        }
        auto diag = s.diagonal();
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i] < 0 || (diag[i] != 0 && diag[i + 1] % diag[i] != 0) ||
                (diag[i] == 0 && diag[i + 1] != 0)) {
                out.fail("divisibility chain broken");
                break;
            }
        }
    }
    return out;
}

inline SuiteResult transfer_section_independence(std::uint64_t seed, std::size_t cases) {
    std::mt19937_64 rng(seed);
    SuiteResult out;
    auto groups = testutil::small_groups();
    while (out.cases < cases) {
        const FinGroup& g = groups[out.cases % groups.size()];
        GModule m = testutil::random_module(rng, g);
        Subgroup delta = testutil::random_subgroup(rng, g);
        Coinvariants mg = coinvariants(m, Subgroup::full(g));
        if (mg.torsion.order() > 64) continue;

        AbHom t0 = transfer_hom(m, delta, 0);
        AbHom t1 = transfer_hom(m, delta, 1);
        AbHom proj{t0.target, mg.quotient, IntMatrix::identity(m.base().ambient_rank())};
        for (const auto& x : mg.torsion.torsion_elements()) {
            GroupElement cls = mg.torsion_embedding.apply(x);
            ++out.cases;
            if (!(t0.apply(cls) == t1.apply(cls))) {
                out.fail("transfer depends on the section");
                continue;
            }
            if (!(proj.apply(t0.apply(cls)) == cls.scaled(delta.index())))
                out.fail("projection after transfer is not multiplication by the index");
        }
    }
    return out;
}

inline SuiteResult transfer_mult_index_law(std::uint64_t seed, std::size_t cases) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> mod_pick(0, 3);
    static const int moduli[] = {2, 3, 4, 12};
    SuiteResult out;
    auto groups = testutil::small_groups();
    while (out.cases < cases) {
        const FinGroup& g = groups[out.cases % groups.size()];
        // Trivial action: the images of Gamma and Delta in Aut(M) coincide
        // and the coinvariant groups agree coordinate-wise.
        GModule m = GModule::trivial(
            g, FgAbGroup::from_invariant_factors({Int(moduli[mod_pick(rng)]), Int(12)}, 0));
        Subgroup delta = testutil::random_subgroup(rng, g);
        Coinvariants mg = coinvariants(m, Subgroup::full(g));
        for (const auto& x : mg.torsion.torsion_elements()) {
            GroupElement cls = mg.torsion_embedding.apply(x);
            ++out.cases;
            if (!(transfer(m, delta, cls) == cls.scaled(delta.index())))
                out.fail("transfer is not multiplication by the index");
        }
    }
    return out;
}

// Random global contexts, some with a real place when the group has an
// element of order <= 2.
inline std::vector<GlobalContext> random_contexts(std::mt19937_64& rng, std::size_t count) {
    std::vector<GlobalContext> out;
    auto groups = testutil::small_groups();
    std::size_t attempts = 0;
    while (out.size() < count && attempts < count * 8) {
        ++attempts;
        const FinGroup& g = groups[attempts % groups.size()];
        GModule m = testutil::random_module(rng, g, 3);
        PlaceModel pm;
        PlaceSpec named;
        named.name = "a";
        named.kind = PlaceKind::finite;
        named.decomposition = testutil::random_subgroup(rng, g);
        pm.named_places.push_back(named);
        std::uniform_int_distribution<int> coin(0, 1);
        if (coin(rng)) {
            int sigma = 0;
            for (int e = 0; e < g.order(); ++e)
                if (g.mult(e, e) == 0) sigma = e;
            PlaceSpec real;
            real.name = "oo";
            real.kind = PlaceKind::real;
            real.decomposition = sigma == 0 ? Subgroup::trivial(g)
                                            : Subgroup::generated(g, {sigma});
            pm.named_places.push_back(real);
        }
        pm.reservoir_depth = 1;
        GlobalContext ctx(m, pm);
        if (ctx.group().group().order() > 256) continue;
        out.push_back(std::move(ctx));
    }
    return out;
}

inline SuiteResult power_composition_and_ab_compatibility(std::uint64_t seed, std::size_t cases) {
    std::mt19937_64 rng(seed);
    SuiteResult out;
    auto contexts = random_contexts(rng, 14);
    std::uniform_int_distribution<int> exp(-6, 6);
    std::size_t which = 0;
    while (out.cases < cases && !contexts.empty()) {
        const GlobalContext& ctx = contexts[which++ % contexts.size()];
        auto classes = ctx.enumerate(256);
        for (const auto& cls : classes) {
            int a = exp(rng), b = exp(rng);
            ++out.cases;
            GlobalClass lhs = ctx.power(ctx.power(cls, a), b);
            GlobalClass rhs = ctx.power(cls, Int(a) * b);
            if (!(lhs.ab_part == rhs.ab_part)) {
                out.fail("power composition broken on the abelian part");
                continue;
            }
            bool inf_match = true;
            for (std::size_t i = 0; i < lhs.inf_parts.size(); ++i)
                inf_match = inf_match &&
                            lhs.inf_parts[i].is_neutral() == rhs.inf_parts[i].is_neutral();
            if (!inf_match) {
                out.fail("power composition broken on the archimedean part");
                continue;
            }
            const auto& gab = ctx.group();
            GlobalClass powered = ctx.power(cls, a);
            for (std::size_t o = 0; o < gab.orbits().size(); ++o) {
                if (!(gab.localize(gab.embed(powered.ab_part), o) ==
                      gab.localize(gab.embed(cls.ab_part), o).scaled(a))) {
                    out.fail("localization does not commute with powers");
                    break;
                }
            }
            if (out.cases >= cases) break;
        }
    }
    return out;
}

inline SuiteResult period_divides_splitting_degrees(std::uint64_t seed, std::size_t cases) {
    std::mt19937_64 rng(seed);
    SuiteResult out;
    auto contexts = random_contexts(rng, 10);
    std::size_t which = 0;
    while (out.cases < cases && !contexts.empty()) {
        const GlobalContext& ctx = contexts[which++ % contexts.size()];
        auto subgroups = all_subgroups(ctx.group().module().group());
        std::vector<std::string> all_real;
        for (std::size_t o : ctx.real_orbits)
            all_real.push_back(ctx.group().orbits()[o].spec.name);
        for (const auto& cls : ctx.enumerate(256)) {
            Int per = ctx.period(cls);
            for (const auto& delta : subgroups) {
                for (Int mult = 1; delta.index() * mult <= 12; ++mult) {
                    ++out.cases;
                    std::vector<std::string> complexified;
                    if (mult % 2 == 0) complexified = all_real;
                    auto res = restrict_global(ctx, cls, delta, mult, complexified);
                    Int degree = delta.index() * mult;
                    if (res.is_neutral() && degree % per != 0) {
                        std::ostringstream os;
                        os << "degree " << degree.get_str() << " splits a class of period "
                           << per.get_str();
                        out.fail(os.str());
                    }
                    if (out.cases >= cases) break;
                }
                if (out.cases >= cases) break;
            }
            if (out.cases >= cases) break;
        }
    }
    return out;
}

}  // namespace galcoh::props
