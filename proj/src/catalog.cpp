#include "galcoh/catalog.hpp"

#include <sstream>
#include <stdexcept>

namespace galcoh {

namespace {

PlaceSpec finite_place(const FinGroup& g, const Subgroup& dec, const std::string& name) {
    PlaceSpec p;
    p.name = name;
    p.kind = PlaceKind::finite;
    p.decomposition = dec;
    (void)g;
    return p;
}

GModule gaussian_module(const FinGroup& c4, int generator) {
    IntMatrix rot = IntMatrix::from_rows({{0, -1}, {1, 0}});
    return GModule::from_generator_actions(c4, FgAbGroup::free_group(2), {{generator, rot}});
}

// Fundamental-group entry with trivial Galois action and a standard
// three-place model.
CatalogEntry split_entry(const std::string& name, const std::string& description,
                         const std::vector<Int>& factors) {
    CatalogEntry e;
    e.name = name;
    e.description = description;
    e.module = GModule::trivial(FinGroup::cyclic(1),
                                FgAbGroup::from_invariant_factors(factors, 0));
    auto triv = Subgroup::full(e.module.group());
    e.places.named_places = {finite_place(e.module.group(), triv, "p"),
                             finite_place(e.module.group(), triv, "q"),
                             finite_place(e.module.group(), triv, "r")};
    e.places.reservoir_depth = 1;
    return e;
}

void add_exponent_two_facts(CatalogEntry& e) {
    const GModule& m = e.module;
    e.facts.push_back(
        {"the fundamental group is killed by 2 exactly", "period2_property",
         [m](std::string& detail) {
             detail = m.base().describe();
             return m.has_exponent_two();
         }});
    e.facts.push_back({"period-2 property holds", "period2_property", [m](std::string& detail) {
                           bool ok = period2_property(m);
                           detail = ok ? "true" : "false";
                           return ok;
                       }});
}

CatalogEntry build_pgl(int n) {
    std::ostringstream name;
    name << "pgl(" << n << ")";
    CatalogEntry e = split_entry(name.str(), "projective linear group: Z/n, split", {Int(n)});
    GModule m = e.module;
    PlaceModel places = e.places;

    e.facts.push_back({"the effective Galois image is trivial", "per_equals_ind_guarantee",
                       [m](std::string& detail) {
                           bool ok = per_equals_ind_guarantee(m);
                           detail = ok ? "Theta = 1" : "Theta != 1";
                           return ok;
                       }});
    bool expect_period2 = n <= 2;
    e.facts.push_back({"period-2 property iff n <= 2", "period2_property",
                       [m, expect_period2](std::string& detail) {
                           bool got = period2_property(m);
                           detail = got ? "true" : "false";
                           return got == expect_period2;
                       }});
    e.facts.push_back(
        {"every class has period = achieved splitting degree = index lower bound",
         "index_bounds_global", [m, places, n](std::string& detail) {
             GlobalContext ctx(m, places);
             std::size_t checked = 0;
             for (const auto& cls : ctx.enumerate(1u << 14)) {
                 Int per = ctx.period(cls);
                 IndexBounds b = index_bounds_global(ctx, cls, 2 * n);
                 if (!b.achieved || *b.achieved != per || b.lower != per) {
                     detail = "violated at a class of period " + per.get_str();
                     return false;
                 }
                 ++checked;
             }
             detail = std::to_string(checked) + " classes checked";
             return checked > 0;
         }});
    if (n > 2) {
        e.facts.push_back(
            {"a witness class of period > 2 exists at a trivial-decomposition place",
             "period2_witness", [m, places](std::string& detail) {
                 GlobalContext ctx(m, places);
                 auto w = period2_witness(ctx);
                 if (!w) {
                     detail = "no witness found";
                     return false;
                 }
                 Int per = ctx.period(*w);
                 detail = "witness of period " + per.get_str();
                 return per > 2 && !ctx.is_neutral(ctx.power(*w, 2));
             }});
    }
    return e;
}

CatalogEntry build_pu3_local() {
    CatalogEntry e;
    e.name = "pu3_local";
    e.description = "projective unitary group in 3 variables: Z/3 with inversion";
    IntMatrix inv(1, 1);
    inv.at(0, 0) = -1;
    e.module = GModule::from_generator_actions(FinGroup::cyclic(2), FgAbGroup::cyclic(3),
                                               {{1, inv}});
    e.places.named_places = {
        finite_place(e.module.group(), Subgroup::full(e.module.group()), "v")};
    e.places.reservoir_depth = 0;
    GModule m = e.module;
    PlaceSpec v = e.places.named_places[0];

    e.facts.push_back({"H1 at the inert place is trivial", "h1_local", [m, v](std::string& detail) {
                           auto lg = h1_local(m, v);
                           detail = lg.h1.describe();
                           return lg.h1.is_trivial();
                       }});
    e.facts.push_back({"2M is nonzero", "period2_property", [m](std::string& detail) {
                           bool ok = !m.has_exponent_two();
                           detail = m.base().describe();
                           return ok;
                       }});
    return e;
}

PlaceSpec zi_place(const GModule& m, int klass, const std::string& name) {
    PlaceSpec p = finite_place(m.group(), Subgroup::full(m.group()), name);
    p.residue_size = 5;
    if (klass >= 0 && klass < 3)
        p.quadratic_classes[klass] = Subgroup::generated(m.group(), {2});
    return p;
}

CatalogEntry build_zi_torus(int j) {
    if (j < 1 || j > 3) throw std::invalid_argument("zi_torus parameter j must be 1, 2 or 3");
    CatalogEntry e;
    std::ostringstream name;
    name << "zi_torus(" << j << ")";
    e.name = name.str();
    e.description = "two-dimensional torus with cocharacters Z[i], Z/4 acting by i";
    e.module = gaussian_module(FinGroup::cyclic(4), 1);
    e.places.named_places = {zi_place(e.module, j - 1, "v"), zi_place(e.module, j - 1, "u")};
    e.places.reservoir_depth = 1;
    GModule m = e.module;

    e.facts.push_back(
        {"coinvariants under the full group are Z/2", "coinvariants", [m](std::string& detail) {
             auto c = coinvariants(m, Subgroup::full(m.group()));
             detail = c.quotient.describe();
             return c.quotient.invariant_factors() == std::vector<Int>{2} &&
                    c.quotient.free_rank() == 0;
         }});
    e.facts.push_back(
        {"coinvariants under the index-2 subgroup are (Z/2)^2", "coinvariants",
         [m](std::string& detail) {
             auto c = coinvariants(m, Subgroup::generated(m.group(), {2}));
             detail = c.quotient.describe();
             return c.quotient.invariant_factors() == std::vector<Int>{2, 2};
         }});
    e.facts.push_back(
        {"transfer to the index-2 subgroup is injective: [1] -> [1+i] != 0", "transfer",
         [m](std::string& detail) {
             auto mg = coinvariants(m, Subgroup::full(m.group()));
             auto delta = Subgroup::generated(m.group(), {2});
             auto img = transfer(m, delta, mg.quotient.element({Int(1), Int(0)}));
             detail = img.to_string();
             return !img.is_zero();
         }});
    return e;
}

CatalogEntry build_appendix_a_rank6() {
    CatalogEntry e;
    e.name = "appendix_a_rank6";
    e.description = "product of three Gaussian tori over three quartic splitting fields";

    auto c4 = FinGroup::cyclic(4);
    auto gamma = FinGroup::direct_product(FinGroup::direct_product(c4, c4), c4);
    const int gens[3] = {16, 4, 1};  // the three factor generators

    IntMatrix rot = IntMatrix::from_rows({{0, -1}, {1, 0}});
    std::vector<std::pair<int, IntMatrix>> gen_actions;
    for (int which = 0; which < 3; ++which) {
        IntMatrix a = IntMatrix::identity(6);
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) a.at(2 * which + i, 2 * which + k) = rot.at(i, k);
        gen_actions.emplace_back(gens[which], a);
    }
    e.module = GModule::from_generator_actions(gamma, FgAbGroup::free_group(6), gen_actions);

    PlaceSpec v = finite_place(gamma, Subgroup::full(gamma), "v");
    v.residue_size = 5;
    v.quadratic_classes[0] = Subgroup::generated(gamma, {gamma.mult(gens[0], gens[0]), gens[1], gens[2]});
    v.quadratic_classes[1] = Subgroup::generated(gamma, {gens[0], gamma.mult(gens[1], gens[1]), gens[2]});
    v.quadratic_classes[2] = Subgroup::generated(gamma, {gens[0], gens[1], gamma.mult(gens[2], gens[2])});
    e.places.named_places = {v};
    e.places.reservoir_depth = 0;  // the rank-6 model is used locally only

    // component-wise global models, one per factor
    for (int j = 1; j <= 3; ++j) {
        GModule comp = gaussian_module(c4, 1);
        PlaceModel pm;
        pm.named_places = {zi_place(comp, j - 1, "v"), zi_place(comp, j - 1, "u")};
        pm.reservoir_depth = 1;
        e.components.emplace_back(std::move(comp), std::move(pm));
    }

    GModule m = e.module;
    auto components = e.components;

    e.facts.push_back(
        {"H1 of the product is the product of the component H1", "h1_local",
         [m, v, components](std::string& detail) {
             auto lg = h1_local(m, v);
             detail = lg.h1.describe();
             Int product_order = 1;
             for (const auto& [comp, pm] : components) {
                 auto clg = h1_local(comp, pm.named_places[0]);
                 product_order *= clg.h1.order();
             }
             return lg.h1.order() == product_order &&
                    lg.h1.invariant_factors() == std::vector<Int>{2, 2, 2};
         }});
    e.facts.push_back(
        {"the three factors share one (Gamma, M) up to isomorphism", "coinvariants",
         [components](std::string& detail) {
             for (const auto& [comp, pm] : components) {
                 if (comp.group().order() != 4 || comp.base().free_rank() != 2) {
                     detail = "component shape mismatch";
                     return false;
                 }
             }
             detail = "three copies of (Z/4, Z[i])";
             return true;
         }});
    e.facts.push_back(
        {"each glued component class has period 2, so the product does", "period_global",
         [components](std::string& detail) {
             Int period = 1;
             for (const auto& [comp, pm] : components) {
                 GlobalContext ctx(comp, pm);
                 std::map<std::string, std::vector<Int>> pres;
                 pres["v"] = {Int(1)};
                 pres["u"] = {Int(1)};
                 GlueOutcome out = glue_local_classes(comp, pm, pres);
                 if (!out.cls) {
                     detail = "component gluing failed";
                     return false;
                 }
                 period = lcm(period, ctx.period(*out.cls));
             }
             detail = "period " + period.get_str();
             return period == 2;
         }});
    e.facts.push_back(
        {"strict local index: lower bound divisible by 4, every splitting degree "
         "up to 16 divisible by 4",
         "local_index", [m, v](std::string& detail) {
             auto lg = h1_local(m, v);
             LocalClass xi{v, lg.h1.from_canonical({Int(1), Int(1), Int(1)})};
             if (period_local(xi) != 2) {
                 detail = "local period is not 2";
                 return false;
             }
             auto res = local_index(m, xi, 16, true);
             std::ostringstream os;
             os << "lower bound " << res.divisibility_lower_bound.get_str() << ", degrees";
             for (const Int& d : res.killing_degrees) os << " " << d.get_str();
             detail = os.str();
             if (res.divisibility_lower_bound % 4 != 0) return false;
             if (res.killing_degrees.empty()) return false;
             for (const Int& d : res.killing_degrees)
                 if (d % 4 != 0) return false;
             return true;
         }});
    e.facts.push_back(
        {"component transfer to the index-2 subgroup is injective", "transfer",
         [components](std::string& detail) {
             for (const auto& [comp, pm] : components) {
                 auto mg = coinvariants(comp, Subgroup::full(comp.group()));
                 auto delta = Subgroup::generated(comp.group(), {2});
                 auto img = transfer(comp, delta, mg.quotient.element({Int(1), Int(0)}));
                 if (img.is_zero()) {
                     detail = "transfer killed the generator";
                     return false;
                 }
             }
             detail = "[1] -> [1+i] != 0 in all three factors";
             return true;
         }});
    return e;
}

CatalogEntry build_norm_one(const std::string& group_name) {
    FinGroup g;
    if (group_name == "v4" || group_name == "klein")
        g = FinGroup::klein_four();
    else if (group_name == "c2")
        g = FinGroup::cyclic(2);
    else if (group_name == "c4")
        g = FinGroup::cyclic(4);
    else
        throw std::invalid_argument("norm_one group must be one of c2, c4, v4");

    CatalogEntry e;
    e.name = "norm_one(" + group_name + ")";
    e.description = "norm-one torus: the augmentation ideal of Z[Gamma]";

    const int n = g.order();
    std::vector<std::pair<int, IntMatrix>> acts;
    for (int x = 1; x < n; ++x) {
        IntMatrix a(n - 1, n - 1);
        // x * (h - 1) = (xh - 1) - (x - 1)
        for (int h = 1; h < n; ++h) {
            int xh = g.mult(x, h);
            if (xh != 0) a.at(xh - 1, h - 1) += 1;
            a.at(x - 1, h - 1) -= 1;
        }
        acts.emplace_back(x, std::move(a));
    }
    e.module = GModule::from_generator_actions(g, FgAbGroup::free_group(n - 1), acts);
    e.places.reservoir_depth = 1;

    GModule m = e.module;
    PlaceModel places = e.places;
    bool cyclic = Subgroup::full(g).is_cyclic();

    e.facts.push_back(
        {cyclic ? "Sha vanishes for a cyclic splitting group"
                : "Sha is Z/2 for the biquadratic norm-one torus",
         "sha_kernel", [m, places, cyclic](std::string& detail) {
             ShaResult sha = sha_kernel(m, places);
             detail = sha.group.describe() + (sha.stable ? " (stable)" : " (unstable)");
             if (!sha.stable) return false;
             if (cyclic) return sha.group.is_trivial();
             return sha.group.invariant_factors() == std::vector<Int>{2};
         }});
    return e;
}

int param_int(const std::map<std::string, std::string>& params, const std::string& key,
              int fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stoi(it->second);
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"pgl",       "so_q",        "sp_adjoint", "e7_adjoint",       "hspin",
            "d2m_adjoint", "pu3_local", "zi_torus",   "appendix_a_rank6", "norm_one"};
}

CatalogEntry build_named(const std::string& name,
                         const std::map<std::string, std::string>& params) {
    if (name == "pgl") return build_pgl(param_int(params, "n", 2));
    if (name == "so_q") {
        CatalogEntry e = split_entry("so_q", "special orthogonal group: Z/2, split", {Int(2)});
        add_exponent_two_facts(e);
        return e;
    }
    if (name == "sp_adjoint") {
        CatalogEntry e = split_entry("sp_adjoint", "adjoint symplectic group: Z/2, split",
                                     {Int(2)});
        add_exponent_two_facts(e);
        return e;
    }
    if (name == "e7_adjoint") {
        CatalogEntry e =
            split_entry("e7_adjoint", "adjoint group of type E7: Z/2, split", {Int(2)});
        add_exponent_two_facts(e);
        return e;
    }
    if (name == "hspin") {
        CatalogEntry e = split_entry("hspin", "half-spin group: Z/2, split", {Int(2)});
        add_exponent_two_facts(e);
        return e;
    }
    if (name == "d2m_adjoint") {
        CatalogEntry e = split_entry("d2m_adjoint", "adjoint group of type D_2m: (Z/2)^2, split",
                                     {Int(2), Int(2)});
        add_exponent_two_facts(e);
        return e;
    }
    if (name == "pu3_local") return build_pu3_local();
    if (name == "zi_torus") return build_zi_torus(param_int(params, "j", 1));
    if (name == "appendix_a_rank6") return build_appendix_a_rank6();
    if (name == "norm_one") {
        auto it = params.find("group");
        return build_norm_one(it == params.end() ? "v4" : it->second);
    }
    throw std::invalid_argument("unknown catalog entry: " + name);
}

bool VerifyReport::all_passed() const {
    for (const auto& f : facts)
        if (!f.passed) return false;
    return true;
}

VerifyReport verify_named(const std::string& name,
                          const std::map<std::string, std::string>& params) {
    CatalogEntry entry = build_named(name, params);
    VerifyReport report;
    report.entry = entry.name;
    for (const auto& fact : entry.facts) {
        FactReport fr;
        fr.description = fact.description;
        fr.operation = fact.operation;
        try {
            fr.passed = fact.check(fr.detail);
        } catch (const std::exception& ex) {
            fr.passed = false;
            fr.detail = std::string("exception: ") + ex.what();
        }
        report.facts.push_back(std::move(fr));
    }
    return report;
}

}  // namespace galcoh
