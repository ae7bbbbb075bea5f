#include "galcoh/local.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace galcoh {

void PlaceSpec::validate() const {
    switch (kind) {
        case PlaceKind::finite:
            break;
        case PlaceKind::real: {
            if (decomposition.order() > 2)
                throw std::invalid_argument("real place conjugation must have order dividing 2");
            int sigma = conjugation_element();
            const FinGroup& g = decomposition.parent();
            if (g.mult(sigma, sigma) != 0)
                throw std::invalid_argument("real place conjugation must square to the identity");
            break;
        }
        case PlaceKind::complex:
            if (decomposition.order() != 1)
                throw std::invalid_argument("complex place must have trivial decomposition");
            break;
    }
    if (residue_size && *residue_size < 2)
        throw std::invalid_argument("residue size must be at least 2");
    for (const auto& q : quadratic_classes)
        if (q && (q->index() != 2 || !decomposition.contains_subgroup(*q)))
            throw std::invalid_argument(
                "declared quadratic class must be an index-2 subgroup of the decomposition group");
}

int PlaceSpec::conjugation_element() const {
    if (kind != PlaceKind::real) throw std::logic_error("conjugation element of non-real place");
    for (int g : decomposition.members())
        if (g != 0) return g;
    return 0;
}

LocalGroup h1_local(const GModule& m, const PlaceSpec& place) {
    place.validate();
    if (place.decomposition.parent().order() != m.group().order() ||
        !place.decomposition.parent().same_table(m.group()))
        throw std::invalid_argument("place decomposition subgroup is not a subgroup of Gamma");

    LocalGroup out;
    out.place = place;
    out.coinv = coinvariants(m, place.decomposition);

    switch (place.kind) {
        case PlaceKind::finite:
            out.h1 = out.coinv.torsion;
            out.h1_embedding = out.coinv.torsion_embedding;
            break;
        case PlaceKind::real: {
            // The order-2 group acts through sigma_v even when sigma_v acts
            // trivially on M, so the norm is 1 + sigma rather than the sum
            // over the image subgroup.
            int sigma = place.conjugation_element();
            const std::size_t r = m.base().ambient_rank();
            IntMatrix norm = IntMatrix::identity(r) + m.action(sigma);
            AbHom norm_hom{out.coinv.quotient, m.base(), norm};
            HomParts parts = hom_parts(norm_hom);
            out.h1 = parts.kernel;
            out.h1_embedding = parts.kernel_embedding;
            break;
        }
        case PlaceKind::complex:
            out.h1 = FgAbGroup();
            out.h1_embedding = AbHom{out.h1, out.coinv.quotient,
                                     IntMatrix(out.coinv.quotient.ambient_rank(), 0)};
            break;
    }
    return out;
}

LocalClass nabla(const LocalClass& x, const Int& n) {
    if (x.place.kind != PlaceKind::real)
        throw std::invalid_argument("nabla applies at real places only");
    if (n % 2 == 0) return LocalClass{x.place, x.value.parent().zero()};
    return x;
}

LocalClass power_local(const LocalClass& cls, const Int& d) {
    if (cls.place.kind == PlaceKind::real) return nabla(cls, d);
    return LocalClass{cls.place, cls.value.scaled(d)};
}

Int period_local(const LocalClass& cls) {
    if (cls.place.kind == PlaceKind::real) return cls.is_neutral() ? 1 : 2;
    auto n = cls.value.order();
    if (!n) throw std::logic_error("local class of infinite order");
    return *n;
}

Int capacity(const Int& n, const Int& theta) {
    if (n < 1 || theta < 1) throw std::invalid_argument("capacity arguments must be positive");
    if (n == 1) return 1;
    // product over primes p | n of p^{v_p(theta)}
    Int out = 1;
    Int rest = n;
    for (Int p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        Int t = theta;
        while (t % p == 0) {
            out *= p;
            t /= p;
        }
    }
    if (rest > 1) {
        Int t = theta;
        while (t % rest == 0) {
            out *= rest;
            t /= rest;
        }
    }
    return out;
}

namespace {

Int floor_log2(const Int& x) {
    Int v = 0, y = x;
    while (y >= 2) {
        y /= 2;
        ++v;
    }
    return v;
}

Int int_pow(const Int& b, const Int& e) {
    Int out = 1;
    for (Int i = 0; i < e; ++i) out *= b;
    return out;
}

// Smallest prime factor, for the residue characteristic of q.
Int residue_characteristic(const Int& q) {
    for (Int p = 2; p * p <= q; ++p)
        if (q % p == 0) return p;
    return q;
}

}  // namespace

SplitDegreeBounds split_degree_local(const GModule& m, const PlaceSpec& place, const Int& n) {
    EffectiveImage theta = effective_image(m, place.decomposition);
    Int order = theta.quotient.order();
    Int order_ab = 1;
    for (const Int& d : group_analysis(theta.quotient).abelianization) order_ab *= d;
    return SplitDegreeBounds{n * capacity(n, order_ab), int_pow(n, floor_log2(order) + 1)};
}

Int ExtensionModelLocal::total_degree(const PlaceSpec& place) const {
    Int index = place.decomposition.order() / delta.order();
    return index * multiplier;
}

LocalClass restrict_local(const GModule& m, const LocalClass& cls,
                          const ExtensionModelLocal& ext) {
    if (!cls.place.decomposition.contains_subgroup(ext.delta))
        throw std::invalid_argument("extension subgroup not inside the decomposition group");
    GModule res = m.restrict_to(cls.place.decomposition);
    Subgroup delta = ext.delta.as_subgroup_of(cls.place.decomposition);

    LocalGroup src = h1_local(m, cls.place);
    GroupElement as_coinv = src.h1_embedding.apply(cls.value);
    GroupElement image = transfer(res, delta, as_coinv).scaled(ext.multiplier);

    PlaceSpec derived;
    derived.name = cls.place.name + "'";
    derived.kind = PlaceKind::finite;
    derived.decomposition = ext.delta;
    derived.residue_size = cls.place.residue_size;
    LocalGroup dst = h1_local(m, derived);

    // image is torsion, so it has coordinates in the torsion part
    auto coords = image.coords();
    std::vector<Int> tors(coords.begin(), coords.begin() + dst.h1.canonical_rank());
    for (std::size_t i = dst.h1.canonical_rank(); i < coords.size(); ++i)
        if (coords[i] != 0) throw std::logic_error("restricted class is not torsion");
    return LocalClass{derived, dst.h1.from_canonical(tors)};
}

namespace {

// Can an even-degree model exist with the declared square-class data, and
// which classes fit? Declared class t: the quadratic sits inside the
// splitting field, so delta must fix it. Undeclared class t: disjoint, so
// the even part must come from the multiplier.
std::vector<SquareClass> feasible_classes(const PlaceSpec& place, const Subgroup& delta,
                                          const Int& multiplier) {
    std::vector<SquareClass> ok;
    for (int t = 0; t < 3; ++t) {
        const auto& h = place.quadratic_classes[t];
        bool fits = h ? h->contains_subgroup(delta) : (multiplier % 2 == 0);
        if (fits) ok.push_back(static_cast<SquareClass>(t));
    }
    return ok;
}

struct ModelSearch {
    const GModule& m;
    const PlaceSpec& place;
    GModule restricted;
    std::vector<Subgroup> subgroups;  // of Gamma, inside the decomposition

    explicit ModelSearch(const GModule& mm, const PlaceSpec& p)
        : m(mm), place(p), restricted(mm.restrict_to(p.decomposition)) {
        for (const auto& s : all_subgroups(p.decomposition.as_group())) {
            std::vector<int> members;
            for (int i : s.members()) members.push_back(p.decomposition.members()[i]);
            subgroups.emplace_back(p.decomposition.parent(), std::move(members));
        }
    }

    // multiplier * transfer kills the class?
    bool kills(const Subgroup& delta, const Int& multiplier, const GroupElement& coinv_cls) const {
        Subgroup rebased = delta.as_subgroup_of(place.decomposition);
        return transfer(restricted, rebased, coinv_cls).scaled(multiplier).is_zero();
    }

    bool admissible(const Subgroup& delta, const Int& multiplier, bool strict,
                    const Int& p) const {
        if (!strict) return true;
        if (multiplier % p == 0) return false;  // wild part excluded
        Int total = Int(place.decomposition.order() / delta.order()) * multiplier;
        if (total % 2 == 0 && feasible_classes(place, delta, multiplier).empty()) return false;
        return true;
    }
};

}  // namespace

LocalIndexResult local_index(const GModule& m, const LocalClass& cls, const Int& degree_bound,
                             bool strict_quadratic) {
    if (cls.place.kind != PlaceKind::finite)
        throw std::invalid_argument("local index search applies at finite places");
    if (degree_bound > 64) throw std::invalid_argument("degree bound exceeds 64");
    if (strict_quadratic && (!cls.place.residue_size || *cls.place.residue_size % 2 == 0))
        throw std::invalid_argument("strict quadratic mode needs a declared odd residue size");

    LocalIndexResult out;
    out.divisibility_lower_bound = local_divisibility_bound(m, cls, strict_quadratic);
    out.gcd_splitting_degrees = 0;

    ModelSearch search(m, cls.place);
    LocalGroup lg = h1_local(m, cls.place);
    GroupElement coinv_cls = lg.h1_embedding.apply(cls.value);
    Int p = strict_quadratic ? residue_characteristic(*cls.place.residue_size) : Int(0);

    std::vector<Int> degrees;
    for (const auto& delta : search.subgroups) {
        Int index = Int(cls.place.decomposition.order() / delta.order());
        for (Int mult = 1; index * mult <= degree_bound; ++mult) {
            if (!search.admissible(delta, mult, strict_quadratic, p)) continue;
            if (search.kills(delta, mult, coinv_cls)) degrees.push_back(index * mult);
        }
    }
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    out.killing_degrees = degrees;
    for (const Int& d : degrees) out.gcd_splitting_degrees = gcd(out.gcd_splitting_degrees, d);
    return out;
}

Int local_divisibility_bound(const GModule& m, const LocalClass& cls, bool strict_quadratic) {
    Int period = period_local(cls);
    if (cls.place.kind != PlaceKind::finite) return period;
    if (!strict_quadratic || period % 2 != 0) return period;
    if (!cls.place.residue_size || *cls.place.residue_size % 2 == 0) return period;

    // Every even-degree extension contains a quadratic subextension of one
    // of the three square classes. If no structured model of total degree
    // = 2 (mod 4) kills the class, every splitting degree is divisible by 4.
    ModelSearch search(m, cls.place);
    LocalGroup lg = h1_local(m, cls.place);
    GroupElement coinv_cls = lg.h1_embedding.apply(cls.value);
    Int p = residue_characteristic(*cls.place.residue_size);

    for (const auto& delta : search.subgroups) {
        Int index = Int(cls.place.decomposition.order() / delta.order());
        // Killing depends on the multiplier modulo the order of the
        // transferred class; degree class and wildness on its residues mod
        // 4 and p. Scanning one full period of lcm covers every case.
        Subgroup rebased = delta.as_subgroup_of(cls.place.decomposition);
        GroupElement transferred = transfer(search.restricted, rebased, coinv_cls);
        auto ord = transferred.order();
        if (!ord) continue;
        Int span = lcm(lcm(*ord, Int(4)), p);
        for (Int mult = 1; mult <= span; ++mult) {
            if (index * mult % 4 != 2) continue;
            if (!search.admissible(delta, mult, true, p)) continue;
            if (transferred.scaled(mult).is_zero()) return period;  // no sharpening
        }
    }
    return lcm(period, Int(4));
}

int SquareClassModel::multiply(int a, int b) const {
    if (a < 0 || a > 3 || b < 0 || b > 3) throw std::invalid_argument("square class out of range");
    return a ^ b;  // Klein four group on {1, eps, pi, eps*pi}
}

const char* SquareClassModel::class_name(int c) {
    switch (c) {
        case 0: return "1";
        case 1: return "eps";
        case 2: return "pi";
        case 3: return "eps*pi";
    }
    throw std::invalid_argument("square class out of range");
}

SquareClassModel square_class_model(const Int& q) {
    if (q % 2 == 0) throw std::domain_error("wild case unsupported");
    if (q < 3) throw std::invalid_argument("residue size must be an odd prime power");
    Int p = residue_characteristic(q);
    Int rest = q;
    while (rest % p == 0) rest /= p;
    if (rest != 1) throw std::invalid_argument("residue size must be a prime power");
    return SquareClassModel{q};
}

std::vector<SquareClass> quadratic_subextensions(const PlaceSpec& place,
                                                 const ExtensionModelLocal& ext) {
    if (ext.total_degree(place) % 2 != 0)
        throw std::invalid_argument("quadratic subextensions of an odd-degree model");
    return feasible_classes(place, ext.delta, ext.multiplier);
}

}  // namespace galcoh
