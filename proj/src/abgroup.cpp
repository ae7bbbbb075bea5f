#include "galcoh/abgroup.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace galcoh {

struct FgAbGroup::Impl {
    std::size_t ambient_rank = 0;
    IntMatrix relations;
    IntMatrix u;          // from SNF of relations
    IntMatrix u_inverse;
    std::vector<Int> diag;           // d_i per ambient row; 0 marks a free row
    std::vector<std::size_t> torsion_pos;  // rows with d_i >= 2, divisibility order
    std::vector<std::size_t> free_pos;     // rows with d_i == 0
    std::vector<Int> invariant_factors;
};

namespace {

Int mod_into_range(const Int& x, const Int& d) {
    Int r = x % d;
    if (r < 0) r += d;
    return r;
}

}  // namespace

std::shared_ptr<const FgAbGroup::Impl> FgAbGroup::build_impl(std::size_t n, const IntMatrix& relations) {
    if (relations.rows() != n && relations.cols() != 0)
        throw std::invalid_argument("relations must have ambient_rank rows");
    auto impl = std::make_shared<FgAbGroup::Impl>();
    impl->ambient_rank = n;
    impl->relations = relations.rows() == n ? relations : IntMatrix(n, 0);

    SnfResult s = snf_decompose(impl->relations);
    impl->u = std::move(s.u);
    impl->u_inverse = unimodular_inverse(impl->u);
    impl->diag.assign(n, Int(0));
    std::size_t nmin = std::min(n, impl->relations.cols());
    for (std::size_t i = 0; i < nmin; ++i) impl->diag[i] = s.d.at(i, i);
    for (std::size_t i = 0; i < n; ++i) {
        if (impl->diag[i] == 0)
            impl->free_pos.push_back(i);
        else if (impl->diag[i] >= 2) {
            impl->torsion_pos.push_back(i);
            impl->invariant_factors.push_back(impl->diag[i]);
        }
    }
    return impl;
}

FgAbGroup::FgAbGroup() : impl_(build_impl(0, IntMatrix(0, 0))) {}

FgAbGroup FgAbGroup::from_presentation(std::size_t ambient_rank, const IntMatrix& relations) {
    FgAbGroup g;
    g.impl_ = build_impl(ambient_rank, relations);
    return g;
}

FgAbGroup FgAbGroup::free_group(std::size_t rank) {
    return from_presentation(rank, IntMatrix(rank, 0));
}

FgAbGroup FgAbGroup::cyclic(const Int& n) {
    IntMatrix rel(1, 1);
    rel.at(0, 0) = n;
    return from_presentation(1, rel);
}

FgAbGroup FgAbGroup::from_invariant_factors(const std::vector<Int>& factors, std::size_t free_rank) {
    std::size_t n = factors.size() + free_rank;
    IntMatrix rel(n, factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, i) = factors[i];
    return from_presentation(n, rel);
}

std::size_t FgAbGroup::ambient_rank() const { return impl_->ambient_rank; }
const IntMatrix& FgAbGroup::relations() const { return impl_->relations; }
const std::vector<Int>& FgAbGroup::invariant_factors() const { return impl_->invariant_factors; }
std::size_t FgAbGroup::free_rank() const { return impl_->free_pos.size(); }

bool FgAbGroup::is_trivial() const { return canonical_rank() == 0; }

Int FgAbGroup::order() const {
    if (!is_finite()) throw std::domain_error("order of infinite group");
    Int o = 1;
    for (const Int& d : impl_->invariant_factors) o *= d;
    return o;
}

Int FgAbGroup::exponent() const {
    if (!is_finite()) throw std::domain_error("exponent of infinite group");
    return impl_->invariant_factors.empty() ? Int(1) : impl_->invariant_factors.back();
}

GroupElement FgAbGroup::element(const std::vector<Int>& ambient_coords) const {
    if (ambient_coords.size() != impl_->ambient_rank)
        throw std::invalid_argument("ambient coordinate length mismatch");
    std::vector<Int> y = impl_->u.apply(ambient_coords);
    std::vector<Int> c;
    c.reserve(canonical_rank());
    for (std::size_t i : impl_->torsion_pos) c.push_back(mod_into_range(y[i], impl_->diag[i]));
    for (std::size_t i : impl_->free_pos) c.push_back(y[i]);
    return GroupElement(*this, std::move(c));
}

GroupElement FgAbGroup::from_canonical(const std::vector<Int>& canonical_coords) const {
    if (canonical_coords.size() != canonical_rank())
        throw std::invalid_argument("canonical coordinate length mismatch");
    std::vector<Int> c = canonical_coords;
    for (std::size_t k = 0; k < impl_->torsion_pos.size(); ++k)
        c[k] = mod_into_range(c[k], impl_->invariant_factors[k]);
    return GroupElement(*this, std::move(c));
}

GroupElement FgAbGroup::zero() const {
    return GroupElement(*this, std::vector<Int>(canonical_rank(), Int(0)));
}

GroupElement FgAbGroup::canonical_generator(std::size_t i) const {
    std::vector<Int> c(canonical_rank(), Int(0));
    c.at(i) = 1;
    return from_canonical(c);
}

std::vector<Int> FgAbGroup::lift(const std::vector<Int>& canonical_coords) const {
    if (canonical_coords.size() != canonical_rank())
        throw std::invalid_argument("canonical coordinate length mismatch");
    std::vector<Int> y(impl_->ambient_rank, Int(0));
    std::size_t k = 0;
    for (std::size_t i : impl_->torsion_pos) y[i] = canonical_coords[k++];
    for (std::size_t i : impl_->free_pos) y[i] = canonical_coords[k++];
    return impl_->u_inverse.apply(y);
}

std::vector<GroupElement> FgAbGroup::torsion_elements(std::size_t limit) const {
    Int count = 1;
    for (const Int& d : impl_->invariant_factors) count *= d;
    if (count > limit) throw std::domain_error("torsion subgroup too large to enumerate");

    std::vector<GroupElement> out;
    std::vector<Int> c(canonical_rank(), Int(0));
    std::size_t r = torsion_rank();
    for (;;) {
        out.push_back(from_canonical(c));
        std::size_t k = 0;
        while (k < r) {
            c[k] += 1;
            if (c[k] < impl_->invariant_factors[k]) break;
            c[k] = 0;
            ++k;
        }
        if (k == r) break;
        if (r == 0) break;
    }
    return out;
}

bool FgAbGroup::isomorphic(const FgAbGroup& other) const {
    return invariant_factors() == other.invariant_factors() && free_rank() == other.free_rank();
}

std::string FgAbGroup::describe() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Int& d : impl_->invariant_factors) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank() > 0) {
        if (!first) os << " + ";
        os << "Z";
        if (free_rank() > 1) os << "^" << free_rank();
    }
    return os.str();
}

bool GroupElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Int& x) { return x == 0; });
}

bool GroupElement::operator==(const GroupElement& rhs) const {
    if (!parent_.isomorphic(rhs.parent_)) return false;
    return coords_ == rhs.coords_;
}

GroupElement GroupElement::operator+(const GroupElement& rhs) const {
    if (!parent_.isomorphic(rhs.parent_))
        throw std::invalid_argument("element addition across different groups");
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + rhs.coords_[i];
    return parent_.from_canonical(c);
}

GroupElement GroupElement::operator-(const GroupElement& rhs) const {
    return *this + (-rhs);
}

GroupElement GroupElement::operator-() const { return scaled(Int(-1)); }

GroupElement GroupElement::scaled(const Int& n) const {
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * n;
    return parent_.from_canonical(c);
}

std::optional<Int> GroupElement::order() const {
    const auto& factors = parent_.invariant_factors();
    std::size_t r = factors.size();
    for (std::size_t i = r; i < coords_.size(); ++i)
        if (coords_[i] != 0) return std::nullopt;
    Int n = 1;
    for (std::size_t i = 0; i < r; ++i) {
        if (coords_[i] == 0) continue;
        Int g = gcd(factors[i], coords_[i]);
        n = lcm(n, Int(factors[i] / g));
    }
    return n;
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ',';
        os << coords_[i].get_str();
    }
    os << ')';
    return os.str();
}

GroupElement AbHom::apply(const GroupElement& x) const {
    std::vector<Int> ambient = source.lift(x.coords());
    return target.element(matrix.apply(ambient));
}

bool AbHom::is_well_defined() const {
    const IntMatrix& rel = source.relations();
    for (std::size_t j = 0; j < rel.cols(); ++j)
        if (!target.element(matrix.apply(rel.column_vec(j))).is_zero()) return false;
    return true;
}

AbHom AbHom::compose_after(const AbHom& inner) const {
    if (inner.target.ambient_rank() != source.ambient_rank())
        throw std::invalid_argument("composition shape mismatch");
    return AbHom{inner.source, target, matrix * inner.matrix};
}

AbHom AbHom::identity(const FgAbGroup& g) {
    return AbHom{g, g, IntMatrix::identity(g.ambient_rank())};
}

AbHom AbHom::multiplication(const FgAbGroup& g, const Int& n) {
    return AbHom{g, g, IntMatrix::identity(g.ambient_rank()) * n};
}

HomParts hom_parts(const AbHom& f) {
    if (!f.is_well_defined()) throw std::invalid_argument("not a homomorphism");
    const std::size_t n = f.source.ambient_rank();
    const std::size_t m = f.target.ambient_rank();
    const IntMatrix& rel_src = f.source.relations();
    const IntMatrix& rel_tgt = f.target.relations();

    HomParts parts;

    // Cokernel: target modulo image columns.
    parts.cokernel = FgAbGroup::from_presentation(m, f.matrix.hconcat(rel_tgt));
    parts.cokernel_projection = AbHom{f.target, parts.cokernel, IntMatrix::identity(m)};

    // Preimage of the target relation lattice; its span contains rel_src.
    IntMatrix pre = preimage_lattice(f.matrix, rel_tgt);

    // Image of f is source ambient modulo that preimage.
    parts.image = FgAbGroup::from_presentation(n, pre);
    parts.image_embedding = AbHom{parts.image, f.target, f.matrix};

    // Kernel: spanned by the preimage columns, with induced relations.
    parts.kernel = FgAbGroup::from_presentation(pre.cols(), preimage_lattice(pre, rel_src));
    parts.kernel_embedding = AbHom{parts.kernel, f.source, pre};

    return parts;
}

TorsionPart torsion_subgroup(const FgAbGroup& g) {
    std::size_t r = g.torsion_rank();
    FgAbGroup t = FgAbGroup::from_invariant_factors(g.invariant_factors(), 0);
    IntMatrix emb(g.ambient_rank(), r);
    std::vector<Int> canonical(g.canonical_rank(), Int(0));
    for (std::size_t i = 0; i < r; ++i) {
        canonical[i] = 1;
        emb.set_column(i, g.lift(canonical));
        canonical[i] = 0;
    }
    return TorsionPart{t, AbHom{t, g, emb}};
}

}  // namespace galcoh
