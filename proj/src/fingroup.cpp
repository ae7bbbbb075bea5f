#include "galcoh/fingroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace galcoh {

namespace {

void validate_table(const std::vector<int>& t, int n) {
    auto at = [&](int a, int b) { return t[static_cast<std::size_t>(a) * n + b]; };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (at(a, b) < 0 || at(a, b) >= n)
                throw std::invalid_argument("multiplication table entry out of range");
    for (int a = 0; a < n; ++a)
        if (at(0, a) != a || at(a, 0) != a)
            throw std::invalid_argument("element 0 is not an identity");
    for (int a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (int b = 0; b < n; ++b)
            if (at(a, b) == 0 && at(b, a) == 0) { has_inverse = true; break; }
        if (!has_inverse) throw std::invalid_argument("element without inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c)))
                    throw std::invalid_argument("multiplication table is not associative");
}

}  // namespace

FinGroup::FinGroup() : table_(std::make_shared<std::vector<int>>(1, 0)), order_(1) {}

FinGroup FinGroup::from_table(std::vector<std::vector<int>> table) {
    int n = static_cast<int>(table.size());
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("ragged table");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    validate_table(flat, n);
    FinGroup g;
    g.table_ = std::make_shared<std::vector<int>>(std::move(flat));
    g.order_ = n;
    return g;
}

FinGroup FinGroup::cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return from_table(std::move(t));
}

FinGroup FinGroup::direct_product(const FinGroup& a, const FinGroup& b) {
    int n = a.order() * b.order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    auto enc = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    t[enc(x1, y1)][enc(x2, y2)] = enc(a.mult(x1, x2), b.mult(y1, y2));
    return from_table(std::move(t));
}

FinGroup FinGroup::from_permutations(int points, const std::vector<std::vector<int>>& gens) {
    using Perm = std::vector<int>;
    Perm id(points);
    std::iota(id.begin(), id.end(), 0);
    auto compose = [points](const Perm& p, const Perm& q) {
        Perm r(points);
        for (int i = 0; i < points; ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<Perm> elements{id};
    std::set<Perm> seen{id};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const Perm& g : gens) {
            Perm next = compose(g, elements[i]);
            if (seen.insert(next).second) elements.push_back(next);
            if (elements.size() > 64) throw std::domain_error("permutation group too large");
        }
    }
    std::sort(elements.begin() + 1, elements.end());
    int n = static_cast<int>(elements.size());
    std::map<Perm, int> index;
    for (int i = 0; i < n; ++i) index[elements[i]] = i;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = index.at(compose(elements[a], elements[b]));
    return from_table(std::move(t));
}

FinGroup FinGroup::symmetric(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric(n) supported for 1 <= n <= 5");
    if (n == 1) return FinGroup();
    std::vector<int> transposition(n), cycle(n);
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return from_permutations(n, {transposition, cycle});
}

FinGroup FinGroup::dihedral(int n) {
    if (n < 1) throw std::invalid_argument("dihedral parameter must be positive");
    std::vector<int> rot(n), flip(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        flip[i] = (n - i) % n;
    }
    return from_permutations(n, {rot, flip});
}

FinGroup FinGroup::quaternion8() {
    // 1, -1, i, -i, j, -j, k, -k as permutations of themselves by left mult.
    // Encoded via the regular representation on 8 symbols.
    static const int q[8][8] = {
        {0, 1, 2, 3, 4, 5, 6, 7},  // 1
        {1, 0, 3, 2, 5, 4, 7, 6},  // -1
        {2, 3, 1, 0, 6, 7, 5, 4},  // i
        {3, 2, 0, 1, 7, 6, 4, 5},  // -i
        {4, 5, 7, 6, 1, 0, 2, 3},  // j
        {5, 4, 6, 7, 0, 1, 3, 2},  // -j
        {6, 7, 4, 5, 3, 2, 1, 0},  // k
        {7, 6, 5, 4, 2, 3, 0, 1},  // -k
    };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) t[a][b] = q[a][b];
    return from_table(std::move(t));
}

FinGroup FinGroup::klein_four() { return direct_product(cyclic(2), cyclic(2)); }

int FinGroup::order() const { return order_; }

int FinGroup::mult(int a, int b) const {
    return (*table_)[static_cast<std::size_t>(a) * order_ + b];
}

int FinGroup::inverse(int a) const {
    for (int b = 0; b < order_; ++b)
        if (mult(a, b) == 0) return b;
    throw std::logic_error("no inverse found");
}

int FinGroup::element_order(int a) const {
    int n = 1, x = a;
    while (x != 0) {
        x = mult(x, a);
        ++n;
    }
    return n;
}

bool FinGroup::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mult(a, b) != mult(b, a)) return false;
    return true;
}

Subgroup::Subgroup(FinGroup parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty() || members_[0] != 0)
        throw std::invalid_argument("subgroup must contain the identity");
    for (int a : members_)
        for (int b : members_)
            if (!std::binary_search(members_.begin(), members_.end(), parent_.mult(a, b)))
                throw std::invalid_argument("subgroup not closed under multiplication");
}

Subgroup Subgroup::trivial(const FinGroup& g) { return Subgroup(g, {0}); }

Subgroup Subgroup::full(const FinGroup& g) {
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(g, std::move(all));
}

Subgroup Subgroup::generated(const FinGroup& g, const std::vector<int>& gens) {
    std::set<int> closure{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (int h : gens) {
            int y = g.mult(x, h);
            if (closure.insert(y).second) frontier.push_back(y);
        }
    }
    return Subgroup(g, std::vector<int>(closure.begin(), closure.end()));
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members_.begin(), members_.end(), g);
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
    return std::includes(members_.begin(), members_.end(),
                         other.members_.begin(), other.members_.end());
}

std::vector<int> Subgroup::generators() const {
    std::vector<int> gens;
    Subgroup current = trivial(parent_);
    for (int g : members_) {
        if (current.contains(g)) continue;
        gens.push_back(g);
        current = generated(parent_, gens);
        if (current.order() == order()) break;
    }
    return gens;
}

bool Subgroup::is_cyclic() const {
    for (int g : members_)
        if (parent_.element_order(g) == order()) return true;
    return false;
}

bool Subgroup::is_normal() const {
    for (int g = 0; g < parent_.order(); ++g)
        if (!(conjugate(g) == *this)) return false;
    return true;
}

Subgroup Subgroup::conjugate(int g) const {
    int ginv = parent_.inverse(g);
    std::vector<int> out;
    out.reserve(members_.size());
    for (int s : members_) out.push_back(parent_.mult(parent_.mult(g, s), ginv));
    return Subgroup(parent_, std::move(out));
}

std::vector<int> Subgroup::right_transversal(int variant) const {
    // Cosets S·g; pick the smallest member for variant 0, largest otherwise.
    std::vector<int> reps;
    std::vector<char> covered(parent_.order(), 0);
    for (int g = 0; g < parent_.order(); ++g) {
        if (covered[g]) continue;
        std::vector<int> coset;
        for (int s : members_) {
            int x = parent_.mult(s, g);
            covered[x] = 1;
            coset.push_back(x);
        }
        reps.push_back(variant == 0 ? *std::min_element(coset.begin(), coset.end())
                                    : *std::max_element(coset.begin(), coset.end()));
    }
    return reps;
}

std::vector<int> Subgroup::left_transversal() const {
    std::vector<int> reps;
    std::vector<char> covered(parent_.order(), 0);
    for (int g = 0; g < parent_.order(); ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int s : members_) covered[parent_.mult(g, s)] = 1;
    }
    return reps;
}

int Subgroup::left_coset_index(int g) const {
    auto reps = left_transversal();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        // g in reps[i]*S  <=>  reps[i]^{-1} g in S
        if (contains(parent_.mult(parent_.inverse(reps[i]), g))) return static_cast<int>(i);
    }
    throw std::logic_error("left coset not found");
}

FinGroup Subgroup::as_group() const {
    int n = order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int prod = parent_.mult(members_[a], members_[b]);
            auto it = std::lower_bound(members_.begin(), members_.end(), prod);
            t[a][b] = static_cast<int>(it - members_.begin());
        }
    return FinGroup::from_table(std::move(t));
}

Subgroup Subgroup::as_subgroup_of(const Subgroup& ambient) const {
    if (!ambient.contains_subgroup(*this))
        throw std::invalid_argument("subgroup not contained in ambient subgroup");
    const auto& amb = ambient.members();
    std::vector<int> idx;
    idx.reserve(members_.size());
    for (int m : members_) {
        auto it = std::lower_bound(amb.begin(), amb.end(), m);
        idx.push_back(static_cast<int>(it - amb.begin()));
    }
    return Subgroup(ambient.as_group(), std::move(idx));
}

std::vector<Int> abelian_invariants(const FinGroup& g) {
    if (!g.is_abelian()) throw std::invalid_argument("abelian_invariants of non-abelian group");
    // Primary decomposition from torsion counts: for each prime p, the
    // number of solutions of p^j * x = 0 determines the p-part type.
    int n = g.order();
    std::map<Int, std::vector<int>> p_exponents;  // prime -> sorted exponents
    for (int p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime) continue;
        // counts[j] = #{x : p^j x = 0}
        std::vector<long> counts{1};
        for (int j = 1;; ++j) {
            long c = 0;
            long pj = 1;
            for (int i = 0; i < j; ++i) pj *= p;
            for (int x = 0; x < n; ++x) {
                int acc = 0;
                for (long i = 0; i < pj % g.element_order(x); ++i) acc = g.mult(acc, x);
                if (acc == 0) ++c;
            }
            counts.push_back(c);
            if (c == counts[j - 1]) break;  // stabilized at the full p-part
        }
        // number of cyclic factors with exponent >= j is log_p(counts[j]/counts[j-1])
        std::vector<int> exps;
        for (std::size_t j = 1; j < counts.size(); ++j) {
            long ratio = counts[j] / counts[j - 1];
            int k = 0;
            while (ratio > 1) {
                ratio /= p;
                ++k;
            }
            for (int i = 0; i < k; ++i) {
                if (exps.size() <= static_cast<std::size_t>(i)) exps.push_back(0);
            }
            // every factor counted at step j has exponent >= j
            for (int i = 0; i < k; ++i) exps[i] = static_cast<int>(j);
        }
        if (!exps.empty()) p_exponents[p] = exps;  // exps sorted descending by construction
    }

    // Interleave prime powers into invariant factors d_1 | d_2 | ...
    std::size_t len = 0;
    for (const auto& [p, exps] : p_exponents) len = std::max(len, exps.size());
    std::vector<Int> factors(len, Int(1));
    for (const auto& [p, exps] : p_exponents)
        for (std::size_t i = 0; i < exps.size(); ++i) {
            Int pe = 1;
            for (int j = 0; j < exps[i]; ++j) pe *= p;
            factors[i] *= pe;
        }
    std::sort(factors.begin(), factors.end());
    return factors;
}

namespace {

uint64_t mask_of(const std::vector<int>& members) {
    uint64_t m = 0;
    for (int x : members) m |= uint64_t(1) << x;
    return m;
}

uint64_t closure_mask(const FinGroup& g, uint64_t seed) {
    std::vector<int> elems;
    for (int i = 0; i < g.order(); ++i)
        if (seed >> i & 1) elems.push_back(i);
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t sz = elems.size();
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = 0; j < sz; ++j) {
                int p = g.mult(elems[i], elems[j]);
                if (!(seed >> p & 1)) {
                    seed |= uint64_t(1) << p;
                    elems.push_back(p);
                    grew = true;
                }
            }
    }
    return seed;
}

std::vector<int> mask_members(uint64_t m, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (m >> i & 1) out.push_back(i);
    return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const FinGroup& g, int order_bound) {
    int n = g.order();
    if (n > order_bound) throw std::domain_error("group order exceeds configured bound");

    // All subgroups by closing the join of known subgroups with one element.
    std::set<uint64_t> masks;
    masks.insert(uint64_t(1));  // trivial subgroup
    std::vector<uint64_t> worklist{uint64_t(1)};
    while (!worklist.empty()) {
        uint64_t s = worklist.back();
        worklist.pop_back();
        for (int x = 1; x < n; ++x) {
            if (s >> x & 1) continue;
            uint64_t bigger = closure_mask(g, s | (uint64_t(1) << x));
            if (masks.insert(bigger).second) worklist.push_back(bigger);
        }
    }
    std::vector<Subgroup> out;
    out.reserve(masks.size());
    for (uint64_t m : masks) out.emplace_back(g, mask_members(m, n));
    return out;
}

GroupAnalysis group_analysis(const FinGroup& g, int order_bound) {
    int n = g.order();
    GroupAnalysis out;
    out.all_subgroups = all_subgroups(g, order_bound);
    std::map<uint64_t, std::size_t> index_of;
    for (std::size_t i = 0; i < out.all_subgroups.size(); ++i)
        index_of[mask_of(out.all_subgroups[i].members())] = i;

    std::vector<char> assigned(out.all_subgroups.size(), 0);
    const bool abelian = g.is_abelian();
    for (std::size_t i = 0; i < out.all_subgroups.size(); ++i) {
        if (assigned[i]) continue;
        std::vector<std::size_t> cls;
        if (abelian) {
            assigned[i] = 1;
            cls.push_back(i);
        } else {
            std::set<uint64_t> orbit;
            for (int x = 0; x < n; ++x)
                orbit.insert(mask_of(out.all_subgroups[i].conjugate(x).members()));
            for (uint64_t m : orbit) {
                std::size_t j = index_of.at(m);
                assigned[j] = 1;
                cls.push_back(j);
            }
            std::sort(cls.begin(), cls.end());
        }
        out.subgroup_conjugacy_classes.push_back(std::move(cls));
    }

    for (const auto& cls : out.subgroup_conjugacy_classes) {
        const Subgroup& rep = out.all_subgroups[cls.front()];
        if (rep.is_cyclic()) out.cyclic_representatives.push_back(rep);
    }

    // Commutator subgroup, then invariants of the abelian quotient.
    std::vector<int> comms;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            comms.push_back(g.mult(g.mult(a, b), g.mult(g.inverse(a), g.inverse(b))));
    Subgroup derived = Subgroup::generated(g, comms);
    auto reps = derived.left_transversal();
    int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> qtable(q, std::vector<int>(q));
    // left_coset_index works for normal subgroups as a quotient map
    std::vector<int> coset_of(n);
    for (int x = 0; x < n; ++x) coset_of[x] = derived.left_coset_index(x);
    // Re-index so the identity coset is 0 (it is: identity rep listed first).
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            qtable[a][b] = coset_of[g.mult(reps[a], reps[b])];
    out.abelianization = abelian_invariants(FinGroup::from_table(std::move(qtable)));

    // Sylow-cyclic: each Sylow subgroup cyclic. Sylow subgroups appear among
    // all subgroups as those of maximal prime-power order.
    out.sylow_cyclic = true;
    for (int p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime) continue;
        int pk = 1;
        while (n % (pk * p) == 0) pk *= p;
        for (const auto& s : out.all_subgroups)
            if (s.order() == pk && !s.is_cyclic()) { out.sylow_cyclic = false; break; }
        if (!out.sylow_cyclic) break;
    }
    return out;
}

}  // namespace galcoh
