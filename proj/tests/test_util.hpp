#pragma once

#include <random>
#include <vector>

#include "galcoh/gmodule.hpp"

namespace galcoh::testutil {

// Z[i] with Z/4 acting by multiplication by i (basis {1, i}).
inline GModule zi_module() {
    auto base = FgAbGroup::free_group(2);
    IntMatrix a = IntMatrix::from_rows({{0, -1}, {1, 0}});
    return GModule::from_generator_actions(FinGroup::cyclic(4), base, {{1, a}});
}

inline std::vector<FinGroup> small_groups() {
    std::vector<FinGroup> out;
    for (int n = 1; n <= 8; ++n) out.push_back(FinGroup::cyclic(n));
    out.push_back(FinGroup::klein_four());
    out.push_back(FinGroup::direct_product(FinGroup::cyclic(2), FinGroup::cyclic(4)));
    out.push_back(FinGroup::symmetric(3));
    out.push_back(FinGroup::dihedral(4));
    out.push_back(FinGroup::quaternion8());
    return out;
}

// Random module over `g`: a sum of coset-permutation blocks with uniform
// block moduli, conjugated by a random unimodular change of basis so the
// matrices are not trivially structured. Rank <= 4, moduli <= 12.
inline GModule random_module(std::mt19937_64& rng, const FinGroup& g, std::size_t max_rank = 4) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> mod_pick(0, 5);

    GroupAnalysis an = group_analysis(g);
    std::uniform_int_distribution<std::size_t> pick_sub(0, an.all_subgroups.size() - 1);

    std::vector<Subgroup> blocks;
    std::size_t rank = 0;
    for (int tries = 0; tries < 8 && rank < max_rank; ++tries) {
        const Subgroup& h = an.all_subgroups[pick_sub(rng)];
        std::size_t block_rank = static_cast<std::size_t>(h.index());
        if (rank + block_rank > max_rank) continue;
        blocks.push_back(h);
        rank += block_rank;
        if (coin(rng)) break;
    }
    if (blocks.empty()) {
        blocks.push_back(Subgroup::full(g));
        rank = 1;
    }

    // Relations: per block a uniform modulus (0 = free block).
    static const int moduli[] = {0, 2, 3, 4, 6, 12};
    IntMatrix rel(rank, 0);
    std::size_t offset = 0;
    std::vector<int> block_mod;
    for (const auto& h : blocks) {
        int m = moduli[mod_pick(rng)];
        block_mod.push_back(m);
        std::size_t br = static_cast<std::size_t>(h.index());
        if (m != 0) {
            IntMatrix cols(rank, br);
            for (std::size_t i = 0; i < br; ++i) cols.at(offset + i, i) = m;
            rel = rel.hconcat(cols);
        }
        offset += br;
    }

    // Block-diagonal coset permutation action.
    std::vector<IntMatrix> actions(g.order(), IntMatrix(rank, rank));
    for (int e = 0; e < g.order(); ++e) {
        std::size_t off = 0;
        for (const auto& h : blocks) {
            auto reps = h.left_transversal();
            for (std::size_t i = 0; i < reps.size(); ++i) {
                int j = h.left_coset_index(g.mult(e, reps[i]));
                actions[e].at(off + j, off + i) = 1;
            }
            off += reps.size();
        }
    }

    // Random unimodular change of coordinates; the relation lattice and the
    // action matrices transform along, so any unimodular u is admissible.
    (void)block_mod;
    IntMatrix u = IntMatrix::identity(rank);
    IntMatrix uinv = IntMatrix::identity(rank);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<std::size_t> pick_coord(0, rank - 1);
    for (int step = 0; step < 6; ++step) {
        std::size_t i = pick_coord(rng), j = pick_coord(rng);
        if (i == j) continue;
        Int c = coeff(rng);
        if (c == 0) continue;
        // u <- E u, uinv <- uinv E^{-1} with E = I + c e_i e_j^T
        for (std::size_t col = 0; col < rank; ++col) u.at(i, col) += c * u.at(j, col);
        for (std::size_t row = 0; row < rank; ++row) uinv.at(row, j) -= c * uinv.at(row, i);
    }

    IntMatrix rel2 = u * rel;
    std::vector<std::pair<int, IntMatrix>> gen_actions;
    for (int e = 0; e < g.order(); ++e) gen_actions.emplace_back(e, u * actions[e] * uinv);
    return GModule::from_generator_actions(
        g, FgAbGroup::from_presentation(rank, rel2), gen_actions);
}

inline Subgroup random_subgroup(std::mt19937_64& rng, const FinGroup& g) {
    GroupAnalysis an = group_analysis(g);
    std::uniform_int_distribution<std::size_t> pick(0, an.all_subgroups.size() - 1);
    return an.all_subgroups[pick(rng)];
}

}  // namespace galcoh::testutil
