#include <doctest.h>

#include <random>

#include "galcoh/abgroup.hpp"
#include "galcoh/intmatrix.hpp"

using namespace galcoh;

namespace {

// Independent determinant oracle: cofactor expansion. Exponential, used
// only on tiny matrices to cross-check unimodularity of SNF transforms.
Int det_by_expansion(const IntMatrix& m) {
    std::size_t n = m.rows();
    REQUIRE(m.cols() == n);
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
        if (m.at(0, j) != 0) acc += sign * m.at(0, j) * det_by_expansion(minor);
        sign = -sign;
    }
    return acc;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t maxdim) {
    std::uniform_int_distribution<int> dim(0, static_cast<int>(maxdim));
    std::uniform_int_distribution<int> entry(-9, 9);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m.at(i, j) = entry(rng);
    return m;
}

void check_snf(const IntMatrix& a) {
    SnfResult s = snf_decompose(a);
    CHECK(s.u * a * s.v == s.d);
    Int du = det_by_expansion(s.u), dv = det_by_expansion(s.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    auto diag = s.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (i + 1 < diag.size() && diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
        if (diag[i] == 0 && i + 1 < diag.size()) CHECK(diag[i + 1] == 0);
    }
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
}

}  // namespace

TEST_CASE("snf worked example 2,4;6,8") {
    IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
    SnfResult s = snf_decompose(a);
    // Hand row/column reduction gives diag(2,4); |det| = 8 = 2*4.
    CHECK(s.d.at(0, 0) == 2);
    CHECK(s.d.at(1, 1) == 4);
    CHECK(s.u * a * s.v == s.d);
}

TEST_CASE("snf zero and identity") {
    IntMatrix z(3, 2);
    SnfResult sz = snf_decompose(z);
    CHECK(sz.d.is_zero());
    CHECK(sz.u * z * sz.v == sz.d);

    IntMatrix id = IntMatrix::identity(4);
    SnfResult si = snf_decompose(id);
    CHECK(si.d == id);
}

TEST_CASE("snf random identities") {
    std::mt19937_64 rng(20240901);
    for (int iter = 0; iter < 400; ++iter) check_snf(random_matrix(rng, 6));
}

TEST_CASE("kernel and solve") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        IntMatrix a = random_matrix(rng, 5);
        IntMatrix k = kernel_lattice(a);
        CHECK((a * k).is_zero());

        // random solvable system: b = A x0
        std::vector<Int> x0(a.cols());
        std::uniform_int_distribution<int> entry(-4, 4);
        for (auto& x : x0) x = entry(rng);
        auto sol = solve_integer(a, a.apply(x0));
        REQUIRE(sol.has_value());
        CHECK(a.apply(*sol) == a.apply(x0));
    }
}

TEST_CASE("unimodular inverse") {
    IntMatrix u = IntMatrix::from_rows({{1, 2, 0}, {0, 1, 3}, {0, 0, 1}});
    IntMatrix inv = unimodular_inverse(u);
    CHECK(u * inv == IntMatrix::identity(3));
    CHECK(inv * u == IntMatrix::identity(3));
}

TEST_CASE("group from presentation") {
    SUBCASE("Z/2") {
        auto g = FgAbGroup::cyclic(2);
        CHECK(g.invariant_factors() == std::vector<Int>{2});
        CHECK(g.free_rank() == 0);
        CHECK(g.order() == 2);
    }
    SUBCASE("rank 2 with relation (1,-1) is free of rank 1") {
        IntMatrix rel(2, 1);
        rel.at(0, 0) = 1;
        rel.at(1, 0) = -1;
        auto g = FgAbGroup::from_presentation(2, rel);
        CHECK(g.invariant_factors().empty());
        CHECK(g.free_rank() == 1);
    }
    SUBCASE("Z/2 + Z/4") {
        IntMatrix rel(2, 2);
        rel.at(0, 0) = 2;
        rel.at(1, 1) = 4;
        auto g = FgAbGroup::from_presentation(2, rel);
        CHECK(g.invariant_factors() == std::vector<Int>{2, 4});
        CHECK(g.order() == 8);
    }
    SUBCASE("Z/6 presented with mixed relations has one generator") {
        IntMatrix rel(2, 2);
        rel.at(0, 0) = 2;
        rel.at(1, 1) = 3;
        auto g = FgAbGroup::from_presentation(2, rel);
        CHECK(g.invariant_factors() == std::vector<Int>{6});
        CHECK(g.min_generators() == 1);
    }
}

TEST_CASE("presentation round trip preserves invariant factors") {
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 100; ++iter) {
        IntMatrix rel = random_matrix(rng, 5);
        auto g = FgAbGroup::from_presentation(rel.rows(), rel);
        auto h = FgAbGroup::from_invariant_factors(g.invariant_factors(), g.free_rank());
        CHECK(g.invariant_factors() == h.invariant_factors());
        CHECK(g.free_rank() == h.free_rank());
    }
}

TEST_CASE("element order") {
    SUBCASE("Z/2 generator has order 2") {
        auto g = FgAbGroup::cyclic(2);
        CHECK(g.canonical_generator(0).order() == Int(2));
    }
    SUBCASE("free element has infinite order") {
        auto g = FgAbGroup::free_group(1);
        CHECK(!g.from_canonical({Int(3)}).order().has_value());
    }
    SUBCASE("(1,2) in Z/2+Z/4 has order 2") {
        auto g = FgAbGroup::from_invariant_factors({Int(2), Int(4)}, 0);
        // lcm(2, 4/gcd(4,2)) = 2
        CHECK(g.from_canonical({Int(1), Int(2)}).order() == Int(2));
    }
    SUBCASE("order times x vanishes, order-1 times x does not") {
        auto g = FgAbGroup::from_invariant_factors({Int(2), Int(12)}, 0);
        for (const auto& x : g.torsion_elements()) {
            auto n = x.order();
            REQUIRE(n.has_value());
            CHECK(x.scaled(*n).is_zero());
            if (*n > 1) CHECK(!x.scaled(*n - 1).is_zero());
        }
    }
}

TEST_CASE("canonical reduction is canonical") {
    auto g = FgAbGroup::from_invariant_factors({Int(4)}, 1);
    auto a = g.from_canonical({Int(7), Int(2)});
    auto b = g.from_canonical({Int(3), Int(2)});
    CHECK(a == b);
    CHECK(g.element(g.lift(a.coords())) == a);
}

TEST_CASE("hom parts") {
    SUBCASE("times 2 on Z") {
        auto z = FgAbGroup::free_group(1);
        auto parts = hom_parts(AbHom::multiplication(z, 2));
        CHECK(parts.kernel.is_trivial());
        CHECK(parts.cokernel.invariant_factors() == std::vector<Int>{2});
    }
    SUBCASE("sum Z^2 -> Z") {
        auto z2 = FgAbGroup::free_group(2);
        auto z = FgAbGroup::free_group(1);
        IntMatrix f(1, 2);
        f.at(0, 0) = 1;
        f.at(0, 1) = 1;
        auto parts = hom_parts(AbHom{z2, z, f});
        CHECK(parts.kernel.free_rank() == 1);
        CHECK(parts.kernel.invariant_factors().empty());
        CHECK(parts.cokernel.is_trivial());
    }
    SUBCASE("times 2 on Z/4") {
        auto g = FgAbGroup::cyclic(4);
        auto parts = hom_parts(AbHom::multiplication(g, 2));
        // direct enumeration of the 4 elements: kernel {0,2}, image {0,2}
        CHECK(parts.kernel.invariant_factors() == std::vector<Int>{2});
        CHECK(parts.image.invariant_factors() == std::vector<Int>{2});
        CHECK(parts.cokernel.invariant_factors() == std::vector<Int>{2});
    }
    SUBCASE("rejects non-homomorphism") {
        auto g = FgAbGroup::cyclic(4);
        auto h = FgAbGroup::cyclic(3);
        IntMatrix f(1, 1);
        f.at(0, 0) = 1;  // 4*1 = 4 != 0 mod 3
        CHECK_THROWS_AS(hom_parts(AbHom{g, h, f}), std::invalid_argument);
    }
}

TEST_CASE("hom parts exactness counts") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> mod(1, 6);
    int done = 0;
    while (done < 60) {
        auto g = FgAbGroup::from_invariant_factors({Int(mod(rng) + 1)}, 0);
        auto h = FgAbGroup::from_invariant_factors({Int(mod(rng) + 1), Int(12)}, 0);
        IntMatrix f(2, 1);
        f.at(0, 0) = entry(rng);
        f.at(1, 0) = entry(rng);
        AbHom hom{g, h, f};
        if (!hom.is_well_defined()) continue;
        ++done;
        auto parts = hom_parts(hom);
        CHECK(parts.kernel.order() * parts.image.order() == g.order());
        CHECK(parts.cokernel.order() * parts.image.order() == h.order());
        // kernel embedding composed with f is zero
        auto composed = hom.compose_after(parts.kernel_embedding);
        for (std::size_t i = 0; i < parts.kernel.canonical_rank(); ++i)
            CHECK(composed.apply(parts.kernel.canonical_generator(i)).is_zero());
    }
}

TEST_CASE("torsion subgroup") {
    auto g = FgAbGroup::from_invariant_factors({Int(2), Int(6)}, 2);
    auto t = torsion_subgroup(g);
    CHECK(t.group.invariant_factors() == std::vector<Int>{2, 6});
    CHECK(t.group.free_rank() == 0);
    CHECK(t.embedding.is_well_defined());
    for (const auto& x : t.group.torsion_elements()) {
        auto img = t.embedding.apply(x);
        auto n = img.order();
        REQUIRE(n.has_value());
        CHECK(x.order() == n);
    }
}
