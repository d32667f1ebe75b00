#include <doctest.h>

#include <bit>
#include <random>

#include "isolab/field.hpp"
#include "isolab/galmod.hpp"

using namespace isolab;

namespace {

FlMatrix mat(unsigned ell, std::vector<std::vector<long>> rows) { return FlMatrix::from_rows(ell, rows); }

FlVector e(size_t n, size_t i) {
    FlVector v(n, 0);
    v[i] = 1;
    return v;
}

Subspace span(unsigned ell, size_t n, std::vector<FlVector> v) { return Subspace::span(ell, n, v); }

GaloisModule affine_f3() { return GaloisModule(3, 2, {mat(3, {{2, 0}, {0, 1}}), mat(3, {{1, 1}, {0, 1}})}); }
GaloisModule unipotent_f3() { return GaloisModule(3, 2, {mat(3, {{1, 1}, {0, 1}})}); }

Subspace brute_fixed(const GaloisModule& M) {
    return Subspace::span(M.ell(), M.dim(), brute_force_fixed_vectors(M));
}

}  // namespace

TEST_CASE("linear algebra over F_ell") {
    const FlMatrix A = mat(5, {{1, 2}, {3, 4}});
    CHECK(A.determinant() == 3);
    CHECK((A * *A.inverse()).is_identity());
    CHECK(mat(3, {{1, 2}, {2, 1}}).rank() == 1);
    CHECK(mat(3, {{1, 1}, {0, 1}}).minimal_polynomial() == std::vector<long>{1, 1, 1});
    const Subspace V = span(3, 3, {{1, 2, 0}, {2, 1, 0}});
    CHECK(V.dim() == 1);
    CHECK(V == span(3, 3, {{2, 1, 0}}));
    CHECK(V.intersect(span(3, 3, {e(3, 0), e(3, 1)})) == V);
    CHECK((V + V.echelon_complement()).dim() == 3);
    CHECK(Subspace::annihilated_by(3, 3, {{1, 0, 0}}) == span(3, 3, {e(3, 1), e(3, 2)}));
    CHECK_THROWS_AS(A * mat(3, {{1}}), StructuralError);
}

TEST_CASE("module validation") {
    CHECK_THROWS_AS(GaloisModule(4, 2, {}), DomainError);
    CHECK_THROWS_AS(GaloisModule(3, 3, {}), DomainError);
    CHECK_THROWS_AS(GaloisModule(3, 2, {mat(3, {{1, 1}, {1, 1}})}), DomainError);
    CHECK_THROWS_AS(GaloisModule(3, 2, {mat(5, {{1, 0}, {0, 1}})}), StructuralError);
}

TEST_CASE("fixed subspaces and invariance") {
    CHECK(fixed_subspace(GaloisModule(3, 2, {FlMatrix::identity(3, 2)})) == Subspace::full(3, 2));
    CHECK(fixed_subspace(unipotent_f3()) == span(3, 2, {e(2, 0)}));
    CHECK(fixed_subspace(affine_f3()).dim() == 0);
    CHECK(brute_force_fixed_vectors(affine_f3()).size() == 1);

    const GaloisModule D(3, 2, {mat(3, {{2, 0}, {0, 1}})});
    CHECK(is_invariant(D, Subspace::full(3, 2)));
    CHECK(is_invariant(D, span(3, 2, {e(2, 0)})));
    CHECK_FALSE(is_invariant(unipotent_f3(), span(3, 2, {e(2, 1)})));
    CHECK_THROWS_AS(is_invariant(D, Subspace::full(3, 3)), StructuralError);
}

TEST_CASE("semisimplicity and group closure") {
    CHECK(is_semisimple(GaloisModule(3, 2, {mat(3, {{2, 0}, {0, 1}})})));
    const auto u = semisimplicity(unipotent_f3());
    CHECK_FALSE(u.semisimple);
    CHECK(u.method == SemisimpleMethod::MinimalPolynomial);
    const auto a = semisimplicity(affine_f3());
    CHECK_FALSE(a.semisimple);
    CHECK(a.method == SemisimpleMethod::Exhaustive);

    CHECK(group_closure(GaloisModule(3, 2, {mat(3, {{2, 0}, {0, 2}})})).elements.size() == 2);
    CHECK(group_closure(unipotent_f3()).elements.size() == 3);
    CHECK(group_closure(affine_f3()).elements.size() == 6);
    const auto capped = group_closure(affine_f3(), 4);
    CHECK(capped.overflow);
    CHECK_THROWS_AS(group_closure(affine_f3(), 0), DomainError);

    // two non-commuting generators, order divisible by ell, ambient above the cap
    const GaloisModule big(3, 8, {FlMatrix::block_diagonal(affine_f3().generators()[0], FlMatrix::identity(3, 6)),
                                  FlMatrix::block_diagonal(affine_f3().generators()[1], FlMatrix::identity(3, 6))});
    CHECK_THROWS_AS(is_semisimple(big), CapabilityError);
}

TEST_CASE("invariant complements") {
    const GaloisModule D(3, 2, {mat(3, {{2, 0}, {0, 1}})});
    CHECK(invariant_complement(D, span(3, 2, {e(2, 0)})) == span(3, 2, {e(2, 1)}));

    const GaloisModule T(3, 4, {FlMatrix::identity(3, 4)});
    const Subspace V = span(3, 4, {{1, 2, 0, 1}});
    const Subspace W = invariant_complement(T, V);
    CHECK(W.dim() == 3);
    CHECK((V + W).dim() == 4);

    CHECK_THROWS_AS(invariant_complement(unipotent_f3(), span(3, 2, {e(2, 0)})), NotSemisimple);
    CHECK_THROWS_AS(invariant_complement(unipotent_f3(), span(3, 2, {e(2, 1)})), DomainError);

    const Subspace inner = span(3, 4, {e(4, 0), e(4, 2)});
    const Subspace outer = span(3, 4, {e(4, 0), e(4, 1), e(4, 2)});
    const Subspace R = relative_invariant_complement(T, inner, outer);
    CHECK(R.dim() == 1);
    CHECK(outer.contains(R));
    CHECK(R.intersect(inner).dim() == 0);
    CHECK(relative_invariant_complement(T, outer, outer).dim() == 0);
    CHECK(relative_invariant_complement(T, Subspace::zero(3, 4), outer) == outer);
    CHECK_THROWS_AS(relative_invariant_complement(T, outer, inner), DomainError);
}

TEST_CASE("Maschke projector is an idempotent commuting with the action") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned ell = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        const size_t dim = 2 * (1 + trial % 3);
        const auto cfg = random_semisimple_configuration(ell, dim, 1 + trial % dim, rng);
        const Subspace V = cfg.hyperplanes[0];
        const auto pi = maschke_projector(cfg.module, V);
        REQUIRE(pi.has_value());
        CHECK(*pi * *pi == *pi);
        for (const auto& g : cfg.module.generators()) CHECK(g * *pi == *pi * g);
        for (const auto& v : V.basis()) CHECK(*pi * v == v);
        const Subspace W = invariant_complement(cfg.module, V);
        CHECK(is_invariant(cfg.module, W));
        CHECK((V + W).dim() == dim);
        CHECK(V.intersect(W).dim() == 0);
    }
}

TEST_CASE("hyperplane lattice and order") {
    const Subspace H1 = span(3, 4, {e(4, 0), e(4, 2), e(4, 3)});
    const Subspace H2 = span(3, 4, {e(4, 0), e(4, 1), e(4, 2)});
    const auto L = subspace_lattice({H1, H2});
    CHECK(L.size() == 3);
    CHECK(L.at(1) == H1);
    CHECK(L.at(3) == span(3, 4, {e(4, 0), e(4, 2)}));
    CHECK(subspace_lattice({H1}).at(1) == H1);
    CHECK(graph_order({H1, H2}) == 2);
    CHECK(graph_order({H1, H1}) == 1);
    CHECK_THROWS_AS(subspace_lattice({span(3, 4, {e(4, 0)})}), DomainError);

    std::mt19937_64 rng(5);
    std::vector<Subspace> many;
    for (int i = 0; i < 5; ++i) many.push_back(random_independent_hyperplanes(3, 4, 1, rng)[0]);
    CHECK(graph_order(many) <= 4);
}

TEST_CASE("pointedness") {
    CHECK(pointedness_check(unipotent_f3(), span(3, 2, {e(2, 0)})));
    CHECK(pointedness_check(GaloisModule(3, 2, {mat(3, {{2, 0}, {0, 1}})}), span(3, 2, {e(2, 0)})));
    CHECK_FALSE(pointedness_check(GaloisModule(3, 2, {mat(3, {{1, 0}, {0, 2}})}), span(3, 2, {e(2, 0)})));
    CHECK_THROWS_AS(pointedness_check(unipotent_f3(), span(3, 2, {e(2, 1)})), DomainError);
}

TEST_CASE("construction of fixed vectors") {
    const GaloisModule T(3, 4, {FlMatrix::identity(3, 4)});
    const std::vector<Subspace> coord{span(3, 4, {e(4, 1), e(4, 2), e(4, 3)}), span(3, 4, {e(4, 0), e(4, 2), e(4, 3)})};
    auto Q = theorem2_construct({T, coord});
    REQUIRE(Q.size() == 2);
    CHECK(FlMatrix::from_vectors(3, Q, 4).rank() == 2);

    const GaloisModule D(3, 4, {FlMatrix::diagonal(3, {2, 1, 2, 1})});
    // cut out by e1* and e3*, on which the action is by 2: not pointed
    const std::vector<Subspace> moved{span(3, 4, {e(4, 1), e(4, 2), e(4, 3)}), span(3, 4, {e(4, 0), e(4, 1), e(4, 3)})};
    CHECK_FALSE(pointedness_check(D, moved[0]));
    CHECK_THROWS_AS(theorem2_construct({D, moved}), PreconditionError);
    const std::vector<Subspace> H{span(3, 4, {e(4, 0), e(4, 2), e(4, 3)}), span(3, 4, {e(4, 0), e(4, 1), e(4, 2)})};
    Q = theorem2_construct({D, H});
    const Subspace fixed = brute_fixed(D);
    CHECK(fixed == span(3, 4, {e(4, 1), e(4, 3)}));
    REQUIRE(Q.size() == 2);
    for (const auto& q : Q) CHECK(fixed.contains(q));
    CHECK(FlMatrix::from_vectors(3, Q, 4).rank() == 2);
    CHECK(Q == theorem2_construct({D, H}));

    CHECK_THROWS_AS(theorem2_construct({D, {H[0], H[0]}}), PreconditionError);
    CHECK_THROWS_AS(theorem2_construct({necessity_witness()}), NotSemisimple);
    const GaloisModule flip(3, 2, {mat(3, {{1, 0}, {0, 2}})});
    CHECK_THROWS_AS(theorem2_construct({flip, {span(3, 2, {e(2, 0)})}}), PreconditionError);
}

TEST_CASE("product modules and the necessity witness") {
    const GaloisModule MM = product_module(affine_f3(), affine_f3());
    CHECK(MM.dim() == 4);
    CHECK(fixed_subspace(MM).dim() == 0);
    const GaloisModule I2(3, 2, {FlMatrix::identity(3, 2)});
    CHECK(fixed_subspace(product_module(I2, I2)) == Subspace::full(3, 4));
    CHECK_THROWS_AS(product_module(I2, affine_f3()), StructuralError);
    CHECK_THROWS_AS(product_module(I2, GaloisModule(5, 2, {FlMatrix::identity(5, 2)})), StructuralError);

    const auto w = necessity_witness();
    REQUIRE(w.hyperplanes.size() == 2);
    for (const auto& h : w.hyperplanes) CHECK(pointedness_check(w.module, h));
    CHECK(graph_order(w.hyperplanes) == 2);
    CHECK_FALSE(is_semisimple(w.module));
    CHECK(fixed_subspace(w.module).dim() == 0);
    CHECK(brute_fixed(w.module).dim() == 0);
}

TEST_CASE("invariant subspace enumeration") {
    CHECK(enumerate_invariant_subspaces(GaloisModule(2, 2, {FlMatrix::identity(2, 2)})).size() == 5);
    const auto u = enumerate_invariant_subspaces(unipotent_f3());
    REQUIRE(u.size() == 3);
    CHECK(u[1] == span(3, 2, {e(2, 0)}));
    CHECK(enumerate_invariant_subspaces(GaloisModule(3, 4, {FlMatrix::identity(3, 4)})).size() == 1 + 40 + 130 + 40 + 1);
    CHECK_THROWS_AS(enumerate_invariant_subspaces(GaloisModule(3, 8, {FlMatrix::identity(3, 8)})), CapabilityError);

    const auto s = enumerate_invariant_subspaces(necessity_witness().module);
    for (const auto& a : s)
        for (const auto& b : s) CHECK(std::find(s.begin(), s.end(), a.intersect(b)) != s.end());
}

TEST_CASE("dimension formula for independent hyperplanes") {
    std::mt19937_64 rng(42);
    size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const unsigned ell = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        const size_t dim = 2 * (1 + (trial / 3) % 3);
        const size_t n = 1 + uniform_below(rng, dim);
        const auto H = random_independent_hyperplanes(ell, dim, n, rng);
        for (const auto& [J, HJ] : subspace_lattice(H))
            if (HJ.dim() != dim - static_cast<size_t>(std::popcount(J))) ++failures;
        if (graph_order(H) != n) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("construction on random semisimple pointed configurations") {
    std::mt19937_64 rng(7);
    size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const unsigned ell = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        const size_t dim = 2 * (1 + (trial / 3) % 3);
        const size_t n = 1 + uniform_below(rng, dim);
        const auto cfg = random_semisimple_configuration(ell, dim, n, rng);
        for (const auto& h : cfg.hyperplanes) REQUIRE(pointedness_check(cfg.module, h));
        REQUIRE(graph_order(cfg.hyperplanes) == n);
        const auto Q = theorem2_construct(cfg);
        const Subspace fixed = brute_fixed(cfg.module);
        bool ok = Q.size() == n && FlMatrix::from_vectors(ell, Q, dim).rank() == n;
        for (const auto& q : Q) ok = ok && fixed.contains(q);
        if (!ok) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("single-generator configurations have enough fixed vectors") {
    std::mt19937_64 rng(3);
    size_t failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const unsigned ell = std::array<unsigned, 3>{2, 3, 5}[trial % 3];
        const size_t dim = 2 * (1 + (trial / 3) % 3);
        const size_t n = 1 + uniform_below(rng, dim);
        const auto cfg = random_cyclic_configuration(ell, dim, n, rng);
        for (const auto& h : cfg.hyperplanes) REQUIRE(pointedness_check(cfg.module, h));
        REQUIRE(graph_order(cfg.hyperplanes) == n);
        if (fixed_subspace(cfg.module).dim() < n) ++failures;
    }
    CHECK(failures == 0);
}
