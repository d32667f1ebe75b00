#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "isolab/linalg.hpp"

namespace isolab {

inline constexpr size_t kDefaultClosureCap = 100000;
// Exhaustive subspace searches are limited to ambient spaces of this size.
inline constexpr std::uint64_t kExhaustiveAmbientCap = 729;
// Brute-force vector enumeration limit used by the oracles.
inline constexpr std::uint64_t kVectorEnumerationCap = std::uint64_t{1} << 20;

// F_ell^dim with a finitely generated group acting through invertible matrices.
class GaloisModule {
public:
    GaloisModule(unsigned ell, size_t dim, std::vector<FlMatrix> generators);

    unsigned ell() const { return ell_; }
    size_t dim() const { return dim_; }
    const std::vector<FlMatrix>& generators() const { return gens_; }

private:
    unsigned ell_;
    size_t dim_;
    std::vector<FlMatrix> gens_;
};

struct PointedConfiguration {
    GaloisModule module;
    std::vector<Subspace> hyperplanes;
};

Subspace fixed_subspace(const GaloisModule& M);
bool is_invariant(const GaloisModule& M, const Subspace& V);

struct GroupClosure {
    std::vector<FlMatrix> elements;  // sorted; complete only when !overflow
    bool overflow = false;
};
GroupClosure group_closure(const GaloisModule& M, size_t cap = kDefaultClosureCap);

enum class SemisimpleMethod { CoprimeOrder, MinimalPolynomial, Exhaustive };
const char* to_string(SemisimpleMethod m);

struct SemisimpleVerdict {
    bool semisimple = false;
    SemisimpleMethod method = SemisimpleMethod::Exhaustive;
};

// Throws CapabilityError when none of the three strategies applies.
SemisimpleVerdict semisimplicity(const GaloisModule& M, size_t closure_cap = kDefaultClosureCap,
                                 std::uint64_t exhaustive_cap = kExhaustiveAmbientCap);
bool is_semisimple(const GaloisModule& M, size_t closure_cap = kDefaultClosureCap,
                   std::uint64_t exhaustive_cap = kExhaustiveAmbientCap);

// |G|^{-1} sum_g g pi0 g^{-1} for the echelon projector pi0 onto V; nullopt
// when the closure overflows or |G| is divisible by ell.
std::optional<FlMatrix> maschke_projector(const GaloisModule& M, const Subspace& V,
                                          size_t closure_cap = kDefaultClosureCap);

// Invariant W with V + W = ambient and V ∩ W = 0; throws NotSemisimple when
// none exists.
Subspace invariant_complement(const GaloisModule& M, const Subspace& V, size_t closure_cap = kDefaultClosureCap,
                              std::uint64_t exhaustive_cap = kExhaustiveAmbientCap);
Subspace relative_invariant_complement(const GaloisModule& M, const Subspace& inner, const Subspace& outer,
                                       size_t closure_cap = kDefaultClosureCap,
                                       std::uint64_t exhaustive_cap = kExhaustiveAmbientCap);

// H_J for every nonempty J, keyed by bitmask (bit i set when hyperplane i is in J).
std::map<std::uint32_t, Subspace> subspace_lattice(const std::vector<Subspace>& H);
// Size of the largest subfamily satisfying dim H_J = dim - #J for all of its
// subsets, i.e. the rank of the defining functionals.
size_t graph_order(const std::vector<Subspace>& H);
// The functional cutting out a hyperplane.
FlVector defining_functional(const Subspace& H);

bool pointedness_check(const GaloisModule& M, const Subspace& H);

struct ConstructionOptions {
    size_t closure_cap = kDefaultClosureCap;
    std::uint64_t exhaustive_cap = kExhaustiveAmbientCap;
};
// Fixed vectors Q_1..Q_n, one per hyperplane, built from complements of
// H_I inside H_{I \ i}.
std::vector<FlVector> theorem2_construct(const PointedConfiguration& cfg, const ConstructionOptions& opt = {});

GaloisModule product_module(const GaloisModule& a, const GaloisModule& b);

std::vector<Subspace> enumerate_invariant_subspaces(const GaloisModule& M,
                                                    std::uint64_t cap = kExhaustiveAmbientCap);

// All vectors fixed by every generator, by enumeration of the ambient space.
std::vector<FlVector> brute_force_fixed_vectors(const GaloisModule& M, std::uint64_t cap = kVectorEnumerationCap);

// Functionals f with f g = f for every generator (row vectors).
std::vector<FlVector> fixed_functionals(const GaloisModule& M);

// Random instances. Semisimple configurations use an abelian group of order
// coprime to ell; cyclic configurations have one arbitrary pointed generator.
FlMatrix random_invertible(unsigned ell, size_t n, std::mt19937_64& rng);
std::vector<Subspace> random_independent_hyperplanes(unsigned ell, size_t dim, size_t n, std::mt19937_64& rng);
PointedConfiguration random_semisimple_configuration(unsigned ell, size_t dim, size_t n, std::mt19937_64& rng);
PointedConfiguration random_cyclic_configuration(unsigned ell, size_t dim, size_t n, std::mt19937_64& rng);

// M + M over F_3 with M = <[[2,0],[0,1]], [[1,1],[0,1]]> and the two
// hyperplanes span{e1,e3,e4}, span{e1,e2,e3}.
PointedConfiguration necessity_witness();

}  // namespace isolab
