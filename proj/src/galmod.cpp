#include "isolab/galmod.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

#include "isolab/field.hpp"
#include "isolab/roots.hpp"

namespace isolab {

namespace {

using Gens = std::vector<FlMatrix>;

std::uint64_t ambient_size(unsigned ell, size_t n) {
    std::uint64_t c = 1;
    for (size_t i = 0; i < n; ++i) {
        if (c > (std::uint64_t{1} << 40)) return UINT64_MAX;
        c *= ell;
    }
    return c;
}

bool invariant_under(const Gens& gens, const Subspace& V) {
    for (const auto& g : gens)
        for (const auto& v : V.basis())
            if (!V.contains(g * v)) return false;
    return true;
}

GroupClosure closure_of(unsigned ell, size_t n, const Gens& gens, size_t cap) {
    std::unordered_set<FlMatrix, FlMatrixHash> seen;
    std::vector<FlMatrix> frontier{FlMatrix::identity(ell, n)};
    seen.insert(frontier[0]);
    GroupClosure out;
    while (!frontier.empty()) {
        std::vector<FlMatrix> next;
        for (const auto& a : frontier)
            for (const auto& g : gens) {
                FlMatrix b = g * a;
                if (seen.insert(b).second) {
                    if (seen.size() > cap) {
                        out.overflow = true;
                        out.elements.assign(seen.begin(), seen.end());
                        std::sort(out.elements.begin(), out.elements.end());
                        return out;
                    }
                    next.push_back(std::move(b));
                }
            }
        frontier = std::move(next);
    }
    out.elements.assign(seen.begin(), seen.end());
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

// Calls fn on every subspace of dimension d of F_ell^n (reduced echelon enumeration).
void for_each_subspace(unsigned ell, size_t n, size_t d, const std::function<bool(const Subspace&)>& fn) {
    std::vector<size_t> piv(d);
    std::iota(piv.begin(), piv.end(), 0);
    if (d == 0) {
        fn(Subspace::zero(ell, n));
        return;
    }
    while (true) {
        std::vector<bool> is_pivot(n, false);
        for (size_t c : piv) is_pivot[c] = true;
        std::vector<std::pair<size_t, size_t>> free;
        for (size_t i = 0; i < d; ++i)
            for (size_t j = piv[i] + 1; j < n; ++j)
                if (!is_pivot[j]) free.emplace_back(i, j);
        const std::uint64_t combos = ambient_size(ell, free.size());
        for (std::uint64_t a = 0; a < combos; ++a) {
            std::vector<FlVector> rows(d, FlVector(n, 0));
            for (size_t i = 0; i < d; ++i) rows[i][piv[i]] = 1;
            std::uint64_t x = a;
            for (const auto& [i, j] : free) {
                rows[i][j] = static_cast<std::uint32_t>(x % ell);
                x /= ell;
            }
            if (!fn(Subspace::span(ell, n, rows))) return;
        }
        // next combination of pivot columns
        size_t k = d;
        while (k > 0 && piv[k - 1] == n - d + (k - 1)) --k;
        if (k == 0) return;
        ++piv[k - 1];
        for (size_t i = k; i < d; ++i) piv[i] = piv[i - 1] + 1;
    }
}

std::vector<Subspace> invariant_subspaces(unsigned ell, size_t n, const Gens& gens, std::uint64_t cap,
                                          std::optional<size_t> only_dim = std::nullopt) {
    if (ambient_size(ell, n) > cap)
        throw CapabilityError("exhaustive subspace enumeration is capped at ambient size " + std::to_string(cap) +
                              " (ell^dim = " + std::to_string(ell) + "^" + std::to_string(n) + ")");
    std::vector<Subspace> out;
    for (size_t d = 0; d <= n; ++d) {
        if (only_dim && *only_dim != d) continue;
        for_each_subspace(ell, n, d, [&](const Subspace& V) {
            if (invariant_under(gens, V)) out.push_back(V);
            return true;
        });
    }
    return out;
}

std::optional<FlMatrix> averaged_projector(unsigned ell, size_t n, const Gens& gens, const Subspace& V, size_t cap) {
    GroupClosure G = closure_of(ell, n, gens, cap);
    if (G.overflow || G.elements.size() % ell == 0) return std::nullopt;
    std::vector<FlVector> cols = V.basis();
    const Subspace comp = V.echelon_complement();
    cols.insert(cols.end(), comp.basis().begin(), comp.basis().end());
    const FlMatrix B = FlMatrix::from_vectors(ell, cols, n).transpose();
    std::vector<long> diag(n, 0);
    for (size_t i = 0; i < V.dim(); ++i) diag[i] = 1;
    const FlMatrix pi0 = B * FlMatrix::diagonal(ell, diag) * *B.inverse();
    FlMatrix sum(ell, n, n);
    for (const auto& g : G.elements) sum = sum + g * pi0 * *g.inverse();
    return sum.scaled(inv_mod_ell(static_cast<long>(G.elements.size() % ell), ell));
}

bool is_complement(const Subspace& V, const Subspace& W, const Subspace& outer) {
    return V.dim() + W.dim() == outer.dim() && V.intersect(W).dim() == 0 && outer.contains(W);
}

Subspace complement_in(unsigned ell, size_t n, const Gens& gens, const Subspace& V, size_t closure_cap,
                       std::uint64_t exhaustive_cap) {
    const Subspace full = Subspace::full(ell, n);
    if (V.dim() == n) return Subspace::zero(ell, n);
    if (V.dim() == 0) return full;
    if (auto pi = averaged_projector(ell, n, gens, V, closure_cap)) {
        Subspace W = Subspace::span(ell, n, pi->kernel());
        if (!invariant_under(gens, W) || !is_complement(V, W, full))
            throw InternalError("averaged projector did not produce an invariant complement");
        return W;
    }
    if (ambient_size(ell, n) > exhaustive_cap)
        throw CapabilityError("invariant complement: group order divisible by ell or closure above cap " +
                              std::to_string(closure_cap) + ", and ambient size exceeds the exhaustive cap " +
                              std::to_string(exhaustive_cap));
    for (const auto& W : invariant_subspaces(ell, n, gens, exhaustive_cap, n - V.dim()))
        if (V.intersect(W).dim() == 0) return W;
    throw NotSemisimple("invariant subspace " + V.to_string() + " has no invariant complement");
}

Gens restrict_to(const Gens& gens, const Subspace& outer) {
    Gens out;
    const size_t m = outer.dim();
    for (const auto& g : gens) {
        FlMatrix r(outer.ell(), m, m);
        for (size_t j = 0; j < m; ++j) {
            const FlVector c = outer.coordinates(g * outer.basis()[j]);
            for (size_t i = 0; i < m; ++i) r.set(i, j, c[i]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

FlVector combine(const Subspace& outer, const FlVector& coords) {
    FlVector v(outer.ambient(), 0);
    const unsigned ell = outer.ell();
    for (size_t j = 0; j < coords.size(); ++j)
        for (size_t k = 0; k < v.size(); ++k)
            v[k] = static_cast<std::uint32_t>((v[k] + std::uint64_t{coords[j]} * outer.basis()[j][k]) % ell);
    return v;
}

void check_hyperplanes(const std::vector<Subspace>& H) {
    if (H.empty()) return;
    const unsigned ell = H[0].ell();
    const size_t n = H[0].ambient();
    for (const auto& h : H) {
        if (h.ell() != ell || h.ambient() != n) throw StructuralError("hyperplanes live in different ambient spaces");
        if (h.dim() + 1 != n) throw DomainError("expected a hyperplane, got a subspace of dimension " +
                                                std::to_string(h.dim()) + " in dimension " + std::to_string(n));
    }
}

bool squarefree_minimal_polynomial(const FlMatrix& g) {
    const std::vector<long> m = g.minimal_polynomial();
    const FiniteField& F = FiniteField::prime(g.ell());
    std::vector<FieldElement> c;
    for (long x : m) c.push_back(F.from_int(x));
    FpPoly f(c);
    return poly_gcd(f, f.derivative()).degree() == 0;
}

}  // namespace

GaloisModule::GaloisModule(unsigned ell, size_t dim, std::vector<FlMatrix> generators)
    : ell_(ell), dim_(dim), gens_(std::move(generators)) {
    if (ell < 2 || !is_prime(ell)) throw DomainError("ell must be prime, got " + std::to_string(ell));
    if (dim < 2 || dim % 2 != 0) throw DomainError("module dimension must be even and >= 2, got " + std::to_string(dim));
    for (const auto& g : gens_) {
        if (g.ell() != ell || g.rows() != dim || g.cols() != dim)
            throw StructuralError("generator shape or modulus does not match the module");
        if (!g.invertible()) throw DomainError("generator is not invertible mod " + std::to_string(ell));
    }
}

Subspace fixed_subspace(const GaloisModule& M) {
    const FlMatrix I = FlMatrix::identity(M.ell(), M.dim());
    std::vector<FlVector> rows;
    for (const auto& g : M.generators()) {
        const FlMatrix d = g - I;
        for (size_t r = 0; r < d.rows(); ++r) rows.push_back(d.row(r));
    }
    return Subspace::annihilated_by(M.ell(), M.dim(), rows);
}

bool is_invariant(const GaloisModule& M, const Subspace& V) {
    if (V.ambient() != M.dim() || V.ell() != M.ell()) throw StructuralError("subspace does not live in the module");
    return invariant_under(M.generators(), V);
}

GroupClosure group_closure(const GaloisModule& M, size_t cap) {
    if (cap < 1) throw DomainError("closure cap must be >= 1");
    return closure_of(M.ell(), M.dim(), M.generators(), cap);
}

const char* to_string(SemisimpleMethod m) {
    switch (m) {
        case SemisimpleMethod::CoprimeOrder: return "coprime-order";
        case SemisimpleMethod::MinimalPolynomial: return "minimal-polynomial";
        case SemisimpleMethod::Exhaustive: return "exhaustive";
    }
    return "?";
}

SemisimpleVerdict semisimplicity(const GaloisModule& M, size_t closure_cap, std::uint64_t exhaustive_cap) {
    const unsigned ell = M.ell();
    const size_t n = M.dim();
    GroupClosure G = closure_of(ell, n, M.generators(), closure_cap);
    if (!G.overflow && G.elements.size() % ell != 0) return {true, SemisimpleMethod::CoprimeOrder};
    std::vector<FlMatrix> distinct;
    for (const auto& g : M.generators())
        if (!g.is_identity() && std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
    if (distinct.size() <= 1) {
        const bool ss = distinct.empty() || squarefree_minimal_polynomial(distinct[0]);
        return {ss, SemisimpleMethod::MinimalPolynomial};
    }
    if (ambient_size(ell, n) > exhaustive_cap)
        throw CapabilityError("semisimplicity undecided: closure " +
                              std::string(G.overflow ? "exceeds the cap " + std::to_string(closure_cap)
                                                     : "order is divisible by ell") +
                              ", several generators, and ambient size exceeds the exhaustive cap " +
                              std::to_string(exhaustive_cap));
    const auto subs = invariant_subspaces(ell, n, M.generators(), exhaustive_cap);
    for (const auto& V : subs) {
        if (V.dim() == 0 || V.dim() == n) continue;
        bool found = false;
        for (const auto& W : subs)
            if (W.dim() + V.dim() == n && V.intersect(W).dim() == 0) {
                found = true;
                break;
            }
        if (!found) return {false, SemisimpleMethod::Exhaustive};
    }
    return {true, SemisimpleMethod::Exhaustive};
}

bool is_semisimple(const GaloisModule& M, size_t closure_cap, std::uint64_t exhaustive_cap) {
    return semisimplicity(M, closure_cap, exhaustive_cap).semisimple;
}

std::optional<FlMatrix> maschke_projector(const GaloisModule& M, const Subspace& V, size_t closure_cap) {
    if (!is_invariant(M, V)) throw DomainError("subspace is not invariant");
    return averaged_projector(M.ell(), M.dim(), M.generators(), V, closure_cap);
}

Subspace invariant_complement(const GaloisModule& M, const Subspace& V, size_t closure_cap,
                              std::uint64_t exhaustive_cap) {
    if (!is_invariant(M, V)) throw DomainError("subspace is not invariant");
    return complement_in(M.ell(), M.dim(), M.generators(), V, closure_cap, exhaustive_cap);
}

Subspace relative_invariant_complement(const GaloisModule& M, const Subspace& inner, const Subspace& outer,
                                       size_t closure_cap, std::uint64_t exhaustive_cap) {
    if (!is_invariant(M, inner) || !is_invariant(M, outer)) throw DomainError("subspaces must be invariant");
    if (!outer.contains(inner)) throw DomainError("inner subspace is not contained in the outer one");
    const unsigned ell = M.ell();
    if (inner == outer) return Subspace::zero(ell, M.dim());
    const Gens rgens = restrict_to(M.generators(), outer);
    std::vector<FlVector> inner_coords;
    for (const auto& v : inner.basis()) inner_coords.push_back(outer.coordinates(v));
    const Subspace rinner = Subspace::span(ell, outer.dim(), inner_coords);
    const Subspace rW = complement_in(ell, outer.dim(), rgens, rinner, closure_cap, exhaustive_cap);
    std::vector<FlVector> w;
    for (const auto& c : rW.basis()) w.push_back(combine(outer, c));
    Subspace W = Subspace::span(ell, M.dim(), w);
    if (!is_complement(inner, W, outer) || !is_invariant(M, W))
        throw InternalError("relative complement failed its postcondition");
    return W;
}

std::map<std::uint32_t, Subspace> subspace_lattice(const std::vector<Subspace>& H) {
    check_hyperplanes(H);
    if (H.size() > 20) throw CapabilityError("subspace lattice is limited to 20 hyperplanes");
    std::map<std::uint32_t, Subspace> out;
    const std::uint32_t full = (std::uint32_t{1} << H.size()) - 1;
    for (std::uint32_t J = 1; J <= full && J != 0; ++J) {
        const std::uint32_t low = J & (~J + 1);
        const size_t i = static_cast<size_t>(__builtin_ctz(J));
        const std::uint32_t rest = J ^ low;
        out.emplace(J, rest == 0 ? H[i] : out.at(rest).intersect(H[i]));
    }
    return out;
}

FlVector defining_functional(const Subspace& H) {
    auto f = H.annihilator();
    if (f.size() != 1) throw DomainError("not a hyperplane");
    return f[0];
}

size_t graph_order(const std::vector<Subspace>& H) {
    check_hyperplanes(H);
    if (H.empty()) return 0;
    std::vector<FlVector> f;
    for (const auto& h : H) f.push_back(defining_functional(h));
    return FlMatrix::from_vectors(H[0].ell(), f, H[0].ambient()).rank();
}

bool pointedness_check(const GaloisModule& M, const Subspace& H) {
    if (H.ambient() != M.dim() || H.ell() != M.ell()) throw StructuralError("subspace does not live in the module");
    if (H.dim() + 1 != M.dim()) throw DomainError("pointedness is defined for hyperplanes");
    if (!is_invariant(M, H)) throw DomainError("hyperplane " + H.to_string() + " is not invariant");
    const FlMatrix I = FlMatrix::identity(M.ell(), M.dim());
    for (const auto& g : M.generators()) {
        const FlMatrix d = g - I;
        for (size_t c = 0; c < d.cols(); ++c)
            if (!H.contains(d.column(c))) return false;
    }
    return true;
}

std::vector<FlVector> theorem2_construct(const PointedConfiguration& cfg, const ConstructionOptions& opt) {
    const GaloisModule& M = cfg.module;
    const auto& H = cfg.hyperplanes;
    const size_t n = H.size();
    if (n == 0) return {};
    check_hyperplanes(H);
    for (size_t i = 0; i < n; ++i)
        if (!pointedness_check(M, H[i]))
            throw PreconditionError("hyperplane " + std::to_string(i + 1) + " is not pointed");
    if (graph_order(H) != n) throw PreconditionError("configuration order is below the number of hyperplanes");
    if (!semisimplicity(M, opt.closure_cap, opt.exhaustive_cap).semisimple)
        throw NotSemisimple("module is not semisimple");

    const auto lattice = subspace_lattice(H);
    const std::uint32_t I = (std::uint32_t{1} << n) - 1;
    const Subspace& HI = lattice.at(I);
    const Subspace full = Subspace::full(M.ell(), M.dim());
    std::vector<FlVector> Q;
    for (size_t i = 0; i < n; ++i) {
        const std::uint32_t rest = I & ~(std::uint32_t{1} << i);
        const Subspace& outer = rest == 0 ? full : lattice.at(rest);
        const Subspace W = relative_invariant_complement(M, HI, outer, opt.closure_cap, opt.exhaustive_cap);
        if (W.dim() != 1)
            throw TheoremViolation("complement W_" + std::to_string(i + 1) + " has dimension " + std::to_string(W.dim()));
        Q.push_back(W.basis()[0]);
    }
    for (size_t i = 0; i < n; ++i)
        for (const auto& g : M.generators())
            if (g * Q[i] != Q[i]) throw TheoremViolation("constructed vector Q_" + std::to_string(i + 1) + " is not fixed");
    if (FlMatrix::from_vectors(M.ell(), Q, M.dim()).rank() != n)
        throw TheoremViolation("constructed vectors are linearly dependent");
    const Subspace fixed = fixed_subspace(M);
    for (const auto& q : Q)
        if (!fixed.contains(q)) throw TheoremViolation("constructed vector outside the fixed subspace");
    return Q;
}

GaloisModule product_module(const GaloisModule& a, const GaloisModule& b) {
    if (a.ell() != b.ell()) throw StructuralError("product of modules over different primes");
    if (a.generators().size() != b.generators().size())
        throw StructuralError("generator lists are not aligned (" + std::to_string(a.generators().size()) + " vs " +
                              std::to_string(b.generators().size()) + ")");
    std::vector<FlMatrix> g;
    for (size_t i = 0; i < a.generators().size(); ++i)
        g.push_back(FlMatrix::block_diagonal(a.generators()[i], b.generators()[i]));
    return GaloisModule(a.ell(), a.dim() + b.dim(), std::move(g));
}

std::vector<Subspace> enumerate_invariant_subspaces(const GaloisModule& M, std::uint64_t cap) {
    return invariant_subspaces(M.ell(), M.dim(), M.generators(), cap);
}

std::vector<FlVector> brute_force_fixed_vectors(const GaloisModule& M, std::uint64_t cap) {
    const std::uint64_t total = ambient_size(M.ell(), M.dim());
    if (total > cap) throw CapabilityError("vector enumeration is capped at " + std::to_string(cap));
    std::vector<FlVector> out;
    for (std::uint64_t i = 0; i < total; ++i) {
        FlVector v = vector_at(M.ell(), M.dim(), i);
        bool fixed = true;
        for (const auto& g : M.generators())
            if (g * v != v) {
                fixed = false;
                break;
            }
        if (fixed) out.push_back(std::move(v));
    }
    return out;
}

std::vector<FlVector> fixed_functionals(const GaloisModule& M) {
    const FlMatrix I = FlMatrix::identity(M.ell(), M.dim());
    std::vector<FlVector> rows;
    for (const auto& g : M.generators()) {
        const FlMatrix d = (g - I).transpose();
        for (size_t r = 0; r < d.rows(); ++r) rows.push_back(d.row(r));
    }
    return Subspace::annihilated_by(M.ell(), M.dim(), rows).basis();
}

FlMatrix random_invertible(unsigned ell, size_t n, std::mt19937_64& rng) {
    while (true) {
        FlMatrix m(ell, n, n);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) m.set(r, c, static_cast<long>(uniform_below(rng, ell)));
        if (m.invertible()) return m;
    }
}

namespace {

FlMatrix random_full_rank(unsigned ell, size_t rows, size_t cols, std::mt19937_64& rng) {
    while (true) {
        FlMatrix m(ell, rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<long>(uniform_below(rng, ell)));
        if (m.rank() == std::min(rows, cols)) return m;
    }
}

// n random independent combinations of the given (independent) functionals.
std::vector<FlVector> pick_functionals(unsigned ell, const std::vector<FlVector>& space, size_t n, size_t dim,
                                       std::mt19937_64& rng) {
    if (space.size() < n) throw InternalError("not enough fixed functionals for the requested order");
    const FlMatrix R = random_full_rank(ell, n, space.size(), rng);
    const FlMatrix S = FlMatrix::from_vectors(ell, space, dim);
    const FlMatrix F = R * S;
    std::vector<FlVector> out;
    for (size_t r = 0; r < n; ++r) out.push_back(F.row(r));
    return out;
}

PointedConfiguration conjugated(unsigned ell, size_t dim, const std::vector<FlMatrix>& gens, size_t n,
                                std::mt19937_64& rng) {
    const FlMatrix C = random_invertible(ell, dim, rng);
    const FlMatrix Ci = *C.inverse();
    std::vector<FlMatrix> g2;
    for (const auto& g : gens) g2.push_back(C * g * Ci);
    GaloisModule M(ell, dim, std::move(g2));
    const auto f = pick_functionals(ell, fixed_functionals(M), n, dim, rng);
    std::vector<Subspace> H;
    for (const auto& fi : f) H.push_back(Subspace::annihilated_by(ell, dim, {fi}));
    return {std::move(M), std::move(H)};
}

}  // namespace

std::vector<Subspace> random_independent_hyperplanes(unsigned ell, size_t dim, size_t n, std::mt19937_64& rng) {
    if (n > dim) throw DomainError("at most dim independent hyperplanes exist");
    const FlMatrix F = random_full_rank(ell, n, dim, rng);
    std::vector<Subspace> H;
    for (size_t r = 0; r < n; ++r) H.push_back(Subspace::annihilated_by(ell, dim, {F.row(r)}));
    return H;
}

PointedConfiguration random_semisimple_configuration(unsigned ell, size_t dim, size_t n, std::mt19937_64& rng) {
    if (n > dim) throw DomainError("order cannot exceed the dimension");
    const size_t k = dim - n;
    // permutation of the last k coordinates with cycle lengths prime to ell
    std::vector<std::vector<size_t>> cycles;
    size_t next = 0;
    while (next < k) {
        std::vector<size_t> lens;
        for (size_t L = 1; L <= k - next; ++L)
            if (std::gcd(L, static_cast<size_t>(ell)) == 1) lens.push_back(L);
        const size_t L = lens[uniform_below(rng, lens.size())];
        std::vector<size_t> c;
        for (size_t i = 0; i < L; ++i) c.push_back(n + next + i);
        cycles.push_back(std::move(c));
        next += L;
    }
    FlMatrix P = FlMatrix::identity(ell, dim);
    for (const auto& c : cycles) {
        if (c.size() == 1) continue;
        for (size_t i = 0; i < c.size(); ++i) {
            P.set(c[i], c[i], 0);
            P.set(c[(i + 1) % c.size()], c[i], 1);
        }
    }
    const size_t count = 1 + uniform_below(rng, 3);
    std::vector<FlMatrix> gens;
    for (size_t t = 0; t < count; ++t) {
        std::vector<long> d(dim, 1);
        for (const auto& c : cycles) {
            const long s = 1 + static_cast<long>(uniform_below(rng, ell - 1));
            for (size_t i : c) d[i] = s;
        }
        gens.push_back(FlMatrix::diagonal(ell, d) * P.pow(uniform_below(rng, 4)));
    }
    return conjugated(ell, dim, gens, n, rng);
}

PointedConfiguration random_cyclic_configuration(unsigned ell, size_t dim, size_t n, std::mt19937_64& rng) {
    if (n > dim) throw DomainError("order cannot exceed the dimension");
    const size_t k = dim - n;
    FlMatrix g = FlMatrix::identity(ell, dim);
    if (k > 0) {
        const FlMatrix B = random_invertible(ell, k, rng);
        for (size_t r = 0; r < k; ++r) {
            for (size_t c = 0; c < n; ++c) g.set(n + r, c, static_cast<long>(uniform_below(rng, ell)));
            for (size_t c = 0; c < k; ++c) g.set(n + r, n + c, B(r, c));
        }
    }
    return conjugated(ell, dim, {g}, n, rng);
}

PointedConfiguration necessity_witness() {
    const unsigned ell = 3;
    const FlMatrix A = FlMatrix::from_rows(ell, {{2, 0}, {0, 1}});
    const FlMatrix U = FlMatrix::from_rows(ell, {{1, 1}, {0, 1}});
    GaloisModule M(ell, 2, {A, U});
    GaloisModule MM = product_module(M, M);
    auto e = [](size_t i) {
        FlVector v(4, 0);
        v[i] = 1;
        return v;
    };
    std::vector<Subspace> H{Subspace::span(ell, 4, {e(0), e(2), e(3)}), Subspace::span(ell, 4, {e(0), e(1), e(2)})};
    return {std::move(MM), std::move(H)};
}

}  // namespace isolab
