#pragma once

#include <map>
#include <string>
#include <vector>

#include "isolab/isogeny.hpp"
#include "isolab/serialize.hpp"

namespace isolab {

inline constexpr const char* kToolName = "isogeny_lab";
inline constexpr const char* kToolVersion = "1.0.0";

namespace claims {
inline constexpr const char* kTheorem1 = "thm1-full-torsion";
inline constexpr const char* kDistinctKernels = "lem32-distinct-kernels";
inline constexpr const char* kLatticeDims = "lem42-lattice-dims";
inline constexpr const char* kConstruction = "thm2-construction";
inline constexpr const char* kCounterexample = "counterexample-v2-w1";
inline constexpr const char* kNecessity = "necessity-abstract";
inline constexpr const char* kCyclicLaw = "cyclic-fixed-dim";
inline constexpr const char* kEngineIsogeny = "engine-isogeny";
inline constexpr const char* kEnginePairing = "engine-pairing";
}  // namespace claims

enum class ClaimStatus { NotApplicable, Verified, Violated };
const char* to_string(ClaimStatus s);

struct Violation {
    std::string claim;
    std::string message;
    Json witness;  // replayable with replay()
};

struct VerificationReport {
    std::string command;
    Json parameters = Json::object();
    std::map<std::string, u64> counts;
    std::map<std::string, ClaimStatus> claims;
    std::map<std::string, std::string> notes;
    std::vector<Violation> violations;
    Json result;  // query answers (module operations)
    double seconds = 0;

    // Registers a claim as not-applicable unless it already has a status.
    void declare(const std::string& claim);
    // A passing check upgrades not-applicable to verified; a failing one
    // without a witness is recorded through violate().
    void pass(const std::string& claim);
    void violate(const std::string& claim, const std::string& message, Json witness);
    void count(const std::string& key, u64 n = 1) { counts[key] += n; }
    bool clean() const { return violations.empty(); }
    // Sums counts, combines claim statuses (violated > verified > n/a) and
    // appends violations; parameters and notes of `o` are ignored.
    void merge(const VerificationReport& o);
};

Json to_json(const VerificationReport& r, bool timing = true);
std::string to_text(const VerificationReport& r);

struct SweepOptions {
    GraphBuildOptions graph;
    // Product configurations drawn per field for the fixed-vector checks.
    size_t product_samples = 16;
    unsigned product_factors = 2;
    // Targets whose ell-torsion needs a larger extension are not used as factors.
    unsigned max_factor_degree = 8;
};

// Pointed-graph checks over the prime field F_p.
VerificationReport verify_theorem1(u64 p, unsigned ell, const SweepOptions& opt = {});
VerificationReport lemma_sweep(u64 p, unsigned ell, const SweepOptions& opt = {});
VerificationReport verify_theorem2_products(u64 p, unsigned ell, const SweepOptions& opt = {});
// All three from a single graph build.
VerificationReport finite_field_suite(u64 p, unsigned ell, const SweepOptions& opt = {});
// finite_field_suite over every prime q_min <= p < q_max with p != ell.
VerificationReport sweep(const std::vector<unsigned>& ells, u64 q_max, const SweepOptions& opt = {}, u64 q_min = 5);

// The same checks on an already built graph set.
VerificationReport theorem1_checks(const GraphBuildResult& g, u64 p, unsigned ell, const SweepOptions& opt);
VerificationReport lemma_checks(const GraphBuildResult& g, u64 p, unsigned ell);
VerificationReport theorem2_checks(const GraphBuildResult& g, u64 p, unsigned ell, const SweepOptions& opt);

VerificationReport reproduce_paper_counterexample();
VerificationReport abstract_necessity_witness();

// Random-instance suites at the module level.
VerificationReport lattice_suite(size_t count, u64 seed);
VerificationReport construction_suite(size_t count, u64 seed);
VerificationReport cyclic_suite(size_t count, u64 seed);

// Re-executes the check recorded in a violation witness.
VerificationReport replay(const Json& witness);

}  // namespace isolab
