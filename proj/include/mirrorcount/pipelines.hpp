#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mirrorcount/cache.hpp"
#include "mirrorcount/congruence.hpp"
#include "mirrorcount/counting.hpp"
#include "mirrorcount/group.hpp"
#include "mirrorcount/hodge.hpp"
#include "mirrorcount/zeta.hpp"

namespace mirrorcount {

enum class GroupSpec { dwork_diagonal, trivial, permutation };

std::string group_spec_name(GroupSpec g);

/// One experiment: a family member over F_q, a group, a k range and the
/// engineering knobs. Thread count and cache location are environmental
/// and never appear in reports.
struct ExperimentConfig {
    uint32_t p = 7;
    int a = 1;
    int n = 2;
    FqValue lambda = FqValue::residue(0, 1);
    int k_max = 4;
    GroupSpec group = GroupSpec::dwork_diagonal;
    std::vector<std::vector<int>> perms;
    CountStrategy strategy = CountStrategy::naive;
    int threads = 1;
    uint64_t cell_budget = kDefaultCellBudget;
    int degree_budget = kDefaultDegreeBudget;
    std::string cache_dir;
    int cache_verify_percent = 0;
    uint64_t cache_seed = 12345;
    bool allow_singular = false;
    bool with_zeta = false;

    QDescriptor q() const { return {p, a}; }
};

/// Parses "3" (residue) or "0,1" (coordinates in the canonical F_q
/// power basis) into an F_q value of coordinate length a.
FqValue parse_fq_value(const std::string& text, int a);

struct CongruenceExperimentResult {
    ExperimentConfig config;
    bool smooth = true;
    Integer group_order = 1;
    CountSequence counts_x;
    CountSequence counts_quotient;
    CongruenceReport congruence;
    std::optional<ZetaRatio> difference_fit;
    std::optional<DivisibilityReport> divisibility;
    uint64_t cells_used = 0;
    size_t cache_verified = 0;
};

/// The quotient-congruence experiment: N_k(X) by direct enumeration,
/// N_k(X/G) through the averaged twisted fixed-point counts, and the
/// mod-q^k verdicts (with the optional zeta section on the difference
/// sequence).
CongruenceExperimentResult run_congruence_experiment(const ExperimentConfig& cfg);

enum class UnitFamily { projective_space, quadric_surface, plane_quotient };

std::string unit_family_name(UnitFamily f);

struct UnitExperimentResult {
    ExperimentConfig config;
    UnitFamily family = UnitFamily::projective_space;
    std::string group_name = "trivial";
    Integer group_order = 1;
    CountSequence counts_x;
    CountSequence counts_quotient;
    CongruenceReport congruence;  // unit mode
    uint64_t cells_used = 0;
};

/// N_k(P^n) == 1 (mod q^k), closed-form counts.
UnitExperimentResult run_unit_projective_space(const ExperimentConfig& cfg);
/// The diagonal quadric surface in P^3 over odd q.
UnitExperimentResult run_unit_quadric(const ExperimentConfig& cfg);
/// Quotients of the projective plane by coordinate permutations;
/// which is one of "c2", "c3", "s3".
UnitExperimentResult run_unit_plane_quotient(const ExperimentConfig& cfg,
                                             const std::string& which);

struct CountExperimentResult {
    ExperimentConfig config;
    bool baseline = false;
    std::vector<CountRecord> records;
    uint64_t cells_used = 0;
};

/// N_k of the configured member (or the P^n baseline) for k = 1..k_max.
CountExperimentResult run_count(const ExperimentConfig& cfg, bool baseline);

struct TwistedCountResult {
    ExperimentConfig config;
    GroupElement element;
    std::vector<CountRecord> records;
    uint64_t cells_used = 0;
};

TwistedCountResult run_twisted_count(const ExperimentConfig& cfg, const GroupElement& g,
                                     LambdaPath path);

struct QuotientCountResult {
    ExperimentConfig config;
    Integer group_order = 1;
    std::vector<CountRecord> burnside;
    std::vector<CountRecord> oracle;
    bool oracle_agrees = true;
    uint64_t cells_used = 0;
};

QuotientCountResult run_quotient_count(const ExperimentConfig& cfg, bool with_oracle);

struct ZetaExperimentResult {
    ExperimentConfig config;
    bool difference = false;
    CountSequence seq;
    ZetaRatio fit;
    std::optional<CurveSanityReport> sanity;
    std::optional<DivisibilityReport> divisibility;
    std::vector<std::pair<Rational, int>> numerator_slopes;
    uint64_t cells_used = 0;
};

/// Fits the zeta-type ratio of the member's counts, or of the difference
/// sequence N_k(X) - N_k(X/G) when difference is set.
ZetaExperimentResult run_zeta_fit(const ExperimentConfig& cfg, bool difference);

struct SmoothnessRow {
    FqValue lambda;
    bool closed_form_smooth = true;
    bool oracle_found_singularity = false;
    bool agree = true;
};

struct SmoothnessResult {
    ExperimentConfig config;
    int search_degree = 3;
    std::vector<SmoothnessRow> rows;
    std::vector<FqValue> singular_set;
    bool all_agree = true;
    uint64_t cells_used = 0;
};

/// Sweeps every lambda in F_q, comparing the closed-form smoothness test
/// with the exhaustive Jacobian search up to degree n+1.
SmoothnessResult run_smoothness(const ExperimentConfig& cfg);

struct NewtonHodgeRow {
    uint32_t p = 0;
    FqValue lambda;
    IntPoly numerator;
    std::vector<std::pair<Rational, int>> slopes;
    bool fit_ok = false;
    bool above_hodge = false;
    bool supersingular = false;
};

struct NewtonHodgeResult {
    std::vector<uint32_t> primes;
    int k_max = 4;
    std::vector<NewtonHodgeRow> rows;
    bool all_pass = true;
    bool found_supersingular = false;
    uint64_t cells_used = 0;
};

/// For each prime and each smooth plane-cubic member, fits the numerator
/// 1 - aT + qT^2 and compares its Newton polygon against the Hodge
/// polygon {0, 1}. When no supersingular member shows up, the sweep is
/// extended with further primes until one does.
NewtonHodgeResult run_newton_hodge_sweep(std::vector<uint32_t> primes, int k_max,
                                         uint64_t cell_budget, int threads);

}  // namespace mirrorcount
