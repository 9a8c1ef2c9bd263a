#ifndef POLYID_CERTIFY_HPP
#define POLYID_CERTIFY_HPP

#include "polyid/groebner.hpp"
#include "polyid/models.hpp"
#include "polyid/variety.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyid {

struct CertifyLimits {
    double parametric_gb_seconds = 1800.0;
    std::uint64_t parametric_gb_pairs = 20'000'000;
    double instantiated_gb_seconds = 300.0;
    std::uint64_t instantiated_gb_pairs = 5'000'000;
    int extra_draws = 20;
    std::uint64_t seed = 20260809;
    bool attempt_parametric = true;
};

struct Assumption1Report {
    bool checked = false;
    bool ok = false;
    int templates_verified = 0;  // template verifications across all draws
    bool all_distinct = false;
    int degenerate_draws_skipped = 0;
    std::string note;
};

struct Assumption2Report {
    std::string mode = "skipped";  // "parametric" | "witness_level" | "skipped"
    std::optional<std::uint64_t> bad_set_size;
    std::optional<bool> witness_avoids;
    std::optional<std::string> vanishing;  // rendered polynomial on a hit
    std::optional<bool> zero_dimensional;
    std::optional<std::uint64_t> degree;
};

struct Verdict {
    enum class Kind { GenericallyIdentifiable, Inconclusive, Refuted };
    Kind kind = Kind::Inconclusive;
    unsigned count = 0;  // meaningful for GenericallyIdentifiable
    std::string reason;

    std::string kind_str() const;
};

struct ResourceUsage {
    std::uint64_t pair_count = 0;
    double wall_seconds = 0.0;
};

struct Certificate {
    int schema_version = 1;
    std::string system_id;
    std::map<std::string, Rat> witness;
    unsigned expected_count = 0;
    Assumption1Report assumption1;
    Assumption2Report assumption2;
    Verdict verdict;
    ResourceUsage resource_usage;
    std::vector<std::string> notes;

    /// Timing fields are zeroed when include_timing is false so that
    /// fixed-seed runs serialize byte-identically.
    std::string to_json(bool include_timing = true) const;
};

/// The mechanized check: solution templates at the witness and extra seeded
/// draws (Assumption 1), parametric basis + bad-set avoidance, then
/// instantiated dimension/degree (Assumption 2). Stages after a failure or
/// timeout are skipped and reported.
Certificate certify(const ParametricSystem& sys, const std::map<std::string, Rat>& witness,
                    const CertifyLimits& limits = {});

struct SuiteRow {
    std::string system_id;
    int expected_dim = 0;
    std::uint64_t expected_degree = 0;
    std::optional<int> computed_dim;  // 0 or 1 (1 = positive-dimensional)
    std::optional<std::uint64_t> computed_degree;
    bool match = false;
    double runtime_seconds = 0.0;
    std::string parametric_status = "not_attempted";  // completed | timeout
    std::optional<std::uint64_t> bad_set_size;
    std::optional<bool> witness_avoids;
    std::string note;
};

struct SuiteReport {
    int schema_version = 1;
    std::vector<SuiteRow> rows;
    bool all_match() const;
    std::string to_json(bool include_timing = true) const;
    std::string to_table() const;
};

/// All eight instantiated witness systems, analyzed and compared against
/// the published dimension/degree outputs. Parametric stages are attempted
/// under the limits when requested and reported as completed/timeout.
/// Certifications of distinct systems run concurrently; rows are ordered by
/// system id.
SuiteReport run_paper_suite(const CertifyLimits& limits = {}, bool concurrent = true);

struct InductionAuditReport {
    std::string kind;
    std::uint64_t seed = 0;
    int n_lo = 0, n_hi = 0;
    int trials_per_n = 0;
    int total_trials = 0;
    int failures = 0;
    int degenerate_excluded = 0;
    std::vector<std::string> failure_details;  // concrete failing instances
    std::string to_json() const;
};

/// Seeded random-draw audit of the induction extension step: asserts a
/// non-zero determinant and that the unique extension equals ground truth;
/// failures are preserved with their parameter values.
InductionAuditReport induction_audit(const ModelKind& kind, int n_max, int trials,
                                     std::uint64_t seed);

}  // namespace polyid

#endif
