#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trigon/catalog.hpp"
#include "trigon/sampler.hpp"

namespace trigon {

/// Normalized gaps above this magnitude below zero count as genuine
/// violations; anything closer to zero is rounding noise.
inline constexpr double kViolationTol = 1e-9;

/// An evaluation point in either domain: sides (a, b, c) for triangles,
/// (x, y, z) for positive triples.
struct Point {
    Domain domain = Domain::triangle;
    double v0 = 0, v1 = 0, v2 = 0;
};

/// Slack of an entry at one point. abs_gap is lhs - rhs for >= relations
/// and rhs - lhs for <=, so positive always means "holds with room".
/// normalized_gap divides by scale^degree (scale: semiperimeter s, or
/// (x + y + z)/2 for triples), making it invariant under rescaling.
struct GapReport {
    std::string entry_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_gap = 0.0;
    double normalized_gap = 0.0;
    bool holds = true;
};

GapReport gap(const CatalogEntry& entry, const SideTriple& sides,
              std::optional<double> t = std::nullopt);
GapReport gap(const CatalogEntry& entry, const PositiveTriple& triple,
              std::optional<double> t = std::nullopt);

struct Violation {
    std::int64_t index = -1;
    Point point;
    double normalized_gap = 0.0;
};

inline constexpr std::size_t kMaxStoredViolations = 50;

struct ScanReport {
    std::string entry_id;
    std::int64_t count = 0;
    double min_normalized_gap = 0.0;
    Point argmin;
    std::int64_t argmin_index = -1;
    std::int64_t violation_count = 0;
    std::vector<Violation> violations;  // first kMaxStoredViolations only
};

/// Evaluate the entry on the sample stream. Triangle entries use the
/// configured triangle sampler; positive-triple entries use the
/// log-uniform triple sampler (cfg.kind must be left at ravi_uniform).
ScanReport scan(const CatalogEntry& entry, const SampleConfig& cfg,
                std::optional<double> t = std::nullopt);

struct MinimizeOptions {
    int grid = 200;             // barycentric G x G cells in phase 1
    int starts = 5;             // best cells seeding phase 2
    int max_iterations = 500;   // per simplex descent
    double diameter_tol = 1e-10;
    double min_coordinate = 1e-6;  // simplex clip, mirrors the degeneracy floor
};

struct MinimizeResult {
    std::string entry_id;
    Point argmin;  // perimeter-normalized sides, or triple with x+y+z = 2
    double min_normalized_gap = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

/// Two-phase search for the smallest normalized gap over shape space:
/// a barycentric grid scan followed by Nelder-Mead descent from the best
/// cells (ties broken lexicographically so runs are reproducible).
MinimizeResult minimize_gap(const CatalogEntry& entry,
                            const MinimizeOptions& opts = MinimizeOptions{},
                            std::optional<double> t = std::nullopt);

enum class DominanceRelation { first_dominates, second_dominates, equivalent, incomparable };

struct DominanceWitness {
    Point point;
    double advantage = 0.0;   // normalized rhs advantage of the stronger entry
    std::int64_t index = -1;  // sample index; count/count+1 are the argmin probes
};

struct DominanceReport {
    std::string first_id;
    std::string second_id;
    DominanceRelation relation = DominanceRelation::equivalent;
    std::optional<DominanceWitness> witness_first;   // first strictly stronger here
    std::optional<DominanceWitness> witness_second;  // second strictly stronger here
    std::int64_t count = 0;  // points examined (samples + argmin probes)
};

/// Pointwise comparison of the bounds of two entries sharing the same lhs
/// (structurally, after cyc expansion), relation direction and degree.
/// For >= entries the stronger bound has the larger rhs; for <= the
/// smaller. Both minimize_gap argmins join the sample stream as probes.
DominanceReport compare_dominance(const CatalogEntry& first, const CatalogEntry& second,
                                  const SampleConfig& cfg);

struct ViolationSearchResult {
    std::optional<Violation> witness;  // first sample that violates
    std::optional<Violation> shrunk;   // witness bisected toward equilateral
    std::int64_t examined = 0;
};

/// Scan an ad-hoc triangle inequality for counterexamples. On a hit, the
/// witness is pulled along the Ravi segment toward the equilateral point
/// by bisection: the reported shrunk point still violates but sits at the
/// edge of the violating region.
ViolationSearchResult find_violation(const InequalityDef& def, const SampleConfig& cfg);

struct IdentitySuiteReport {
    std::int64_t count = 0;
    std::array<double, kIdentityCount> max_residual{};  // indexed like identity_ids()
    double overall_max = 0.0;
};

/// Max relative residual of every built-in identity over a sample stream.
IdentitySuiteReport scan_identities(const SampleConfig& cfg);

std::string_view relation_name(DominanceRelation relation);

}  // namespace trigon
