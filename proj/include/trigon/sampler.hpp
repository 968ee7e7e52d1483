#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "trigon/triangle.hpp"

namespace trigon {

enum class SamplerKind {
    ravi_uniform,     // uniform over triangle shapes via the open 2-simplex
    sides_rejection,  // i.i.d. sides, invalid draws rejected
    near_degenerate,  // one simplex coordinate pushed toward the floor
    isoceles_sweep,   // b = c, apex angle swept over (0, pi)
    near_equilateral, // exponentially small perturbations of equilateral
};

struct SampleConfig {
    SamplerKind kind = SamplerKind::ravi_uniform;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    double min_degeneracy = 1e-6;  // floor on min(s-a, s-b, s-c)/s
};

/// Sample i as a pure function of (seed, kind, i): streams are
/// reproducible independent of evaluation order or partitioning.
/// Every output is perimeter-normalized (a + b + c = 2) and satisfies
/// degeneracy >= min_degeneracy.
SideTriple triangle_sample(const SampleConfig& cfg, std::int64_t index);

std::vector<SideTriple> sample_triangles(const SampleConfig& cfg);

struct PositiveTriple {
    double x, y, z;
};

/// Componentwise log-uniform over [1e-3, 1e3]; pure per (seed, index).
PositiveTriple positive_triple_sample(const SampleConfig& cfg, std::int64_t index);

std::vector<PositiveTriple> sample_positive_triples(const SampleConfig& cfg);

std::string_view sampler_name(SamplerKind kind);
std::optional<SamplerKind> sampler_from_name(std::string_view name);

}  // namespace trigon
