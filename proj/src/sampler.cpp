#include "trigon/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trigon/detail/splitmix.hpp"

namespace trigon {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(const SampleConfig& cfg) {
    if (cfg.count < 1)
        throw std::invalid_argument("sample count must be at least 1");
    if (!(cfg.min_degeneracy > 0.0) || !(cfg.min_degeneracy < 1.0 / 3.0))
        throw std::invalid_argument("min_degeneracy must lie in (0, 1/3)");
}

std::uint64_t stream_tag(SamplerKind kind) {
    return static_cast<std::uint64_t>(kind) + 1;
}

/// Exact floor check: normalizes and re-derives, so accepted samples
/// satisfy the contract under the same arithmetic consumers will use.
bool meets_floor(const SideTriple& sides, double floor, SideTriple* out) {
    const SideTriple normalized = normalize_perimeter(sides);
    if (derive(normalized).degeneracy < floor) return false;
    *out = normalized;
    return true;
}

SideTriple ravi_uniform_sample(detail::IndexRng& rng, double floor) {
    for (;;) {
        const double u1 = rng.next_double();
        const double u2 = rng.next_double();
        const double lo = std::min(u1, u2);
        const double hi = std::max(u1, u2);
        const double m = lo, n = hi - lo, p = 1.0 - hi;
        // Cheap pre-filter with 1% headroom; the exact check runs after.
        if (std::min({m, n, p}) < floor * 1.01) continue;
        SideTriple out(1, 1, 1);
        if (meets_floor(SideTriple(n + p, p + m, m + n), floor, &out)) return out;
    }
}

SideTriple sides_rejection_sample(detail::IndexRng& rng, double floor) {
    for (;;) {
        const double a = 1.0 - rng.next_double();
        const double b = 1.0 - rng.next_double();
        const double c = 1.0 - rng.next_double();
        if (!(a + b > c) || !(b + c > a) || !(c + a > b)) continue;
        const double s = 0.5 * (a + b + c);
        const double excess = std::min({s - a, s - b, s - c});
        if (excess < floor * s * 1.01) continue;
        SideTriple out(1, 1, 1);
        if (meets_floor(SideTriple(a, b, c), floor, &out)) return out;
    }
}

SideTriple near_degenerate_sample(detail::IndexRng& rng, double floor,
                                  std::int64_t index) {
    const int corner = static_cast<int>(index % 3);
    const double lo = floor * 1.02;
    const double hi = std::max(1e-2, 2.0 * lo);
    for (;;) {
        const double eps =
            lo * std::exp(rng.next_double() * std::log(hi / lo));
        const double split = 0.25 + 0.5 * rng.next_double();
        double w[3];
        w[corner] = eps;
        w[(corner + 1) % 3] = (1.0 - eps) * split;
        w[(corner + 2) % 3] = (1.0 - eps) * (1.0 - split);
        SideTriple out(1, 1, 1);
        if (meets_floor(SideTriple(w[1] + w[2], w[2] + w[0], w[0] + w[1]), floor, &out))
            return out;
    }
}

SideTriple isoceles_sweep_sample(const SampleConfig& cfg, std::int64_t index) {
    // Deterministic sweep; the parameter midpoint maps to the equilateral
    // apex angle pi/3, so odd counts always include (2/3, 2/3, 2/3).
    double u = static_cast<double>(index + 1) / static_cast<double>(cfg.count + 1);
    for (int attempt = 0; attempt < 300; ++attempt) {
        const double theta = (u <= 0.5) ? (2.0 * kPi / 3.0) * u
                                        : kPi / 3.0 + (u - 0.5) * (4.0 * kPi / 3.0);
        const double apex = 2.0 * std::sin(0.5 * theta);
        if (apex > 0.0 && apex < 2.0) {
            SideTriple out(1, 1, 1);
            if (meets_floor(SideTriple(apex, 1.0, 1.0), cfg.min_degeneracy, &out))
                return out;
        }
        u = 0.5 + 0.9 * (u - 0.5);  // pull toward the equilateral midpoint
    }
    return normalize_perimeter(SideTriple(1.0, 1.0, 1.0));
}

SideTriple near_equilateral_sample(detail::IndexRng& rng, double floor) {
    // Orthonormal directions spanning the simplex plane.
    constexpr double e1[3] = {0.7071067811865476, -0.7071067811865476, 0.0};
    constexpr double e2[3] = {0.4082482904638631, 0.4082482904638631, -0.8164965809277261};
    double delta = std::pow(10.0, -9.0 + 7.0 * rng.next_double());
    const double phi = 2.0 * kPi * rng.next_double();
    const double cp = std::cos(phi), sp = std::sin(phi);
    for (;;) {
        const double w0 = 1.0 / 3.0 + delta * (cp * e1[0] + sp * e2[0]);
        const double w1 = 1.0 / 3.0 + delta * (cp * e1[1] + sp * e2[1]);
        const double w2 = 1.0 / 3.0 + delta * (cp * e1[2] + sp * e2[2]);
        if (std::min({w0, w1, w2}) > 0.0) {
            SideTriple out(1, 1, 1);
            if (meets_floor(SideTriple(w1 + w2, w2 + w0, w0 + w1), floor, &out))
                return out;
        }
        delta *= 0.5;  // only reachable for floors close to 1/3
    }
}

}  // namespace

SideTriple triangle_sample(const SampleConfig& cfg, std::int64_t index) {
    validate(cfg);
    if (index < 0 || index >= cfg.count)
        throw std::invalid_argument("sample index out of range");
    if (cfg.kind == SamplerKind::isoceles_sweep)
        return isoceles_sweep_sample(cfg, index);

    detail::IndexRng rng(cfg.seed, static_cast<std::uint64_t>(index),
                         stream_tag(cfg.kind));
    switch (cfg.kind) {
        case SamplerKind::ravi_uniform:
            return ravi_uniform_sample(rng, cfg.min_degeneracy);
        case SamplerKind::sides_rejection:
            return sides_rejection_sample(rng, cfg.min_degeneracy);
        case SamplerKind::near_degenerate:
            return near_degenerate_sample(rng, cfg.min_degeneracy, index);
        case SamplerKind::near_equilateral:
            return near_equilateral_sample(rng, cfg.min_degeneracy);
        default:
            throw std::invalid_argument("unknown sampler kind");
    }
}

std::vector<SideTriple> sample_triangles(const SampleConfig& cfg) {
    validate(cfg);
    std::vector<SideTriple> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (std::int64_t i = 0; i < cfg.count; ++i) out.push_back(triangle_sample(cfg, i));
    return out;
}

PositiveTriple positive_triple_sample(const SampleConfig& cfg, std::int64_t index) {
    validate(cfg);
    if (index < 0 || index >= cfg.count)
        throw std::invalid_argument("sample index out of range");
    detail::IndexRng rng(cfg.seed, static_cast<std::uint64_t>(index), 100);
    auto draw = [&] { return std::pow(10.0, 6.0 * rng.next_double() - 3.0); };
    PositiveTriple t{draw(), draw(), draw()};
    return t;
}

std::vector<PositiveTriple> sample_positive_triples(const SampleConfig& cfg) {
    validate(cfg);
    std::vector<PositiveTriple> out;
    out.reserve(static_cast<std::size_t>(cfg.count));
    for (std::int64_t i = 0; i < cfg.count; ++i)
        out.push_back(positive_triple_sample(cfg, i));
    return out;
}

std::string_view sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::ravi_uniform: return "ravi_uniform";
        case SamplerKind::sides_rejection: return "sides_rejection";
        case SamplerKind::near_degenerate: return "near_degenerate";
        case SamplerKind::isoceles_sweep: return "isoceles_sweep";
        case SamplerKind::near_equilateral: return "near_equilateral";
    }
    return "?";
}

std::optional<SamplerKind> sampler_from_name(std::string_view name) {
    if (name == "ravi_uniform") return SamplerKind::ravi_uniform;
    if (name == "sides_rejection") return SamplerKind::sides_rejection;
    if (name == "near_degenerate") return SamplerKind::near_degenerate;
    if (name == "isoceles_sweep") return SamplerKind::isoceles_sweep;
    if (name == "near_equilateral") return SamplerKind::near_equilateral;
    return std::nullopt;
}

}  // namespace trigon
