#include "trigon/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trigon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Entry with any parameterization resolved to a concrete definition.
CatalogEntry resolve(const CatalogEntry& entry, std::optional<double> t) {
    if (entry.parameterized) {
        if (!t)
            throw std::invalid_argument("entry '" + entry.id +
                                        "' is parameterized; supply a t value");
        return materialize_schur(*t);
    }
    return entry;
}

double checked_eval(const ExprPtr& expr, const Bindings& b, const std::string& id) {
    try {
        return evaluate(expr, b);
    } catch (const eval_error& e) {
        throw eval_error("entry '" + id + "': " + e.what());
    }
}

struct GapComputer {
    const CatalogEntry& entry;          // resolved
    std::optional<double> t_binding;    // forwarded to triple bindings

    GapReport at_triangle(const SideTriple& sides) const {
        const DerivedQuantities q = derive(sides);
        return from_bindings(Bindings::for_triangle(q), q.s);
    }

    GapReport at_triple(const PositiveTriple& p) const {
        Bindings b = Bindings::for_triple(p.x, p.y, p.z);
        if (t_binding) b.set(Sym::t, *t_binding);
        return from_bindings(b, 0.5 * ((p.x + p.y) + p.z));
    }

    GapReport from_bindings(const Bindings& b, double scale) const {
        GapReport report;
        report.entry_id = entry.id;
        report.lhs = checked_eval(entry.def.lhs, b, entry.id);
        report.rhs = checked_eval(entry.def.rhs, b, entry.id);
        report.abs_gap = entry.def.rel == Rel::ge ? report.lhs - report.rhs
                                                  : report.rhs - report.lhs;
        report.normalized_gap = entry.degree
                                    ? report.abs_gap / std::pow(scale, *entry.degree)
                                    : report.abs_gap;
        report.holds = report.normalized_gap >= -kViolationTol;
        return report;
    }
};

void require_domain(const CatalogEntry& entry, Domain domain) {
    if (entry.def.domain != domain)
        throw std::invalid_argument(
            "entry '" + entry.id + "' is " + std::string(domain_name(entry.def.domain)) +
            "-domain, got a " + std::string(domain_name(domain)) + " point");
}

Point triangle_point(const SideTriple& sides) {
    return Point{Domain::triangle, sides.a, sides.b, sides.c};
}

Point triple_point(const PositiveTriple& p) {
    return Point{Domain::positive_triple, p.x, p.y, p.z};
}

// ------------------------------------------------------------ minimizer --

struct Objective {
    const GapComputer& computer;
    double clip;
    mutable std::int64_t evaluations = 0;

    /// Normalized gap at barycentric (w0, w1, w2); +inf outside the
    /// clipped simplex or where evaluation is undefined.
    double operator()(double w0, double w1, double w2) const {
        if (!(w0 > clip) || !(w1 > clip) || !(w2 > clip)) return kInf;
        ++evaluations;
        try {
            if (computer.entry.def.domain == Domain::triangle) {
                const SideTriple sides(w1 + w2, w2 + w0, w0 + w1);
                return computer.at_triangle(sides).normalized_gap;
            }
            const PositiveTriple p{2.0 * w0, 2.0 * w1, 2.0 * w2};
            return computer.at_triple(p).normalized_gap;
        } catch (const eval_error&) {
            return kInf;
        }
    }
};

struct NmVertex {
    double q1 = 0, q2 = 0, f = kInf;
};

bool vertex_less(const NmVertex& a, const NmVertex& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.q1 != b.q1) return a.q1 < b.q1;
    return a.q2 < b.q2;
}

struct NmRun {
    NmVertex best;
    bool converged = false;
};

/// Textbook Nelder-Mead on the plane q = (w0, w1), w2 = 1 - q1 - q2.
NmRun nelder_mead(const Objective& f, double q1, double q2, double h,
                  int max_iterations, double diameter_tol) {
    auto eval = [&](double a, double b) { return NmVertex{a, b, f(a, b, 1.0 - a - b)}; };
    NmVertex v[3] = {eval(q1, q2), eval(q1 + h, q2), eval(q1, q2 + h)};

    bool converged = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
        std::sort(v, v + 3, vertex_less);
        const double d01 = std::hypot(v[0].q1 - v[1].q1, v[0].q2 - v[1].q2);
        const double d02 = std::hypot(v[0].q1 - v[2].q1, v[0].q2 - v[2].q2);
        const double d12 = std::hypot(v[1].q1 - v[2].q1, v[1].q2 - v[2].q2);
        if (std::max({d01, d02, d12}) < diameter_tol) {
            converged = true;
            break;
        }

        const double c1 = 0.5 * (v[0].q1 + v[1].q1);  // centroid of the best two
        const double c2 = 0.5 * (v[0].q2 + v[1].q2);
        const NmVertex refl = eval(c1 + (c1 - v[2].q1), c2 + (c2 - v[2].q2));

        if (refl.f < v[0].f) {
            const NmVertex expd = eval(c1 + 2.0 * (c1 - v[2].q1), c2 + 2.0 * (c2 - v[2].q2));
            v[2] = expd.f < refl.f ? expd : refl;
            continue;
        }
        if (refl.f < v[1].f) {
            v[2] = refl;
            continue;
        }
        const bool outside = refl.f < v[2].f;
        const NmVertex cont =
            outside ? eval(c1 + 0.5 * (refl.q1 - c1), c2 + 0.5 * (refl.q2 - c2))
                    : eval(c1 - 0.5 * (c1 - v[2].q1), c2 - 0.5 * (c2 - v[2].q2));
        if (cont.f < std::min(refl.f, v[2].f)) {
            v[2] = cont;
            continue;
        }
        // Shrink toward the best vertex.
        v[1] = eval(v[0].q1 + 0.5 * (v[1].q1 - v[0].q1), v[0].q2 + 0.5 * (v[1].q2 - v[0].q2));
        v[2] = eval(v[0].q1 + 0.5 * (v[2].q1 - v[0].q1), v[0].q2 + 0.5 * (v[2].q2 - v[0].q2));
    }

    std::sort(v, v + 3, vertex_less);
    return NmRun{v[0], converged};
}

}  // namespace

// ------------------------------------------------------------------ gap --

GapReport gap(const CatalogEntry& entry, const SideTriple& sides, std::optional<double> t) {
    const CatalogEntry resolved = resolve(entry, t);
    require_domain(resolved, Domain::triangle);
    return GapComputer{resolved, t}.at_triangle(sides);
}

GapReport gap(const CatalogEntry& entry, const PositiveTriple& triple,
              std::optional<double> t) {
    const CatalogEntry resolved = resolve(entry, t);
    require_domain(resolved, Domain::positive_triple);
    return GapComputer{resolved, t}.at_triple(triple);
}

// ----------------------------------------------------------------- scan --

namespace {

/// The samplers validate per draw; an empty stream would skip them and
/// silently report success, so reject it up front.
void require_samples(const SampleConfig& cfg) {
    if (cfg.count < 1)
        throw std::invalid_argument("sample count must be at least 1");
}

}  // namespace

ScanReport scan(const CatalogEntry& entry, const SampleConfig& cfg, std::optional<double> t) {
    require_samples(cfg);
    const CatalogEntry resolved = resolve(entry, t);
    const GapComputer computer{resolved, t};
    const bool triangles = resolved.def.domain == Domain::triangle;
    if (!triangles && cfg.kind != SamplerKind::ravi_uniform)
        throw std::invalid_argument(
            "sampler '" + std::string(sampler_name(cfg.kind)) +
            "' applies to triangle entries; positive-triple entries use the "
            "log-uniform triple sampler");

    ScanReport report;
    report.entry_id = resolved.id;
    report.count = cfg.count;
    report.min_normalized_gap = kInf;

    for (std::int64_t i = 0; i < cfg.count; ++i) {
        Point point;
        GapReport g;
        if (triangles) {
            const SideTriple sides = triangle_sample(cfg, i);
            point = triangle_point(sides);
            g = computer.at_triangle(sides);
        } else {
            const PositiveTriple p = positive_triple_sample(cfg, i);
            point = triple_point(p);
            g = computer.at_triple(p);
        }
        if (g.normalized_gap < report.min_normalized_gap) {
            report.min_normalized_gap = g.normalized_gap;
            report.argmin = point;
            report.argmin_index = i;
        }
        if (g.normalized_gap < -kViolationTol) {
            ++report.violation_count;
            if (report.violations.size() < kMaxStoredViolations)
                report.violations.push_back(Violation{i, point, g.normalized_gap});
        }
    }
    return report;
}

// ------------------------------------------------------------- minimize --

MinimizeResult minimize_gap(const CatalogEntry& entry, const MinimizeOptions& opts,
                            std::optional<double> t) {
    const CatalogEntry resolved = resolve(entry, t);
    if (opts.grid < 2) throw std::invalid_argument("grid must be at least 2");

    const GapComputer computer{resolved, t};
    const Objective objective{computer, opts.min_coordinate};

    // Phase 1: barycentric grid scan (cell centers, clipped simplex).
    struct Cell {
        double f, w0, w1;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(opts.grid) * (opts.grid + 1) / 2);
    const int G = opts.grid;
    for (int i = 0; i < G; ++i) {
        for (int j = 0; j + i <= G - 2; ++j) {
            const double w0 = (i + 0.5) / G;
            const double w1 = (j + 0.5) / G;
            const double f = objective(w0, w1, 1.0 - w0 - w1);
            if (f < kInf) cells.push_back(Cell{f, w0, w1});
        }
    }

    if (cells.empty())
        throw std::invalid_argument("minimize_gap: no feasible grid cells "
                                    "(min_coordinate too large for this grid)");

    auto cell_less = [](const Cell& a, const Cell& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.w0 != b.w0) return a.w0 < b.w0;
        return a.w1 < b.w1;
    };
    const int starts = std::min<int>(opts.starts, static_cast<int>(cells.size()));
    std::partial_sort(cells.begin(), cells.begin() + starts, cells.end(), cell_less);

    // Phase 2: descent from each of the best cells.
    NmVertex best;
    bool best_converged = false;
    if (starts > 0) {
        best = NmVertex{cells[0].w0, cells[0].w1, cells[0].f};
        for (int k = 0; k < starts; ++k) {
            const NmRun run = nelder_mead(objective, cells[k].w0, cells[k].w1, 0.4 / G,
                                          opts.max_iterations, opts.diameter_tol);
            if (vertex_less(run.best, best)) {
                best = run.best;
                best_converged = run.converged;
            }
        }
    }

    MinimizeResult result;
    result.entry_id = resolved.id;
    result.min_normalized_gap = best.f;
    result.evaluations = objective.evaluations;
    result.converged = best_converged;

    const double w0 = best.q1, w1 = best.q2, w2 = 1.0 - best.q1 - best.q2;
    if (resolved.def.domain == Domain::triangle) {
        const SideTriple sides = normalize_perimeter(SideTriple(w1 + w2, w2 + w0, w0 + w1));
        result.argmin = triangle_point(sides);
    } else {
        const double sum = (w0 + w1) + w2;
        result.argmin = triple_point(PositiveTriple{2.0 * w0 / sum, 2.0 * w1 / sum,
                                                    2.0 * w2 / sum});
    }
    return result;
}

// ------------------------------------------------------------ dominance --

DominanceReport compare_dominance(const CatalogEntry& first, const CatalogEntry& second,
                                  const SampleConfig& cfg) {
    require_samples(cfg);
    if (first.parameterized || second.parameterized)
        throw std::invalid_argument("parameterized entries cannot be compared directly");
    if (first.def.domain != Domain::triangle || second.def.domain != Domain::triangle)
        throw std::invalid_argument("dominance comparison requires triangle-domain entries");
    if (first.def.rel != second.def.rel)
        throw std::invalid_argument("entries '" + first.id + "' and '" + second.id +
                                    "' have different relation directions");
    if (!first.degree || !second.degree ||
        std::fabs(*first.degree - *second.degree) > 1e-9)
        throw std::invalid_argument("entries '" + first.id + "' and '" + second.id +
                                    "' have different homogeneity degrees");
    if (to_string(expand_cyc(first.def.lhs)) != to_string(expand_cyc(second.def.lhs)))
        throw std::invalid_argument("entries '" + first.id + "' and '" + second.id +
                                    "' have different left-hand sides");

    DominanceReport report;
    report.first_id = first.id;
    report.second_id = second.id;

    const double degree = *first.degree;
    const bool ge = first.def.rel == Rel::ge;

    auto probe = [&](const SideTriple& sides, std::int64_t index) {
        const DerivedQuantities q = derive(sides);
        const Bindings b = Bindings::for_triangle(q);
        const double r1 = checked_eval(first.def.rhs, b, first.id);
        const double r2 = checked_eval(second.def.rhs, b, second.id);
        // For >=, the larger rhs is the stronger bound; for <= the smaller.
        const double advantage = (ge ? r1 - r2 : r2 - r1) / std::pow(q.s, degree);
        if (advantage > kViolationTol && !report.witness_first)
            report.witness_first = DominanceWitness{triangle_point(sides), advantage, index};
        if (advantage < -kViolationTol && !report.witness_second)
            report.witness_second =
                DominanceWitness{triangle_point(sides), -advantage, index};
    };

    for (std::int64_t i = 0; i < cfg.count; ++i) probe(triangle_sample(cfg, i), i);

    // Each entry's own equality region is where the other is most likely
    // to lose; probe both argmins as well.
    const MinimizeResult m1 = minimize_gap(first);
    const MinimizeResult m2 = minimize_gap(second);
    probe(SideTriple(m1.argmin.v0, m1.argmin.v1, m1.argmin.v2), cfg.count);
    probe(SideTriple(m2.argmin.v0, m2.argmin.v1, m2.argmin.v2), cfg.count + 1);
    report.count = cfg.count + 2;

    if (report.witness_first && report.witness_second)
        report.relation = DominanceRelation::incomparable;
    else if (report.witness_first)
        report.relation = DominanceRelation::first_dominates;
    else if (report.witness_second)
        report.relation = DominanceRelation::second_dominates;
    else
        report.relation = DominanceRelation::equivalent;
    return report;
}

// ------------------------------------------------------- find_violation --

ViolationSearchResult find_violation(const InequalityDef& def, const SampleConfig& cfg) {
    require_samples(cfg);
    if (def.domain != Domain::triangle)
        throw std::invalid_argument("violation search requires a triangle-domain inequality");

    CatalogEntry entry;
    entry.id = def.id.empty() ? "adhoc" : def.id;
    entry.def = def;
    entry.degree = definition_degree(def).common;
    const GapComputer computer{entry, std::nullopt};

    auto normalized_gap_at = [&](const SideTriple& sides) -> double {
        try {
            return computer.at_triangle(sides).normalized_gap;
        } catch (const eval_error&) {
            return kInf;  // undefined points cannot witness a violation
        }
    };

    ViolationSearchResult result;
    for (std::int64_t i = 0; i < cfg.count; ++i) {
        const SideTriple sides = triangle_sample(cfg, i);
        result.examined = i + 1;
        const double g = normalized_gap_at(sides);
        if (g >= -kViolationTol) continue;

        result.witness = Violation{i, triangle_point(sides), g};

        // Shrink: bisect along the Ravi segment toward the equilateral
        // point, keeping the violating end.
        const RaviTriple rv = ravi_from_sides(sides);
        const double sum = (rv.m + rv.n) + rv.p;
        const double center = sum / 3.0;
        auto at_lambda = [&](double lam) {
            const double m = rv.m + lam * (center - rv.m);
            const double n = rv.n + lam * (center - rv.n);
            const double p = rv.p + lam * (center - rv.p);
            return SideTriple(n + p, p + m, m + n);
        };

        double lo = 0.0, hi = 1.0;
        if (normalized_gap_at(at_lambda(1.0)) < -kViolationTol) {
            lo = 1.0;  // violates even at equilateral; nothing to shrink toward
        } else {
            for (int iter = 0; iter < 80; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (normalized_gap_at(at_lambda(mid)) < -kViolationTol)
                    lo = mid;
                else
                    hi = mid;
            }
        }
        // The bisection endpoint sits within rounding of the threshold;
        // back off until the reported point violates decisively.
        for (double lambda : {lo, 0.999 * lo, 0.99 * lo, 0.9 * lo, 0.0}) {
            const SideTriple shrunk_sides = normalize_perimeter(at_lambda(lambda));
            const double shrunk_gap = normalized_gap_at(shrunk_sides);
            if (shrunk_gap < -kViolationTol) {
                result.shrunk = Violation{i, triangle_point(shrunk_sides), shrunk_gap};
                break;
            }
        }
        break;
    }
    return result;
}

// ------------------------------------------------------------ identities --

IdentitySuiteReport scan_identities(const SampleConfig& cfg) {
    require_samples(cfg);
    IdentitySuiteReport report;
    report.count = cfg.count;
    for (std::int64_t i = 0; i < cfg.count; ++i) {
        const auto residuals = identity_residuals(triangle_sample(cfg, i));
        for (int k = 0; k < kIdentityCount; ++k)
            report.max_residual[k] = std::max(report.max_residual[k], residuals[k].residual);
    }
    for (double v : report.max_residual) report.overall_max = std::max(report.overall_max, v);
    return report;
}

std::string_view relation_name(DominanceRelation relation) {
    switch (relation) {
        case DominanceRelation::first_dominates: return "first_dominates";
        case DominanceRelation::second_dominates: return "second_dominates";
        case DominanceRelation::equivalent: return "equivalent";
        case DominanceRelation::incomparable: return "incomparable";
    }
    return "?";
}

}  // namespace trigon
