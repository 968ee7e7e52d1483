#include "trigon/cli.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigon/catalog.hpp"
#include "trigon/expr.hpp"
#include "trigon/sampler.hpp"
#include "trigon/sharpness.hpp"
#include "trigon/triangle.hpp"

namespace trigon {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { text, json, csv };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw UsageError("unknown format '" + name + "'");
}

std::array<double, 3> parse_point_arg(const std::string& text, const char* flag) {
    std::array<double, 3> out{};
    std::size_t begin = 0;
    for (int k = 0; k < 3; ++k) {
        const std::size_t end = k == 2 ? text.size() : text.find(',', begin);
        if (end == std::string::npos)
            throw UsageError(std::string(flag) + " expects three comma-separated numbers");
        const std::string piece = text.substr(begin, end - begin);
        const char* first = piece.data();
        const char* last = piece.data() + piece.size();
        while (first < last && *first == ' ') ++first;
        auto res = std::from_chars(first, last, out[k]);
        if (res.ec != std::errc() || res.ptr != last)
            throw UsageError(std::string(flag) + ": malformed number '" + piece + "'");
        begin = end + 1;
    }
    return out;
}

ordered_json point_json(const Point& p) {
    return ordered_json::array({p.v0, p.v1, p.v2});
}

std::string point_text(const Point& p) {
    return "(" + format_double(p.v0) + ", " + format_double(p.v1) + ", " +
           format_double(p.v2) + ")";
}

ordered_json violation_json(const Violation& v) {
    ordered_json j;
    j["index"] = v.index;
    j["point"] = point_json(v.point);
    j["normalized_gap"] = v.normalized_gap;
    return j;
}

ordered_json witness_json(const std::optional<DominanceWitness>& w) {
    if (!w) return nullptr;
    ordered_json j;
    j["point"] = point_json(w->point);
    j["advantage"] = w->advantage;
    j["index"] = w->index;
    return j;
}

void emit(const ordered_json& j, Format format, std::ostream& out) {
    if (format == Format::json) out << j.dump(2) << '\n';
}

const char* bool_text(bool v) { return v ? "true" : "false"; }

/// Common sampling flags shared by the scanning subcommands.
struct SampleFlags {
    std::int64_t samples = 10000;
    std::uint64_t seed = 42;
    std::string sampler = "ravi_uniform";
    double min_degeneracy = 1e-6;

    void attach(CLI::App* cmd) {
        cmd->add_option("--samples", samples, "number of samples")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "RNG seed")
            ->envname("TRIGON_SEED")
            ->capture_default_str();
        cmd->add_option("--sampler", sampler, "triangle sampling strategy")
            ->capture_default_str();
        cmd->add_option("--min-degeneracy", min_degeneracy,
                        "floor on min(s-a, s-b, s-c)/s")
            ->capture_default_str();
    }

    SampleConfig config() const {
        if (samples < 1) throw UsageError("sample count must be at least 1");
        const auto kind = sampler_from_name(sampler);
        if (!kind) throw UsageError("unknown sampler '" + sampler + "'");
        SampleConfig cfg;
        cfg.kind = *kind;
        cfg.count = samples;
        cfg.seed = seed;
        cfg.min_degeneracy = min_degeneracy;
        return cfg;
    }
};

const CatalogEntry& find_entry(const Registry& registry, const std::string& id) {
    const CatalogEntry* entry = registry.find(id);
    if (entry == nullptr) throw UsageError("unknown entry '" + id + "'");
    return *entry;
}

// ----------------------------------------------------------------- check --

int cmd_check(const Registry& registry, const std::string& target,
              const std::string& triangle_arg, const std::string& triple_arg,
              std::optional<double> t, Format format, std::ostream& out) {
    if (triangle_arg.empty() == triple_arg.empty())
        throw UsageError("check requires exactly one of --triangle or --triple");

    CatalogEntry adhoc;
    const CatalogEntry* entry = registry.find(target);
    if (entry == nullptr) {
        if (target.find(">=") == std::string::npos &&
            target.find("<=") == std::string::npos)
            throw UsageError("unknown entry '" + target + "'");
        const Domain domain =
            triangle_arg.empty() ? Domain::positive_triple : Domain::triangle;
        adhoc.id = "adhoc";
        adhoc.def = parse_inequality("adhoc", target, domain);
        adhoc.degree = definition_degree(adhoc.def).common;
        adhoc.tight = false;
        entry = &adhoc;
    }

    GapReport report;
    Point point;
    if (!triangle_arg.empty()) {
        const auto v = parse_point_arg(triangle_arg, "--triangle");
        const SideTriple sides(v[0], v[1], v[2]);
        report = gap(*entry, sides, t);
        point = Point{Domain::triangle, sides.a, sides.b, sides.c};
    } else {
        const auto v = parse_point_arg(triple_arg, "--triple");
        if (!(v[0] > 0.0) || !(v[1] > 0.0) || !(v[2] > 0.0))
            throw UsageError("--triple components must be positive");
        report = gap(*entry, PositiveTriple{v[0], v[1], v[2]}, t);
        point = Point{Domain::positive_triple, v[0], v[1], v[2]};
    }

    const char* status = report.holds ? "holds" : "violated";
    if (format == Format::json) {
        ordered_json j;
        j["command"] = "check";
        j["entry"] = report.entry_id;
        j["domain"] = domain_name(entry->def.domain);
        j["point"] = point_json(point);
        j["t"] = t ? ordered_json(*t) : ordered_json(nullptr);
        j["degree"] = entry->degree ? ordered_json(*entry->degree) : ordered_json(nullptr);
        j["lhs"] = report.lhs;
        j["rhs"] = report.rhs;
        j["abs_gap"] = report.abs_gap;
        j["normalized_gap"] = report.normalized_gap;
        j["status"] = status;
        emit(j, format, out);
    } else {
        out << "entry:          " << report.entry_id << '\n'
            << "point:          " << point_text(point) << '\n'
            << "lhs:            " << format_double(report.lhs) << '\n'
            << "rhs:            " << format_double(report.rhs) << '\n'
            << "abs gap:        " << format_double(report.abs_gap) << '\n'
            << "normalized gap: " << format_double(report.normalized_gap) << '\n'
            << "status:         " << status << '\n';
    }
    return report.holds ? 0 : 2;
}

// ------------------------------------------------------------------ scan --

int cmd_scan(const Registry& registry, const std::string& id, const SampleFlags& flags,
             std::optional<double> t, Format format, std::ostream& out) {
    const CatalogEntry& entry = find_entry(registry, id);
    const SampleConfig cfg = flags.config();

    if (format == Format::csv) {
        // Stream every sample as a row; resolve the parameterization once.
        const CatalogEntry resolved =
            entry.parameterized
                ? (t ? materialize_schur(*t)
                     : throw UsageError("entry '" + id + "' requires --t"))
                : entry;
        out << "index,v0,v1,v2,lhs,rhs,abs_gap,normalized_gap,holds\n";
        bool any_violation = false;
        const bool triangles = resolved.def.domain == Domain::triangle;
        for (std::int64_t i = 0; i < cfg.count; ++i) {
            GapReport g;
            Point p;
            if (triangles) {
                const SideTriple sides = triangle_sample(cfg, i);
                g = gap(resolved, sides);
                p = Point{Domain::triangle, sides.a, sides.b, sides.c};
            } else {
                const PositiveTriple triple = positive_triple_sample(cfg, i);
                g = gap(resolved, triple, t);
                p = Point{Domain::positive_triple, triple.x, triple.y, triple.z};
            }
            any_violation = any_violation || !g.holds;
            out << i << ',' << format_double(p.v0) << ',' << format_double(p.v1) << ','
                << format_double(p.v2) << ',' << format_double(g.lhs) << ','
                << format_double(g.rhs) << ',' << format_double(g.abs_gap) << ','
                << format_double(g.normalized_gap) << ',' << bool_text(g.holds) << '\n';
        }
        return any_violation ? 2 : 0;
    }

    const ScanReport report = scan(entry, cfg, t);
    const bool clean = report.violation_count == 0;
    const char* status = clean ? "holds" : "violated";

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "scan";
        j["entry"] = report.entry_id;
        j["domain"] = domain_name(entry.def.domain);
        j["sampler"] = sampler_name(cfg.kind);
        j["samples"] = cfg.count;
        j["seed"] = cfg.seed;
        j["min_degeneracy"] = cfg.min_degeneracy;
        j["t"] = t ? ordered_json(*t) : ordered_json(nullptr);
        j["count"] = report.count;
        j["min_normalized_gap"] = report.min_normalized_gap;
        j["argmin"] = point_json(report.argmin);
        j["argmin_index"] = report.argmin_index;
        j["violation_count"] = report.violation_count;
        ordered_json violations = ordered_json::array();
        for (const auto& v : report.violations) violations.push_back(violation_json(v));
        j["violations"] = violations;
        j["status"] = status;
        emit(j, format, out);
    } else {
        out << "entry:              " << report.entry_id << '\n'
            << "sampler:            " << sampler_name(cfg.kind) << '\n'
            << "samples:            " << report.count << '\n'
            << "seed:               " << cfg.seed << '\n'
            << "min normalized gap: " << format_double(report.min_normalized_gap) << '\n'
            << "argmin:             " << point_text(report.argmin) << " (index "
            << report.argmin_index << ")\n"
            << "violations:         " << report.violation_count << '\n';
        for (const auto& v : report.violations)
            out << "  violation at " << v.index << ": " << point_text(v.point)
                << " normalized gap " << format_double(v.normalized_gap) << '\n';
        out << "status:             " << status << '\n';
    }
    return clean ? 0 : 2;
}

// -------------------------------------------------------------- minimize --

int cmd_minimize(const Registry& registry, const std::string& id, int grid,
                 std::optional<double> t, Format format, std::ostream& out) {
    const CatalogEntry& entry = find_entry(registry, id);
    MinimizeOptions opts;
    opts.grid = grid;
    const MinimizeResult result = minimize_gap(entry, opts, t);
    const bool clean = result.min_normalized_gap >= -kViolationTol;
    const char* status = clean ? "holds" : "violated";

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "minimize";
        j["entry"] = result.entry_id;
        j["domain"] = domain_name(entry.def.domain);
        j["grid"] = opts.grid;
        j["starts"] = opts.starts;
        j["min_normalized_gap"] = result.min_normalized_gap;
        j["argmin"] = point_json(result.argmin);
        j["evaluations"] = result.evaluations;
        j["converged"] = result.converged;
        j["status"] = status;
        emit(j, format, out);
    } else {
        out << "entry:              " << result.entry_id << '\n'
            << "grid:               " << opts.grid << '\n'
            << "min normalized gap: " << format_double(result.min_normalized_gap) << '\n'
            << "argmin:             " << point_text(result.argmin) << '\n'
            << "evaluations:        " << result.evaluations << '\n'
            << "converged:          " << bool_text(result.converged) << '\n'
            << "status:             " << status << '\n';
    }
    return clean ? 0 : 2;
}

// --------------------------------------------------------------- compare --

int cmd_compare(const Registry& registry, const std::string& first_id,
                const std::string& second_id, const SampleFlags& flags, Format format,
                std::ostream& out) {
    const CatalogEntry& first = find_entry(registry, first_id);
    const CatalogEntry& second = find_entry(registry, second_id);
    const SampleConfig cfg = flags.config();
    const DominanceReport report = compare_dominance(first, second, cfg);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "compare";
        j["first"] = report.first_id;
        j["second"] = report.second_id;
        j["sampler"] = sampler_name(cfg.kind);
        j["samples"] = cfg.count;
        j["seed"] = cfg.seed;
        j["relation"] = relation_name(report.relation);
        j["count"] = report.count;
        j["witness_first"] = witness_json(report.witness_first);
        j["witness_second"] = witness_json(report.witness_second);
        j["status"] = "holds";
        emit(j, format, out);
    } else {
        out << "first:    " << report.first_id << '\n'
            << "second:   " << report.second_id << '\n'
            << "samples:  " << cfg.count << " (+2 argmin probes)\n"
            << "relation: " << relation_name(report.relation) << '\n';
        auto show = [&](const char* label, const std::optional<DominanceWitness>& w) {
            out << label;
            if (w)
                out << point_text(w->point) << " advantage "
                    << format_double(w->advantage) << " (index " << w->index << ")\n";
            else
                out << "none\n";
        };
        show("witness (first stronger):  ", report.witness_first);
        show("witness (second stronger): ", report.witness_second);
    }
    return 0;
}

// ------------------------------------------------------------- identities --

int cmd_identities(const SampleFlags& flags, Format format, std::ostream& out) {
    const SampleConfig cfg = flags.config();
    const IdentitySuiteReport report = scan_identities(cfg);
    const bool clean = report.overall_max <= 1e-9;
    const char* status = clean ? "holds" : "violated";

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "identities";
        j["sampler"] = sampler_name(cfg.kind);
        j["samples"] = cfg.count;
        j["seed"] = cfg.seed;
        j["min_degeneracy"] = cfg.min_degeneracy;
        ordered_json residuals;
        for (int k = 0; k < kIdentityCount; ++k)
            residuals[std::string(identity_ids()[k])] = report.max_residual[k];
        j["max_residuals"] = residuals;
        j["overall_max"] = report.overall_max;
        j["status"] = status;
        emit(j, format, out);
    } else {
        out << "samples: " << report.count << "  seed: " << cfg.seed
            << "  min degeneracy: " << format_double(cfg.min_degeneracy) << '\n';
        for (int k = 0; k < kIdentityCount; ++k)
            out << "  " << identity_ids()[k] << ": max residual "
                << format_double(report.max_residual[k]) << "   ["
                << identity_statement(identity_ids()[k]) << "]\n";
        out << "overall max residual: " << format_double(report.overall_max) << '\n'
            << "status: " << status << '\n';
    }
    return clean ? 0 : 2;
}

// ---------------------------------------------------------------- catalog --

int cmd_catalog(const Registry& registry, const std::string& action, Format format,
                std::ostream& out) {
    if (action == "export") {
        const std::string content = registry.export_definitions();
        if (format == Format::json) {
            ordered_json j;
            j["command"] = "catalog";
            j["action"] = "export";
            j["content"] = content;
            j["status"] = "holds";
            emit(j, format, out);
        } else {
            out << content;
        }
        return 0;
    }
    if (action != "list") throw UsageError("catalog action must be 'list' or 'export'");

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "catalog";
        j["action"] = "list";
        j["count"] = registry.entries().size();
        ordered_json entries = ordered_json::array();
        for (const auto& e : registry.entries()) {
            ordered_json item;
            item["id"] = e.id;
            item["domain"] = domain_name(e.def.domain);
            item["relation"] = rel_text(e.def.rel);
            item["definition"] = to_string(e.def);
            item["degree"] = e.degree ? ordered_json(*e.degree) : ordered_json(nullptr);
            item["tight"] = e.tight;
            item["parameterized"] = e.parameterized;
            item["reference"] = e.reference;
            item["notes"] = e.notes;
            entries.push_back(item);
        }
        j["entries"] = entries;
        j["status"] = "holds";
        emit(j, format, out);
    } else {
        for (const auto& e : registry.entries()) {
            out << e.id << "  [" << domain_name(e.def.domain) << ", degree "
                << (e.degree ? format_double(*e.degree) : std::string("-")) << ", "
                << (e.tight ? "tight" : "not tight")
                << (e.parameterized ? ", parameterized" : "") << "]\n"
                << "    " << to_string(e.def) << '\n'
                << "    " << e.reference
                << (e.notes.empty() ? "" : "; " + e.notes) << '\n';
        }
    }
    return 0;
}

// ------------------------------------------------------------------- eval --

int cmd_eval(const std::string& expr_text, const std::string& triangle_arg,
             const std::string& triple_arg, std::optional<double> t, Format format,
             std::ostream& out) {
    if (triangle_arg.empty() == triple_arg.empty())
        throw UsageError("eval requires exactly one of --triangle or --triple");

    const Domain domain = triangle_arg.empty() ? Domain::positive_triple : Domain::triangle;
    const ExprPtr expr = parse_expression(expr_text, domain);

    Bindings bindings;
    Point point;
    if (domain == Domain::triangle) {
        const auto v = parse_point_arg(triangle_arg, "--triangle");
        const SideTriple sides(v[0], v[1], v[2]);
        bindings = Bindings::for_triangle(derive(sides));
        point = Point{domain, sides.a, sides.b, sides.c};
    } else {
        const auto v = parse_point_arg(triple_arg, "--triple");
        if (!(v[0] > 0.0) || !(v[1] > 0.0) || !(v[2] > 0.0))
            throw UsageError("--triple components must be positive");
        bindings = Bindings::for_triple(v[0], v[1], v[2]);
        point = Point{domain, v[0], v[1], v[2]};
    }
    if (t) bindings.set(Sym::t, *t);

    const double value = evaluate(expr, bindings);

    if (format == Format::json) {
        ordered_json j;
        j["command"] = "eval";
        j["expr"] = to_string(expr);
        j["domain"] = domain_name(domain);
        j["point"] = point_json(point);
        j["value"] = value;
        j["status"] = "holds";
        emit(j, format, out);
    } else {
        out << format_double(value) << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"trigon: a numerical workbench for triangle and symmetric inequalities"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "text";
    app.add_option("--format", format_name, "output format: text, json, csv (scan only)")
        ->capture_default_str();
    std::vector<std::string> defs_paths;
    app.add_option("--defs", defs_paths, "definition file(s) to load before dispatch");
    bool allow_inhomogeneous = false;
    app.add_flag("--allow-inhomogeneous", allow_inhomogeneous,
                 "accept user definitions whose sides have different degrees");

    // check
    auto* check = app.add_subcommand("check", "evaluate one entry or ad-hoc inequality "
                                              "at a single point");
    std::string check_target, check_triangle, check_triple;
    double check_t = 0.0;
    check->add_option("target", check_target, "entry id or inequality text")->required();
    check->add_option("--triangle", check_triangle, "sides a,b,c");
    check->add_option("--triple", check_triple, "positive components x,y,z");
    auto* check_t_opt = check->add_option("--t", check_t, "Schur exponent");

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "evaluate an entry over a sample stream");
    std::string scan_id;
    SampleFlags scan_flags;
    double scan_t = 0.0;
    scan_cmd->add_option("entry", scan_id, "entry id")->required();
    scan_flags.attach(scan_cmd);
    auto* scan_t_opt = scan_cmd->add_option("--t", scan_t, "Schur exponent");

    // minimize
    auto* minimize = app.add_subcommand("minimize", "search for the smallest normalized gap");
    std::string minimize_id;
    int minimize_grid = 200;
    double minimize_t = 0.0;
    minimize->add_option("entry", minimize_id, "entry id")->required();
    minimize->add_option("--grid", minimize_grid, "phase-1 grid resolution")
        ->capture_default_str();
    auto* minimize_t_opt = minimize->add_option("--t", minimize_t, "Schur exponent");

    // compare
    auto* compare = app.add_subcommand("compare", "pointwise dominance of two entries "
                                                  "sharing a left-hand side");
    std::string compare_first, compare_second;
    SampleFlags compare_flags;
    compare->add_option("first", compare_first, "entry id")->required();
    compare->add_option("second", compare_second, "entry id")->required();
    compare_flags.attach(compare);

    // identities
    auto* identities = app.add_subcommand("identities", "run the identity residual suite");
    SampleFlags identities_flags;
    identities_flags.min_degeneracy = 1e-4;
    identities_flags.attach(identities);

    // catalog
    auto* catalog = app.add_subcommand("catalog", "list or export the registry");
    std::string catalog_action;
    catalog->add_option("action", catalog_action, "'list' or 'export'")->required();

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression at a point");
    std::string eval_expr, eval_triangle, eval_triple;
    double eval_t = 0.0;
    eval_cmd->add_option("expr", eval_expr, "expression text")->required();
    eval_cmd->add_option("--triangle", eval_triangle, "sides a,b,c");
    eval_cmd->add_option("--triple", eval_triple, "positive components x,y,z");
    auto* eval_t_opt = eval_cmd->add_option("--t", eval_t, "value bound to the symbol t");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("trigon");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const Format format = parse_format(format_name);
    auto opt_t = [](const CLI::Option* opt, double value) -> std::optional<double> {
        return opt->count() > 0 ? std::optional<double>(value) : std::nullopt;
    };

    try {
        Registry registry;
        for (const auto& path : defs_paths) {
            std::ifstream file(path);
            if (!file) throw UsageError("cannot open definitions file '" + path + "'");
            registry.load_definitions(file, path, allow_inhomogeneous);
        }

        if (format == Format::csv && !scan_cmd->parsed())
            throw UsageError("csv format is only available for scan");

        if (check->parsed())
            return cmd_check(registry, check_target, check_triangle, check_triple,
                             opt_t(check_t_opt, check_t), format, out);
        if (scan_cmd->parsed())
            return cmd_scan(registry, scan_id, scan_flags, opt_t(scan_t_opt, scan_t),
                            format, out);
        if (minimize->parsed())
            return cmd_minimize(registry, minimize_id, minimize_grid,
                                opt_t(minimize_t_opt, minimize_t), format, out);
        if (compare->parsed())
            return cmd_compare(registry, compare_first, compare_second, compare_flags,
                               format, out);
        if (identities->parsed()) return cmd_identities(identities_flags, format, out);
        if (catalog->parsed()) return cmd_catalog(registry, catalog_action, format, out);
        if (eval_cmd->parsed())
            return cmd_eval(eval_expr, eval_triangle, eval_triple,
                            opt_t(eval_t_opt, eval_t), format, out);
        throw UsageError("no subcommand given");
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        if (format == Format::json) {
            ordered_json j;
            j["status"] = "error";
            j["message"] = e.what();
            emit(j, format, out);
        }
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        if (format == Format::json) {
            ordered_json j;
            j["status"] = "error";
            j["message"] = e.what();
            emit(j, format, out);
        }
        return 1;
    }
}

}  // namespace trigon
