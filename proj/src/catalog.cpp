#include "trigon/catalog.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace trigon {

namespace {

struct RawEntry {
    std::string_view id;
    Domain domain;
    std::string_view text;
    std::string_view reference;
    std::string_view notes;
    bool tight;
    bool allow_inhomogeneous;
};

// The sum-of-squares lhs is spelled identically across the family sharing
// it so that dominance comparisons can match it structurally.
constexpr RawEntry kBuiltins[] = {
    {"weitzenbock", Domain::triangle,
     "a^2 + b^2 + c^2 >= 4*S*sqrt(3)",
     "Weitzenbock (1919)",
     "equality iff equilateral", true, false},
    {"chain_1", Domain::triangle,
     "a^2 + b^2 + c^2 >= a*b + b*c + c*a",
     "rearrangement / AM-GM",
     "step 1 of the symmetric-mean chain ending in 4*S*sqrt(3)", true, false},
    {"chain_2", Domain::triangle,
     "a*b + b*c + c*a >= a*sqrt(b*c) + b*sqrt(c*a) + c*sqrt(a*b)",
     "AM-GM on each pair",
     "step 2 of the symmetric-mean chain", true, false},
    {"chain_3", Domain::triangle,
     "a*sqrt(b*c) + b*sqrt(c*a) + c*sqrt(a*b) >= 3*cbrt(a^2*b^2*c^2)",
     "AM-GM on three terms",
     "step 3 of the symmetric-mean chain", true, false},
    {"chain_4", Domain::triangle,
     "3*cbrt(a^2*b^2*c^2) >= 4*S*sqrt(3)",
     "abc = 4RrS with Mitrinovic's bound",
     "final step of the chain proving the sum-of-squares area bound", true, false},
    {"chain_5", Domain::triangle,
     "3*cbrt(a^2*b^2*c^2) >= 18*R*r",
     "abc = 4RrS with Euler's inequality",
     "alternative chain endpoint; stronger than 4*S*sqrt(3) by Mitrinovic", true, false},
    {"finsler_hadwiger", Domain::triangle,
     "a^2 + b^2 + c^2 >= 4*S*sqrt(3) + (a - b)^2 + (b - c)^2 + (c - a)^2",
     "Finsler & Hadwiger (1938)",
     "strengthens weitzenbock by the squared side differences", true, false},
    {"mitrinovic", Domain::triangle,
     "s <= 3*sqrt(3)/2*R",
     "Mitrinovic",
     "perimeter bound by the circumradius", true, false},
    {"four_R_plus_r", Domain::triangle,
     "4*R + r >= s*sqrt(3)",
     "classical; equivalent to tan(A/2) + tan(B/2) + tan(C/2) >= sqrt(3)",
     "", true, false},
    {"euler", Domain::triangle,
     "R >= 2*r",
     "Euler (1765)",
     "equality iff equilateral", true, false},
    {"eighteen_Rr", Domain::triangle,
     "a^2 + b^2 + c^2 >= 18*R*r",
     "chain endpoint via chain_5",
     "sharper than weitzenbock since 18Rr >= 4S*sqrt(3) by Mitrinovic", true, false},
    {"reversed_18Rr", Domain::triangle,
     "a^2 + b^2 + c^2 <= 18*R*r + (a - b)^2 + (b - c)^2 + (c - a)^2",
     "reversal of eighteen_Rr with the squared-difference correction",
     "gap equals 2r(R - 2r); the >= direction fails off-equilateral", true, false},
    {"refinement_1", Domain::triangle,
     "a^2 + b^2 + c^2 >= 2*S*sqrt(3) + 2*r*(4*R + r) + (a - b)^2 + (b - c)^2 + (c - a)^2",
     "Finsler-Hadwiger strengthening via the 4R + r bound",
     "replaces half the area term using 2r(4R + r) >= 2S*sqrt(3)", true, false},
    {"refinement_2", Domain::triangle,
     "a^2 + b^2 + c^2 >= 4*S*sqrt(3 + 4*(R - 2*r)/(4*R + r)) + (a - b)^2 + (b - c)^2 + (c - a)^2",
     "Finsler-Hadwiger strengthening with an Euler-deficit radical",
     "radicand 3 + 4(R - 2r)/(4R + r) >= 3 with equality iff equilateral", true, false},
    {"key_scalar", Domain::triangle,
     "((4*R + r)/s)^2 + 9*r/(4*R + r) >= 4",
     "pivotal scalar bound linking (4R + r)/s to Euler's ratio",
     "dimensionless; drives refinement_2 and the application bounds", true, false},
    {"app1", Domain::triangle,
     "1/(b + c - a) + 1/(c + a - b) + 1/(a + b - c) >= (1/(2*r))*sqrt(4 - 9*r/(4*R + r))",
     "corollary of key_scalar",
     "reciprocal side-excess sum", true, false},
    {"app2_corrected", Domain::triangle,
     "1/(a*(b + c - a)) + 1/(b*(c + a - b)) + 1/(c*(a + b - c)) >= "
     "(1/(8*R*r))*(5 - 9*r/(4*R + r))",
     "corollary of key_scalar, rhs rescaled to degree -2",
     "see app2_as_printed for the uncorrected variant", true, false},
    {"app2_as_printed", Domain::triangle,
     "1/(a*(b + c - a)) + 1/(b*(c + a - b)) + 1/(c*(a + b - c)) >= "
     "(r/(8*R))*(5 - 9*r/(4*R + r))",
     "uncorrected variant of app2_corrected",
     "dimensionally inconsistent (lhs degree -2, rhs degree 0); holds but is far "
     "from tight at unit semiperimeter; kept for transparency", false, true},
    {"app3", Domain::triangle,
     "1/(b + c - a)^2 + 1/(c + a - b)^2 + 1/(a + b - c)^2 >= "
     "(1/r^2)*(1/2 - 9*r/(4*(4*R + r)))",
     "corollary of key_scalar",
     "squared reciprocal side-excess sum", true, false},
    {"app4", Domain::triangle,
     "a^2/(b + c - a) + b^2/(c + a - b) + c^2/(a + b - c) >= "
     "3*R*sqrt(4 - 9*r/(4*R + r))",
     "corollary of key_scalar with eighteen_Rr",
     "", true, false},
    {"app5", Domain::triangle,
     "a/r_a + b/r_b + c/r_c >= 2*sqrt(3 + 4*(R - 2*r)/(4*R + r))",
     "corollary of key_scalar",
     "side-to-exradius ratios", true, false},
    {"app6", Domain::triangle,
     "1/(h_a*r_a) + 1/(h_b*r_b) + 1/(h_c*r_c) >= "
     "(1/S)*sqrt(3 + 4*(R - 2*r)/(4*R + r))",
     "corollary of key_scalar",
     "altitude-exradius products", true, false},
    {"app7", Domain::triangle,
     "tan(A/2) + tan(B/2) + tan(C/2) >= sqrt(3 + 4*(R - 2*r)/(4*R + r))",
     "corollary of key_scalar",
     "sharpens the classical tangent half-angle bound sqrt(3)", true, false},
    {"app8", Domain::triangle,
     "r_a/a + r_b/b + r_c/c >= s*(5*R - r)/(R*(4*R + r))",
     "corollary of key_scalar",
     "exradius-to-side ratios", true, false},
    {"schur_t1", Domain::positive_triple,
     "x*(x - y)*(x - z) + y*(y - z)*(y - x) + z*(z - x)*(z - y) >= 0",
     "Schur, t = 1",
     "equality at x = y = z and at x = y, z = 0 boundary points", true, false},
    {"schur_t1_alt", Domain::positive_triple,
     "2*(x*y + y*z + z*x) - (x^2 + y^2 + z^2) <= 9*x*y*z/(x + y + z)",
     "Schur t = 1, symmetric-function form",
     "schur_t1 rearranged after division by x + y + z", true, false},
    {"schur_t2", Domain::positive_triple,
     "x^4 + y^4 + z^4 + 2*x*y*z*(x + y + z) >= (x^2 + y^2 + z^2)*(x*y + y*z + z*x)",
     "Schur, t = 2, quartic form",
     "", true, false},
    {"schur_t2_sides", Domain::triangle,
     "cyc(a^4) + cyc(a^2*b*c) >= cyc(a*b*(a^2 + b^2))",
     "Schur t = 2 restated over side lengths",
     "same gap as schur_t2 evaluated at (x, y, z) = (a, b, c)", true, false},
    {"schur_reciprocal", Domain::positive_triple,
     "x*y/z + y*z/x + z*x/y + 9*x*y*z/(x*y + y*z + z*x) >= 2*(x + y + z)",
     "Schur t = 1 divided by xyz",
     "", true, false},
};

CatalogEntry annotate(std::string id, InequalityDef def, std::string reference,
                      std::string notes, bool tight, bool allow_inhomogeneous) {
    CatalogEntry entry;
    entry.id = std::move(id);
    entry.def = std::move(def);
    entry.reference = std::move(reference);
    entry.notes = std::move(notes);
    entry.tight = tight;
    const DefinitionDegree dd = definition_degree(entry.def);
    if (!dd.common && !allow_inhomogeneous)
        throw std::invalid_argument("entry '" + entry.id +
                                    "' failed the homogeneity check");
    entry.degree = dd.common;
    return entry;
}

}  // namespace

DefinitionDegree definition_degree(const InequalityDef& def) {
    DefinitionDegree out;
    out.lhs = homogeneity_degree(def.lhs, def.domain);
    out.rhs = homogeneity_degree(def.rhs, def.domain);
    const bool lhs_h = out.lhs.status == Homogeneity::homogeneous;
    const bool rhs_h = out.rhs.status == Homogeneity::homogeneous;
    if (lhs_h && rhs_h) {
        if (std::fabs(out.lhs.degree - out.rhs.degree) <= 1e-9)
            out.common = out.lhs.degree;
    } else if (lhs_h && out.rhs.status == Homogeneity::zero) {
        out.common = out.lhs.degree;
    } else if (rhs_h && out.lhs.status == Homogeneity::zero) {
        out.common = out.rhs.degree;
    } else if (out.lhs.status == Homogeneity::zero &&
               out.rhs.status == Homogeneity::zero) {
        out.common = 0.0;
    }
    return out;
}

InequalityDef schur_inequality(double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("Schur exponent t must be finite");

    auto term = [&](Sym v, Sym w1, Sym w2) {
        ExprPtr head;
        if (t == 0.0) {
            return make_binary(BinaryOp::mul,
                               make_binary(BinaryOp::sub, make_symbol(v), make_symbol(w1)),
                               make_binary(BinaryOp::sub, make_symbol(v), make_symbol(w2)));
        }
        if (t == 1.0) {
            head = make_symbol(v);
        } else if (t > 0.0) {
            head = make_binary(BinaryOp::pow, make_symbol(v), make_number(t));
        } else {
            head = make_binary(BinaryOp::div, make_number(1.0),
                               make_binary(BinaryOp::pow, make_symbol(v), make_number(-t)));
        }
        ExprPtr d1 = make_binary(BinaryOp::sub, make_symbol(v), make_symbol(w1));
        ExprPtr d2 = make_binary(BinaryOp::sub, make_symbol(v), make_symbol(w2));
        return make_binary(BinaryOp::mul,
                           make_binary(BinaryOp::mul, std::move(head), std::move(d1)),
                           std::move(d2));
    };

    InequalityDef def;
    def.id = "schur_t";
    def.domain = Domain::positive_triple;
    def.lhs = make_binary(BinaryOp::add,
                          make_binary(BinaryOp::add, term(Sym::x, Sym::y, Sym::z),
                                      term(Sym::y, Sym::z, Sym::x)),
                          term(Sym::z, Sym::x, Sym::y));
    def.rel = Rel::ge;
    def.rhs = make_number(0.0);
    return def;
}

CatalogEntry materialize_schur(double t) {
    CatalogEntry entry = annotate("schur_t", schur_inequality(t),
                                  "Schur family, exponent t",
                                  "materialized at t = " + format_double(t),
                                  /*tight=*/true, /*allow_inhomogeneous=*/false);
    return entry;
}

Registry::Registry() {
    entries_.reserve(std::size(kBuiltins) + 1);
    for (const auto& raw : kBuiltins) {
        entries_.push_back(annotate(std::string(raw.id),
                                    parse_inequality(raw.id, raw.text, raw.domain),
                                    std::string(raw.reference), std::string(raw.notes),
                                    raw.tight, raw.allow_inhomogeneous));
    }
    // The parameterized family: the stored definition is the t = 1
    // instance; gap/scan/minimize require an explicit t to materialize.
    CatalogEntry schur;
    schur.id = "schur_t";
    schur.def = schur_inequality(1.0);
    schur.reference = "Schur family, exponent t";
    schur.notes = "sum x^t (x - y)(x - z) >= 0; supply t at check time (degree t + 2)";
    schur.tight = true;
    schur.degree = std::nullopt;
    schur.parameterized = true;
    entries_.push_back(std::move(schur));
}

const CatalogEntry* Registry::find(std::string_view id) const {
    for (const auto& entry : entries_)
        if (entry.id == id) return &entry;
    return nullptr;
}

std::vector<ParsedDefinition> parse_definition_stream(std::istream& in,
                                                      std::string_view source_name) {
    auto fail = [&](int line, const std::string& what) -> void {
        throw std::invalid_argument(std::string(source_name) + ":" +
                                    std::to_string(line) + ": " + what);
    };
    auto trim = [](std::string_view sv) {
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
            sv.remove_suffix(1);
        return sv;
    };

    std::vector<ParsedDefinition> out;
    std::string raw_line;
    int line = 0;
    while (std::getline(in, raw_line)) {
        ++line;
        std::string_view sv(raw_line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty()) continue;

        const auto colon1 = sv.find(':');
        if (colon1 == std::string_view::npos)
            fail(line, "expected 'id : domain : inequality'");
        const auto colon2 = sv.find(':', colon1 + 1);
        if (colon2 == std::string_view::npos)
            fail(line, "expected 'id : domain : inequality'");

        const std::string_view id = trim(sv.substr(0, colon1));
        if (id.empty()) fail(line, "empty entry id");
        for (char ch : id) {
            const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                            (ch >= '0' && ch <= '9') || ch == '_';
            if (!ok) fail(line, "entry id may use only letters, digits and '_'");
        }

        const std::string_view domain_text = trim(sv.substr(colon1 + 1, colon2 - colon1 - 1));
        const auto domain = domain_from_name(domain_text);
        if (!domain)
            fail(line, "unknown domain '" + std::string(domain_text) +
                           "' (expected 'triangle' or 'positive_triple')");

        const std::string_view body = trim(sv.substr(colon2 + 1));
        try {
            ParsedDefinition parsed;
            parsed.id = std::string(id);
            parsed.def = parse_inequality(id, body, *domain);
            parsed.line = line;
            out.push_back(std::move(parsed));
        } catch (const parse_error& e) {
            fail(line, e.what());
        }
    }
    return out;
}

int Registry::load_definitions(std::istream& in, std::string_view source_name,
                               bool allow_inhomogeneous) {
    const auto parsed = parse_definition_stream(in, source_name);
    int added = 0;
    for (const auto& pd : parsed) {
        if (find(pd.id) != nullptr)
            throw std::invalid_argument(std::string(source_name) + ":" +
                                        std::to_string(pd.line) + ": duplicate entry id '" +
                                        pd.id + "'");
        const DefinitionDegree dd = definition_degree(pd.def);
        if (!dd.common && !allow_inhomogeneous) {
            auto describe = [](const HomogeneityResult& h) -> std::string {
                switch (h.status) {
                    case Homogeneity::homogeneous: return "degree " + format_double(h.degree);
                    case Homogeneity::zero: return "identically zero";
                    case Homogeneity::inhomogeneous: return "inhomogeneous";
                    default: return "indeterminate";
                }
            };
            throw std::invalid_argument(
                std::string(source_name) + ":" + std::to_string(pd.line) + ": entry '" +
                pd.id + "' is not homogeneous (lhs " + describe(dd.lhs) + ", rhs " +
                describe(dd.rhs) + "); pass --allow-inhomogeneous to load anyway");
        }

        CatalogEntry entry;
        entry.id = pd.id;
        entry.def = pd.def;
        entry.reference = "user definition";
        entry.notes = std::string(source_name) + " line " + std::to_string(pd.line);
        entry.tight = false;  // unknown for user entries
        entry.degree = dd.common;
        entries_.push_back(std::move(entry));
        ++added;
    }
    return added;
}

std::string Registry::export_definitions() const {
    std::string out;
    out += "# trigon inequality catalog\n";
    out += "# format: id : domain : expr >= expr   (or <=)\n";
    for (const auto& entry : entries_) {
        if (entry.parameterized) {
            out += "# ";
            out += entry.id;
            out += " : ";
            out += domain_name(entry.def.domain);
            out += " : parameterized family sum x^t (x - y)(x - z) >= 0; "
                   "materialize with --t\n";
            continue;
        }
        out += entry.id;
        out += " : ";
        out += domain_name(entry.def.domain);
        out += " : ";
        out += to_string(entry.def);
        out += '\n';
    }
    return out;
}

}  // namespace trigon
