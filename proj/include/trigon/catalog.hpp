#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trigon/expr.hpp"

namespace trigon {

/// A named inequality with its metadata. `tight` means equality is
/// attained at the equilateral configuration (x = y = z for triples).
/// `degree` is the common homogeneity degree of both sides, empty when the
/// sides disagree (only app2_as_printed among the built-ins).
struct CatalogEntry {
    std::string id;
    InequalityDef def;
    std::string reference;  // classical attribution or derivation note
    std::string notes;
    bool tight = true;
    std::optional<double> degree;
    bool parameterized = false;  // template requiring a numeric t
};

/// Homogeneity of both sides of a definition plus the common degree when
/// the sides agree (a side that is identically zero adopts the other's).
struct DefinitionDegree {
    HomogeneityResult lhs;
    HomogeneityResult rhs;
    std::optional<double> common;
};

DefinitionDegree definition_degree(const InequalityDef& def);

/// sum_cyc x^t (x - y)(x - z) >= 0 with the exponent materialized into the
/// tree: t = 1 uses a bare factor, t = 0 drops it, t < 0 becomes 1/x^|t|,
/// so the result always serializes inside the grammar.
InequalityDef schur_inequality(double t);

/// Concrete (non-parameterized) entry for schur_inequality(t).
CatalogEntry materialize_schur(double t);

/// One parsed line of a definition file.
struct ParsedDefinition {
    std::string id;
    InequalityDef def;
    int line = 0;
};

/// Read the `id : domain : expr REL expr` format; '#' starts a comment.
/// Errors are std::invalid_argument prefixed with "<source>:<line>".
std::vector<ParsedDefinition> parse_definition_stream(std::istream& in,
                                                      std::string_view source_name);

/// The built-in entries plus any user definitions loaded on top.
class Registry {
  public:
    Registry();  // starts with the built-in catalog

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(std::string_view id) const;

    /// Append user definitions. Rejects duplicate ids and (unless allowed)
    /// definitions whose two sides have different homogeneity degrees.
    /// Returns the number of entries added.
    int load_definitions(std::istream& in, std::string_view source_name,
                         bool allow_inhomogeneous);

    /// Render every entry in the definition-file format. Parsing the
    /// result reproduces structurally identical definitions.
    std::string export_definitions() const;

  private:
    std::vector<CatalogEntry> entries_;
};

}  // namespace trigon
