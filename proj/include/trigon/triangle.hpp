#pragma once

#include <array>
#include <string>
#include <string_view>

namespace trigon {

/// A valid triangle given by its three side lengths.
/// Construction enforces positivity and the strict triangle inequality;
/// the diagnostic names the violated constraint.
struct SideTriple {
    double a, b, c;
    SideTriple(double a_, double b_, double c_);
};

/// Ravi coordinates (m, n, p) = (s-a, s-b, s-c). Every positive triple
/// corresponds to exactly one valid triangle via a = n+p, b = p+m, c = m+n.
struct RaviTriple {
    double m, n, p;
    RaviTriple(double m_, double n_, double p_);
};

/// Every scalar quantity the inequality catalog refers to, derived from
/// the side lengths. Angle A sits opposite side a; tan_half_* is computed
/// as r/(s-a), which stays accurate near degeneracy.
struct DerivedQuantities {
    double a, b, c;                         // echo of the sides
    double s;                               // semiperimeter
    double area;                            // S
    double R;                               // circumradius
    double r;                               // inradius
    double ra, rb, rc;                      // exradii
    double ha, hb, hc;                      // altitudes
    double A, B, C;                         // angles in radians
    double tan_half_A, tan_half_B, tan_half_C;
    double degeneracy;                      // min(s-a, s-b, s-c)/s, in (0, 1/3]
};

DerivedQuantities derive(const SideTriple& sides);

SideTriple sides_from_ravi(const RaviTriple& rv);
RaviTriple ravi_from_sides(const SideTriple& sides);

/// Rescale so that a + b + c = 2 (s = 1). Idempotent: an already
/// normalized triple is returned unchanged, bit for bit.
SideTriple normalize_perimeter(const SideTriple& sides);

/// One residual per built-in identity, as |lhs - rhs| / max(|lhs|, |rhs|, 1e-300).
struct IdentityResidual {
    std::string_view id;
    double residual;
};

inline constexpr int kIdentityCount = 17;

/// Identity ids "I1".."I17" in a fixed order.
const std::array<std::string_view, kIdentityCount>& identity_ids();

/// Human-readable statement of each identity, for reports.
std::string_view identity_statement(std::string_view id);

std::array<IdentityResidual, kIdentityCount> identity_residuals(const SideTriple& sides);

}  // namespace trigon
