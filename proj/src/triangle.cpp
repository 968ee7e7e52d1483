#include "trigon/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <cfloat>
#include <stdexcept>

namespace trigon {

namespace {

[[noreturn]] void reject(const std::string& what) {
    throw std::invalid_argument("invalid triangle: violated " + what);
}

void check_side(double v, const char* name) {
    if (!std::isfinite(v)) reject(std::string(name) + " finite");
    if (!(v > 0.0)) reject(std::string(name) + " > 0");
}

/// (b + c - a)/2, ordered so the cancellation happens between the two
/// largest magnitudes first. For a valid triangle this loses at most one
/// ulp even when b + c - a is tiny relative to the sides.
double half_excess(double b, double c, double a) {
    const double hi = std::max(b, c);
    const double lo = std::min(b, c);
    return 0.5 * ((hi - a) + lo);
}

double clamped_acos(double x) {
    return std::acos(std::clamp(x, -1.0, 1.0));
}

double rel_residual(double lhs, double rhs) {
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
    return std::fabs(lhs - rhs) / scale;
}

}  // namespace

SideTriple::SideTriple(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    check_side(a, "a");
    check_side(b, "b");
    check_side(c, "c");
    if (!(a + b > c)) reject("a + b > c");
    if (!(b + c > a)) reject("b + c > a");
    if (!(c + a > b)) reject("c + a > b");
}

RaviTriple::RaviTriple(double m_, double n_, double p_) : m(m_), n(n_), p(p_) {
    if (!std::isfinite(m) || !std::isfinite(n) || !std::isfinite(p))
        throw std::invalid_argument("invalid Ravi triple: violated finite coordinates");
    if (!(m > 0.0)) throw std::invalid_argument("invalid Ravi triple: violated m > 0");
    if (!(n > 0.0)) throw std::invalid_argument("invalid Ravi triple: violated n > 0");
    if (!(p > 0.0)) throw std::invalid_argument("invalid Ravi triple: violated p > 0");
}

SideTriple sides_from_ravi(const RaviTriple& rv) {
    return SideTriple(rv.n + rv.p, rv.p + rv.m, rv.m + rv.n);
}

RaviTriple ravi_from_sides(const SideTriple& t) {
    return RaviTriple(half_excess(t.b, t.c, t.a),
                      half_excess(t.c, t.a, t.b),
                      half_excess(t.a, t.b, t.c));
}

SideTriple normalize_perimeter(const SideTriple& t) {
    const double snap = 8.0 * DBL_EPSILON;
    double s = 0.5 * (t.a + t.b + t.c);
    if (std::fabs(s - 1.0) <= snap) return t;
    SideTriple u(t.a / s, t.b / s, t.c / s);
    double s2 = 0.5 * (u.a + u.b + u.c);
    if (std::fabs(s2 - 1.0) <= snap) return u;
    return SideTriple(u.a / s2, u.b / s2, u.c / s2);
}

DerivedQuantities derive(const SideTriple& t) {
    DerivedQuantities q{};
    const double a = t.a, b = t.b, c = t.c;
    q.a = a;
    q.b = b;
    q.c = c;
    q.s = 0.5 * (a + b + c);

    const double sa = half_excess(b, c, a);
    const double sb = half_excess(c, a, b);
    const double sc = half_excess(a, b, c);

    q.area = std::sqrt(q.s * sa * sb * sc);
    q.r = q.area / q.s;
    q.R = (a * b * c) / (4.0 * q.area);
    q.ra = q.area / sa;
    q.rb = q.area / sb;
    q.rc = q.area / sc;
    q.ha = 2.0 * q.area / a;
    q.hb = 2.0 * q.area / b;
    q.hc = 2.0 * q.area / c;

    q.A = clamped_acos((b * b + c * c - a * a) / (2.0 * b * c));
    q.B = clamped_acos((c * c + a * a - b * b) / (2.0 * c * a));
    q.C = clamped_acos((a * a + b * b - c * c) / (2.0 * a * b));

    q.tan_half_A = q.r / sa;
    q.tan_half_B = q.r / sb;
    q.tan_half_C = q.r / sc;

    q.degeneracy = std::min({sa, sb, sc}) / q.s;
    return q;
}

namespace {

const std::array<std::string_view, kIdentityCount> kIds = {
    "I1",  "I2",  "I3",  "I4",  "I5",  "I6",  "I7",  "I8",  "I9",
    "I10", "I11", "I12", "I13", "I14", "I15", "I16", "I17"};

const std::array<std::string_view, kIdentityCount> kStatements = {
    "S^2 = s(s-a)(s-b)(s-c)",
    "ab + bc + ca = s^2 + r^2 + 4Rr",
    "a^2 + b^2 + c^2 = 2(s^2 - r^2 - 4Rr)",
    "sum (b+c-a)(c+a-b) = 4r(4R + r)",
    "(b+c-a)(c+a-b)(a+b-c) = 8sr^2",
    "sum (s-a)(s-b) = r(4R + r)",
    "sum (s-a)^2(s-b)^2 = (sum (s-a)(s-b))^2 - 2s^2 r^2",
    "(4R + r)/s = (2 sum ab - sum a^2) / (4S)",
    "sum (s-a)(s-b)/c = r(s^2 + (4R + r)^2) / (4sR)",
    "sum (b+c-a)^2 = 4(s^2 - 2r^2 - 8Rr)",
    "sum (b+c-a)^2 (c+a-b)^2 = 16r^2((4R + r)^2 - 2s^2)",
    "sum 1/(b+c-a)^2 = ((4R + r)^2 / (s^2 r^2) - 2/r^2) / 4",
    "a^2 = (b-c)^2 + 4S tan(A/2), cyclically and summed",
    "sum r_a/a = ((4R + r)^2 + s^2) / (4Rs)",
    "sum 1/(b+c-a) = (4R + r) / (2sr)",
    "(2 sum ab - sum a^2)^2 = 48 S^2 + 4(sum a^4 + abc sum a - sum ab(a^2 + b^2))",
    "tan(A/2) = r/(s-a), cyclically"};

}  // namespace

const std::array<std::string_view, kIdentityCount>& identity_ids() { return kIds; }

std::string_view identity_statement(std::string_view id) {
    for (int i = 0; i < kIdentityCount; ++i)
        if (kIds[i] == id) return kStatements[i];
    throw std::invalid_argument("unknown identity id '" + std::string(id) + "'");
}

std::array<IdentityResidual, kIdentityCount> identity_residuals(const SideTriple& t) {
    const DerivedQuantities q = derive(t);
    const double a = q.a, b = q.b, c = q.c, s = q.s, S = q.area, R = q.R, r = q.r;

    const double sa = half_excess(b, c, a);
    const double sb = half_excess(c, a, b);
    const double sc = half_excess(a, b, c);
    const double u = 2.0 * sa, v = 2.0 * sb, w = 2.0 * sc;  // b+c-a, c+a-b, a+b-c

    const double sum_ab = a * b + b * c + c * a;
    const double sum_a2 = a * a + b * b + c * c;
    const double fourRr = 4.0 * R + r;

    std::array<IdentityResidual, kIdentityCount> out{};
    int k = 0;
    auto put = [&](double lhs, double rhs) {
        out[k] = IdentityResidual{kIds[k], rel_residual(lhs, rhs)};
        ++k;
    };

    // I1
    put(S * S, s * sa * sb * sc);
    // I2
    put(sum_ab, s * s + r * r + 4.0 * R * r);
    // I3
    put(sum_a2, 2.0 * (s * s - r * r - 4.0 * R * r));
    // I4
    put(u * v + v * w + w * u, 4.0 * r * fourRr);
    // I5
    put(u * v * w, 8.0 * s * r * r);
    // I6
    put(sa * sb + sb * sc + sc * sa, r * fourRr);
    // I7
    {
        const double e2 = sa * sb + sb * sc + sc * sa;
        put(sa * sa * sb * sb + sb * sb * sc * sc + sc * sc * sa * sa,
            e2 * e2 - 2.0 * s * s * r * r);
    }
    // I8
    put(fourRr / s, (2.0 * sum_ab - sum_a2) / (4.0 * S));
    // I9
    put(sa * sb / c + sb * sc / a + sc * sa / b,
        r * (s * s + fourRr * fourRr) / (4.0 * s * R));
    // I10
    put(u * u + v * v + w * w, 4.0 * (s * s - 2.0 * r * r - 8.0 * R * r));
    // I11: with u = 2(s-a) etc., sum u^2 v^2 = 16 sum (s-a)^2(s-b)^2
    //      = 16 r^2 ((4R+r)^2 - 2 s^2); cross-checked by exact integers
    //      at (3,4,5): 784 = 16 * 49. Consistent with I12 via I5.
    put(u * u * v * v + v * v * w * w + w * w * u * u,
        16.0 * r * r * (fourRr * fourRr - 2.0 * s * s));
    // I12
    put(1.0 / (u * u) + 1.0 / (v * v) + 1.0 / (w * w),
        0.25 * (fourRr * fourRr / (s * s * r * r) - 2.0 / (r * r)));
    // I13: vertex forms and the summed form; report the worst of the four.
    {
        const double tA = std::tan(0.5 * q.A);
        const double tB = std::tan(0.5 * q.B);
        const double tC = std::tan(0.5 * q.C);
        double worst = rel_residual(a * a, (b - c) * (b - c) + 4.0 * S * tA);
        worst = std::max(worst, rel_residual(b * b, (c - a) * (c - a) + 4.0 * S * tB));
        worst = std::max(worst, rel_residual(c * c, (a - b) * (a - b) + 4.0 * S * tC));
        const double diffsq =
            (a - b) * (a - b) + (b - c) * (b - c) + (c - a) * (c - a);
        worst = std::max(worst,
                         rel_residual(sum_a2, diffsq + 4.0 * S * (tA + tB + tC)));
        out[k] = IdentityResidual{kIds[k], worst};
        ++k;
    }
    // I14
    put(q.ra / a + q.rb / b + q.rc / c,
        (fourRr * fourRr + s * s) / (4.0 * R * s));
    // I15
    put(1.0 / u + 1.0 / v + 1.0 / w, fourRr / (2.0 * s * r));
    // I16: grouped so neither side vanishes on valid triangles; the raw
    // difference form (lhs - 48 S^2) tends to 0 at the equilateral point
    // and would turn roundoff into a large relative residual.
    {
        const double lhs = (2.0 * sum_ab - sum_a2) * (2.0 * sum_ab - sum_a2);
        const double sum_a4 = a * a * a * a + b * b * b * b + c * c * c * c;
        const double schur2 = sum_a4 + a * b * c * (a + b + c) -
                              (a * b * (a * a + b * b) + b * c * (b * b + c * c) +
                               c * a * (c * c + a * a));
        put(lhs, 48.0 * S * S + 4.0 * schur2);
    }
    // I17: tan(A/2) from the angle vs r/(s-a); worst vertex.
    {
        double worst = rel_residual(std::tan(0.5 * q.A), q.tan_half_A);
        worst = std::max(worst, rel_residual(std::tan(0.5 * q.B), q.tan_half_B));
        worst = std::max(worst, rel_residual(std::tan(0.5 * q.C), q.tan_half_C));
        out[k] = IdentityResidual{kIds[k], worst};
        ++k;
    }

    return out;
}

}  // namespace trigon
