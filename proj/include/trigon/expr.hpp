#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "trigon/triangle.hpp"

namespace trigon {

/// Which symbol set an expression may use: triangle quantities
/// (a b c s S R r r_a r_b r_c h_a h_b h_c A B C) or positive triples
/// (x y z plus the free parameter t).
enum class Domain { triangle, positive_triple };

enum class Sym {
    a, b, c, s, S, R, r,
    ra, rb, rc, ha, hb, hc,
    A, B, C,
    x, y, z, t,
};
inline constexpr std::size_t kSymCount = 20;

enum class UnaryOp { neg, sqrt, cbrt, abs, tan, sin, cos, arccos };
enum class BinaryOp { add, sub, mul, div, pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree. `pow` always has a number literal as its
/// exponent (the grammar admits nothing else), and `CycSum` children never
/// contain a nested cyclic sum.
struct Expr {
    struct Number { double value; };
    struct Symbol { Sym sym; };
    struct Unary { UnaryOp op; ExprPtr child; };
    struct Binary { BinaryOp op; ExprPtr lhs, rhs; };
    struct CycSum { ExprPtr child; };

    std::variant<Number, Symbol, Unary, Binary, CycSum> node;
};

ExprPtr make_number(double value);
ExprPtr make_symbol(Sym sym);
ExprPtr make_unary(UnaryOp op, ExprPtr child);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_cyc(ExprPtr child);

enum class Rel { ge, le };

struct InequalityDef {
    std::string id;
    Domain domain = Domain::triangle;
    ExprPtr lhs;
    Rel rel = Rel::ge;
    ExprPtr rhs;
};

/// Raised on any lexical or syntax error; `position` is the 1-based
/// character offset into the input text.
class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Raised when evaluation hits an undefined operation (division by zero,
/// sqrt of a negative, arccos outside [-1, 1], unbound symbol, overflow).
class eval_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ExprPtr parse_expression(std::string_view text, Domain domain);
InequalityDef parse_inequality(std::string_view id, std::string_view text, Domain domain);

/// Serialize back to grammar-conformant text; parsing the result yields a
/// structurally identical tree.
std::string to_string(const ExprPtr& expr);
std::string to_string(const InequalityDef& def);
std::string_view rel_text(Rel rel);

/// Shortest decimal form that parses back to exactly `value`.
std::string format_double(double value);

/// Replace every cyc(e) by e + rho(e) + rho^2(e), where rho rotates
/// a->b->c->a (and the matching subscripted families) and x->y->z->x,
/// leaving s, S, R, r and t fixed.
ExprPtr expand_cyc(const ExprPtr& expr);

/// One application of the rotation rho (see expand_cyc).
ExprPtr rotate_symbols(const ExprPtr& expr);

bool structurally_equal(const ExprPtr& lhs, const ExprPtr& rhs);

/// Values for evaluation. Symbols left unbound raise eval_error on use.
class Bindings {
  public:
    Bindings();
    static Bindings for_triangle(const DerivedQuantities& q);
    static Bindings for_triple(double x, double y, double z);

    void set(Sym sym, double value);
    bool has(Sym sym) const;
    double get(Sym sym) const;

  private:
    std::array<double, kSymCount> values_;
    std::array<bool, kSymCount> bound_;
};

double evaluate(const ExprPtr& expr, const Bindings& bindings);

enum class Homogeneity {
    homogeneous,    // consistent degree across probes
    inhomogeneous,  // probes disagree: mixed-degree expression
    zero,           // evaluated to exactly 0 on every probe
    indeterminate,  // probes kept failing (zeros or undefined operations)
};

struct HomogeneityResult {
    Homogeneity status = Homogeneity::indeterminate;
    double degree = 0.0;  // meaningful only when status == homogeneous
};

/// Numeric probe: compare f at a random well-conditioned point and at the
/// same point scaled by 2; the degree is log2 of the ratio. Three probes
/// must agree to 1e-9. Deterministic (fixed internal seed).
HomogeneityResult homogeneity_degree(const ExprPtr& expr, Domain domain);

std::string_view symbol_name(Sym sym);
std::optional<Sym> symbol_from_name(std::string_view name, Domain domain);
std::string_view domain_name(Domain domain);
std::optional<Domain> domain_from_name(std::string_view name);

}  // namespace trigon
