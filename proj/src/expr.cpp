#include "trigon/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "trigon/detail/splitmix.hpp"

namespace trigon {

namespace {

struct SymInfo {
    Sym sym;
    std::string_view name;
    Domain domain;
};

constexpr SymInfo kSymTable[] = {
    {Sym::a, "a", Domain::triangle},
    {Sym::b, "b", Domain::triangle},
    {Sym::c, "c", Domain::triangle},
    {Sym::s, "s", Domain::triangle},
    {Sym::S, "S", Domain::triangle},
    {Sym::R, "R", Domain::triangle},
    {Sym::r, "r", Domain::triangle},
    {Sym::ra, "r_a", Domain::triangle},
    {Sym::rb, "r_b", Domain::triangle},
    {Sym::rc, "r_c", Domain::triangle},
    {Sym::ha, "h_a", Domain::triangle},
    {Sym::hb, "h_b", Domain::triangle},
    {Sym::hc, "h_c", Domain::triangle},
    {Sym::A, "A", Domain::triangle},
    {Sym::B, "B", Domain::triangle},
    {Sym::C, "C", Domain::triangle},
    {Sym::x, "x", Domain::positive_triple},
    {Sym::y, "y", Domain::positive_triple},
    {Sym::z, "z", Domain::positive_triple},
    {Sym::t, "t", Domain::positive_triple},
};

std::size_t sym_index(Sym sym) { return static_cast<std::size_t>(sym); }

/// The cyclic rotation rho. Occurrences of sym in a rotated expression
/// read the value of rho(sym): a->b->c->a and the matching families.
Sym rotate_sym(Sym sym) {
    switch (sym) {
        case Sym::a: return Sym::b;
        case Sym::b: return Sym::c;
        case Sym::c: return Sym::a;
        case Sym::A: return Sym::B;
        case Sym::B: return Sym::C;
        case Sym::C: return Sym::A;
        case Sym::ra: return Sym::rb;
        case Sym::rb: return Sym::rc;
        case Sym::rc: return Sym::ra;
        case Sym::ha: return Sym::hb;
        case Sym::hb: return Sym::hc;
        case Sym::hc: return Sym::ha;
        case Sym::x: return Sym::y;
        case Sym::y: return Sym::z;
        case Sym::z: return Sym::x;
        default: return sym;  // s, S, R, r, t are rotation-invariant
    }
}

struct FuncInfo {
    std::string_view name;
    UnaryOp op;
};

constexpr FuncInfo kFuncTable[] = {
    {"sqrt", UnaryOp::sqrt}, {"cbrt", UnaryOp::cbrt}, {"abs", UnaryOp::abs},
    {"tan", UnaryOp::tan},   {"sin", UnaryOp::sin},   {"cos", UnaryOp::cos},
    {"arccos", UnaryOp::arccos},
};

std::string_view func_name(UnaryOp op) {
    for (const auto& f : kFuncTable)
        if (f.op == op) return f.name;
    return "-";  // neg has no function spelling
}

// ---------------------------------------------------------------- lexer --

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, ge, le, end };

struct Token {
    Tok kind;
    std::size_t pos;         // 1-based offset of the first character
    double value = 0.0;      // Tok::number
    std::string_view text{}; // Tok::ident
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto is_space = [](char ch) {
        return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n';
    };
    auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
    auto is_ident_start = [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_';
    };
    auto is_ident = [&](char ch) { return is_ident_start(ch) || is_digit(ch); };

    while (i < n) {
        const char ch = text[i];
        const std::size_t pos = i + 1;
        if (is_space(ch)) {
            ++i;
            continue;
        }
        if (is_digit(ch)) {
            std::size_t j = i;
            while (j < n && is_digit(text[j])) ++j;
            if (j < n && text[j] == '.') {
                ++j;
                if (j >= n || !is_digit(text[j]))
                    throw parse_error("expected a digit after '.'", j + 1);
                while (j < n && is_digit(text[j])) ++j;
            }
            if (j < n && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (text[k] == '+' || text[k] == '-')) ++k;
                if (k >= n || !is_digit(text[k]))
                    throw parse_error("expected a digit in the exponent", k + 1);
                while (k < n && is_digit(text[k])) ++k;
                j = k;
            }
            double value = 0.0;
            auto res = std::from_chars(text.data() + i, text.data() + j, value);
            if (res.ec == std::errc::result_out_of_range || !std::isfinite(value))
                throw parse_error("number literal out of range", pos);
            if (res.ec != std::errc() || res.ptr != text.data() + j)
                throw parse_error("malformed number literal", pos);
            out.push_back({Tok::number, pos, value, {}});
            i = j;
            continue;
        }
        if (is_ident_start(ch)) {
            std::size_t j = i;
            while (j < n && is_ident(text[j])) ++j;
            out.push_back({Tok::ident, pos, 0.0, text.substr(i, j - i)});
            i = j;
            continue;
        }
        switch (ch) {
            case '+': out.push_back({Tok::plus, pos}); ++i; continue;
            case '-': out.push_back({Tok::minus, pos}); ++i; continue;
            case '*': out.push_back({Tok::star, pos}); ++i; continue;
            case '/': out.push_back({Tok::slash, pos}); ++i; continue;
            case '^': out.push_back({Tok::caret, pos}); ++i; continue;
            case '(': out.push_back({Tok::lparen, pos}); ++i; continue;
            case ')': out.push_back({Tok::rparen, pos}); ++i; continue;
            case '>':
            case '<':
                if (i + 1 >= n || text[i + 1] != '=')
                    throw parse_error(std::string("expected '=' after '") + ch + "'", pos + 1);
                out.push_back({ch == '>' ? Tok::ge : Tok::le, pos});
                i += 2;
                continue;
            default:
                throw parse_error(std::string("unexpected character '") + ch + "'", pos);
        }
    }
    out.push_back({Tok::end, n + 1});
    return out;
}

// --------------------------------------------------------------- parser --

class Parser {
  public:
    Parser(std::string_view text, Domain domain) : tokens_(lex(text)), domain_(domain) {}

    ExprPtr expression() {
        ExprPtr e = parse_expr();
        expect(Tok::end, "unexpected trailing input");
        return e;
    }

    InequalityDef inequality(std::string_view id) {
        InequalityDef def;
        def.id = std::string(id);
        def.domain = domain_;
        def.lhs = parse_expr();
        const Token& tok = peek();
        if (tok.kind == Tok::ge) def.rel = Rel::ge;
        else if (tok.kind == Tok::le) def.rel = Rel::le;
        else throw parse_error("expected '>=' or '<='", tok.pos);
        ++pos_;
        def.rhs = parse_expr();
        expect(Tok::end, "unexpected trailing input");
        return def;
    }

  private:
    const Token& peek() const { return tokens_[pos_]; }

    const Token& advance() { return tokens_[pos_++]; }

    void expect(Tok kind, const char* message) {
        if (peek().kind != kind) throw parse_error(message, peek().pos);
        ++pos_;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const BinaryOp op = advance().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
            lhs = make_binary(op, std::move(lhs), parse_term());
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const BinaryOp op = advance().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
            lhs = make_binary(op, std::move(lhs), parse_factor());
        }
        return lhs;
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (peek().kind == Tok::caret) {
            ++pos_;
            const Token& tok = peek();
            if (tok.kind != Tok::number)
                throw parse_error("exponent must be a number literal", tok.pos);
            ++pos_;
            base = make_binary(BinaryOp::pow, std::move(base), make_number(tok.value));
        }
        return base;
    }

    ExprPtr parse_base() {
        const Token& tok = peek();
        switch (tok.kind) {
            case Tok::number:
                ++pos_;
                return make_number(tok.value);
            case Tok::minus:
                ++pos_;
                return make_unary(UnaryOp::neg, parse_base());
            case Tok::lparen: {
                ++pos_;
                ExprPtr e = parse_expr();
                expect(Tok::rparen, "expected ')'");
                return e;
            }
            case Tok::ident:
                return parse_ident();
            default:
                throw parse_error("expected a number, symbol, function, '(' or '-'", tok.pos);
        }
    }

    ExprPtr parse_ident() {
        const Token tok = advance();
        if (tok.text == "cyc") {
            if (in_cyc_)
                throw parse_error("nested cyc is not allowed", tok.pos);
            expect(Tok::lparen, "expected '(' after 'cyc'");
            in_cyc_ = true;
            ExprPtr body = parse_expr();
            in_cyc_ = false;
            expect(Tok::rparen, "expected ')'");
            return make_cyc(std::move(body));
        }
        for (const auto& f : kFuncTable) {
            if (tok.text == f.name) {
                expect(Tok::lparen, "expected '(' after function name");
                ExprPtr arg = parse_expr();
                expect(Tok::rparen, "expected ')'");
                return make_unary(f.op, std::move(arg));
            }
        }
        if (auto sym = symbol_from_name(tok.text, domain_))
            return make_symbol(*sym);
        throw parse_error("unknown symbol '" + std::string(tok.text) + "' in " +
                              std::string(domain_name(domain_)) + " domain",
                          tok.pos);
    }

    std::vector<Token> tokens_;
    Domain domain_;
    std::size_t pos_ = 0;
    bool in_cyc_ = false;
};

// ----------------------------------------------------------- serializer --

int precedence(const ExprPtr& e) {
    struct V {
        int operator()(const Expr::Number&) const { return 5; }
        int operator()(const Expr::Symbol&) const { return 5; }
        int operator()(const Expr::Unary& u) const {
            return u.op == UnaryOp::neg ? 3 : 5;  // function calls read as atoms
        }
        int operator()(const Expr::Binary& b) const {
            switch (b.op) {
                case BinaryOp::pow: return 4;
                case BinaryOp::mul:
                case BinaryOp::div: return 2;
                default: return 1;
            }
        }
        int operator()(const Expr::CycSum&) const { return 5; }
    };
    return std::visit(V{}, e->node);
}

bool is_neg(const ExprPtr& e) {
    const auto* u = std::get_if<Expr::Unary>(&e->node);
    return u != nullptr && u->op == UnaryOp::neg;
}

void write(std::string& out, const ExprPtr& e);

void write_wrapped(std::string& out, const ExprPtr& e, bool wrap) {
    if (wrap) {
        out += '(';
        write(out, e);
        out += ')';
    } else {
        write(out, e);
    }
}

void write(std::string& out, const ExprPtr& e) {
    struct V {
        std::string& out;
        void operator()(const Expr::Number& n) const { out += format_double(n.value); }
        void operator()(const Expr::Symbol& s) const { out += symbol_name(s.sym); }
        void operator()(const Expr::Unary& u) const {
            if (u.op == UnaryOp::neg) {
                out += '-';
                // Parenthesize anything ^ could capture or that binds looser.
                const int p = precedence(u.child);
                write_wrapped(out, u.child, p != 5 && !is_neg(u.child));
            } else {
                out += func_name(u.op);
                out += '(';
                write(out, u.child);
                out += ')';
            }
        }
        void operator()(const Expr::Binary& b) const {
            switch (b.op) {
                case BinaryOp::add:
                case BinaryOp::sub:
                    write_wrapped(out, b.lhs, precedence(b.lhs) < 1);
                    out += (b.op == BinaryOp::add) ? " + " : " - ";
                    write_wrapped(out, b.rhs, precedence(b.rhs) <= 1);
                    break;
                case BinaryOp::mul:
                case BinaryOp::div:
                    write_wrapped(out, b.lhs, precedence(b.lhs) < 2);
                    out += (b.op == BinaryOp::mul) ? "*" : "/";
                    write_wrapped(out, b.rhs, precedence(b.rhs) <= 2 || is_neg(b.rhs));
                    break;
                case BinaryOp::pow:
                    write_wrapped(out, b.lhs, precedence(b.lhs) != 5);
                    out += '^';
                    write(out, b.rhs);
                    break;
            }
        }
        void operator()(const Expr::CycSum& c) const {
            out += "cyc(";
            write(out, c.child);
            out += ')';
        }
    };
    std::visit(V{out}, e->node);
}

// ----------------------------------------------------------- evaluation --

[[noreturn]] void fail_eval(const std::string& what) { throw eval_error(what); }

double eval_node(const Expr& e, const Bindings& base, int rotation);

/// Reads symbol values through `rotation` applications of rho, so cyclic
/// sums evaluate without rebuilding expression trees. The float operations
/// match an explicitly rotated tree operation for operation.
double eval_sym(Sym sym, const Bindings& b, int rotation) {
    Sym looked = sym;
    for (int i = 0; i < rotation; ++i) looked = rotate_sym(looked);
    if (!b.has(looked))
        fail_eval("unbound symbol '" + std::string(symbol_name(looked)) + "'");
    return b.get(looked);
}

double eval_node(const Expr& e, const Bindings& b, int rotation) {
    struct V {
        const Bindings& b;
        int rot;
        double operator()(const Expr::Number& n) const { return n.value; }
        double operator()(const Expr::Symbol& s) const { return eval_sym(s.sym, b, rot); }
        double operator()(const Expr::Unary& u) const {
            const double v = eval_node(*u.child, b, rot);
            double out = 0.0;
            switch (u.op) {
                case UnaryOp::neg: out = -v; break;
                case UnaryOp::sqrt:
                    if (v < 0.0) fail_eval("sqrt of a negative value");
                    out = std::sqrt(v);
                    break;
                case UnaryOp::cbrt: out = std::cbrt(v); break;
                case UnaryOp::abs: out = std::fabs(v); break;
                case UnaryOp::tan: out = std::tan(v); break;
                case UnaryOp::sin: out = std::sin(v); break;
                case UnaryOp::cos: out = std::cos(v); break;
                case UnaryOp::arccos:
                    if (v < -1.0 || v > 1.0) fail_eval("arccos argument outside [-1, 1]");
                    out = std::acos(v);
                    break;
            }
            if (!std::isfinite(out))
                fail_eval("non-finite result in " + std::string(func_name(u.op)));
            return out;
        }
        double operator()(const Expr::Binary& bin) const {
            const double l = eval_node(*bin.lhs, b, rot);
            const double r = eval_node(*bin.rhs, b, rot);
            double out = 0.0;
            switch (bin.op) {
                case BinaryOp::add: out = l + r; break;
                case BinaryOp::sub: out = l - r; break;
                case BinaryOp::mul: out = l * r; break;
                case BinaryOp::div:
                    if (r == 0.0) fail_eval("division by zero");
                    out = l / r;
                    break;
                case BinaryOp::pow:
                    if (l == 0.0 && r < 0.0) fail_eval("zero raised to a negative power");
                    if (l < 0.0 && r != std::trunc(r))
                        fail_eval("fractional power of a negative value");
                    out = std::pow(l, r);
                    break;
            }
            if (!std::isfinite(out)) fail_eval("non-finite result in arithmetic");
            return out;
        }
        double operator()(const Expr::CycSum& c) const {
            const double v0 = eval_node(*c.child, b, rot);
            const double v1 = eval_node(*c.child, b, rot + 1);
            const double v2 = eval_node(*c.child, b, rot + 2);
            return (v0 + v1) + v2;  // matches the expanded left-assoc sum
        }
    };
    return std::visit(V{b, rotation}, e.node);
}

}  // namespace

// -------------------------------------------------------- constructors --

ExprPtr make_number(double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("expression literals must be finite");
    if (value == 0.0) value = 0.0;  // normalize -0.0 so serialization round-trips
    return std::make_shared<Expr>(Expr{Expr::Number{value}});
}

ExprPtr make_symbol(Sym sym) { return std::make_shared<Expr>(Expr{Expr::Symbol{sym}}); }

ExprPtr make_unary(UnaryOp op, ExprPtr child) {
    return std::make_shared<Expr>(Expr{Expr::Unary{op, std::move(child)}});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    if (op == BinaryOp::pow) {
        const auto* num = std::get_if<Expr::Number>(&rhs->node);
        if (num == nullptr || num->value < 0.0)
            throw std::invalid_argument(
                "pow requires a non-negative number literal exponent");
    }
    return std::make_shared<Expr>(Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}});
}

ExprPtr make_cyc(ExprPtr child) {
    struct HasCyc {
        bool operator()(const Expr::Number&) const { return false; }
        bool operator()(const Expr::Symbol&) const { return false; }
        bool operator()(const Expr::Unary& u) const { return std::visit(*this, u.child->node); }
        bool operator()(const Expr::Binary& b) const {
            return std::visit(*this, b.lhs->node) || std::visit(*this, b.rhs->node);
        }
        bool operator()(const Expr::CycSum&) const { return true; }
    };
    if (std::visit(HasCyc{}, child->node))
        throw std::invalid_argument("nested cyc is not allowed");
    return std::make_shared<Expr>(Expr{Expr::CycSum{std::move(child)}});
}

// ------------------------------------------------------------- parsing --

ExprPtr parse_expression(std::string_view text, Domain domain) {
    return Parser(text, domain).expression();
}

InequalityDef parse_inequality(std::string_view id, std::string_view text, Domain domain) {
    return Parser(text, domain).inequality(id);
}

// ----------------------------------------------------------- formatting --

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string to_string(const ExprPtr& expr) {
    std::string out;
    write(out, expr);
    return out;
}

std::string_view rel_text(Rel rel) { return rel == Rel::ge ? ">=" : "<="; }

std::string to_string(const InequalityDef& def) {
    std::string out = to_string(def.lhs);
    out += ' ';
    out += rel_text(def.rel);
    out += ' ';
    out += to_string(def.rhs);
    return out;
}

// ------------------------------------------------- rotation / expansion --

ExprPtr rotate_symbols(const ExprPtr& expr) {
    struct V {
        ExprPtr operator()(const Expr::Number& n) const { return make_number(n.value); }
        ExprPtr operator()(const Expr::Symbol& s) const {
            return make_symbol(rotate_sym(s.sym));
        }
        ExprPtr operator()(const Expr::Unary& u) const {
            return make_unary(u.op, rotate_symbols(u.child));
        }
        ExprPtr operator()(const Expr::Binary& b) const {
            return make_binary(b.op, rotate_symbols(b.lhs), rotate_symbols(b.rhs));
        }
        ExprPtr operator()(const Expr::CycSum& c) const {
            // A cyclic sum is rotation-invariant; keep it untouched so
            // rotate(expand(e)) == expand(rotate(e)) holds for the caller.
            return make_cyc(c.child);
        }
    };
    return std::visit(V{}, expr->node);
}

ExprPtr expand_cyc(const ExprPtr& expr) {
    struct V {
        ExprPtr operator()(const Expr::Number& n) const { return make_number(n.value); }
        ExprPtr operator()(const Expr::Symbol& s) const { return make_symbol(s.sym); }
        ExprPtr operator()(const Expr::Unary& u) const {
            return make_unary(u.op, expand_cyc(u.child));
        }
        ExprPtr operator()(const Expr::Binary& b) const {
            return make_binary(b.op, expand_cyc(b.lhs), expand_cyc(b.rhs));
        }
        ExprPtr operator()(const Expr::CycSum& c) const {
            ExprPtr e0 = expand_cyc(c.child);
            ExprPtr e1 = rotate_symbols(e0);
            ExprPtr e2 = rotate_symbols(e1);
            return make_binary(BinaryOp::add,
                               make_binary(BinaryOp::add, std::move(e0), std::move(e1)),
                               std::move(e2));
        }
    };
    return std::visit(V{}, expr->node);
}

bool structurally_equal(const ExprPtr& lhs, const ExprPtr& rhs) {
    if (lhs == rhs) return true;
    if (lhs->node.index() != rhs->node.index()) return false;
    struct V {
        const Expr& other;
        bool operator()(const Expr::Number& n) const {
            return std::get<Expr::Number>(other.node).value == n.value;
        }
        bool operator()(const Expr::Symbol& s) const {
            return std::get<Expr::Symbol>(other.node).sym == s.sym;
        }
        bool operator()(const Expr::Unary& u) const {
            const auto& o = std::get<Expr::Unary>(other.node);
            return o.op == u.op && structurally_equal(u.child, o.child);
        }
        bool operator()(const Expr::Binary& b) const {
            const auto& o = std::get<Expr::Binary>(other.node);
            return o.op == b.op && structurally_equal(b.lhs, o.lhs) &&
                   structurally_equal(b.rhs, o.rhs);
        }
        bool operator()(const Expr::CycSum& c) const {
            return structurally_equal(c.child, std::get<Expr::CycSum>(other.node).child);
        }
    };
    return std::visit(V{*rhs}, lhs->node);
}

// ------------------------------------------------------------- bindings --

Bindings::Bindings() : values_{}, bound_{} {}

void Bindings::set(Sym sym, double value) {
    values_[sym_index(sym)] = value;
    bound_[sym_index(sym)] = true;
}

bool Bindings::has(Sym sym) const { return bound_[sym_index(sym)]; }

double Bindings::get(Sym sym) const { return values_[sym_index(sym)]; }

Bindings Bindings::for_triangle(const DerivedQuantities& q) {
    Bindings b;
    b.set(Sym::a, q.a);
    b.set(Sym::b, q.b);
    b.set(Sym::c, q.c);
    b.set(Sym::s, q.s);
    b.set(Sym::S, q.area);
    b.set(Sym::R, q.R);
    b.set(Sym::r, q.r);
    b.set(Sym::ra, q.ra);
    b.set(Sym::rb, q.rb);
    b.set(Sym::rc, q.rc);
    b.set(Sym::ha, q.ha);
    b.set(Sym::hb, q.hb);
    b.set(Sym::hc, q.hc);
    b.set(Sym::A, q.A);
    b.set(Sym::B, q.B);
    b.set(Sym::C, q.C);
    return b;
}

Bindings Bindings::for_triple(double x, double y, double z) {
    Bindings b;
    b.set(Sym::x, x);
    b.set(Sym::y, y);
    b.set(Sym::z, z);
    return b;
}

double evaluate(const ExprPtr& expr, const Bindings& bindings) {
    return eval_node(*expr, bindings, 0);
}

// ---------------------------------------------------------- homogeneity --

HomogeneityResult homogeneity_degree(const ExprPtr& expr, Domain domain) {
    constexpr std::uint64_t kProbeSeed = 0x7C15D1B54A32ED03ULL;
    constexpr int kMaxAttempts = 8;
    constexpr int kNeeded = 3;

    double degrees[kNeeded];
    int successes = 0;
    int clean = 0;  // attempts that evaluated without error
    int zeros = 0;  // clean attempts where both evaluations were exactly 0

    for (int attempt = 0; attempt < kMaxAttempts && successes < kNeeded; ++attempt) {
        detail::IndexRng rng(kProbeSeed, static_cast<std::uint64_t>(attempt),
                             domain == Domain::triangle ? 1 : 2);
        try {
            double f1 = 0.0, f2 = 0.0;
            if (domain == Domain::triangle) {
                // Well-conditioned Ravi coordinates keep every derived
                // quantity far from any singular configuration.
                const double m = 0.2 + 0.8 * rng.next_double();
                const double n = 0.2 + 0.8 * rng.next_double();
                const double p = 0.2 + 0.8 * rng.next_double();
                const SideTriple t1(n + p, p + m, m + n);
                const SideTriple t2(2.0 * (n + p), 2.0 * (p + m), 2.0 * (m + n));
                f1 = evaluate(expr, Bindings::for_triangle(derive(t1)));
                f2 = evaluate(expr, Bindings::for_triangle(derive(t2)));
            } else {
                auto draw = [&] { return 0.5 * std::exp2(2.0 * rng.next_double()); };
                const double x = draw(), y = draw(), z = draw();
                Bindings b1 = Bindings::for_triple(x, y, z);
                Bindings b2 = Bindings::for_triple(2.0 * x, 2.0 * y, 2.0 * z);
                b1.set(Sym::t, 1.5);  // the parameter is scale-invariant
                b2.set(Sym::t, 1.5);
                f1 = evaluate(expr, b1);
                f2 = evaluate(expr, b2);
            }
            ++clean;
            if (f1 == 0.0 && f2 == 0.0) {
                ++zeros;
                continue;
            }
            if (f1 == 0.0 || f2 == 0.0) continue;
            const double ratio = f2 / f1;
            if (!(ratio > 0.0)) return {Homogeneity::inhomogeneous, 0.0};
            degrees[successes++] = std::log2(ratio);
        } catch (const eval_error&) {
            continue;
        }
    }

    if (successes < kNeeded) {
        if (clean > 0 && zeros == clean) return {Homogeneity::zero, 0.0};
        return {Homogeneity::indeterminate, 0.0};
    }

    double lo = degrees[0], hi = degrees[0], sum = 0.0;
    for (int i = 0; i < kNeeded; ++i) {
        lo = std::min(lo, degrees[i]);
        hi = std::max(hi, degrees[i]);
        sum += degrees[i];
    }
    if (hi - lo > 1e-9) return {Homogeneity::inhomogeneous, 0.0};

    double degree = sum / kNeeded;
    // Snap to the nearest sixth: catalog degrees are small rationals and
    // the probe reproduces them to far better than 1e-6.
    const double snapped = std::round(degree * 6.0) / 6.0;
    if (std::fabs(degree - snapped) <= 1e-6) degree = snapped;
    return {Homogeneity::homogeneous, degree};
}

// ---------------------------------------------------------------- names --

std::string_view symbol_name(Sym sym) {
    for (const auto& info : kSymTable)
        if (info.sym == sym) return info.name;
    return "?";
}

std::optional<Sym> symbol_from_name(std::string_view name, Domain domain) {
    for (const auto& info : kSymTable)
        if (info.domain == domain && info.name == name) return info.sym;
    return std::nullopt;
}

std::string_view domain_name(Domain domain) {
    return domain == Domain::triangle ? "triangle" : "positive_triple";
}

std::optional<Domain> domain_from_name(std::string_view name) {
    if (name == "triangle") return Domain::triangle;
    if (name == "positive_triple" || name == "triple") return Domain::positive_triple;
    return std::nullopt;
}

}  // namespace trigon
