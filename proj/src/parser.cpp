#include "odo/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "odo/errors.hpp"

namespace odo {

FieldPtr make_field(FieldKind kind, const std::string& g2, const std::string& g3) {
    switch (kind) {
        case FieldKind::rational:
            return make_rational_field();
        case FieldKind::exponential:
            return make_exponential_field();
        case FieldKind::hyperbolic:
            return make_hyperbolic_field();
        case FieldKind::weierstrass:
        case FieldKind::elliptic: {
            std::vector<std::string> params;
            for (const auto& g : {g2, g3})
                if (!g.empty() && (std::isalpha(static_cast<unsigned char>(g[0])) || g[0] == '_')) params.push_back(g);
            return kind == FieldKind::weierstrass ? make_weierstrass_field(g2, g3, params)
                                                  : make_elliptic_field(g2, g3, params);
        }
        case FieldKind::custom:
            break;
    }
    throw ContractError("custom fields must be built through the library API");
}

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            Integer x(std::string(a, i, i2 - i)), y(std::string(b, j, j2 - j));
            if (x != y) return x < y;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return a.size() - i < b.size() - j;
    return a < b;
}

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::number, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        Tok k;
        switch (c) {
            case '+':
                k = Tok::plus;
                break;
            case '-':
                k = Tok::minus;
                break;
            case '*':
                k = Tok::star;
                break;
            case '/':
                k = Tok::slash;
                break;
            case '^':
                k = Tok::caret;
                break;
            case '(':
                k = Tok::lparen;
                break;
            case ')':
                k = Tok::rparen;
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Tok::end, "", s.size()});
    return out;
}

class Parser {
   public:
    Parser(std::vector<Token> tokens, FieldPtr field) : toks_(std::move(tokens)), field_(std::move(field)) {}

    FieldOperator parse() {
        if (peek().kind == Tok::end) throw ParseError("empty expression", 0);
        FieldOperator r = expr();
        if (peek().kind != Tok::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return r;
    }

   private:
    const Token& peek() const { return toks_[i_]; }
    const Token& take() { return toks_[i_++]; }

    FieldOperator constant(const FieldElem& x) const {
        FieldOperator r;
        r.set(0, x);
        return r;
    }

    FieldOperator expr() {
        FieldOperator acc = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            bool minus = take().kind == Tok::minus;
            FieldOperator rhs = term();
            if (minus) {
                acc -= rhs;
            } else {
                acc += rhs;
            }
        }
        return acc;
    }

    FieldOperator term() {
        FieldOperator acc = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const Token& op = take();
            std::size_t pos = peek().pos;
            FieldOperator rhs = unary();
            if (op.kind == Tok::star) {
                acc = op_mul(acc, rhs);
            } else {
                acc = op_mul(acc, constant(invert(rhs, pos)));
            }
        }
        return acc;
    }

    FieldOperator unary() {
        if (peek().kind == Tok::minus) {
            take();
            return -unary();
        }
        if (peek().kind == Tok::plus) {
            take();
            return unary();
        }
        return power();
    }

    FieldOperator power() {
        std::size_t pos = peek().pos;
        FieldOperator base = atom();
        if (peek().kind != Tok::caret) return base;
        take();
        bool paren = peek().kind == Tok::lparen;
        if (paren) take();
        bool negative = peek().kind == Tok::minus;
        if (negative) take();
        if (peek().kind != Tok::number) throw ParseError("expected an integer exponent", peek().pos);
        const Token& num = take();
        if (paren) {
            if (peek().kind != Tok::rparen) throw ParseError("expected ')'", peek().pos);
            take();
        }
        if (num.text.size() > 4) throw ParseError("exponent too large", num.pos);
        unsigned e = static_cast<unsigned>(std::stoul(num.text));
        const FieldElem one = FieldElem::constant(field_, 1);
        if (negative) return constant(invert(base, pos).pow(static_cast<int>(e)));
        return op_pow(base, e, one);
    }

    FieldElem invert(const FieldOperator& x, std::size_t pos) const {
        if (x.is_zero()) throw ParseError("division by zero", pos);
        if (x.order() != 0 || x.terms().size() != 1)
            throw ParseError("only order-zero expressions can be inverted", pos);
        FieldElem v = x.terms().begin()->second;
        v.reduce();
        const unsigned params = (1u << field_->params().size()) - 1u;
        if ((v.a().var_mask() | v.b().var_mask()) & params)
            throw ParseError("parameters may not appear in denominators", pos);
        for (const auto& part : {v.a(), v.b()})
            for (const auto& f : part.den())
                if (f.atom->mask & params) throw ParseError("parameters may not appear in denominators", pos);
        return v.inverse();
    }

    FieldOperator atom() {
        const Token& t = take();
        switch (t.kind) {
            case Tok::number:
                return constant(FieldElem::constant(field_, Rational(Integer(t.text))));
            case Tok::lparen: {
                FieldOperator r = expr();
                if (peek().kind != Tok::rparen) throw ParseError("expected ')'", peek().pos);
                take();
                return r;
            }
            case Tok::ident:
                return identifier(t);
            default:
                throw ParseError(t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
        }
    }

    FieldOperator identifier(const Token& t) {
        if (t.text == "D") return FieldOperator::monomial(FieldElem::constant(field_, 1), 1);
        if (t.text == field_->eta_name() || t.text == "eta") return constant(FieldElem::eta(field_));
        if (t.text == field_->nu_name()) {
            if (!field_->quadratic()) throw ParseError("this field has no '" + t.text + "'", t.pos);
            return constant(FieldElem::nu(field_));
        }
        int idx = field_->param_index(t.text);
        if (idx < 0) throw ParseError("unknown identifier '" + t.text + "'", t.pos);
        return constant(FieldElem::param(field_, idx));
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    FieldPtr field_;
};

}  // namespace

ParsedOperator parse_expression(std::string_view text, const FieldPtr& field) {
    std::vector<Token> toks = tokenize(text);
    std::set<std::string, decltype(&natural_less)> fresh(&natural_less);
    for (const auto& t : toks) {
        if (t.kind != Tok::ident) continue;
        if (t.text == "D" || t.text == field->eta_name() || t.text == "eta" || t.text == field->nu_name()) continue;
        if (field->param_index(t.text) < 0) fresh.insert(t.text);
    }
    ParsedOperator out;
    out.new_params.assign(fresh.begin(), fresh.end());
    if (field->params().size() + out.new_params.size() > static_cast<std::size_t>(kMaxParams))
        throw ParseError("too many parameters (at most " + std::to_string(kMaxParams) + ")", 0);
    out.field = out.new_params.empty() ? field : extend_params(field, out.new_params);
    out.op = Parser(std::move(toks), out.field).parse();
    return out;
}

ParsedOperator parse_operator(std::string_view text, const FieldPtr& field) {
    ParsedOperator p = parse_expression(text, field);
    check_normal_form(p.op);
    return p;
}

std::string render_operator(const FieldOperator& op) { return render(op); }

}  // namespace odo
