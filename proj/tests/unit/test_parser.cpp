#include <random>

#include "doctest.h"
#include "odo/errors.hpp"
#include "odo/parser.hpp"

using namespace odo;

TEST_CASE("parse the rational n = 3 operator") {
    auto f = make_rational_field();
    ParsedOperator p = parse_operator("D^3 - 6/x^2*D + 12/x^3", f);
    FieldElem x = FieldElem::eta(p.field);
    CHECK(p.op.order() == 3);
    CHECK(p.op.coeff(1) == FieldElem::constant(p.field, -6) * x.pow(-2));
    CHECK(p.op.coeff(0) == FieldElem::constant(p.field, 12) * x.pow(-3));
    CHECK(p.new_params.empty());
    // eta is accepted as a synonym of x.
    CHECK(parse_operator("D^3 - 6/eta^2*D + 12/eta^3", f).op == p.op);
}

TEST_CASE("parameters become ansatz variables in natural order") {
    auto f = make_hyperbolic_field();
    ParsedOperator p = parse_operator("D^3 + (a2/eta^2)*D + (a3*nu/eta^3)", f);
    CHECK(p.new_params == std::vector<std::string>{"a2", "a3"});
    CHECK(p.field->params() == std::vector<std::string>{"a2", "a3"});
    FieldElem eta = FieldElem::eta(p.field), nu = FieldElem::nu(p.field);
    CHECK(p.op.coeff(0) == FieldElem::param(p.field, 1) * nu * eta.pow(-3));
    auto q = parse_expression("a10 + a2 + b", make_rational_field());
    CHECK(q.new_params == std::vector<std::string>{"a2", "a10", "b"});
    CHECK(natural_less("a2", "a10"));
    CHECK(!natural_less("a10", "a2"));
}

TEST_CASE("composition is noncommutative") {
    auto f = make_rational_field();
    auto a = parse_expression("D*x", f).op;
    auto b = parse_expression("x*D + 1", f).op;
    CHECK(a == b);
    CHECK(parse_expression("(D + x)^2", f).op == parse_expression("D^2 + 2*x*D + 1 + x^2", f).op);
    CHECK(parse_expression("x^(-2)", f).op == parse_expression("1/x^2", f).op);
}

TEST_CASE("contract and syntax errors") {
    auto f = make_rational_field();
    CHECK_THROWS_AS(parse_operator("D^2 + x*D", f), ContractError);
    CHECK_THROWS_AS(parse_operator("2*D^3 + x", f), ContractError);
    CHECK_THROWS_AS(parse_operator("D", f), ContractError);
    CHECK_THROWS_AS(parse_expression("D^3 + ", f), ParseError);
    CHECK_THROWS_AS(parse_expression("D^3 + (x", f), ParseError);
    CHECK_THROWS_AS(parse_expression("D^3 + 1/D", f), ParseError);
    CHECK_THROWS_AS(parse_expression("D^3 + 1/a", f), ParseError);
    CHECK_THROWS_AS(parse_expression("D^3 + 1/(x + a)", f), ParseError);
    CHECK_THROWS_AS(parse_expression("D^3 + nu", f), ParseError);
    CHECK_THROWS_AS(parse_expression("D^3 + 1/0", f), ParseError);
    try {
        parse_expression("D^3 + x $ 2", f);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);
    }
}

TEST_CASE("render then parse is the identity") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> c(-9, 9), e(0, 4);
    const std::vector<std::string> atoms = {"x", "1/x", "1/(x^2+3)", "a", "a*x"};
    for (int it = 0; it < 40; ++it) {
        std::string text = "D^4";
        for (int ord = 0; ord <= 2; ++ord) {
            text += " + (" + std::to_string(c(rng)) + "*" + atoms[static_cast<std::size_t>(e(rng))] + " + " +
                    std::to_string(c(rng)) + "/" + std::to_string(1 + std::abs(c(rng))) + ")*D^" + std::to_string(ord);
        }
        auto p = parse_operator(text, make_rational_field());
        std::string rendered = render_operator(p.op);
        auto q = parse_operator(rendered, p.field);
        CHECK(q.op == p.op);
        CHECK(render_operator(q.op) == rendered);
    }
    auto h = make_hyperbolic_field();
    auto p = parse_operator("D^3 + 6/eta^2*D + nu/(eta^2 + 1)", h);
    CHECK(parse_operator(render_operator(p.op), h).op == p.op);
    auto w = make_field(FieldKind::weierstrass);
    auto pw = parse_operator("D^3 - 3/2*eta*D - 3/2*nu + g2", w);
    CHECK(parse_operator(render_operator(pw.op), w).op == pw.op);
}
