#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "odo/centralizer.hpp"
#include "odo/field.hpp"

namespace odo {

/// Field from a kind name; g2 and g3 (rationals or parameter names) are only
/// used by the Weierstrass field.
FieldPtr make_field(FieldKind kind, const std::string& g2 = "g2", const std::string& g3 = "g3");

/// Result of parsing an operator.  Identifiers that are not the field
/// generator, nu or an existing parameter become new parameters appended to
/// the field (natural order), so `field` may extend the input field.
struct ParsedOperator {
    FieldPtr field;
    FieldOperator op;
    /// Names of the parameters introduced by this expression.
    std::vector<std::string> new_params;
};

/// Grammar: sums, differences, products (composition), powers with integer
/// exponents, parentheses, rational constants, `D` for the derivation.
/// Division is only by order-zero expressions whose value is free of
/// parameters.  Throws ParseError with the offending position.
ParsedOperator parse_expression(std::string_view text, const FieldPtr& field);

/// parse_expression plus the monic normal-form check.
ParsedOperator parse_operator(std::string_view text, const FieldPtr& field);

/// Text accepted by parse_expression that denotes the same operator.
std::string render_operator(const FieldOperator& op);

/// a1 < a2 < a10 ordering of identifiers.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace odo
