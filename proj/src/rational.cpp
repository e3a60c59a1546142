#include "odo/rational.hpp"

#include <cctype>

#include "odo/errors.hpp"

namespace odo {

Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
        if (i == start) throw ParseError("expected digits in rational '" + std::string(text) + "'", i);
    };
    std::string num;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        if (text[i] == '-') num += '-';
        ++i;
    }
    digits(num);
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
        ++i;
        den.clear();
        digits(den);
    }
    if (i != text.size()) throw ParseError("trailing characters in rational '" + std::string(text) + "'", i);
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator in rational '" + std::string(text) + "'", i);
    Rational q{Integer(num), d};
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational binomial(long top, unsigned k) {
    Rational r = 1;
    for (unsigned l = 0; l < k; ++l) {
        r *= Rational(top - static_cast<long>(l));
        r /= Rational(static_cast<long>(l) + 1);
    }
    return r;
}

}  // namespace odo
