#include "odo/diffpoly.hpp"

#include <algorithm>
#include <cctype>

#include "odo/errors.hpp"

namespace odo {

int monomial_weight(const DiffMonomial& m) {
    int w = 0;
    for (const auto& [code, e] : m) w += DiffVar::from_code(code).weight() * e;
    return w;
}

namespace {

DiffMonomial mono_mul(const DiffMonomial& a, const DiffMonomial& b) {
    DiffMonomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, static_cast<std::uint16_t>(a[i].second + b[j].second));
            ++i;
            ++j;
        }
    }
    return r;
}

void bump(DiffMonomial& m, std::uint16_t code) {
    auto it = std::lower_bound(m.begin(), m.end(), code, [](const auto& p, std::uint16_t c) { return p.first < c; });
    if (it != m.end() && it->first == code) {
        ++it->second;
    } else {
        m.insert(it, {code, 1});
    }
}

}  // namespace

DiffPoly::DiffPoly(const Rational& c) {
    if (sgn(c) != 0) terms_.emplace(DiffMonomial{}, c);
}

DiffPoly DiffPoly::var(int l, int k) {
    if (l < 2 || k < 0 || k > 255 || l > 255) throw ContractError("invalid differential variable");
    DiffPoly p;
    p.terms_.emplace(DiffMonomial{{DiffVar{l, k}.code(), 1}}, 1);
    return p;
}

DiffPoly DiffPoly::monomial(DiffMonomial m, const Rational& c) {
    DiffPoly p;
    if (sgn(c) != 0) p.terms_.emplace(std::move(m), c);
    return p;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

void DiffPoly::add_term(const DiffMonomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    r.add_product(1, a, b);
    return r;
}

void DiffPoly::add_product(const Rational& c, const DiffPoly& a, const DiffPoly& b) {
    if (sgn(c) == 0) return;
    Rational t;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            t = ca * cb;
            t *= c;
            add_term(mono_mul(ma, mb), t);
        }
    }
}

DiffPoly dp_derive(const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            DiffMonomial n = m;
            std::uint16_t code = n[i].first;
            Rational coef = c * Rational(static_cast<long>(n[i].second));
            if (--n[i].second == 0) n.erase(n.begin() + static_cast<std::ptrdiff_t>(i));
            DiffVar v = DiffVar::from_code(code);
            if (v.k >= 255) throw ContractError("derivative order overflow");
            bump(n, DiffVar{v.l, v.k + 1}.code());
            r.add_term(n, coef);
        }
    }
    return r;
}

std::optional<int> dp_weight(const DiffPoly& p) {
    std::optional<int> w;
    for (const auto& [m, c] : p.terms()) {
        int x = monomial_weight(m);
        if (w && *w != x) return std::nullopt;
        w = x;
    }
    return w ? w : std::optional<int>(0);
}

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += odo::to_string(c);
        for (const auto& [code, e] : m) {
            DiffVar v = DiffVar::from_code(code);
            out += " * u[" + std::to_string(v.l) + "]^(" + std::to_string(v.k) + ")^" + std::to_string(e);
        }
    }
    return out;
}

std::string DiffPoly::pretty() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c0] : terms_) {
        Rational c = c0;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (const auto& [code, e] : m) {
            DiffVar v = DiffVar::from_code(code);
            if (!mono.empty()) mono += "*";
            mono += "u" + std::to_string(v.l);
            if (v.k > 0 && v.k <= 3) {
                mono += std::string(static_cast<std::size_t>(v.k), '\'');
            } else if (v.k > 3) {
                mono += "^(" + std::to_string(v.k) + ")";
            }
            if (e > 1) mono += (v.k > 3 ? "^" : "^") + std::to_string(e);
        }
        if (mono.empty()) {
            out += odo::to_string(c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += odo::to_string(c) + "*" + mono;
        }
    }
    return out;
}

namespace {

class Scanner {
   public:
    explicit Scanner(std::string_view s) : s_(s) {}
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip();
        return pos_ >= s_.size();
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    void expect_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) != w) throw ParseError("expected '" + std::string(w) + "'", pos_);
        pos_ += w.size();
    }
    long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer", pos_);
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }
    Rational rational() {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
        try {
            return parse_rational(s_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            throw ParseError("bad coefficient", start);
        }
    }
    std::size_t pos() const { return pos_; }

   private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

DiffPoly parse_diffpoly(std::string_view text) {
    Scanner sc(text);
    DiffPoly p;
    if (sc.done()) throw ParseError("empty differential polynomial", 0);
    while (true) {
        Rational c = sc.rational();
        DiffMonomial m;
        while (sc.peek('*')) {
            sc.expect('*');
            sc.expect_word("u[");
            long l = sc.integer();
            sc.expect(']');
            sc.expect('^');
            sc.expect('(');
            long k = sc.integer();
            sc.expect(')');
            sc.expect('^');
            long e = sc.integer();
            if (l < 2 || l > 255 || k > 255 || e < 1 || e > 65535) throw ParseError("variable out of range", sc.pos());
            std::uint16_t code = DiffVar{static_cast<int>(l), static_cast<int>(k)}.code();
            if (!m.empty() && m.back().first >= code) throw ParseError("factors not in canonical order", sc.pos());
            m.emplace_back(code, static_cast<std::uint16_t>(e));
        }
        p.add_term(m, c);
        if (sc.done()) break;
        sc.expect('+');
    }
    return p;
}

// ---------------------------------------------------------------------------

SpecializationContext::SpecializationContext(FieldPtr field, std::vector<FieldElem> upsilon)
    : field_(std::move(field)), upsilon_(std::move(upsilon)) {
    for (auto& u : upsilon_) {
        if (u.field() && u.field()->descriptor() != field_->descriptor())
            throw ContractError("coefficient lives in a different field");
        u = FieldElem(field_, u.a(), u.b());
        u.reduce();
    }
}

FieldElem SpecializationContext::derivative(int l, int k) const {
    if (l < 2 || l > n()) throw ContractError("u_" + std::to_string(l) + " is not a coefficient of this operator");
    std::uint16_t code = DiffVar{l, k}.code();
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(code);
        if (it != memo_.end()) return it->second;
    }
    FieldElem v = k == 0 ? upsilon_[static_cast<std::size_t>(l - 2)] : derivative(l, k - 1).derive();
    v.reduce();
    std::lock_guard lock(mutex_);
    return memo_.try_emplace(code, std::move(v)).first->second;
}

FieldElem SpecializationContext::specialize(const DiffPoly& p) const {
    FieldAccumulator acc;
    for (const auto& [m, c] : p.terms()) {
        FieldElem t = FieldElem::constant(field_, c);
        for (const auto& [code, e] : m) {
            DiffVar v = DiffVar::from_code(code);
            FieldElem d = derivative(v.l, v.k);
            for (unsigned i = 0; i < e; ++i) t *= d;
        }
        acc.add(t);
    }
    FieldElem r = acc.take();
    return FieldElem(field_, r.a(), r.b()).reduce();
}

}  // namespace odo
