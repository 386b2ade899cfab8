#include "completeness/region.hpp"

#include <cctype>
#include <sstream>

namespace completeness {

Polynomial Polynomial::constant(const Rational& c) {
    Polynomial p;
    p.add_term({0, 0}, c);
    return p;
}

Polynomial Polynomial::var_t() {
    Polynomial p;
    p.add_term({1, 0}, Rational(1));
    return p;
}

Polynomial Polynomial::var_alpha() {
    Polynomial p;
    p.add_term({0, 1}, Rational(1));
    return p;
}

void Polynomial::add_term(Exponents e, const Rational& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (it->second.sign() == 0) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial out = constant(Rational(1));
    for (unsigned i = 0; i < e; ++i) out = out * *this;
    return out;
}

Rational Polynomial::evaluate(const Rational& t, const Rational& alpha) const {
    Rational sum;
    for (const auto& [e, c] : terms_) sum += c * t.pow(e.first) * alpha.pow(e.second);
    return sum;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0});
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest degree first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        if (e.first > 0) out += "*t^" + std::to_string(e.first);
        if (e.second > 0) out += "*alpha^" + std::to_string(e.second);
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            skip_ws();
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                const Polynomial d = unary();
                if (!d.is_constant() || d.terms().empty()) fail("division by a non-constant or zero");
                const Rational inv = Rational(1) / d.terms().begin()->second;
                acc = acc * Polynomial::constant(inv);
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        skip_ws();
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 64) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial atom() {
        skip_ws();
        if (eat('(')) {
            Polynomial inner = expr();
            skip_ws();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (pos_ < text_.size() &&
            (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                ++pos_;
            }
            return Polynomial::constant(Rational::parse(text_.substr(start, pos_ - start)));
        }
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const auto name = text_.substr(start, pos_ - start);
            if (name == "t") return Polynomial::var_t();
            if (name == "alpha" || name == "a") return Polynomial::var_alpha();
            fail("unknown variable '" + std::string(name) + "'");
        }
        fail("expected a number, variable or '('");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("polynomial '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolyParser(text).parse(); }

std::string to_string(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEq: return "<=";
        case Relation::Greater: return ">";
        case Relation::GreaterEq: return ">=";
    }
    return "?";
}

Relation parse_relation(std::string_view text) {
    text = trim(text);
    if (text == "<") return Relation::Less;
    if (text == "<=") return Relation::LessEq;
    if (text == ">") return Relation::Greater;
    if (text == ">=") return Relation::GreaterEq;
    throw ParseError("unknown relation '" + std::string(text) + "'");
}

bool holds(const Rational& lhs, Relation rel) {
    const int s = lhs.sign();
    switch (rel) {
        case Relation::Less: return s < 0;
        case Relation::LessEq: return s <= 0;
        case Relation::Greater: return s > 0;
        case Relation::GreaterEq: return s >= 0;
    }
    return false;
}

Constraint Constraint::parse(std::string_view text) {
    const auto op = text.find_first_of("<>");
    if (op == std::string_view::npos) {
        throw ParseError("constraint '" + std::string(text) + "' has no relation");
    }
    const std::size_t op_len = (op + 1 < text.size() && text[op + 1] == '=') ? 2 : 1;
    const auto lhs = text.substr(0, op);
    const auto rhs = text.substr(op + op_len);
    if (rhs.find_first_of("<>=") != std::string_view::npos) {
        throw ParseError("constraint '" + std::string(text) + "' has more than one relation");
    }
    return Constraint{Polynomial::parse(lhs) - Polynomial::parse(rhs),
                      parse_relation(text.substr(op, op_len))};
}

std::string Constraint::str() const { return poly.str() + " " + to_string(relation) + " 0"; }

bool Region::contains(const Rational& t, const Rational& alpha) const {
    if (!box.contains(t, alpha)) return false;
    for (const auto& c : constraints) {
        if (!c.satisfied_at(t, alpha)) return false;
    }
    return true;
}

namespace {

std::pair<Rational, Rational> parse_interval(std::string_view text) {
    text = trim(text);
    if (text.size() < 2 || (text.front() != '[' && text.front() != '(') ||
        (text.back() != ']' && text.back() != ')')) {
        throw ParseError("interval '" + std::string(text) + "' must look like [lo,hi]");
    }
    const auto body = text.substr(1, text.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("interval '" + std::string(text) + "' lacks ','");
    Rational lo = Rational::parse(body.substr(0, comma));
    Rational hi = Rational::parse(body.substr(comma + 1));
    if (hi < lo) throw ParseError("interval '" + std::string(text) + "' is empty");
    return {std::move(lo), std::move(hi)};
}

// Splits on whitespace and ';', keeping '...' quoted chunks and [...] intervals intact.
std::vector<std::string> tokenize_region(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    bool quoted = false;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
    };
    for (char c : text) {
        if (quoted) {
            if (c == '\'') {
                quoted = false;
                flush();
            } else {
                cur += c;
            }
            continue;
        }
        if (c == '\'' ) {
            flush();
            quoted = true;
        } else if (c == '[' || (c == '(' && depth == 0 && cur.find('=') != std::string::npos &&
                                cur.back() == '=')) {
            ++depth;
            cur += c;
        } else if ((c == ']' || c == ')') && depth > 0) {
            --depth;
            cur += c;
        } else if ((std::isspace(static_cast<unsigned char>(c)) || c == ';') && depth == 0) {
            flush();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("unterminated quote in region '" + std::string(text) + "'");
    flush();
    return out;
}

}  // namespace

Region Region::parse(std::string_view text) {
    Region region;
    bool have_t = false;
    bool have_alpha = false;
    for (const auto& tok : tokenize_region(text)) {
        const std::string_view sv(tok);
        if (sv.rfind("t=", 0) == 0) {
            std::tie(region.box.t_lo, region.box.t_hi) = parse_interval(sv.substr(2));
            have_t = true;
        } else if (sv.rfind("alpha=", 0) == 0) {
            std::tie(region.box.a_lo, region.box.a_hi) = parse_interval(sv.substr(6));
            have_alpha = true;
        } else if (sv.rfind("a=", 0) == 0) {
            std::tie(region.box.a_lo, region.box.a_hi) = parse_interval(sv.substr(2));
            have_alpha = true;
        } else {
            region.constraints.push_back(Constraint::parse(sv));
        }
    }
    if (!have_t || !have_alpha) {
        throw ParseError("region '" + std::string(text) + "' needs both t=[..] and alpha=[..]");
    }
    return region;
}

std::string Region::str() const {
    std::ostringstream os;
    os << "t=[" << box.t_lo << "," << box.t_hi << "] alpha=[" << box.a_lo << "," << box.a_hi << "]";
    for (const auto& c : constraints) os << " '" << c.str() << "'";
    return os.str();
}

}  // namespace completeness
