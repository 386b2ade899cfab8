#pragma once

/**
 * @file region.hpp
 * @brief Closed boxes in the (t, alpha) plane and polynomial side constraints.
 *
 * A Region is a closed box intersected with finitely many constraints of the
 * form p(t, alpha) REL 0, where p has rational coefficients. This covers the
 * curved boundaries such as t < 4/alpha (written t*alpha < 4).
 *
 * Text form accepted by Region::parse:
 *
 *     t=[1,3] alpha=[13/10,7/5]
 *     t=[1,400/101] alpha=[101/100,5/4] 't*alpha<4'
 *
 * Round brackets are accepted for interval endpoints and read as closed.
 * Constraints may be quoted with single quotes or separated by ';'.
 */

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "completeness/rational.hpp"

namespace completeness {

/// Closed axis-aligned box [t_lo, t_hi] x [a_lo, a_hi].
struct Rect {
    Rational t_lo;
    Rational t_hi;
    Rational a_lo;
    Rational a_hi;

    bool valid() const { return t_lo <= t_hi && a_lo <= a_hi; }
    bool contains(const Rational& t, const Rational& alpha) const {
        return t_lo <= t && t <= t_hi && a_lo <= alpha && alpha <= a_hi;
    }
    bool contains(const Rect& other) const {
        return t_lo <= other.t_lo && other.t_hi <= t_hi && a_lo <= other.a_lo && other.a_hi <= a_hi;
    }

    friend bool operator==(const Rect&, const Rect&) = default;
    /// Lexicographic on (t_lo, a_lo, t_hi, a_hi): the canonical certificate order.
    friend std::strong_ordering operator<=>(const Rect& a, const Rect& b) {
        if (auto c = a.t_lo <=> b.t_lo; c != 0) return c;
        if (auto c = a.a_lo <=> b.a_lo; c != 0) return c;
        if (auto c = a.t_hi <=> b.t_hi; c != 0) return c;
        return a.a_hi <=> b.a_hi;
    }
};

/// Polynomial in t and alpha with rational coefficients.
class Polynomial {
public:
    /// Key is (power of t, power of alpha).
    using Exponents = std::pair<unsigned, unsigned>;

    Polynomial() = default;
    static Polynomial constant(const Rational& c);
    static Polynomial var_t();
    static Polynomial var_alpha();

    /// Parses +, -, *, /, ^ (non-negative integer exponents), parentheses,
    /// rationals, decimals and the variables t, alpha (or a).
    static Polynomial parse(std::string_view text);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial pow(unsigned e) const;

    Rational evaluate(const Rational& t, const Rational& alpha) const;

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_constant() const;

    /// Canonical text, re-parseable by parse(); "0" for the zero polynomial.
    std::string str() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void add_term(Exponents e, const Rational& c);
    std::map<Exponents, Rational> terms_;
};

enum class Relation { Less, LessEq, Greater, GreaterEq };

std::string to_string(Relation r);
Relation parse_relation(std::string_view text);
bool holds(const Rational& lhs, Relation rel);

/// poly REL 0.
struct Constraint {
    Polynomial poly;
    Relation relation = Relation::Less;

    bool satisfied_at(const Rational& t, const Rational& alpha) const {
        return holds(poly.evaluate(t, alpha), relation);
    }
    /// Parses "lhs REL rhs" into (lhs - rhs) REL 0.
    static Constraint parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Region {
    Rect box;
    std::vector<Constraint> constraints;

    bool contains(const Rational& t, const Rational& alpha) const;

    static Region parse(std::string_view text);
    /// Canonical text form accepted by parse().
    std::string str() const;

    friend bool operator==(const Region&, const Region&) = default;
};

}  // namespace completeness
