#pragma once

#include <unordered_map>

#include "omw/polynomial.hpp"
#include "omw/sign.hpp"
#include "omw/tuples.hpp"

namespace omw {

enum class Rel { greater_than_zero, equal_to_zero };

/// One sign constraint. "< 0" never appears; it is stored as the negated
/// polynomial "> 0".
struct Constraint {
    Polynomial poly;
    Rel rel = Rel::greater_than_zero;
    std::optional<RTuple> provenance;  // determinant tuple this came from, if any

    bool operator==(const Constraint& o) const { return poly == o.poly && rel == o.rel; }
};

/// Exact rational assignment; every declared variable is positive.
struct Witness {
    std::unordered_map<int, Rational> assignment;

    const Rational& at(int var) const {
        auto it = assignment.find(var);
        if (it == assignment.end()) throw std::out_of_range("witness: unassigned variable x" + std::to_string(var));
        return it->second;
    }
};

/// Sign-constrained polynomial system. Every declared variable carries the
/// implicit constraint "> 0" (free-positive); solver rules materialize it
/// where it matters.
struct PolySystem {
    std::vector<int> variables;  // sorted ids
    std::vector<Constraint> constraints;

    bool has_variable(int v) const {
        return std::binary_search(variables.begin(), variables.end(), v);
    }
    void declare(int v) {
        auto it = std::lower_bound(variables.begin(), variables.end(), v);
        if (it == variables.end() || *it != v) variables.insert(it, v);
    }
    void undeclare(int v) {
        auto it = std::lower_bound(variables.begin(), variables.end(), v);
        if (it != variables.end() && *it == v) variables.erase(it);
    }
};

inline bool evaluate_constraint(const Constraint& c, const Witness& w) {
    Rational v = c.poly.evaluate_with([&](int var) -> const Rational& { return w.at(var); });
    return c.rel == Rel::greater_than_zero ? v > 0 : v == 0;
}

/// True iff the witness satisfies every constraint and every variable is
/// assigned a positive value.
inline bool satisfies(const PolySystem& P, const Witness& w) {
    for (int v : P.variables)
        if (w.at(v) <= 0) return false;
    for (const Constraint& c : P.constraints)
        if (!evaluate_constraint(c, w)) return false;
    return true;
}

/// Prop 3.6 substitution y := num/den with a known denominator sign:
/// returns den^d * poly[y := num/den] with the relation flipped when the
/// substitution multiplies an inequality by a negative quantity an odd
/// number of times.
inline Constraint substitute_ratio(const Constraint& c, int var, const Polynomial& num,
                                   const Polynomial& den, Sign den_sign) {
    if (den_sign == Sign::zero)
        throw std::invalid_argument("substitute_ratio: denominator sign must be + or - (use the A=0 branch)");
    if (num.contains(var) || den.contains(var))
        throw std::invalid_argument("substitute_ratio: num/den must not contain the variable");
    int d = degree_in(c.poly, var);
    Constraint out;
    out.rel = c.rel;
    out.provenance = c.provenance;
    out.poly = substitute_ratio_poly(c.poly, var, num, den);
    if (c.rel == Rel::greater_than_zero && den_sign == Sign::minus && d % 2 == 1)
        out.poly = -out.poly;
    return out;
}

}  // namespace omw
