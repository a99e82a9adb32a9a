#pragma once

#include <map>
#include <numeric>

#include "omw/rational.hpp"

namespace omw {

/// Exponent vector as sorted (variable id, exponent > 0) pairs.
struct Monomial {
    std::vector<std::pair<int, int>> powers;

    int total_degree() const {
        int d = 0;
        for (auto& [v, e] : powers) d += e;
        return d;
    }
    int degree_in(int var) const {
        for (auto& [v, e] : powers)
            if (v == var) return e;
        return 0;
    }
    bool contains(int var) const { return degree_in(var) > 0; }

    static Monomial one() { return {}; }
    static Monomial var(int id, int exp = 1) {
        Monomial m;
        if (exp > 0) m.powers.emplace_back(id, exp);
        return m;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial out;
        std::size_t i = 0, j = 0;
        while (i < powers.size() || j < o.powers.size()) {
            if (j == o.powers.size() || (i < powers.size() && powers[i].first < o.powers[j].first))
                out.powers.push_back(powers[i++]);
            else if (i == powers.size() || o.powers[j].first < powers[i].first)
                out.powers.push_back(o.powers[j++]);
            else {
                out.powers.emplace_back(powers[i].first, powers[i].second + o.powers[j].second);
                ++i, ++j;
            }
        }
        return out;
    }

    /// Removes var entirely, returning the removed exponent.
    int without(int var, Monomial& rest) const {
        int d = 0;
        rest.powers.clear();
        for (auto& [v, e] : powers) {
            if (v == var) d = e;
            else rest.powers.emplace_back(v, e);
        }
        return d;
    }

    bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order, larger terms first when iterating a map.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        // higher power on the smallest variable id first
        std::size_t i = 0;
        while (i < a.powers.size() && i < b.powers.size()) {
            if (a.powers[i].first != b.powers[i].first) return a.powers[i].first < b.powers[i].first;
            if (a.powers[i].second != b.powers[i].second) return a.powers[i].second > b.powers[i].second;
            ++i;
        }
        return a.powers.size() > b.powers.size();
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// No zero coefficient is ever stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

    Polynomial() = default;
    explicit Polynomial(Rational c) {
        if (c != 0) terms_[Monomial::one()] = std::move(c);
    }
    explicit Polynomial(long long c) : Polynomial(Rational(c)) {}
    static Polynomial variable(int id) {
        Polynomial p;
        p.terms_[Monomial::var(id)] = 1;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.powers.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(m, c);
        else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& [m, c] : p.terms_) c = -c;
        return p;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const Rational& c) {
        if (c == 0) terms_.clear();
        else
            for (auto& [m, cc] : terms_) cc *= c;
        return *this;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    std::vector<int> variables() const {
        std::vector<int> out;
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m.powers) out.push_back(v);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend int degree_in(const Polynomial& p, int var) {
        int d = 0;
        for (auto& [m, c] : p.terms_) d = std::max(d, m.degree_in(var));
        return d;
    }

    bool contains(int var) const { return degree_in(*this, var) > 0; }

    /// Splits as coeff * var + rest for a polynomial linear in var.
    void split_linear(int var, Polynomial& coeff, Polynomial& rest) const {
        coeff = Polynomial();
        rest = Polynomial();
        for (auto& [m, c] : terms_) {
            Monomial other;
            int d = m.without(var, other);
            if (d == 0) rest.add_term(m, c);
            else if (d == 1) coeff.add_term(other, c);
            else throw std::invalid_argument("split_linear: degree in variable exceeds 1");
        }
    }

    template <typename Lookup>
    Rational evaluate_with(Lookup&& value_of) const {
        Rational total(0);
        for (auto& [m, c] : terms_) {
            Rational t = c;
            for (auto& [v, e] : m.powers) {
                const Rational& x = value_of(v);
                for (int i = 0; i < e; ++i) t *= x;
            }
            total += t;
        }
        return total;
    }

    /// Replaces var by the polynomial e (which must not contain var).
    friend Polynomial substitute_linear(const Polynomial& p, int var, const Polynomial& e) {
        if (e.contains(var)) throw std::invalid_argument("substitute_linear: replacement contains the variable");
        Polynomial out;
        for (auto& [m, c] : p.terms_) {
            Monomial rest;
            int d = m.without(var, rest);
            Polynomial term;
            term.add_term(rest, c);
            for (int i = 0; i < d; ++i) term *= e;
            out += term;
        }
        return out;
    }

    /// den^d * p[var := num/den], d = degree of var in p.
    friend Polynomial substitute_ratio_poly(const Polynomial& p, int var, const Polynomial& num,
                                            const Polynomial& den) {
        int d = degree_in(p, var);
        Polynomial out;
        // precompute powers
        std::vector<Polynomial> numpow(d + 1, Polynomial(1)), denpow(d + 1, Polynomial(1));
        for (int i = 1; i <= d; ++i) {
            numpow[i] = numpow[i - 1] * num;
            denpow[i] = denpow[i - 1] * den;
        }
        for (auto& [m, c] : p.terms_) {
            Monomial rest;
            int k = m.without(var, rest);
            Polynomial term;
            term.add_term(rest, c);
            out += term * numpow[k] * denpow[d - k];
        }
        return out;
    }

    /// Largest monomial dividing every term (for stripping known-positive
    /// variable factors out of sign constraints).
    Monomial common_monomial() const {
        if (terms_.empty()) return Monomial::one();
        std::map<int, int> mins;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (first) {
                for (auto& [v, e] : m.powers) mins[v] = e;
                first = false;
            } else {
                for (auto it = mins.begin(); it != mins.end();) {
                    int d = m.degree_in(it->first);
                    if (d == 0) it = mins.erase(it);
                    else {
                        it->second = std::min(it->second, d);
                        ++it;
                    }
                }
            }
        }
        Monomial out;
        for (auto& [v, e] : mins) out.powers.emplace_back(v, e);
        return out;
    }

    Polynomial divided_by(const Monomial& m) const {
        Polynomial out;
        for (auto& [mm, c] : terms_) {
            Monomial q;
            q.powers.reserve(mm.powers.size());
            std::size_t j = 0;
            for (auto& [v, e] : mm.powers) {
                int sub = 0;
                while (j < m.powers.size() && m.powers[j].first < v) ++j;
                if (j < m.powers.size() && m.powers[j].first == v) sub = m.powers[j].second;
                if (e - sub > 0) q.powers.emplace_back(v, e - sub);
                if (e - sub < 0) throw std::invalid_argument("divided_by: monomial does not divide");
            }
            out.add_term(q, c);
        }
        return out;
    }

    /// Scales to coprime integer coefficients; when a sign flip is allowed
    /// (equalities) the leading coefficient is made positive.
    void primitive_normalize(bool allow_negate) {
        if (terms_.empty()) return;
        BigInt num_gcd = 0, den_lcm = 1;
        for (auto& [m, c] : terms_) {
            num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
            den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
        }
        Rational scale(den_lcm, num_gcd);
        if (scale < 0) scale = -scale;
        for (auto& [m, c] : terms_) c *= scale;
        if (allow_negate && terms_.begin()->second < 0)
            for (auto& [m, c] : terms_) c = -c;
    }

private:
    TermMap terms_;
};

}  // namespace omw
