#pragma once

#include <set>

#include "omw/chirotope.hpp"

namespace omw {

/// Length-n vector over {+,-,0}; used for circuits, cocircuits, covectors.
struct SignVector {
    std::vector<Sign> entries;

    std::uint32_t support() const {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] != Sign::zero) m |= 1u << i;
        return m;
    }
    std::uint32_t positive_part() const {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] == Sign::plus) m |= 1u << i;
        return m;
    }
    std::uint32_t negative_part() const {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] == Sign::minus) m |= 1u << i;
        return m;
    }
    std::uint32_t zero_set() const { return ~support() & ((1u << entries.size()) - 1); }

    SignVector negated() const {
        SignVector v = *this;
        for (Sign& s : v.entries) s = -s;
        return v;
    }

    std::string to_string() const {
        std::string s;
        for (Sign v : entries) s.push_back(sign_char(v));
        return s;
    }

    auto operator<=>(const SignVector&) const = default;
};

namespace detail {

// representative of the {v, -v} pair whose first nonzero entry is '+'
inline SignVector pair_representative(SignVector v) {
    for (Sign s : v.entries) {
        if (s == Sign::plus) return v;
        if (s == Sign::minus) return v.negated();
    }
    return v;
}

}  // namespace detail

/// Circuits of the oriented matroid, one representative per {C,-C} pair
/// (first nonzero entry '+'). For every (r+1)-subset S of full rank, the
/// alternating vector C(s_k) = (-1)^k chi(S \ s_k) is a circuit.
inline std::vector<SignVector> circuits(const Chirotope& chi) {
    std::vector<SignVector> out;
    if (chi.r + 1 > chi.n) return out;
    const TupleTable& ts = detail::tuple_table(chi.n, chi.r + 1);
    std::set<SignVector> seen;
    RTuple sub(chi.r);
    for (int i = 0; i < ts.size(); ++i) {
        const RTuple& S = ts.tuple(i);
        SignVector v;
        v.entries.assign(chi.n, Sign::zero);
        bool nonzero = false;
        for (int k = 0; k <= chi.r; ++k) {
            sub.clear();
            for (int m = 0; m <= chi.r; ++m)
                if (m != k) sub.push_back(S[m]);
            Sign s = eval_sign(chi, std::span<const int>(sub.data(), sub.size()));
            if (k % 2) s = -s;
            v.entries[S[k] - 1] = s;
            if (s != Sign::zero) nonzero = true;
        }
        if (!nonzero) continue;
        SignVector rep = detail::pair_representative(std::move(v));
        if (seen.insert(rep).second) out.push_back(rep);
    }
    return out;
}

/// Cocircuits, one representative per pair: for each (r-1)-tuple X spanning
/// a hyperplane, the vector j -> chi(x_1..x_{r-1}, j).
inline std::vector<SignVector> cocircuits(const Chirotope& chi) {
    std::vector<SignVector> out;
    const TupleTable& tx = detail::tuple_table(chi.n, chi.r - 1);
    std::set<SignVector> seen;
    std::vector<int> probe(chi.r);
    for (int i = 0; i < tx.size(); ++i) {
        const RTuple& X = tx.tuple(i);
        SignVector v;
        v.entries.assign(chi.n, Sign::zero);
        bool nonzero = false;
        for (int j = 1; j <= chi.n; ++j) {
            std::copy(X.begin(), X.end(), probe.begin());
            probe[chi.r - 1] = j;
            Sign s = eval_sign(chi, std::span<const int>(probe.data(), probe.size()));
            v.entries[j - 1] = s;
            if (s != Sign::zero) nonzero = true;
        }
        if (!nonzero) continue;
        SignVector rep = detail::pair_representative(std::move(v));
        if (seen.insert(rep).second) out.push_back(rep);
    }
    return out;
}

/// Acyclic iff no circuit (over both signs of each pair) is nonnegative.
/// With the '+'-leading pair convention this reads: every representative
/// has a nonempty negative part.
inline bool is_acyclic(const Chirotope& chi) {
    for (const SignVector& c : circuits(chi))
        if (c.negative_part() == 0) return false;
    return true;
}

/// Elements admitting the (+...+0+...+) covector: i is extreme iff no
/// circuit has positive part exactly {i}.
inline std::uint32_t extreme_elements_mask(const Chirotope& chi) {
    if (!is_acyclic(chi)) throw std::invalid_argument("extreme_elements: chirotope is not acyclic");
    std::uint32_t extreme = (1u << chi.n) - 1;
    for (const SignVector& c : circuits(chi)) {
        std::uint32_t p = c.positive_part(), m = c.negative_part();
        if (std::popcount(p) == 1) extreme &= ~p;
        if (std::popcount(m) == 1) extreme &= ~m;  // the negated circuit
    }
    return extreme;
}

inline std::vector<int> extreme_elements(const Chirotope& chi) {
    std::uint32_t m = extreme_elements_mask(chi);
    std::vector<int> out;
    for (int i = 1; i <= chi.n; ++i)
        if (m >> (i - 1) & 1u) out.push_back(i);
    return out;
}

inline bool is_matroid_polytope(const Chirotope& chi) {
    if (!is_acyclic(chi)) return false;
    return extreme_elements_mask(chi) == (1u << chi.n) - 1;
}

}  // namespace omw
