#pragma once

#include <bit>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "omw/sign.hpp"
#include "omw/tuples.hpp"

namespace omw {

/// Rank-r sign map on the r-subsets of {1..n}, stored in lexicographic
/// order of Lambda(n,r).
struct Chirotope {
    int n = 0;
    int r = 0;
    std::vector<Sign> signs;

    Chirotope() = default;
    Chirotope(int n_, int r_, std::vector<Sign> s) : n(n_), r(r_), signs(std::move(s)) {
        if (r < 1 || r > n) throw std::invalid_argument("Chirotope: need 1 <= r <= n");
        if (static_cast<long long>(signs.size()) != binomial(n, r))
            throw std::invalid_argument("Chirotope: sign sequence length must be binomial(n,r)");
    }

    std::string sign_string() const {
        std::string s;
        s.reserve(signs.size());
        for (Sign v : signs) s.push_back(sign_char(v));
        return s;
    }

    bool operator==(const Chirotope&) const = default;
};

inline Chirotope chirotope_from_string(int n, int r, const std::string& s) {
    std::vector<Sign> v;
    v.reserve(s.size());
    for (char c : s) v.push_back(sign_from_char(c));
    return Chirotope(n, r, std::move(v));
}

namespace detail {

inline const TupleTable& tuple_table(int n, int r) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<TupleTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, r}];
    if (!slot) slot = std::make_unique<TupleTable>(n, r);
    return *slot;
}

}  // namespace detail

/// Alternating evaluation on an arbitrary (possibly unsorted, possibly
/// repeating) index sequence of length r.
inline Sign eval_sign(const Chirotope& chi, std::span<const int> tuple) {
    if (static_cast<int>(tuple.size()) != chi.r)
        throw std::invalid_argument("eval_sign: tuple length must equal rank");
    for (int x : tuple)
        if (x < 1 || x > chi.n) throw std::out_of_range("eval_sign: index out of range");
    int buf[16];
    std::copy(tuple.begin(), tuple.end(), buf);
    int par = sort_parity(std::span<int>(buf, tuple.size()));
    if (par == 0) return Sign::zero;
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    int idx = tt.index_of(std::span<const int>(buf, tuple.size()));
    Sign s = chi.signs[idx];
    return par > 0 ? s : -s;
}

inline Sign eval_sign(const Chirotope& chi, std::initializer_list<int> tuple) {
    return eval_sign(chi, std::span<const int>(tuple.begin(), tuple.size()));
}

/// One Grassmann-Pluecker consistency instance of axiom (c), reduced to
/// sorted representatives: a conclusion pair (I,J) with pivot position k in
/// I, and the r hypothesis product factor pairs. Factors are prestored as
/// (position, parity); position -1 marks a structurally zero factor
/// (repeated index), whose product vanishes identically.
struct AxiomInstance {
    struct Factor {
        int pos;
        int par;
    };
    int posI;
    int parI;  // (-1)^k from moving the pivot to the front of I
    int posJ;
    std::vector<std::pair<Factor, Factor>> prods;
    int maxpos;  // largest participating position (structural zeros excluded)
};

class AxiomTable {
public:
    AxiomTable(int n, int r) : tt_(detail::tuple_table(n, r)) {
        const int L = tt_.size();
        std::vector<int> seq(r);
        for (int i = 0; i < L; ++i) {
            const RTuple& I = tt_.tuple(i);
            for (int k = 0; k < r; ++k) {
                int pivot = I[k];
                RTuple tail;
                tail.reserve(r - 1);
                for (int m = 0; m < r; ++m)
                    if (m != k) tail.push_back(I[m]);
                for (int j = 0; j < L; ++j) {
                    const RTuple& J = tt_.tuple(j);
                    AxiomInstance inst;
                    inst.posI = i;
                    inst.parI = (k % 2 == 0) ? 1 : -1;
                    inst.posJ = j;
                    inst.maxpos = std::max(i, j);
                    bool all_struct_zero = true;
                    for (int s = 0; s < r; ++s) {
                        auto factor = [&](std::span<int> sq) -> AxiomInstance::Factor {
                            int par = sort_parity(sq);
                            if (par == 0) return {-1, 0};
                            return {tt_.index_of(std::span<const int>(sq.data(), sq.size())), par};
                        };
                        seq.assign(1, J[s]);
                        seq.insert(seq.end(), tail.begin(), tail.end());
                        auto u = factor(seq);
                        seq.assign(J.begin(), J.end());
                        seq[s] = pivot;
                        auto v = factor(seq);
                        if (u.pos >= 0 && v.pos >= 0) {
                            all_struct_zero = false;
                            inst.maxpos = std::max({inst.maxpos, u.pos, v.pos});
                        }
                        inst.prods.emplace_back(u, v);
                    }
                    if (all_struct_zero && i == j) continue;  // vacuous
                    insts_.push_back(std::move(inst));
                }
            }
        }
        by_maxpos_.resize(L);
        for (int t = 0; t < static_cast<int>(insts_.size()); ++t)
            by_maxpos_[insts_[t].maxpos].push_back(t);
    }

    const TupleTable& tuples() const { return tt_; }
    const std::vector<AxiomInstance>& instances() const { return insts_; }
    const std::vector<int>& instances_with_maxpos(int pos) const { return by_maxpos_[pos]; }

    /// Two-sided axiom (c) check of one instance against a (possibly
    /// partial) sign assignment; all participating positions must be set.
    static bool violated(const AxiomInstance& inst, std::span<const Sign> sig) {
        int p0 = inst.parI * sign_int(sig[inst.posI]) * sign_int(sig[inst.posJ]);
        if (p0 == 0) return false;
        bool any_pos = false, any_neg = false;
        for (const auto& [u, v] : inst.prods) {
            if (u.pos < 0 || v.pos < 0) continue;
            int p = u.par * sign_int(sig[u.pos]) * v.par * sign_int(sig[v.pos]);
            if (p > 0) any_pos = true;
            else if (p < 0) any_neg = true;
        }
        return (p0 > 0 && !any_pos) || (p0 < 0 && !any_neg);
    }

private:
    const TupleTable& tt_;
    std::vector<AxiomInstance> insts_;
    std::vector<std::vector<int>> by_maxpos_;
};

namespace detail {

inline const AxiomTable& axiom_table(int n, int r) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<AxiomTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, r}];
    if (!slot) slot = std::make_unique<AxiomTable>(n, r);
    return *slot;
}

}  // namespace detail

/// Result of check_axioms: either valid, or the first witness of failure in
/// lexicographic scan order (a violating pair of r-tuples, or the
/// identically zero map).
struct AxiomCheck {
    struct IdenticallyZero {
        bool operator==(const IdenticallyZero&) const = default;
    };
    struct ViolatingPair {
        RTuple first;
        RTuple second;
        bool operator==(const ViolatingPair&) const = default;
    };
    std::optional<std::variant<IdenticallyZero, ViolatingPair>> failure;

    bool valid() const { return !failure.has_value(); }
};

inline AxiomCheck check_axioms(const Chirotope& chi) {
    AxiomCheck res;
    bool nonzero = false;
    for (Sign s : chi.signs)
        if (s != Sign::zero) { nonzero = true; break; }
    if (!nonzero) {
        res.failure = AxiomCheck::IdenticallyZero{};
        return res;
    }
    const AxiomTable& at = detail::axiom_table(chi.n, chi.r);
    for (const AxiomInstance& inst : at.instances()) {
        if (AxiomTable::violated(inst, chi.signs)) {
            res.failure = AxiomCheck::ViolatingPair{at.tuples().tuple(inst.posI),
                                                    at.tuples().tuple(inst.posJ)};
            return res;
        }
    }
    return res;
}

inline bool is_uniform(const Chirotope& chi) {
    for (Sign s : chi.signs)
        if (s == Sign::zero) return false;
    return true;
}

inline bool is_loop(const Chirotope& chi, int e) {
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    for (int i = 0; i < tt.size(); ++i)
        if ((tt.mask(i) >> (e - 1) & 1u) && chi.signs[i] != Sign::zero) return false;
    return true;
}

/// e and f are parallel when neither is a loop and {e,f} is dependent:
/// every r-tuple through both has sign zero.
inline bool is_parallel_pair(const Chirotope& chi, int e, int f) {
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    std::uint32_t both = (1u << (e - 1)) | (1u << (f - 1));
    for (int i = 0; i < tt.size(); ++i)
        if ((tt.mask(i) & both) == both && chi.signs[i] != Sign::zero) return false;
    return true;
}

/// No loops and no parallel elements.
inline bool is_simple(const Chirotope& chi) {
    for (int e = 1; e <= chi.n; ++e)
        if (is_loop(chi, e)) return false;
    for (int e = 1; e <= chi.n; ++e)
        for (int f = e + 1; f <= chi.n; ++f)
            if (!is_loop(chi, e) && !is_loop(chi, f) && is_parallel_pair(chi, e, f)) return false;
    return true;
}

/// Relabeling by perm (a bijection 1..n -> 1..n), reorientation by the
/// element set A (bitmask over 1..n), and optional global negation:
///   psi(T) = neg * (-1)^{|A cap T|} * chi(perm(T)).
inline Chirotope transform(const Chirotope& chi, std::span<const int> perm, std::uint32_t reorient,
                           bool negate) {
    if (static_cast<int>(perm.size()) != chi.n)
        throw std::invalid_argument("transform: permutation must have n entries");
    {
        std::uint32_t seen = 0;
        for (int x : perm) {
            if (x < 1 || x > chi.n) throw std::invalid_argument("transform: permutation entries out of range");
            seen |= 1u << (x - 1);
        }
        if (seen != (chi.n == 32 ? ~0u : (1u << chi.n) - 1))
            throw std::invalid_argument("transform: not a bijection");
    }
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    std::vector<Sign> out(tt.size());
    int buf[16];
    for (int i = 0; i < tt.size(); ++i) {
        const RTuple& t = tt.tuple(i);
        for (int m = 0; m < chi.r; ++m) buf[m] = perm[t[m] - 1];
        int par = sort_parity(std::span<int>(buf, chi.r));
        Sign s = Sign::zero;
        if (par != 0) {
            s = chi.signs[tt.index_of(std::span<const int>(buf, chi.r))];
            if (par < 0) s = -s;
        }
        int flips = std::popcount(tt.mask(i) & reorient);
        if (flips % 2) s = -s;
        if (negate) s = -s;
        out[i] = s;
    }
    return Chirotope(chi.n, chi.r, std::move(out));
}

/// Dual chirotope of rank n-r: chi*(S) = chi(complement(S)) * sgn(shuffle),
/// where the shuffle lists the complement followed by S.
inline Chirotope dual(const Chirotope& chi) {
    if (chi.r >= chi.n) throw std::invalid_argument("dual: requires r < n");
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    const TupleTable& td = detail::tuple_table(chi.n, chi.n - chi.r);
    std::vector<Sign> out(td.size());
    for (int i = 0; i < td.size(); ++i) {
        const RTuple& S = td.tuple(i);
        RTuple comp;
        comp.reserve(chi.r);
        std::uint32_t smask = td.mask(i);
        for (int x = 1; x <= chi.n; ++x)
            if (!(smask >> (x - 1) & 1u)) comp.push_back(x);
        // parity of (comp..., S...) as a permutation of (1..n) = (-1)^inversions
        long long inv = 0;
        for (int c : comp)
            for (int s : S)
                if (c > s) ++inv;
        Sign v = chi.signs[tt.index_of_mask(~smask & ((1u << chi.n) - 1))];
        out[i] = (inv % 2) ? -v : v;
    }
    return Chirotope(chi.n, chi.n - chi.r, std::move(out));
}

enum class SymmetryGroup { relabel_only, full };

/// Lexicographically minimal sign string over the orbit of the chosen group
/// ('+' < '-' < '0'). relabel_only covers permutations and global negation
/// (Def. of relabeling classes); full adds reorientation by any subset.
inline std::string canonical_form(const Chirotope& chi, SymmetryGroup group = SymmetryGroup::full) {
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    const int L = tt.size();
    const int n = chi.n;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    std::vector<int> best(L, 3);  // keys; 3 beats every real key
    std::vector<int> cur(L);
    int buf[16];
    std::uint32_t reorient_count = group == SymmetryGroup::full ? (1u << n) : 1u;
    // posmap/par per permutation computed once per perm, shared across A and negation
    std::vector<int> posmap(L);
    std::vector<int> par(L);
    do {
        for (int i = 0; i < L; ++i) {
            const RTuple& t = tt.tuple(i);
            for (int m = 0; m < chi.r; ++m) buf[m] = perm[t[m] - 1];
            int p = sort_parity(std::span<int>(buf, chi.r));
            posmap[i] = p == 0 ? -1 : tt.index_of(std::span<const int>(buf, chi.r));
            par[i] = p;
        }
        for (std::uint32_t A = 0; A < reorient_count; ++A) {
            for (int neg = 0; neg < 2; ++neg) {
                bool worse = false;
                for (int i = 0; i < L && !worse; ++i) {
                    int s = sign_int(chi.signs[posmap[i]]) * par[i];
                    if (std::popcount(tt.mask(i) & A) % 2) s = -s;
                    if (neg) s = -s;
                    int key = s > 0 ? 0 : (s < 0 ? 1 : 2);
                    cur[i] = key;
                    if (key > best[i]) worse = true;
                    else if (key < best[i]) {
                        for (int j = i + 1; j < L; ++j) {
                            int sj = sign_int(chi.signs[posmap[j]]) * par[j];
                            if (std::popcount(tt.mask(j) & A) % 2) sj = -sj;
                            if (neg) sj = -sj;
                            cur[j] = sj > 0 ? 0 : (sj < 0 ? 1 : 2);
                        }
                        best = cur;
                        break;
                    }
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    static constexpr char kChars[3] = {'+', '-', '0'};
    std::string out(L, '0');
    for (int i = 0; i < L; ++i) out[i] = kChars[best[i]];
    return out;
}

}  // namespace omw
