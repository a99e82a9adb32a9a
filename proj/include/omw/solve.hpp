#pragma once

#include <chrono>

#include "omw/reduce.hpp"

namespace omw {

/// Deterministic, platform-stable generator (splitmix64).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

struct Budget {
    int cost_limit = 0;        // initial iterative-lengthening limit
    int max_cost_limit = 12;   // limit grows by 1 up to this bound
    long long random_trials = 2000;  // per leaf
    std::uint64_t rng_seed = 1;
    long long wall_clock_ms = 0;    // 0 disables the cap (keeps runs deterministic)
    long long node_limit = 2'000'000;
    bool full_branching = false;    // include the s(i)=0 patterns of system (8)
};

enum class UnknownReason { budget, no_eliminable_variable, equality_residue };

inline const char* to_string(UnknownReason r) {
    switch (r) {
        case UnknownReason::budget: return "budget";
        case UnknownReason::no_eliminable_variable: return "no-eliminable-variable";
        default: return "equality-residue";
    }
}

struct SolveStats {
    long long nodes = 0;
    long long random_trials_used = 0;
    int cost_limit_reached = 0;
    long long eq_overlap_branches = 0;  // E1 branchings whose coefficients share
                                        // variables with an equality constraint
    bool hit_node_limit = false;
    bool hit_wall_clock = false;
};

/// Record of one variable elimination, sufficient to reconstruct the
/// variable's value from any solution of the child system.
struct ElimStep {
    enum class Kind { e1_bounds, e2_ratio };
    Kind kind = Kind::e1_bounds;
    int var = -1;
    // e1: upper/lower bounds num/den with denominators positive in-branch;
    // lowers always include the positivity bound 0/1
    std::vector<std::pair<Polynomial, Polynomial>> uppers, lowers;
    // e2: var = num/den with sign(den) = den_sign
    Polynomial num, den;
    Sign den_sign = Sign::zero;
};

struct ChildSystem {
    PolySystem system;
    std::optional<ElimStep> step;  // absent for the E2 A=0 branch (y survives)
};

enum class ElimRule { e1, e2 };

/// Algorithm 2 step 2 candidates: E1 when y appears only in strict
/// inequalities, each of degree <= 1 in y; E2 when some equality is linear
/// in y. A variable may carry both tags.
inline std::vector<std::pair<int, ElimRule>> eliminable_vars(const PolySystem& P) {
    std::vector<std::pair<int, ElimRule>> out;
    for (int v : P.variables) {
        bool e1 = true, e2 = false;
        for (const Constraint& c : P.constraints) {
            int d = degree_in(c.poly, v);
            if (d == 0) continue;
            if (c.rel == Rel::equal_to_zero) {
                e1 = false;
                if (d == 1) e2 = true;
            } else if (d > 1) {
                e1 = false;
            }
        }
        if (e1) out.emplace_back(v, ElimRule::e1);
        if (e2) out.emplace_back(v, ElimRule::e2);
    }
    return out;
}

namespace detail {

inline bool poly_less(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    GradedLexGreater cmp;
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (cmp(ia->first, ib->first)) return true;
        if (cmp(ib->first, ia->first)) return false;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace detail

/// Prop 3.5 branching + Prop 3.3 elimination. Emits one child per sign
/// pattern over the distinct non-constant coefficient polynomials of y's
/// constraints ({+,-} by default; patterns containing 0 appended in full
/// mode per system (8)); inside each child y's constraints become rational
/// bounds with known denominator signs and y is removed by forming all
/// upper x lower cross products. The implicit positivity of y participates
/// as the lower bound 0/1.
inline std::vector<ChildSystem> branch_eliminate_E1(const PolySystem& P, int y,
                                                    bool full_branching = false) {
    struct YC {
        Polynomial coeff, rest;  // constraint = coeff*y + rest > 0
        int key = -1;            // index into keys; -1 when coeff is constant
        int key_sign = 1;        // coeff = key_sign * positive multiple of key
    };
    std::vector<YC> ycs;
    std::vector<const Constraint*> passthrough;
    std::vector<Polynomial> keys;
    for (const Constraint& c : P.constraints) {
        int d = degree_in(c.poly, y);
        if (d == 0) {
            passthrough.push_back(&c);
            continue;
        }
        if (c.rel == Rel::equal_to_zero || d > 1)
            throw std::invalid_argument("branch_eliminate_E1: variable is not E1-eliminable");
        YC yc;
        c.poly.split_linear(y, yc.coeff, yc.rest);
        if (!yc.coeff.is_constant()) {
            Polynomial key = yc.coeff;
            key.primitive_normalize(true);
            int ks = yc.coeff.terms().begin()->second > 0 ? 1 : -1;
            int found = -1;
            for (std::size_t i = 0; i < keys.size(); ++i)
                if (keys[i] == key) { found = static_cast<int>(i); break; }
            if (found < 0) {
                found = static_cast<int>(keys.size());
                keys.push_back(std::move(key));
            }
            yc.key = found;
            yc.key_sign = ks;
        }
        ycs.push_back(std::move(yc));
    }

    const int k = static_cast<int>(keys.size());
    std::vector<std::vector<int>> patterns;  // sign per key: +1, -1, 0
    for (int bits = 0; bits < (1 << k); ++bits) {
        std::vector<int> pat(k);
        for (int i = 0; i < k; ++i) pat[i] = (bits >> i & 1) ? -1 : 1;
        patterns.push_back(std::move(pat));
    }
    if (full_branching && k > 0) {
        std::vector<int> pat(k, 1);
        std::function<void(int, bool)> gen = [&](int i, bool has_zero) {
            if (i == k) {
                if (has_zero) patterns.push_back(pat);
                return;
            }
            for (int s : {1, -1, 0}) {
                pat[i] = s;
                gen(i + 1, has_zero || s == 0);
            }
        };
        gen(0, false);
    }

    std::vector<ChildSystem> children;
    for (const auto& pat : patterns) {
        ChildSystem child;
        child.system.variables = P.variables;
        child.system.undeclare(y);
        for (const Constraint* c : passthrough) child.system.constraints.push_back(*c);
        for (int i = 0; i < k; ++i) {
            Constraint sc;
            if (pat[i] == 0) {
                sc.rel = Rel::equal_to_zero;
                sc.poly = keys[i];
            } else {
                sc.rel = Rel::greater_than_zero;
                sc.poly = pat[i] > 0 ? keys[i] : -keys[i];
            }
            child.system.constraints.push_back(std::move(sc));
        }
        ElimStep step;
        step.kind = ElimStep::Kind::e1_bounds;
        step.var = y;
        step.lowers.emplace_back(Polynomial(0), Polynomial(1));  // y > 0
        for (const YC& yc : ycs) {
            int s;
            if (yc.key < 0) s = yc.coeff.constant_value() > 0 ? 1 : -1;
            else s = pat[yc.key] * yc.key_sign;
            if (s == 0) {
                // coefficient pinned to zero: the constraint reduces to rest > 0
                Constraint rc;
                rc.rel = Rel::greater_than_zero;
                rc.poly = yc.rest;
                child.system.constraints.push_back(std::move(rc));
                continue;
            }
            // coeff*y + rest > 0; sign(coeff) = s
            if (s > 0) step.lowers.emplace_back(-yc.rest, yc.coeff);
            else step.uppers.emplace_back(yc.rest, -yc.coeff);
        }
        for (const auto& [un, ud] : step.uppers)
            for (const auto& [ln, ld] : step.lowers) {
                Constraint cross;
                cross.rel = Rel::greater_than_zero;
                cross.poly = un * ld - ln * ud;
                child.system.constraints.push_back(std::move(cross));
            }
        child.step = std::move(step);
        children.push_back(std::move(child));
    }
    return children;
}

/// Prop 3.6 branching (system (13)) for an equality A*y = B linear in y:
/// children A>0 and A<0 substitute y := B/A by Prop 3.4 / substitute_ratio
/// and add y's positivity as sign(B) = sign(A); the A=0 child replaces the
/// equality by {A=0, B=0} and keeps y. When A is a nonzero constant only
/// the matching sign child is emitted.
inline std::vector<ChildSystem> branch_eliminate_E2(const PolySystem& P, int y, const Polynomial& A,
                                                    const Polynomial& B,
                                                    int equality_index = -1) {
    std::vector<ChildSystem> children;
    auto others = [&](ChildSystem& child, auto&& fn) {
        for (int ci = 0; ci < static_cast<int>(P.constraints.size()); ++ci) {
            if (ci == equality_index) continue;
            fn(child, P.constraints[ci]);
        }
    };
    int const_sign = A.is_constant() ? sign_of(A.constant_value()) : 2;  // 2 = unknown

    auto make_sign_child = [&](Sign s) {
        ChildSystem child;
        child.system.variables = P.variables;
        child.system.undeclare(y);
        if (A.is_zero()) {
            // degenerate "0*y = B": the sign branches are vacuously infeasible
            Constraint f;
            f.rel = Rel::greater_than_zero;
            f.poly = Polynomial(0);
            child.system.constraints.push_back(std::move(f));
            return child;
        }
        if (!A.is_constant()) {
            Constraint sc;
            sc.rel = Rel::greater_than_zero;
            sc.poly = s == Sign::plus ? A : -A;
            child.system.constraints.push_back(std::move(sc));
        }
        others(child, [&](ChildSystem& ch, const Constraint& c) {
            if (c.poly.contains(y)) ch.system.constraints.push_back(substitute_ratio(c, y, B, A, s));
            else ch.system.constraints.push_back(c);
        });
        // y = B/A > 0
        Constraint pos;
        pos.rel = Rel::greater_than_zero;
        pos.poly = s == Sign::plus ? B : -B;
        child.system.constraints.push_back(std::move(pos));
        ElimStep step;
        step.kind = ElimStep::Kind::e2_ratio;
        step.var = y;
        step.num = B;
        step.den = A;
        step.den_sign = s;
        child.step = std::move(step);
        return child;
    };

    bool zero_a = A.is_zero();
    if (const_sign == 2 || const_sign > 0 || zero_a) children.push_back(make_sign_child(Sign::plus));
    if (const_sign == 2 || const_sign < 0 || zero_a) children.push_back(make_sign_child(Sign::minus));
    if (const_sign == 2 || const_sign == 0) {
        ChildSystem child;  // A = 0 branch: y survives
        child.system.variables = P.variables;
        if (!A.is_constant()) {
            Constraint ca;
            ca.rel = Rel::equal_to_zero;
            ca.poly = A;
            child.system.constraints.push_back(std::move(ca));
        }
        Constraint cb;
        cb.rel = Rel::equal_to_zero;
        cb.poly = B;
        child.system.constraints.push_back(std::move(cb));
        others(child, [&](ChildSystem& ch, const Constraint& c) { ch.system.constraints.push_back(c); });
        children.push_back(std::move(child));
    }
    return children;
}

/// Algorithm 2 step 1: positive rational sampling p/q with p,q uniform on
/// {1..2^k}, k escalating 4 -> 8 -> 16 across trial thirds. Systems with
/// equality constraints fail immediately.
inline std::optional<Witness> random_realize(const PolySystem& P, long long trials,
                                             SplitMix64& rng, long long* trials_used = nullptr) {
    for (const Constraint& c : P.constraints)
        if (c.rel == Rel::equal_to_zero) return std::nullopt;
    for (const Constraint& c : P.constraints)
        if (c.poly.is_constant() && c.poly.constant_value() <= 0) return std::nullopt;
    Witness w;
    for (long long t = 0; t < trials; ++t) {
        int k = t < trials / 3 ? 4 : (t < 2 * trials / 3 ? 8 : 16);
        std::uint64_t mask = (1ULL << k) - 1;
        w.assignment.clear();
        for (int v : P.variables) {
            std::uint64_t p = 1 + (rng.next() & mask);
            std::uint64_t q = 1 + (rng.next() & mask);
            w.assignment[v] = Rational(BigInt(p), BigInt(q));
        }
        if (trials_used) ++*trials_used;
        bool ok = true;
        for (const Constraint& c : P.constraints)
            if (!evaluate_constraint(c, w)) { ok = false; break; }
        if (ok) return w;
    }
    return std::nullopt;
}

/// Replays one elimination step, extending a child-system witness with the
/// eliminated variable's exact value.
inline void apply_elimination_step(Witness& w, const ElimStep& step) {
    auto eval = [&](const Polynomial& p) {
        return p.evaluate_with([&](int var) -> const Rational& { return w.at(var); });
    };
    Rational y;
    if (step.kind == ElimStep::Kind::e1_bounds) {
        std::optional<Rational> lo, hi;
        for (const auto& [num, den] : step.lowers) {
            Rational d = eval(den);
            if (d == 0) throw std::logic_error("reconstruct: lower-bound denominator is zero");
            Rational v = eval(num) / d;
            if (!lo || v > *lo) lo = v;
        }
        for (const auto& [num, den] : step.uppers) {
            Rational d = eval(den);
            if (d == 0) throw std::logic_error("reconstruct: upper-bound denominator is zero");
            Rational v = eval(num) / d;
            if (!hi || v < *hi) hi = v;
        }
        if (hi) y = (*lo + *hi) / 2;  // lowers are never empty (positivity)
        else y = *lo + 1;
    } else {
        Rational d = eval(step.den);
        if (d == 0) throw std::logic_error("reconstruct: substitution denominator is zero");
        if ((step.den_sign == Sign::plus) != (d > 0))
            throw std::logic_error("reconstruct: substitution denominator sign mismatch");
        y = eval(step.num) / d;
    }
    if (y <= 0) throw std::logic_error("reconstruct: eliminated variable received a non-positive value");
    w.assignment[step.var] = std::move(y);
}

struct SolResult {
    std::optional<Witness> witness;
    UnknownReason reason = UnknownReason::no_eliminable_variable;
    SolveStats stats;

    bool feasible() const { return witness.has_value(); }
};

namespace detail {

struct SolDriver {
    const Budget& budget;
    SolveStats stats;
    bool deferred = false;
    bool eq_residue = false;
    SplitMix64 rng;
    BigInt limit_product;
    std::chrono::steady_clock::time_point deadline{};
    bool abort = false;

    explicit SolDriver(const Budget& b) : budget(b), rng(b.rng_seed) {}

    bool out_of_time() {
        if (budget.wall_clock_ms <= 0) return false;
        if (std::chrono::steady_clock::now() >= deadline) {
            stats.hit_wall_clock = true;
            return true;
        }
        return false;
    }

    // normalizes in place; returns false when a constant constraint fails
    static bool simplify(PolySystem& P) {
        std::vector<Constraint> out;
        for (Constraint& c : P.constraints) {
            Monomial common = c.poly.common_monomial();
            if (!common.powers.empty()) c.poly = c.poly.divided_by(common);
            if (c.poly.is_constant()) {
                Rational v = c.poly.constant_value();
                bool holds = c.rel == Rel::greater_than_zero ? v > 0 : v == 0;
                if (!holds) return false;
                continue;
            }
            c.poly.primitive_normalize(c.rel == Rel::equal_to_zero);
            bool dup = false;
            for (const Constraint& o : out)
                if (o.poly == c.poly && o.rel == c.rel) { dup = true; break; }
            if (!dup) out.push_back(std::move(c));
        }
        P.constraints = std::move(out);
        return true;
    }

    // picks (var, rule, branch count) by: prefer E2, then fewer children,
    // then fewer y-occurrences, then smallest id
    struct Choice {
        int var;
        ElimRule rule;
        int eq_index = -1;
        Polynomial A, B;
    };

    std::optional<Choice> choose(const PolySystem& P) const {
        std::optional<Choice> best;
        std::tuple<int, long long, long long, int> best_score{};
        for (auto [v, rule] : eliminable_vars(P)) {
            Choice c{v, rule, -1, {}, {}};
            long long branches;
            long long occurrences = 0;
            for (const Constraint& cc : P.constraints)
                if (cc.poly.contains(v)) ++occurrences;
            if (rule == ElimRule::e2) {
                for (int ci = 0; ci < static_cast<int>(P.constraints.size()); ++ci) {
                    const Constraint& cc = P.constraints[ci];
                    if (cc.rel == Rel::equal_to_zero && degree_in(cc.poly, v) == 1) {
                        c.eq_index = ci;
                        cc.poly.split_linear(v, c.A, c.B);
                        c.B = -c.B;
                        break;
                    }
                }
                branches = c.A.is_constant() ? 1 : 3;
            } else {
                // count distinct non-constant coefficient polynomials
                std::vector<Polynomial> keys;
                for (const Constraint& cc : P.constraints) {
                    if (!cc.poly.contains(v)) continue;
                    Polynomial coeff, rest;
                    cc.poly.split_linear(v, coeff, rest);
                    if (coeff.is_constant()) continue;
                    coeff.primitive_normalize(true);
                    bool seen = false;
                    for (auto& kk : keys)
                        if (kk == coeff) { seen = true; break; }
                    if (!seen) keys.push_back(std::move(coeff));
                }
                branches = 1LL << std::min<std::size_t>(keys.size(), 40);
            }
            std::tuple<int, long long, long long, int> score{rule == ElimRule::e2 ? 0 : 1, branches,
                                                             occurrences, v};
            if (!best || score < best_score) {
                best = std::move(c);
                best_score = score;
            }
        }
        return best;
    }

    std::optional<Witness> solve(PolySystem P, const BigInt& cost_product) {
        if (abort) return std::nullopt;
        if (++stats.nodes > budget.node_limit) {
            stats.hit_node_limit = true;
            abort = true;
            deferred = true;
            return std::nullopt;
        }
        if (out_of_time()) {
            abort = true;
            deferred = true;
            return std::nullopt;
        }
        if (!simplify(P)) return std::nullopt;  // constant contradiction
        auto choice = choose(P);
        if (!choice) {
            for (const Constraint& c : P.constraints)
                if (c.rel == Rel::equal_to_zero) {
                    eq_residue = true;
                    return std::nullopt;
                }
            return random_realize(P, budget.random_trials, rng, &stats.random_trials_used);
        }
        std::vector<ChildSystem> children;
        if (choice->rule == ElimRule::e2) {
            children = branch_eliminate_E2(P, choice->var, choice->A, choice->B, choice->eq_index);
        } else {
            children = branch_eliminate_E1(P, choice->var, budget.full_branching);
            // Open-question audit: reduced {+,-} patterns with equalities
            // sharing variables with branch coefficients
            if (!budget.full_branching) {
                std::vector<int> coeff_vars;
                for (const Constraint& cc : P.constraints) {
                    if (!cc.poly.contains(choice->var)) continue;
                    Polynomial coeff, rest;
                    cc.poly.split_linear(choice->var, coeff, rest);
                    for (int v : coeff.variables()) coeff_vars.push_back(v);
                }
                std::sort(coeff_vars.begin(), coeff_vars.end());
                bool overlap = false;
                for (const Constraint& cc : P.constraints) {
                    if (cc.rel != Rel::equal_to_zero) continue;
                    for (int v : cc.poly.variables())
                        if (std::binary_search(coeff_vars.begin(), coeff_vars.end(), v)) overlap = true;
                }
                if (overlap) ++stats.eq_overlap_branches;
            }
        }
        BigInt next_product = cost_product * static_cast<long long>(children.size());
        if (children.size() > 1 && next_product > limit_product) {
            deferred = true;
            return std::nullopt;
        }
        const BigInt& descend = children.size() > 1 ? next_product : cost_product;
        for (ChildSystem& child : children) {
            auto w = solve(std::move(child.system), descend);
            if (w) {
                if (child.step) apply_elimination_step(*w, *child.step);
                return w;
            }
            if (abort) return std::nullopt;
        }
        return std::nullopt;
    }
};

}  // namespace detail

/// Algorithm 2 with iterative lengthening: depth-first elimination and
/// branching, node cost log2(emitted children), deferred paths retried
/// under a limit one higher, random realization at leaves. Feasible is
/// returned only with a witness that exactly satisfies the input system.
inline SolResult sol(const PolySystem& P, const Budget& budget) {
    SolResult res;
    res.reason = UnknownReason::budget;
    SolveStats total;
    for (int L = budget.cost_limit; L <= budget.max_cost_limit; ++L) {
        detail::SolDriver d(budget);
        d.stats.nodes = total.nodes;  // node budget spans restarts
        d.stats.random_trials_used = total.random_trials_used;
        d.stats.eq_overlap_branches = total.eq_overlap_branches;
        d.limit_product = BigInt(1) << L;
        if (budget.wall_clock_ms > 0)
            d.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget.wall_clock_ms);
        auto w = d.solve(P, BigInt(1));
        total = d.stats;
        total.cost_limit_reached = L;
        if (w) {
            if (!satisfies(P, *w))
                throw std::logic_error("sol: internal soundness error (witness fails exact re-check)");
            res.witness = std::move(w);
            res.stats = total;
            return res;
        }
        if (d.stats.hit_node_limit || d.stats.hit_wall_clock) {
            res.reason = UnknownReason::budget;
            res.stats = total;
            return res;
        }
        if (!d.deferred) {
            res.reason = d.eq_residue ? UnknownReason::equality_residue
                                      : UnknownReason::no_eliminable_variable;
            res.stats = total;
            return res;
        }
        res.reason = UnknownReason::budget;  // deferred at the final limit
    }
    res.stats = total;
    return res;
}

/// Exact rational r x n matrix whose column determinant signs witness a
/// chirotope.
struct Realization {
    int n = 0, r = 0;
    std::vector<std::vector<Rational>> rows;  // r rows of n entries

    const Rational& at(int row, int col) const { return rows[row][col - 1]; }
};

/// Exact determinant via rational Gaussian elimination.
inline Rational rational_det(std::vector<std::vector<Rational>> m) {
    const int k = static_cast<int>(m.size());
    Rational det(1);
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int row = col; row < k; ++row)
            if (m[row][col] != 0) { piv = row; break; }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int row = col + 1; row < k; ++row) {
            if (m[row][col] == 0) continue;
            Rational f = m[row][col] / m[col][col];
            for (int c2 = col; c2 < k; ++c2) m[row][c2] -= f * m[col][c2];
        }
    }
    return det;
}

inline Sign realization_tuple_sign(const Realization& V, const RTuple& t) {
    std::vector<std::vector<Rational>> m(V.r, std::vector<Rational>(V.r));
    for (int row = 0; row < V.r; ++row)
        for (std::size_t j = 0; j < t.size(); ++j) m[row][j] = V.at(row, t[j]);
    return sign_of_int(rational_det(std::move(m)).sign());
}

/// First tuple whose determinant sign disagrees with chi, if any.
inline std::optional<RTuple> verify_realization_mismatch(const Realization& V, const Chirotope& chi) {
    if (V.n != chi.n || V.r != chi.r) throw std::invalid_argument("verify_realization: dimension mismatch");
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    for (int i = 0; i < tt.size(); ++i)
        if (realization_tuple_sign(V, tt.tuple(i)) != chi.signs[i]) return tt.tuple(i);
    return std::nullopt;
}

inline bool verify_realization(const Realization& V, const Chirotope& chi) {
    return !verify_realization_mismatch(V, chi).has_value();
}

/// Replays elimination steps (recorded root-to-leaf) innermost-out on a
/// reduced-system witness, then expands the grid: merged variables take
/// their survivor's value, fixed slots become 0/1, resolved signs are
/// restored, and a global negation is undone by negating the first row.
inline Realization reconstruct(const Witness& reduced_witness, std::span<const ElimStep> steps,
                               const VariableGrid& grid) {
    Witness w = reduced_witness;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) apply_elimination_step(w, *it);
    Realization V;
    V.n = grid.n;
    V.r = grid.r;
    V.rows.assign(grid.r, std::vector<Rational>(grid.n, Rational(0)));
    for (int col = 1; col <= grid.n; ++col) {
        auto bit = std::find(grid.basis.begin(), grid.basis.end(), col);
        if (bit != grid.basis.end()) {
            V.rows[bit - grid.basis.begin()][col - 1] = 1;
            continue;
        }
        for (int row = 0; row < grid.r; ++row) {
            const VariableGrid::Slot& s = grid.at(row, col);
            Rational v(0);
            if (s.kind == VariableGrid::Kind::fixed1) v = 1;
            else if (s.kind == VariableGrid::Kind::free_var) v = w.at(grid.find(s.var));
            if (s.sigma == Sign::minus) v = -v;
            V.rows[row][col - 1] = std::move(v);
        }
    }
    if (grid.globally_negated)
        for (Rational& x : V.rows[0]) x = -x;
    return V;
}

struct RealizeOutcome {
    std::optional<Realization> realization;  // set iff feasible and verified
    std::optional<Witness> witness;
    UnknownReason reason = UnknownReason::budget;
    SolveStats stats;
    Frame frame;

    bool feasible() const { return realization.has_value(); }
};

/// select_frame -> build_system -> sol -> reconstruct -> verify. Feasible
/// is returned only when the realization passes the exact full-lattice
/// determinant check; a verification failure is a fatal internal error.
inline RealizeOutcome realize(const Chirotope& chi, const Budget& budget) {
    RealizeOutcome out;
    out.frame = select_frame(chi);
    auto built = build_system(chi, out.frame);
    SolResult sr = sol(built.system, budget);
    out.stats = sr.stats;
    out.reason = sr.reason;
    if (!sr.feasible()) return out;
    Realization V = reconstruct(*sr.witness, {}, built.grid);
    if (auto bad = verify_realization_mismatch(V, chi)) {
        std::string t;
        for (int x : *bad) t += std::to_string(x) + " ";
        throw std::logic_error("realize: internal soundness error (witness fails verification at tuple " + t + ")");
    }
    out.witness = std::move(*sr.witness);
    out.realization = std::move(V);
    return out;
}

}  // namespace omw
