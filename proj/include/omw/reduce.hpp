#pragma once

#include <functional>

#include "omw/chirotope.hpp"
#include "omw/polysystem.hpp"

namespace omw {

/// r-tuple with chi(tuple) = + (after global negation if needed).
struct Basis {
    RTuple tuple;
};

/// Subset R of Lambda(n,r) whose signs force all others via
/// Grassmann-Pluecker propagation, together with the basis it was built for.
struct ReducedSystem {
    std::vector<int> tuple_indices;  // sorted positions into Lambda(n,r)
    Basis basis;
};

/// Tuple positions lambda whose sign can be altered while remaining a
/// chirotope (Prop 3.1): lambda is a generalized mutation iff no
/// Grassmann-Pluecker instance pins it, i.e. for every pivot of lambda and
/// every j-tuple J with chi(J) != 0, the hypothesis products either involve
/// lambda itself (self-referential instances decide nothing) or contain
/// both + and -.
inline std::vector<int> generalized_mutations(const Chirotope& chi) {
    const AxiomTable& at = detail::axiom_table(chi.n, chi.r);
    const int L = at.tuples().size();
    std::vector<char> blocked(L, 0);
    for (const AxiomInstance& inst : at.instances()) {
        if (blocked[inst.posI]) continue;
        if (chi.signs[inst.posJ] == Sign::zero || inst.posJ == inst.posI) continue;
        bool any_pos = false, any_neg = false, degenerate = false;
        for (const auto& [u, v] : inst.prods) {
            if (u.pos < 0 || v.pos < 0) continue;
            if (u.pos == inst.posI || v.pos == inst.posI) { degenerate = true; break; }
            int p = u.par * sign_int(chi.signs[u.pos]) * v.par * sign_int(chi.signs[v.pos]);
            if (p > 0) any_pos = true;
            else if (p < 0) any_neg = true;
        }
        if (!degenerate && !(any_pos && any_neg)) blocked[inst.posI] = 1;
    }
    std::vector<int> out;
    for (int i = 0; i < L; ++i)
        if (!blocked[i]) out.push_back(i);
    return out;
}

/// Forcing fixpoint: a tuple is added when some Grassmann-Pluecker instance
/// has its j-tuple and every product factor known (or structurally zero),
/// chi(J) != 0, and the products do not mix + and -. Monotone and
/// idempotent in R.
inline std::vector<int> gp_closure(const Chirotope& chi, std::span<const int> R) {
    const AxiomTable& at = detail::axiom_table(chi.n, chi.r);
    const int L = at.tuples().size();
    std::vector<char> known(L, 0);
    for (int i : R) known[i] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const AxiomInstance& inst : at.instances()) {
            if (known[inst.posI] || !known[inst.posJ] || chi.signs[inst.posJ] == Sign::zero) continue;
            bool any_pos = false, any_neg = false, all_known = true;
            for (const auto& [u, v] : inst.prods) {
                if (u.pos < 0 || v.pos < 0) continue;  // structurally zero product
                if (!known[u.pos] || !known[v.pos]) { all_known = false; break; }
                int p = u.par * sign_int(chi.signs[u.pos]) * v.par * sign_int(chi.signs[v.pos]);
                if (p > 0) any_pos = true;
                else if (p < 0) any_neg = true;
            }
            if (!all_known || (any_pos && any_neg)) continue;
            int forced = any_pos ? 1 : (any_neg ? -1 : 0);
            int actual = inst.parI * sign_int(chi.signs[inst.posI]) * sign_int(chi.signs[inst.posJ]);
            assert(forced == actual && "gp_closure: forced value disagrees with the chirotope");
            (void)forced; (void)actual;
            known[inst.posI] = 1;
            changed = true;
        }
    }
    std::vector<int> out;
    for (int i = 0; i < L; ++i)
        if (known[i]) out.push_back(i);
    return out;
}

/// Algorithm 1. Step 1: R := GMut(chi). Step 2: if <R> covers Lambda(n,r),
/// done. Step 3: add the uncovered tuple minimizing |mu \ b| (lex tie-break)
/// and repeat.
inline ReducedSystem minimal_reduced_system(const Chirotope& chi, const Basis& basis) {
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    if (eval_sign(chi, std::span<const int>(basis.tuple.data(), basis.tuple.size())) == Sign::zero)
        throw std::invalid_argument("minimal_reduced_system: chi(basis) must be nonzero");
    std::uint32_t bmask = 0;
    for (int x : basis.tuple) bmask |= 1u << (x - 1);
    std::vector<int> R = generalized_mutations(chi);
    const int L = tt.size();
    while (true) {
        std::vector<int> C = gp_closure(chi, R);
        if (static_cast<int>(C.size()) == L) {
            std::sort(R.begin(), R.end());
            return ReducedSystem{R, basis};
        }
        std::vector<char> in_c(L, 0);
        for (int i : C) in_c[i] = 1;
        int best = -1, best_d = 1 << 30;
        for (int i = 0; i < L; ++i) {
            if (in_c[i]) continue;
            int d = std::popcount(tt.mask(i) & ~bmask);
            if (d < best_d) { best = i; best_d = d; }
        }
        R.push_back(best);
    }
}

/// Slot grid of the basis-fixed, sign-resolved, row/column-normalized
/// system (3): each non-basis slot is fixed to 0, fixed to 1, or carries a
/// positive free variable; case-(b) merges are tracked by union-find over
/// variable ids.
struct VariableGrid {
    enum class Kind : std::uint8_t { fixed0, fixed1, free_var };
    struct Slot {
        Kind kind = Kind::fixed0;
        int var = -1;     // free_var only (pre-merge id)
        Sign sigma = Sign::zero;  // sign of the original entry
    };
    int n = 0, r = 0;
    RTuple basis;
    int norm_row = -1;  // 0-based row fixed to {0,1}
    int norm_col = -1;  // 1-based non-basis column fixed to {0,1}
    bool globally_negated = false;  // chi was replaced by -chi before building
    std::vector<Slot> slots;        // r * n, row-major; basis columns untouched
    std::vector<int> merge_parent;  // union-find over variable ids

    Slot& at(int row, int col) { return slots[row * n + (col - 1)]; }
    const Slot& at(int row, int col) const { return slots[row * n + (col - 1)]; }

    int find(int v) const {
        while (merge_parent[v] != v) v = merge_parent[v];
        return v;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // smallest id survives
        merge_parent[b] = a;
    }
};

struct Frame {
    Basis basis;
    int norm_row = 0;   // 0-based
    int norm_col = 0;   // 1-based, non-basis
    ReducedSystem reduced;
    bool globally_negated = false;
    long long degree_score = 0;     // sum over R of |b \ beta|
    int residual_equalities = 0;    // case-(c) equalities left after building
};

inline bool grid_var_used(const VariableGrid& g, int v) {
    for (const auto& s : g.slots)
        if (s.kind == VariableGrid::Kind::free_var && g.find(s.var) == v) return true;
    return false;
}

namespace detail {

struct BuildResult {
    PolySystem system;
    VariableGrid grid;
};

/// Symbolic determinant of the tuple's columns over the slot grid (basis
/// columns are unit vectors, fixed slots constants, free slots variables
/// with their resolved sign folded into the coefficient).
inline Polynomial slot_determinant(const VariableGrid& g, const RTuple& t) {
    std::vector<std::vector<Polynomial>> mat(g.r, std::vector<Polynomial>(t.size()));
    for (std::size_t m = 0; m < t.size(); ++m) {
        int col = t[m];
        auto bit = std::find(g.basis.begin(), g.basis.end(), col);
        for (int row = 0; row < g.r; ++row) {
            if (bit != g.basis.end()) {
                mat[row][m] = Polynomial((bit - g.basis.begin()) == row ? 1 : 0);
            } else {
                const VariableGrid::Slot& s = g.at(row, col);
                if (s.kind == VariableGrid::Kind::fixed0) mat[row][m] = Polynomial(0);
                else {
                    Polynomial entry = s.kind == VariableGrid::Kind::fixed1
                                           ? Polynomial(1)
                                           : Polynomial::variable(s.var);
                    if (s.sigma == Sign::minus) entry = -entry;
                    mat[row][m] = std::move(entry);
                }
            }
        }
    }
    // Laplace expansion along columns, skipping zero entries
    std::function<Polynomial(std::vector<int>&, int)> expand = [&](std::vector<int>& avail_rows,
                                                                   int colidx) -> Polynomial {
        if (colidx == static_cast<int>(t.size())) return Polynomial(1);
        Polynomial acc;
        for (std::size_t i = 0; i < avail_rows.size(); ++i) {
            int row = avail_rows[i];
            if (mat[row][colidx].is_zero()) continue;
            std::vector<int> rest = avail_rows;
            rest.erase(rest.begin() + i);
            Polynomial sub = expand(rest, colidx + 1);
            if (sub.is_zero()) continue;
            Polynomial term = mat[row][colidx] * sub;
            if (i % 2) term = -term;
            acc += term;
        }
        return acc;
    };
    std::vector<int> all_rows(g.r);
    for (int i = 0; i < g.r; ++i) all_rows[i] = i;
    return expand(all_rows, 0);
}

}  // namespace detail

/// System (3) with signs pre-resolved, one designated row and one
/// designated non-basis column normalized to {0,1}, case-(a) constraints
/// absorbed into the grid, case-(b) equalities merged, and everything else
/// emitted as "> 0" / "= 0" constraints over R(chi).
inline detail::BuildResult build_system(const Chirotope& chi_in, const Frame& frame) {
    const TupleTable& tt = detail::tuple_table(chi_in.n, chi_in.r);
    Chirotope chi = chi_in;
    if (frame.globally_negated)
        for (Sign& s : chi.signs) s = -s;
    if (eval_sign(chi, std::span<const int>(frame.basis.tuple.data(), frame.basis.tuple.size())) !=
        Sign::plus)
        throw std::invalid_argument("build_system: basis sign is not + (frame inconsistent with chi)");

    VariableGrid g;
    g.n = chi.n;
    g.r = chi.r;
    g.basis = frame.basis.tuple;
    g.norm_row = frame.norm_row;
    g.norm_col = frame.norm_col;
    g.globally_negated = frame.globally_negated;
    g.slots.assign(g.r * g.n, {});

    // sign-resolve every non-basis slot: v_kl = det(b_1,..,l at k,..,b_r)
    int next_var = 0;
    std::vector<int> probe(g.r);
    for (int col = 1; col <= g.n; ++col) {
        if (std::find(g.basis.begin(), g.basis.end(), col) != g.basis.end()) continue;
        for (int row = 0; row < g.r; ++row) {
            for (int m = 0; m < g.r; ++m) probe[m] = g.basis[m];
            probe[row] = col;
            Sign sigma = eval_sign(chi, std::span<const int>(probe.data(), probe.size()));
            VariableGrid::Slot s;
            s.sigma = sigma;
            if (sigma == Sign::zero) s.kind = VariableGrid::Kind::fixed0;
            else if (row == g.norm_row || col == g.norm_col) s.kind = VariableGrid::Kind::fixed1;
            else {
                s.kind = VariableGrid::Kind::free_var;
                s.var = next_var++;
            }
            g.at(row, col) = s;
        }
    }
    g.merge_parent.resize(next_var);
    for (int i = 0; i < next_var; ++i) g.merge_parent[i] = i;

    // determinant constraints over R(chi); case (a) drops out as variable facts
    std::vector<Constraint> pending;
    std::uint32_t bmask = 0;
    for (int x : g.basis) bmask |= 1u << (x - 1);
    for (int idx : frame.reduced.tuple_indices) {
        const RTuple& t = tt.tuple(idx);
        int deg = std::popcount(bmask & ~tt.mask(idx));
        Polynomial det = detail::slot_determinant(g, t);
        Sign target = chi.signs[idx];
        Constraint c;
        c.provenance = t;
        if (target == Sign::zero) {
            c.rel = Rel::equal_to_zero;
            c.poly = std::move(det);
        } else {
            c.rel = Rel::greater_than_zero;
            c.poly = target == Sign::plus ? std::move(det) : -det;
        }
        if (deg <= 1) continue;  // case (a): already a slot fact
        pending.push_back(std::move(c));
    }

    // simplification loop: strip positive factors, drop tautologies, merge
    // case-(b) difference equalities, re-substitute merged ids
    PolySystem sys;
    bool changed = true;
    std::vector<Constraint> work = std::move(pending);
    while (changed) {
        changed = false;
        std::vector<Constraint> next;
        for (Constraint& c : work) {
            // apply merges
            Polynomial p;
            for (auto& [m, coef] : c.poly.terms()) {
                Monomial mm;
                for (auto& [v, e] : m.powers) mm = mm * Monomial::var(g.find(v), e);
                p.add_term(mm, coef);
            }
            Monomial common = p.common_monomial();
            if (!common.powers.empty()) p = p.divided_by(common);  // vars are positive
            if (p.is_constant()) {
                Rational cv = p.constant_value();
                bool holds = c.rel == Rel::greater_than_zero ? cv > 0 : cv == 0;
                if (!holds) {
                    // contradictory constant: keep it so the solver reports
                    // the branch infeasible rather than hiding the fact
                    Constraint keep;
                    keep.rel = c.rel;
                    keep.poly = p;
                    keep.provenance = c.provenance;
                    next.push_back(std::move(keep));
                }
                continue;
            }
            p.primitive_normalize(c.rel == Rel::equal_to_zero);
            if (c.rel == Rel::equal_to_zero && p.terms().size() == 2) {
                // case (b): x_a - x_b = 0 merges the two variables
                auto it = p.terms().begin();
                auto [m1, c1] = *it;
                auto [m2, c2] = *std::next(it);
                if (m1.powers.size() == 1 && m2.powers.size() == 1 && m1.powers[0].second == 1 &&
                    m2.powers[0].second == 1 && c1 == -c2) {
                    g.merge(m1.powers[0].first, m2.powers[0].first);
                    changed = true;
                    continue;
                }
            }
            Constraint keep;
            keep.rel = c.rel;
            keep.poly = std::move(p);
            keep.provenance = c.provenance;
            next.push_back(std::move(keep));
        }
        work = std::move(next);
    }
    // dedupe identical constraints
    std::vector<Constraint> out;
    for (Constraint& c : work) {
        bool dup = false;
        for (const Constraint& o : out)
            if (o == c) { dup = true; break; }
        if (!dup) out.push_back(std::move(c));
    }
    sys.constraints = std::move(out);
    for (int v = 0; v < next_var; ++v)
        if (g.find(v) == v && grid_var_used(g, v)) sys.declare(v);
    return {std::move(sys), std::move(g)};
}

/// Searches bases with chi(b) = + (negating chi globally when it has no
/// positive tuple) and row/column normalization choices, minimizing first
/// the residual equality count and then the total degree score; ties break
/// lexicographically.
inline Frame select_frame(const Chirotope& chi, int max_bases = 500) {
    const TupleTable& tt = detail::tuple_table(chi.n, chi.r);
    bool negated = true;
    for (Sign s : chi.signs)
        if (s == Sign::plus) { negated = false; break; }
    Chirotope work = chi;
    if (negated)
        for (Sign& s : work.signs) s = -s;

    std::vector<int> candidates;
    for (int i = 0; i < tt.size(); ++i)
        if (work.signs[i] == Sign::plus) candidates.push_back(i);
    if (candidates.empty()) throw std::invalid_argument("select_frame: chirotope has no nonzero sign");
    if (static_cast<int>(candidates.size()) > max_bases) {
        // deterministic lexicographically spread sample
        std::vector<int> sampled;
        double step = static_cast<double>(candidates.size()) / max_bases;
        for (int i = 0; i < max_bases; ++i) sampled.push_back(candidates[static_cast<int>(i * step)]);
        sampled.erase(std::unique(sampled.begin(), sampled.end()), sampled.end());
        candidates = std::move(sampled);
    }

    std::optional<Frame> best;
    for (int bidx : candidates) {
        Basis b{tt.tuple(bidx)};
        ReducedSystem red = minimal_reduced_system(work, b);
        long long degscore = 0;
        for (int i : red.tuple_indices)
            degscore += std::popcount(tt.mask(bidx) & ~tt.mask(i));
        for (int row = 0; row < chi.r; ++row) {
            for (int col = 1; col <= chi.n; ++col) {
                if (std::find(b.tuple.begin(), b.tuple.end(), col) != b.tuple.end()) continue;
                Frame f;
                f.basis = b;
                f.norm_row = row;
                f.norm_col = col;
                f.reduced = red;
                f.globally_negated = negated;
                f.degree_score = degscore;
                auto built = build_system(chi, f);
                int eqs = 0;
                for (const Constraint& c : built.system.constraints)
                    if (c.rel == Rel::equal_to_zero) ++eqs;
                f.residual_equalities = eqs;
                if (!best ||
                    std::tuple(f.residual_equalities, f.degree_score, f.basis.tuple, f.norm_row,
                               f.norm_col) < std::tuple(best->residual_equalities, best->degree_score,
                                                        best->basis.tuple, best->norm_row,
                                                        best->norm_col))
                    best = std::move(f);
            }
        }
    }
    return *best;
}

}  // namespace omw
