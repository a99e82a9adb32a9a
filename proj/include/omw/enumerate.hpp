#pragma once

#include <array>
#include <cstring>
#include <functional>
#include <iostream>

#include "omw/chirotope.hpp"

namespace omw {

struct EnumerationReport {
    int n = 0;
    int r = 0;
    long long class_count = 0;
    long long uniform_class_count = 0;
    std::vector<std::string> representatives;  // canonical sign strings, sorted
};

struct EnumBudgetExceeded : std::runtime_error {
    explicit EnumBudgetExceeded(long long limit)
        : std::runtime_error("enumeration node limit exceeded (" + std::to_string(limit) + ")") {}
};

namespace detail {

// Alive (A, eps) reorientation/negation subset for one relabeling
// permutation, as a bitset over 2^(n+1) group elements (n <= 7 -> 256 bits).
struct FlipSet {
    std::array<std::uint64_t, 4> w{};

    static FlipSet full(int bits) {
        FlipSet f;
        int total = 1 << bits;
        for (int i = 0; i < total; ++i) f.w[i >> 6] |= std::uint64_t(1) << (i & 63);
        return f;
    }
    bool empty() const { return !(w[0] | w[1] | w[2] | w[3]); }
    FlipSet operator&(const FlipSet& o) const {
        FlipSet f;
        for (int i = 0; i < 4; ++i) f.w[i] = w[i] & o.w[i];
        return f;
    }
    FlipSet operator~() const {
        FlipSet f;
        for (int i = 0; i < 4; ++i) f.w[i] = ~w[i];
        return f;
    }
};

// Per-permutation lexicographic comparison state: the next position to
// compare and the set of still-viable (A, eps) flips.
struct PiState {
    std::int16_t ptr = 0;
    FlipSet alive;
};

}  // namespace detail

/// Backtracking enumeration of rank-r chirotopes on n elements in
/// lexicographic sign-string order ('+' < '-' < '0'), emitting exactly the
/// representatives that are lexicographically minimal in their orbit under
/// relabeling, reorientation, and negation. Non-canonical prefixes are
/// pruned by maintaining, per relabeling permutation, the set of
/// reorientations whose transformed string still ties the current prefix;
/// Grassmann-Pluecker violations prune as soon as every participating tuple
/// of an axiom-(c) instance is assigned.
class ClassEnumerator {
public:
    ClassEnumerator(int n, int r, bool uniform_only, long long node_limit = 500'000'000)
        : n_(n), r_(r), uniform_only_(uniform_only), node_limit_(node_limit),
          at_(detail::axiom_table(n, r)), tt_(at_.tuples()), L_(tt_.size()) {
        if (r < 1 || r >= n) throw std::invalid_argument("enumerate: need 1 <= r < n");
        if (n > 7)
            std::cerr << "omw: warning: enumeration beyond n = 7 may be very slow\n";
        build_perm_tables();
        flip_plus_.resize(L_);
        for (int t = 0; t < L_; ++t) flip_plus_[t] = flipset_plus(tt_.mask(t));
    }

    /// Streams every canonical representative (simple ones only) in sorted
    /// order; the callback receives the full sign assignment.
    void run(const std::function<void(const Chirotope&)>& emit) {
        sigma_.assign(L_, Sign::zero);
        states_.assign(L_ + 1, {});
        states_[0].resize(npi_);
        for (int p = 0; p < npi_; ++p)
            states_[0][p] = {0, detail::FlipSet::full(n_ + 1)};
        alive_idx_.assign(L_ + 1, {});
        alive_idx_[0].resize(npi_);
        for (int p = 0; p < npi_; ++p) alive_idx_[0][p] = p;
        nodes_ = 0;
        dfs(0, emit);
    }

    long long nodes_visited() const { return nodes_; }

private:
    int n_, r_;
    bool uniform_only_;
    long long node_limit_;
    const AxiomTable& at_;
    const TupleTable& tt_;
    int L_;
    int npi_ = 0;
    std::vector<std::vector<std::int32_t>> posmap_;  // [pi][t]
    std::vector<std::vector<std::int8_t>> par_;      // [pi][t]
    std::vector<detail::FlipSet> flip_plus_;         // [t]: (A,eps) with flip +1 at tuple mask
    std::vector<Sign> sigma_;
    std::vector<std::vector<detail::PiState>> states_;  // per depth, indexed by alive_idx
    std::vector<std::vector<std::int32_t>> alive_idx_;
    long long nodes_ = 0;

    void build_perm_tables() {
        std::vector<int> perm(n_);
        for (int i = 0; i < n_; ++i) perm[i] = i + 1;
        int buf[16];
        do {
            posmap_.emplace_back(L_);
            par_.emplace_back(L_);
            auto& pm = posmap_.back();
            auto& pr = par_.back();
            for (int t = 0; t < L_; ++t) {
                const RTuple& tup = tt_.tuple(t);
                for (int m = 0; m < r_; ++m) buf[m] = perm[tup[m] - 1];
                int p = sort_parity(std::span<int>(buf, r_));
                pm[t] = tt_.index_of(std::span<const int>(buf, r_));
                pr[t] = static_cast<std::int8_t>(p);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        npi_ = static_cast<int>(posmap_.size());
    }

    // set of (A, eps) in GF(2)^(n+1) whose flip factor on a tuple mask is +1
    detail::FlipSet flipset_plus(std::uint32_t tmask) const {
        detail::FlipSet f;
        int total = 1 << (n_ + 1);
        for (int g = 0; g < total; ++g) {
            std::uint32_t A = static_cast<std::uint32_t>(g) & ((1u << n_) - 1);
            int eps = g >> n_;
            int parity = (std::popcount(A & tmask) + eps) & 1;
            if (parity == 0) f.w[g >> 6] |= std::uint64_t(1) << (g & 63);
        }
        return f;
    }

    static int key_of(Sign s) { return sign_key(s); }

    // advance all alive permutation states for assigned depth; returns false
    // if the current partial assignment is provably not orbit-minimal
    bool advance(int depth) {
        auto& idx = alive_idx_[depth];
        auto& sts = states_[depth];
        std::size_t out = 0;
        for (std::size_t ii = 0; ii < idx.size(); ++ii) {
            int p = idx[ii];
            detail::PiState st = sts[ii];
            const auto& pm = posmap_[p];
            const auto& pr = par_[p];
            bool dead = false;
            while (st.ptr < depth && pm[st.ptr] < depth) {
                int t = st.ptr;
                int a = sign_int(sigma_[pm[t]]);
                int kb = key_of(sigma_[t]);
                if (a == 0) {
                    if (kb == 2) { ++st.ptr; continue; }
                    dead = true;  // transformed '0' can never beat '+'/'-'
                    break;
                }
                int base = pr[t] * a;
                int key_f0 = base > 0 ? 0 : 1;   // flip +1
                int key_f1 = 1 - key_f0;         // flip -1
                detail::FlipSet inplus = st.alive & flip_plus_[t];
                detail::FlipSet inminus = st.alive & ~flip_plus_[t];
                bool has0 = !inplus.empty();
                bool has1 = !inminus.empty();
                int bestk = std::min(has0 ? key_f0 : 9, has1 ? key_f1 : 9);
                if (bestk < kb) return false;  // strictly smaller image exists
                if (bestk > kb) { dead = true; break; }
                st.alive = (has0 && key_f0 == kb) ? inplus : inminus;
                ++st.ptr;
            }
            if (!dead) {
                idx[out] = p;
                sts[out] = st;
                ++out;
            }
        }
        idx.resize(out);
        sts.resize(out);
        return true;
    }

    void dfs(int depth, const std::function<void(const Chirotope&)>& emit) {
        if (++nodes_ > node_limit_) throw EnumBudgetExceeded(node_limit_);
        if (depth == L_) {
            bool allzero = true;
            for (Sign s : sigma_)
                if (s != Sign::zero) { allzero = false; break; }
            if (allzero) return;
            Chirotope chi(n_, r_, sigma_);
            if (is_simple(chi)) emit(chi);
            return;
        }
        static constexpr Sign kOrder[3] = {Sign::plus, Sign::minus, Sign::zero};
        int nvals = uniform_only_ ? 2 : 3;
        for (int vi = 0; vi < nvals; ++vi) {
            sigma_[depth] = kOrder[vi];
            bool ok = true;
            for (int t : at_.instances_with_maxpos(depth)) {
                if (AxiomTable::violated(at_.instances()[t], sigma_)) { ok = false; break; }
            }
            if (ok) {
                alive_idx_[depth + 1] = alive_idx_[depth];
                states_[depth + 1] = states_[depth];
                if (advance(depth + 1)) dfs(depth + 1, emit);
            }
        }
        sigma_[depth] = Sign::zero;
    }
};

/// One representative per reorientation class of simple rank-r chirotopes
/// on n elements; counts reproduce the classical census tables at desk
/// scale.
inline EnumerationReport enumerate_classes(int n, int r, bool uniform_only = false,
                                           long long node_limit = 500'000'000) {
    EnumerationReport rep;
    rep.n = n;
    rep.r = r;
    ClassEnumerator en(n, r, uniform_only, node_limit);
    en.run([&](const Chirotope& chi) {
        rep.representatives.push_back(chi.sign_string());
        ++rep.class_count;
        if (is_uniform(chi)) ++rep.uniform_class_count;
    });
    return rep;
}

}  // namespace omw
