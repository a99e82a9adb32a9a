#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace omw {

/// Strictly increasing r-tuple of element indices from 1..n.
using RTuple = std::vector<int>;

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

/// Sorts a small index sequence in place, returning the permutation sign,
/// or 0 if an index repeats.
inline int sort_parity(std::span<int> seq) {
    int par = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && seq[j - 1] > seq[j]) {
            std::swap(seq[j - 1], seq[j]);
            par = -par;
            --j;
        }
    }
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i - 1] == seq[i]) return 0;
    return par;
}

/// All r-subsets of {1..n} in lexicographic order, with O(1) index lookup
/// by element bitmask.
class TupleTable {
public:
    TupleTable(int n, int r) : n_(n), r_(r) {
        if (r < 0 || n < 0 || r > n) throw std::invalid_argument("TupleTable: need 0 <= r <= n");
        if (n > 31) throw std::invalid_argument("TupleTable: n too large");
        index_by_mask_.assign(std::size_t(1) << n, -1);
        RTuple t(r);
        for (int i = 0; i < r; ++i) t[i] = i + 1;
        while (true) {
            std::uint32_t mask = 0;
            for (int x : t) mask |= 1u << (x - 1);
            index_by_mask_[mask] = static_cast<int>(tuples_.size());
            tuples_.push_back(t);
            masks_.push_back(mask);
            // next combination in lex order
            int i = r - 1;
            while (i >= 0 && t[i] == n - r + i + 1) --i;
            if (i < 0) break;
            ++t[i];
            for (int j = i + 1; j < r; ++j) t[j] = t[j - 1] + 1;
        }
    }

    int n() const { return n_; }
    int r() const { return r_; }
    int size() const { return static_cast<int>(tuples_.size()); }
    const RTuple& tuple(int idx) const { return tuples_[idx]; }
    std::uint32_t mask(int idx) const { return masks_[idx]; }

    int index_of_mask(std::uint32_t mask) const { return index_by_mask_[mask]; }

    /// Index of a sorted tuple; -1 if it is not a valid member.
    int index_of(std::span<const int> sorted) const {
        std::uint32_t mask = 0;
        for (int x : sorted) {
            if (x < 1 || x > n_) return -1;
            mask |= 1u << (x - 1);
        }
        if (static_cast<int>(std::popcount(mask)) != r_) return -1;
        return index_by_mask_[mask];
    }

    const std::vector<RTuple>& all() const { return tuples_; }

private:
    int n_, r_;
    std::vector<RTuple> tuples_;
    std::vector<std::uint32_t> masks_;
    std::vector<int> index_by_mask_;
};

}  // namespace omw
