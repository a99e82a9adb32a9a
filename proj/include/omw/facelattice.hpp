#pragma once

#include "omw/signvector.hpp"

namespace omw {

/// Vertex-facet incidence of a matroid polytope. Facets are stored as
/// vertex bitmasks; the full lattice is the intersection closure and is
/// reconstructed on demand.
struct FaceLattice {
    int vertex_count = 0;
    std::vector<std::uint32_t> facets;  // sorted, pairwise incomparable
    std::string canonical_code;         // set by canonical_lattice
};

/// Facets are the zero sets of the nonnegative cocircuits.
inline FaceLattice face_lattice(const Chirotope& chi) {
    if (!is_matroid_polytope(chi))
        throw std::invalid_argument("face_lattice: chirotope is not a matroid polytope");
    FaceLattice fl;
    fl.vertex_count = chi.n;
    std::uint32_t all = (1u << chi.n) - 1;
    for (const SignVector& d : cocircuits(chi)) {
        // nonnegative member of the pair, if any
        if (d.negative_part() == 0 || d.positive_part() == 0) {
            std::uint32_t z = d.zero_set() & all;
            if (std::find(fl.facets.begin(), fl.facets.end(), z) == fl.facets.end())
                fl.facets.push_back(z);
        }
    }
    std::sort(fl.facets.begin(), fl.facets.end());
    return fl;
}

/// All faces: intersection closure of the facets, with top and bottom
/// adjoined.
inline std::vector<std::uint32_t> all_faces(const FaceLattice& fl) {
    std::set<std::uint32_t> faces;
    faces.insert((1u << fl.vertex_count) - 1);  // top
    faces.insert(0);                            // bottom
    std::vector<std::uint32_t> queue(fl.facets.begin(), fl.facets.end());
    for (std::uint32_t f : fl.facets) faces.insert(f);
    while (!queue.empty()) {
        std::uint32_t f = queue.back();
        queue.pop_back();
        for (std::uint32_t g : fl.facets) {
            std::uint32_t h = f & g;
            if (faces.insert(h).second) queue.push_back(h);
        }
    }
    return {faces.begin(), faces.end()};
}

/// Canonical byte code of the vertex-facet incidence, equal for two
/// lattices iff they are isomorphic as bipartite incidence structures.
/// Vertex classes are refined by iterated degree signatures, then the code
/// is minimized exhaustively over permutations within classes.
inline std::string canonical_lattice(const FaceLattice& fl) {
    const int n = fl.vertex_count;
    const auto& facets = fl.facets;

    // iterative refinement: vertex color <- multiset of (facet size, facet
    // color multiset) over incident facets
    std::vector<int> color(n, 0);
    for (int round = 0; round < n; ++round) {
        std::vector<std::string> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::string> fs;
            for (std::uint32_t f : facets) {
                if (!(f >> v & 1u)) continue;
                std::vector<int> cc;
                for (int u = 0; u < n; ++u)
                    if (f >> u & 1u) cc.push_back(color[u]);
                std::sort(cc.begin(), cc.end());
                std::string s = std::to_string(std::popcount(f)) + ":";
                for (int c : cc) s += std::to_string(c) + ",";
                fs.push_back(std::move(s));
            }
            std::sort(fs.begin(), fs.end());
            sig[v] = std::to_string(color[v]) + "|";
            for (auto& s : fs) sig[v] += s + ";";
        }
        std::vector<std::string> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        if (next == color) break;
        color = std::move(next);
    }

    // vertices ordered by color class; permute within classes exhaustively
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return color[a] < color[b]; });

    auto encode = [&](const std::vector<int>& position_of) {
        std::vector<std::uint32_t> mapped;
        mapped.reserve(facets.size());
        for (std::uint32_t f : facets) {
            std::uint32_t m = 0;
            for (int v = 0; v < n; ++v)
                if (f >> v & 1u) m |= 1u << position_of[v];
            mapped.push_back(m);
        }
        std::sort(mapped.begin(), mapped.end());
        std::string code;
        code.push_back(static_cast<char>(n));
        code.push_back(static_cast<char>(mapped.size()));
        for (std::uint32_t m : mapped) {
            code.push_back(static_cast<char>(m & 0xff));
            code.push_back(static_cast<char>(m >> 8));
        }
        return code;
    };

    std::optional<std::string> best;
    std::vector<int> position_of(n);
    // enumerate permutations respecting the class partition of `order`
    std::vector<std::pair<int, int>> classes;  // [begin, end) in order[]
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && color[order[j]] == color[order[i]]) ++j;
        classes.emplace_back(i, j);
        i = j;
    }
    std::function<void(std::size_t)> rec = [&](std::size_t ci) {
        if (ci == classes.size()) {
            for (int pos = 0; pos < n; ++pos) position_of[order[pos]] = pos;
            std::string code = encode(position_of);
            if (!best || code < *best) best = std::move(code);
            return;
        }
        auto [b, e] = classes[ci];
        std::sort(order.begin() + b, order.begin() + e);
        do rec(ci + 1);
        while (std::next_permutation(order.begin() + b, order.begin() + e));
    };
    rec(0);
    return *best;
}

/// Every facet of a rank-r matroid polytope has exactly r-1 vertices.
inline bool is_simplicial(const FaceLattice& fl, int r) {
    for (std::uint32_t f : fl.facets)
        if (std::popcount(f) != r - 1) return false;
    return true;
}

/// Every vertex subset of size floor((r-1)/2) lies in some facet.
inline bool is_neighborly(const FaceLattice& fl, int r) {
    int k = (r - 1) / 2;
    const int n = fl.vertex_count;
    std::vector<int> idx(k);
    std::function<bool(int, int, std::uint32_t)> rec = [&](int start, int left, std::uint32_t mask) {
        if (left == 0) {
            for (std::uint32_t f : fl.facets)
                if ((f & mask) == mask) return true;
            return false;
        }
        for (int v = start; v <= n - left; ++v)
            if (!rec(v + 1, left - 1, mask | (1u << v))) return false;
        return true;
    };
    return rec(0, k, 0);
}

}  // namespace omw
