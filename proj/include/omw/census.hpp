#pragma once

#include "omw/enumerate.hpp"
#include "omw/facelattice.hpp"
#include "omw/solve.hpp"

namespace omw {

struct CensusRecord {
    std::string canonical;  // reorientation-class representative
    bool realizable = false;
    UnknownReason reason = UnknownReason::budget;  // when not realizable
    long long acyclic_relabeling_classes = 0;
    long long matroid_polytope_classes = 0;
};

struct CensusSummary {
    int n = 0, r = 0;
    long long classes = 0;
    long long realizable = 0;
    long long acyclic_relabeling_classes = 0;
    long long matroid_polytopes = 0;  // relabeling classes
    long long polytope_types = 0;     // non-isomorphic face lattices
    long long simplicial = 0;
    long long neighborly = 0;  // simplicial and neighborly
    std::vector<CensusRecord> records;
};

/// Classification pipeline over reorientation-class representatives: decide
/// realizability, expand realizable classes to relabeling classes of
/// acyclic chirotopes, extract matroid polytopes, and count non-isomorphic
/// face lattices (with simplicial / neighborly tallies).
inline CensusSummary census(const EnumerationReport& classes, const Budget& budget) {
    CensusSummary sum;
    sum.n = classes.n;
    sum.r = classes.r;
    sum.classes = classes.class_count;
    std::set<std::string> acyclic_types, polytope_types;
    std::set<std::string> lattice_codes, simplicial_codes, neighborly_codes;

    for (const std::string& s : classes.representatives) {
        Chirotope rep = chirotope_from_string(classes.n, classes.r, s);
        CensusRecord rec;
        rec.canonical = s;
        Budget b = budget;
        b.rng_seed = budget.rng_seed ^ std::hash<std::string>{}(s);
        RealizeOutcome ro = realize(rep, b);
        rec.realizable = ro.feasible();
        rec.reason = ro.reason;
        if (rec.realizable) {
            ++sum.realizable;
            std::set<std::string> seen_acyclic, seen_polytope;
            for (std::uint32_t A = 0; A < (1u << classes.n); ++A) {
                std::vector<int> id(classes.n);
                for (int i = 0; i < classes.n; ++i) id[i] = i + 1;
                Chirotope reor = transform(rep, id, A, false);
                if (!is_acyclic(reor)) continue;
                std::string canon = canonical_form(reor, SymmetryGroup::relabel_only);
                if (!seen_acyclic.insert(canon).second) continue;
                if (is_matroid_polytope(reor)) {
                    seen_polytope.insert(canon);
                    FaceLattice fl = face_lattice(reor);
                    std::string code = canonical_lattice(fl);
                    lattice_codes.insert(code);
                    if (is_simplicial(fl, classes.r)) {
                        simplicial_codes.insert(code);
                        if (is_neighborly(fl, classes.r)) neighborly_codes.insert(code);
                    }
                }
            }
            rec.acyclic_relabeling_classes = static_cast<long long>(seen_acyclic.size());
            rec.matroid_polytope_classes = static_cast<long long>(seen_polytope.size());
            for (auto& c : seen_acyclic) acyclic_types.insert(c);
            for (auto& c : seen_polytope) polytope_types.insert(c);
        }
        sum.records.push_back(std::move(rec));
    }
    sum.acyclic_relabeling_classes = static_cast<long long>(acyclic_types.size());
    sum.matroid_polytopes = static_cast<long long>(polytope_types.size());
    sum.polytope_types = static_cast<long long>(lattice_codes.size());
    sum.simplicial = static_cast<long long>(simplicial_codes.size());
    sum.neighborly = static_cast<long long>(neighborly_codes.size());
    return sum;
}

inline std::string census_tsv_row(const CensusSummary& s) {
    std::string out;
    out += std::to_string(s.n) + "\t" + std::to_string(s.r) + "\t" + std::to_string(s.classes) + "\t" +
           std::to_string(s.realizable) + "\t" + std::to_string(s.acyclic_relabeling_classes) + "\t" +
           std::to_string(s.matroid_polytopes) + "\t" + std::to_string(s.polytope_types) + "\t" +
           std::to_string(s.simplicial) + "\t" + std::to_string(s.neighborly);
    return out;
}

inline std::string census_tsv_header() {
    return "n\tr\tclasses\trealizable\tacyclic_relabeling_classes\tmatroid_polytopes\tpolytope_types\tsimplicial\tneighborly";
}

}  // namespace omw
