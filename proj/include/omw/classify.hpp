#pragma once

#include <atomic>
#include <condition_variable>
#include <thread>

#include "omw/census.hpp"
#include "omw/store.hpp"

namespace omw {

struct ClassifyOptions {
    Budget budget;
    std::uint64_t global_seed = 1;
    int jobs = 1;
    std::string witness_dir = ".";
    bool validate_input = false;
};

struct ClassifyResult {
    long long processed = 0;   // records newly appended
    long long skipped = 0;     // already finalized in the store
    long long realizable = 0;  // among newly processed
    long long unknown = 0;
};

namespace detail {

struct ClassTask {
    std::string canonical;
    Chirotope chi;
};

}  // namespace detail

/// Classifies a batch of chirotopes into the store: canonicalize, skip
/// finalized records, realize the rest with per-class seeds
/// (fnv1a64(canonical) xor global seed), write witness files, and append
/// records in canonical order regardless of worker scheduling.
inline ClassifyResult run_classify(const std::vector<Chirotope>& inputs, ResultStore& store,
                                   const ClassifyOptions& opt) {
    std::map<std::string, detail::ClassTask> tasks;  // sorted by canonical string
    for (const Chirotope& chi : inputs) {
        std::string canon = canonical_form(chi, SymmetryGroup::full);
        Chirotope rep = chirotope_from_string(chi.n, chi.r, canon);
        tasks.emplace(canon, detail::ClassTask{canon, std::move(rep)});
    }

    ClassifyResult result;
    std::vector<detail::ClassTask> todo;
    for (auto& [canon, task] : tasks) {
        if (store.contains(canon)) ++result.skipped;
        else todo.push_back(task);
    }

    struct Done {
        StoreRecord rec;
        std::optional<Realization> realization;
    };
    std::vector<std::optional<Done>> done(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const detail::ClassTask& t = todo[i];
            Budget b = opt.budget;
            b.rng_seed = fnv1a64(t.canonical) ^ opt.global_seed;
            RealizeOutcome ro = realize(t.chi, b);
            Done d;
            d.rec.n = t.chi.n;
            d.rec.r = t.chi.r;
            d.rec.canonical = t.canonical;
            d.rec.realizable = ro.feasible();
            d.rec.reason = ro.feasible() ? "-" : to_string(ro.reason);
            d.rec.witness_path = "-";
            d.rec.cost_limit_used = ro.stats.cost_limit_reached;
            d.rec.trials_used = ro.stats.random_trials_used;
            d.rec.nodes = ro.stats.nodes;
            if (ro.feasible()) d.realization = std::move(ro.realization);
            {
                std::lock_guard<std::mutex> lock(mu);
                done[i] = std::move(d);
            }
            cv.notify_all();
        }
    };

    int jobs = std::max(1, opt.jobs);
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);

    // ordered commit while workers run: records land in canonical order
    for (std::size_t i = 0; i < todo.size(); ++i) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return done[i].has_value(); });
        Done d = std::move(*done[i]);
        lock.unlock();
        if (d.realization) {
            std::string name = "w_" + std::to_string(d.rec.n) + "_" + std::to_string(d.rec.r) + "_" +
                               std::to_string(fnv1a64(d.rec.canonical)) + ".wit";
            std::filesystem::path p = std::filesystem::path(opt.witness_dir) / name;
            write_witness_file(*d.realization, p.string());
            d.rec.witness_path = name;
            ++result.realizable;
        } else {
            ++result.unknown;
        }
        store.append(d.rec);
        ++result.processed;
    }
    for (auto& th : pool) th.join();
    return result;
}

}  // namespace omw
