#pragma once

#include <filesystem>
#include <map>

#include "omw/io.hpp"

namespace omw {

/// One finalized classification record. Work counters stand in for wall
/// time so that stores are byte-identical across reruns.
struct StoreRecord {
    int n = 0, r = 0;
    std::string canonical;
    bool realizable = false;
    std::string reason;       // "-" when realizable
    std::string witness_path; // "-" when unknown
    int cost_limit_used = 0;
    long long trials_used = 0;
    long long nodes = 0;

    std::string to_line() const {
        std::ostringstream os;
        os << n << '\t' << r << '\t' << canonical << '\t' << (realizable ? "realizable" : "unknown")
           << '\t' << (realizable ? "-" : reason) << '\t' << witness_path << '\t' << cost_limit_used
           << '\t' << trials_used << '\t' << nodes;
        return os.str();
    }

    static StoreRecord from_line(const std::string& line) {
        std::istringstream is(line);
        StoreRecord rec;
        std::string status;
        if (!(is >> rec.n >> rec.r >> rec.canonical >> status >> rec.reason >> rec.witness_path >>
              rec.cost_limit_used >> rec.trials_used >> rec.nodes))
            throw std::runtime_error("corrupt store record: " + line);
        if (status != "realizable" && status != "unknown")
            throw std::runtime_error("corrupt store record (bad status): " + line);
        rec.realizable = status == "realizable";
        return rec;
    }
};

/// Append-only record file with at most one record per canonical string,
/// written in canonical order. A trailing partial line marks a corrupt
/// store and append is refused.
class ResultStore {
public:
    explicit ResultStore(std::string path) : path_(std::move(path)) { load(); }

    const std::string& path() const { return path_; }
    bool contains(const std::string& canonical) const { return records_.count(canonical) > 0; }
    const StoreRecord* find(const std::string& canonical) const {
        auto it = records_.find(canonical);
        return it == records_.end() ? nullptr : &it->second;
    }
    std::size_t size() const { return records_.size(); }
    const std::map<std::string, StoreRecord>& records() const { return records_; }

    void append(const StoreRecord& rec) {
        if (corrupt_)
            throw std::runtime_error("store is corrupt (truncated last line); refusing to append: " + path_);
        if (records_.count(rec.canonical)) return;
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot open store for append: " + path_);
        out << rec.to_line() << '\n';
        if (!out) throw std::runtime_error("error appending to store: " + path_);
        records_.emplace(rec.canonical, rec);
    }

private:
    void load() {
        std::ifstream in(path_, std::ios::binary);
        if (!in) return;  // fresh store
        std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (!content.empty() && content.back() != '\n') corrupt_ = true;
        std::istringstream is(content);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            if (corrupt_ && is.eof()) break;  // ignore, flagged above
            StoreRecord rec = StoreRecord::from_line(line);
            records_.emplace(rec.canonical, rec);
        }
    }

    std::string path_;
    std::map<std::string, StoreRecord> records_;
    bool corrupt_ = false;
};

}  // namespace omw
