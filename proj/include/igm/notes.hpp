#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace igm {

// Deviations taken and work counters collected during one solver run.
struct run_notes {
    std::set<std::string> deviations;
    std::map<std::string, std::int64_t> counters;

    void deviate(const std::string& id) { deviations.insert(id); }
    void count(const std::string& key, std::int64_t by = 1) { counters[key] += by; }
};

inline void note_deviation(run_notes* notes, const std::string& id) {
    if (notes) notes->deviate(id);
}

inline void note_count(run_notes* notes, const std::string& key, std::int64_t by = 1) {
    if (notes) notes->count(key, by);
}

}  // namespace igm
