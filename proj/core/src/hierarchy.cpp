#include "geobi/hierarchy.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "geobi/errors.hpp"

namespace geobi::hierarchy {

namespace {

std::unordered_map<EmpId, std::size_t> index_by_id(const std::vector<HierarchyRecord>& records) {
    std::unordered_map<EmpId, std::size_t> by_id;
    by_id.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!by_id.emplace(records[i].emp_id, i).second)
            throw DuplicateEmpId("duplicate emp_id " + std::to_string(records[i].emp_id));
    }
    return by_id;
}

// Finds manager cycles among the given records. Every chain either ends at
// a root, leaves the record set, or loops; looping ids are returned.
std::vector<EmpId> find_cycle_ids(const std::vector<HierarchyRecord>& records,
                                  const std::unordered_map<EmpId, std::size_t>& by_id) {
    enum class Color : unsigned char { White, Gray, Black };
    std::vector<Color> color(records.size(), Color::White);
    std::vector<EmpId> on_cycles;

    for (std::size_t start = 0; start < records.size(); ++start) {
        if (color[start] != Color::White) continue;
        std::vector<std::size_t> path;
        std::size_t current = start;
        while (true) {
            if (color[current] == Color::Gray) {
                // Found a loop: everything from `current`'s first occurrence
                // in the path onward is on the cycle.
                auto loop_start = std::find(path.begin(), path.end(), current);
                for (auto it = loop_start; it != path.end(); ++it)
                    on_cycles.push_back(records[*it].emp_id);
                break;
            }
            if (color[current] == Color::Black) break;
            color[current] = Color::Gray;
            path.push_back(current);

            const std::optional<EmpId>& mgr = records[current].manager_id;
            if (!mgr) break;
            auto it = by_id.find(*mgr);
            if (it == by_id.end()) break;
            current = it->second;
        }
        for (std::size_t i : path) color[i] = Color::Black;
    }

    std::sort(on_cycles.begin(), on_cycles.end());
    return on_cycles;
}

}  // namespace

HierarchyLevels evaluate_levels(const std::vector<HierarchyRecord>& records) {
    const auto by_id = index_by_id(records);

    std::vector<EmpId> cycles = find_cycle_ids(records, by_id);
    if (!cycles.empty())
        throw CycleDetected("manager cycle over " + std::to_string(cycles.size()) + " records",
                            std::move(cycles));

    // children[i] = indexes managed by record i.
    std::vector<std::vector<std::size_t>> children(records.size());
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::optional<EmpId>& mgr = records[i].manager_id;
        if (!mgr) {
            frontier.push_back(i);  // anchor rows
            continue;
        }
        auto it = by_id.find(*mgr);
        if (it != by_id.end()) children[it->second].push_back(i);
    }

    HierarchyLevels out;
    std::vector<bool> reached(records.size(), false);
    std::size_t level = 0;
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : frontier) {
            reached[i] = true;
            out.rows.push_back(LeveledRecord{records[i], level});
            next.insert(next.end(), children[i].begin(), children[i].end());
        }
        frontier = std::move(next);
        ++level;
    }

    for (std::size_t i = 0; i < records.size(); ++i)
        if (!reached[i]) out.unreachable.push_back(records[i].emp_id);

    std::sort(out.rows.begin(), out.rows.end(), [](const LeveledRecord& a, const LeveledRecord& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.record.emp_id < b.record.emp_id;
    });
    std::sort(out.unreachable.begin(), out.unreachable.end());
    return out;
}

std::vector<EmpId> subtree(const std::vector<HierarchyRecord>& records, EmpId root_id) {
    const auto by_id = index_by_id(records);
    auto root_it = by_id.find(root_id);
    if (root_it == by_id.end()) throw UnknownId("unknown emp_id " + std::to_string(root_id));

    std::vector<std::vector<std::size_t>> children(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!records[i].manager_id) continue;
        auto it = by_id.find(*records[i].manager_id);
        if (it != by_id.end()) children[it->second].push_back(i);
    }

    std::vector<EmpId> out;
    std::unordered_set<std::size_t> seen;
    std::vector<std::size_t> stack{root_it->second};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        if (!seen.insert(i).second)
            throw CycleDetected("manager cycle through emp_id " +
                                    std::to_string(records[i].emp_id),
                                {records[i].emp_id});
        out.push_back(records[i].emp_id);
        stack.insert(stack.end(), children[i].begin(), children[i].end());
    }

    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace geobi::hierarchy
