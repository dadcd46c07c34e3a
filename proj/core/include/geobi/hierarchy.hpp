#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace geobi::hierarchy {

using EmpId = std::uint64_t;

/// One employee row; a record without a manager is a root.
struct HierarchyRecord {
    EmpId emp_id = 0;
    std::string first_name;
    std::string last_name;
    std::optional<EmpId> manager_id;
};

struct LeveledRecord {
    HierarchyRecord record;
    std::size_t level = 0;  // 0 for roots, manager level + 1 otherwise
};

struct HierarchyLevels {
    /// Reachable records, ascending by (level, emp_id).
    std::vector<LeveledRecord> rows;
    /// Records whose manager chain never reaches a root (dangling manager
    /// references), ascending by emp_id.
    std::vector<EmpId> unreachable;
};

/// Iterated frontier expansion: the roots seed level 0, and each following
/// level holds the records managed by the previous one, until a level comes
/// up empty. Records pointing at missing managers end up in `unreachable`;
/// a manager cycle raises CycleDetected instead of looping.
///
/// Throws DuplicateEmpId, CycleDetected.
HierarchyLevels evaluate_levels(const std::vector<HierarchyRecord>& records);

/// root_id plus all of its transitive reports, ascending.
///
/// Throws DuplicateEmpId, UnknownId, CycleDetected.
std::vector<EmpId> subtree(const std::vector<HierarchyRecord>& records, EmpId root_id);

}  // namespace geobi::hierarchy
