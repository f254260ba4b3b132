#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homcone/ipm.hpp"

namespace homcone {

// Pattern text format: `N M` then M lines `i j` (1-based, i < j); `#` starts a comment.
SparsityPattern parse_pattern(std::string_view text);
std::string format_pattern(const SparsityPattern& pattern);

// Symmetric matrix on a pattern.  Text: the pattern format followed by a line `K` and
// K lines `i j value` with i >= j.  JSON: {"n", "edges", "entries"}.
struct MatrixFile {
    SparsityPattern pattern;
    std::vector<Triplet> entries;  // 0-based vertex labels
    std::optional<Ordering> ordering;
};

MatrixFile parse_matrix(std::string_view text);
std::string format_matrix_text(const SparsityPattern& pattern, std::span<const Triplet> entries);

// Structure for a pattern: the explicit ordering if given (must be trivially
// perfect), else lbfs_order, else homogeneous_extension.  `note` reports an extension.
StructurePtr structure_for(const SparsityPattern& pattern, const std::optional<Ordering>& ordering,
                           std::string* note = nullptr);

struct LoadedProblem {
    ConicProblem problem;
    SparsityPattern declared;  // pattern as written in the file
    std::vector<std::string> notes;
};

// Native JSON problem: {"n", "edges", "ordering"?, "c", "b", "A"} with 1-based triplets.
LoadedProblem parse_problem(std::string_view text);
std::string serialize_problem(const ConicProblem& problem);

// SDPA sparse format.  The SDPA equality-form problem max <F0, Y> s.t. <F_i, Y> = c_i
// becomes minimize <-F0, x> s.t. <F_i, x> = c_i over x in K on the aggregate pattern
// (extended when necessary), so objective values carry the opposite sign.
LoadedProblem parse_sdpa(std::string_view text);

// JSON encodings used by the CLI.
std::string solve_report_json(const ConicProblem& problem, const SolveReport& report);
std::string trace_record_json(const TraceRecord& record);

}  // namespace homcone
