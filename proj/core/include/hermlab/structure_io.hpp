#pragma once

// Structure files (JSON, schema version 1) and report emission.
//
//   {"schema_version": 1, "n": 2,
//    "C": [{"j": 2, "i": 1, "k": 2, "re": 0, "im": 0.7071067811865475}],
//    "D": [{"j": 2, "i": 1, "k": 2, "re": 0, "im": -0.7071067811865475}],
//    "metadata": {"name": "...", "provenance": "..."}}
//
// Indices are one-based. C stores only i < k; D stores any (j, i, k). Missing
// entries are zero. Output uses sorted keys, sorted index tuples and the
// shortest decimal form that reads back to the same double.

#include <string>
#include <string_view>

#include "hermlab/curvature.hpp"
#include "hermlab/flat_search.hpp"
#include "hermlab/structure.hpp"

namespace hermlab {

inline constexpr int kSchemaVersion = 1;

struct StructureMetadata {
  std::string name;
  std::string provenance;
};

struct StructureFile {
  UnitaryStructure structure;
  StructureMetadata metadata;
};

/// Throws ParseError whose where() is a JSON pointer (or "byte N" for syntax errors).
StructureFile parse_structure_file(std::string_view text);
UnitaryStructure parse_structure(std::string_view text);

std::string emit_structure(const UnitaryStructure& u, const StructureMetadata& meta = {});

enum class ReportFormat { json, csv };
ReportFormat parse_report_format(const std::string& name);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string emit_report(const ResidualReport& report, ReportFormat format);
/// CSV columns: s, flatness_residual, torsion_norm, eta_norm, kahler_flag.
std::string emit_report(const FlatnessSummary& summary, ReportFormat format);
/// One row per restart followed (JSON) by the classification counts.
std::string emit_report(const SearchProblem& problem, const SearchRun& run, ReportFormat format);

}  // namespace hermlab
