// CSV / JSON serialisation of experiment records and distance rows.
//
// JSON keys and CSV columns appear in a fixed order; floats carry enough
// digits to round-trip exactly. Schemas are described in README.md.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dawn/experiment.hpp"
#include "dawn/solver.hpp"

namespace dawn {

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string& s);

nlohmann::ordered_json to_json(const SolveStats& s);
nlohmann::ordered_json to_json(const AggregateStats& a);
nlohmann::ordered_json to_json(const MuReport& r);
nlohmann::ordered_json to_json(const BenchRecord& r);

SolveStats solve_stats_from_json(const nlohmann::json& j);
AggregateStats aggregate_stats_from_json(const nlohmann::json& j);
MuReport mu_report_from_json(const nlohmann::json& j);
BenchRecord bench_record_from_json(const nlohmann::json& j);

// Throws std::invalid_argument on an empty sequence and std::runtime_error if
// the stream fails.
void write_report(std::span<const MuReport> records, ReportFormat format, std::ostream& out);
void write_report(std::span<const BenchRecord> records, ReportFormat format,
                  std::ostream& out);

std::vector<MuReport> read_mu_reports(std::istream& in);
std::vector<BenchRecord> read_bench_records(std::istream& in);

// "source,d0,d1,..." with `inf` for unreachable nodes.
std::string format_distance_row(const DistanceVector& row);

}  // namespace dawn
