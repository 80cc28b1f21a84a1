#include "dawn/report.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "dawn/format.hpp"

namespace dawn {

using ojson = nlohmann::ordered_json;

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw std::invalid_argument("report format must be csv or json, got '" + s + "'");
}

ojson to_json(const SolveStats& s) {
  ojson j;
  j["outer_steps"] = s.outer_steps;
  j["relaxations"] = s.relaxations;
  j["writes"] = s.writes;
  j["first_discoveries"] = s.first_discoveries;
  j["re_updates"] = s.re_updates;
  j["mu"] = s.mu;
  j["updated_ratio"] = s.updated_ratio;
  j["negative_cycle"] = s.negative_cycle;
  return j;
}

ojson to_json(const AggregateStats& a) {
  ojson j;
  j["sources"] = a.sources;
  j["sources_reaching"] = a.sources_reaching;
  j["outer_steps"] = a.outer_steps;
  j["relaxations"] = a.relaxations;
  j["writes"] = a.writes;
  j["first_discoveries"] = a.first_discoveries;
  j["re_updates"] = a.re_updates;
  j["mean_mu"] = a.mean_mu;
  j["mean_updated_ratio"] = a.mean_updated_ratio;
  j["negative_cycle_sources"] = a.negative_cycle_sources;
  return j;
}

ojson to_json(const MuReport& r) {
  ojson j;
  j["graph_id"] = r.graph_id;
  j["seed"] = r.seed;
  j["sources_requested"] = r.sources_requested;
  j["sources_sampled"] = r.sources_sampled;
  j["mean_mu"] = r.mean_mu;
  j["mean_updated_ratio"] = r.mean_updated_ratio;
  j["baseline"] = to_json(r.baseline);
  j["randomized"] = to_json(r.randomized);
  j["sources"] = r.sources;
  ojson base = ojson::array();
  for (const auto& s : r.baseline_per_source) base.push_back(to_json(s));
  ojson rnd = ojson::array();
  for (const auto& s : r.randomized_per_source) rnd.push_back(to_json(s));
  j["baseline_per_source"] = std::move(base);
  j["randomized_per_source"] = std::move(rnd);
  j["notes"] = r.notes;
  return j;
}

ojson to_json(const BenchRecord& r) {
  ojson j;
  j["graph_id"] = r.graph_id;
  j["algorithm"] = r.algorithm;
  j["task"] = r.task;
  j["n"] = r.n;
  j["m"] = r.m;
  j["sources"] = r.sources;
  j["workers"] = r.workers;
  j["wall_time"] = r.wall_time;
  j["relaxations"] = r.relaxations;
  j["repeats"] = r.repeats;
  j["times"] = r.times;
  return j;
}

SolveStats solve_stats_from_json(const nlohmann::json& j) {
  SolveStats s;
  j.at("outer_steps").get_to(s.outer_steps);
  j.at("relaxations").get_to(s.relaxations);
  j.at("writes").get_to(s.writes);
  j.at("first_discoveries").get_to(s.first_discoveries);
  j.at("re_updates").get_to(s.re_updates);
  j.at("mu").get_to(s.mu);
  j.at("updated_ratio").get_to(s.updated_ratio);
  j.at("negative_cycle").get_to(s.negative_cycle);
  return s;
}

AggregateStats aggregate_stats_from_json(const nlohmann::json& j) {
  AggregateStats a;
  j.at("sources").get_to(a.sources);
  j.at("sources_reaching").get_to(a.sources_reaching);
  j.at("outer_steps").get_to(a.outer_steps);
  j.at("relaxations").get_to(a.relaxations);
  j.at("writes").get_to(a.writes);
  j.at("first_discoveries").get_to(a.first_discoveries);
  j.at("re_updates").get_to(a.re_updates);
  j.at("mean_mu").get_to(a.mean_mu);
  j.at("mean_updated_ratio").get_to(a.mean_updated_ratio);
  j.at("negative_cycle_sources").get_to(a.negative_cycle_sources);
  return a;
}

MuReport mu_report_from_json(const nlohmann::json& j) {
  MuReport r;
  j.at("graph_id").get_to(r.graph_id);
  j.at("seed").get_to(r.seed);
  j.at("sources_requested").get_to(r.sources_requested);
  j.at("sources_sampled").get_to(r.sources_sampled);
  j.at("mean_mu").get_to(r.mean_mu);
  j.at("mean_updated_ratio").get_to(r.mean_updated_ratio);
  r.baseline = aggregate_stats_from_json(j.at("baseline"));
  r.randomized = aggregate_stats_from_json(j.at("randomized"));
  j.at("sources").get_to(r.sources);
  for (const auto& s : j.at("baseline_per_source"))
    r.baseline_per_source.push_back(solve_stats_from_json(s));
  for (const auto& s : j.at("randomized_per_source"))
    r.randomized_per_source.push_back(solve_stats_from_json(s));
  j.at("notes").get_to(r.notes);
  return r;
}

BenchRecord bench_record_from_json(const nlohmann::json& j) {
  BenchRecord r;
  j.at("graph_id").get_to(r.graph_id);
  j.at("algorithm").get_to(r.algorithm);
  j.at("task").get_to(r.task);
  j.at("n").get_to(r.n);
  j.at("m").get_to(r.m);
  j.at("sources").get_to(r.sources);
  j.at("workers").get_to(r.workers);
  j.at("wall_time").get_to(r.wall_time);
  j.at("relaxations").get_to(r.relaxations);
  j.at("repeats").get_to(r.repeats);
  j.at("times").get_to(r.times);
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> aggregate_columns(const std::string& prefix) {
  std::vector<std::string> cols;
  const ojson fields = to_json(AggregateStats{});
  for (const auto& item : fields.items()) cols.push_back(prefix + item.key());
  return cols;
}

std::vector<std::string> aggregate_values(const AggregateStats& a) {
  std::vector<std::string> vals;
  const ojson fields = to_json(a);
  for (const auto& item : fields.items()) {
    const auto& v = item.value();
    vals.push_back(v.is_number_float() ? format_weight(v.get<double>()) : v.dump());
  }
  return vals;
}

void finish(std::ostream& out) {
  out.flush();
  if (!out) throw std::runtime_error("failed to write report");
}

template <typename Record>
void write_json(std::span<const Record> records, std::ostream& out) {
  ojson arr = ojson::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  out << arr.dump(2) << '\n';
}

}  // namespace

void write_report(std::span<const MuReport> records, ReportFormat format, std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("no records to report");
  if (format == ReportFormat::Json) {
    write_json(records, out);
  } else {
    std::vector<std::string> header = {"graph_id",        "seed",      "sources_requested",
                                       "sources_sampled", "mean_mu",   "mean_updated_ratio"};
    for (auto& c : aggregate_columns("baseline_")) header.push_back(c);
    for (auto& c : aggregate_columns("randomized_")) header.push_back(c);
    header.push_back("notes");
    out << join(header, ",") << '\n';
    for (const auto& r : records) {
      std::vector<std::string> row = {csv_field(r.graph_id),
                                      std::to_string(r.seed),
                                      std::to_string(r.sources_requested),
                                      std::to_string(r.sources_sampled),
                                      format_weight(r.mean_mu),
                                      format_weight(r.mean_updated_ratio)};
      for (auto& v : aggregate_values(r.baseline)) row.push_back(v);
      for (auto& v : aggregate_values(r.randomized)) row.push_back(v);
      row.push_back(csv_field(join(r.notes, "; ")));
      out << join(row, ",") << '\n';
    }
  }
  finish(out);
}

void write_report(std::span<const BenchRecord> records, ReportFormat format,
                  std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("no records to report");
  if (format == ReportFormat::Json) {
    write_json(records, out);
  } else {
    out << "graph_id,algorithm,task,n,m,sources,workers,wall_time,relaxations,repeats,times\n";
    for (const auto& r : records) {
      std::vector<std::string> times;
      for (double t : r.times) times.push_back(format_weight(t));
      out << csv_field(r.graph_id) << ',' << r.algorithm << ',' << r.task << ',' << r.n << ','
          << r.m << ',' << r.sources << ',' << r.workers << ',' << format_weight(r.wall_time)
          << ',' << r.relaxations << ',' << r.repeats << ',' << join(times, ";") << '\n';
    }
  }
  finish(out);
}

std::vector<MuReport> read_mu_reports(std::istream& in) {
  std::vector<MuReport> out;
  for (const auto& j : nlohmann::json::parse(in)) out.push_back(mu_report_from_json(j));
  return out;
}

std::vector<BenchRecord> read_bench_records(std::istream& in) {
  std::vector<BenchRecord> out;
  for (const auto& j : nlohmann::json::parse(in)) out.push_back(bench_record_from_json(j));
  return out;
}

std::string format_distance_row(const DistanceVector& row) {
  std::string out = std::to_string(row.source);
  for (Weight d : row.dist) {
    out += ',';
    out += format_weight(d);
  }
  return out;
}

}  // namespace dawn
