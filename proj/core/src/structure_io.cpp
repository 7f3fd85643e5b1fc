#include "hermlab/structure_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "hermlab/error.hpp"

namespace hermlab {

namespace {

using nlohmann::json;

constexpr int kMaxDim = 256;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where, what); }

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(where + "/" + key, "unknown field '" + key + "'");
  }
}

int read_int(const json& obj, const char* key, const std::string& where) {
  const std::string at = where + "/" + key;
  if (!obj.contains(key)) fail(at, std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(at, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

double read_real(const json& obj, const char* key, const std::string& where) {
  const std::string at = where + "/" + key;
  if (!obj.contains(key)) fail(at, std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(at, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::string tuple_text(int j, int i, int k) {
  return "(" + std::to_string(j) + "," + std::to_string(i) + "," + std::to_string(k) + ")";
}

ComplexTensor3 read_entries(const json& doc, const char* name, int n, bool antisymmetric) {
  ComplexTensor3 t(n);
  const std::string base = std::string("/") + name;
  if (!doc.contains(name)) return t;
  const json& arr = doc.at(name);
  if (!arr.is_array()) fail(base, std::string("'") + name + "' must be an array");
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t idx = 0; idx < arr.size(); ++idx) {
    const std::string at = base + "/" + std::to_string(idx);
    const json& e = arr[idx];
    if (!e.is_object()) fail(at, "entry must be an object");
    reject_unknown(e, at, {"j", "i", "k", "re", "im"});
    const int j = read_int(e, "j", at);
    const int i = read_int(e, "i", at);
    const int k = read_int(e, "k", at);
    for (const auto& [key, v] : {std::pair{"j", j}, std::pair{"i", i}, std::pair{"k", k}})
      if (v < 1 || v > n)
        fail(at + "/" + key, std::string("index ") + key + " = " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (antisymmetric && i >= k)
      fail(at, std::string(name) + " entry " + tuple_text(j, i, k) + " must have i < k");
    if (!seen.insert({j, i, k}).second)
      fail(at, "duplicate " + std::string(name) + " entry " + tuple_text(j, i, k));
    const Complex v{read_real(e, "re", at), read_real(e, "im", at)};
    t(j - 1, i - 1, k - 1) = v;
    if (antisymmetric) t(j - 1, k - 1, i - 1) = -v;
  }
  return t;
}

json entries(const ComplexTensor3& t, bool upper_only) {
  json arr = json::array();
  const int n = t.dim();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = upper_only ? i + 1 : 0; k < n; ++k) {
        const Complex v = t(j, i, k);
        if (v == Complex{} && !std::signbit(v.real()) && !std::signbit(v.imag())) continue;
        arr.push_back({{"j", j + 1}, {"i", i + 1}, {"k", k + 1}, {"re", v.real()}, {"im", v.imag()}});
      }
  return arr;
}

json residual_json(const ResidualReport& r) {
  json fam = json::object();
  for (const auto& [name, v] : r.family_max) fam[name] = v;
  return {{"name", r.name}, {"max_abs", r.max_abs}, {"family_max", fam}, {"valid", r.valid}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

StructureFile parse_structure_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("byte " + std::to_string(e.byte), std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("", "top level must be an object");
  reject_unknown(doc, "", {"schema_version", "n", "C", "D", "metadata"});
  const int version = read_int(doc, "schema_version", "");
  if (version != kSchemaVersion)
    fail("/schema_version", "unsupported schema_version " + std::to_string(version) + " (expected 1)");
  const int n = read_int(doc, "n", "");
  if (n < 1 || n > kMaxDim) fail("/n", "n must be in 1.." + std::to_string(kMaxDim));

  StructureMetadata meta;
  if (doc.contains("metadata")) {
    const json& m = doc.at("metadata");
    if (!m.is_object()) fail("/metadata", "metadata must be an object");
    reject_unknown(m, "/metadata", {"name", "provenance"});
    for (const auto& [key, dst] : {std::pair{"name", &meta.name}, std::pair{"provenance", &meta.provenance}}) {
      if (!m.contains(key)) continue;
      if (!m.at(key).is_string()) fail(std::string("/metadata/") + key, "must be a string");
      *dst = m.at(key).get<std::string>();
    }
  }
  auto c = read_entries(doc, "C", n, true);
  auto d = read_entries(doc, "D", n, false);
  return {UnitaryStructure(std::move(c), std::move(d)), std::move(meta)};
}

UnitaryStructure parse_structure(std::string_view text) { return parse_structure_file(text).structure; }

std::string emit_structure(const UnitaryStructure& u, const StructureMetadata& meta) {
  json doc = {{"schema_version", kSchemaVersion},
              {"n", u.dim()},
              {"C", entries(u.C(), true)},
              {"D", entries(u.D(), false)}};
  if (!meta.name.empty() || !meta.provenance.empty()) {
    json m = json::object();
    if (!meta.name.empty()) m["name"] = meta.name;
    if (!meta.provenance.empty()) m["provenance"] = meta.provenance;
    doc["metadata"] = m;
  }
  return dump(doc);
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ValidationError("unknown report format '" + name + "' (expected json or csv)");
}

std::string emit_report(const ResidualReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return dump(residual_json(report));
  std::ostringstream out;
  out << "family,max_abs\n";
  for (const auto& [name, v] : report.family_max) out << name << ',' << format_double(v) << '\n';
  return out.str();
}

std::string emit_report(const FlatnessSummary& summary, ReportFormat format) {
  if (format == ReportFormat::json) {
    json rows = json::array();
    for (const auto& r : summary.rows)
      rows.push_back({{"s", r.s}, {"flatness_residual", r.flatness_residual}, {"flat", r.flat}});
    return dump({{"torsion_norm", summary.torsion_norm},
                 {"eta_norm", summary.eta_norm},
                 {"kahler", summary.kahler},
                 {"rows", rows}});
  }
  std::ostringstream out;
  out << "s,flatness_residual,torsion_norm,eta_norm,kahler_flag\n";
  for (const auto& r : summary.rows)
    out << format_double(r.s) << ',' << format_double(r.flatness_residual) << ','
        << format_double(summary.torsion_norm) << ',' << format_double(summary.eta_norm) << ','
        << (summary.kahler ? "true" : "false") << '\n';
  return out.str();
}

std::string emit_report(const SearchProblem& problem, const SearchRun& run, ReportFormat format) {
  if (format == ReportFormat::json) {
    json rows = json::array();
    for (std::size_t i = 0; i < run.results.size(); ++i) {
      const auto& r = run.results[i];
      rows.push_back({{"restart", i},
                      {"seed", r.seed_used},
                      {"classification", to_string(r.classification)},
                      {"final_jacobi", r.final_jacobi},
                      {"final_flatness", r.final_flatness},
                      {"torsion_norm", r.torsion_norm},
                      {"iterations", r.iterations},
                      {"gradient_fallback", r.gradient_fallback}});
    }
    return dump({{"n", problem.n},
                 {"s", problem.s},
                 {"mode", to_string(problem.mode)},
                 {"hunt", problem.hunt},
                 {"seed", problem.seed},
                 {"tol", problem.tol},
                 {"kahler_tol", problem.kahler_tol},
                 {"results", rows},
                 {"summary",
                  {{"converged_kahler", run.summary.converged_kahler},
                   {"converged_nonkahler", run.summary.converged_nonkahler},
                   {"not_converged", run.summary.not_converged}}}});
  }
  std::ostringstream out;
  out << "restart,seed,classification,final_jacobi,final_flatness,torsion_norm,iterations,gradient_fallback\n";
  for (std::size_t i = 0; i < run.results.size(); ++i) {
    const auto& r = run.results[i];
    out << i << ',' << r.seed_used << ',' << to_string(r.classification) << ',' << format_double(r.final_jacobi)
        << ',' << format_double(r.final_flatness) << ',' << format_double(r.torsion_norm) << ',' << r.iterations
        << ',' << (r.gradient_fallback ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace hermlab
