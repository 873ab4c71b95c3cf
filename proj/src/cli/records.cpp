#include "almsq/cli/records.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "almsq/error.hpp"

namespace almsq::cli {

namespace {

constexpr std::size_t kSummaryRows = 20;

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_value(const Json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    std::string s;
    for (const auto& [k, item] : v.items()) {
      if (!s.empty()) s += ' ';
      s += k + "=" + short_value(item);
    }
    return s;
  }
  if (v.is_array()) {
    const bool named = !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& e) {
      return e.is_array() && e.size() == 2 && e[0].is_string();
    });
    if (named) {
      std::string s;
      for (const auto& e : v) s += (s.empty() ? "" : " ") + e[0].get<std::string>() + "=" + short_value(e[1]);
      return s;
    }
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + short_value(v[i]);
    return s + "]";
  }
  return v.dump();
}

std::string csv_value(const Json& v) {
  if (v.is_number_float()) return real17(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  std::string s = canonical_dump(v);
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

std::string grid_point_text(const Json& point) {
  std::string s;
  for (const auto& entry : point) {
    if (!s.empty()) s += ';';
    s += entry[0].get<std::string>() + "=" + real17(entry[1].get<double>());
  }
  return s;
}

std::vector<const ResultRecord*> of_kind(const std::vector<ResultRecord>& records,
                                         std::string_view kind) {
  std::vector<const ResultRecord*> out;
  for (const auto& r : records)
    if (r.kind == kind) out.push_back(&r);
  return out;
}

std::string generic_csv(const std::vector<const ResultRecord*>& rows) {
  std::ostringstream out;
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows.front()->payload.items()) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << '\n';
  for (const auto* r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      out << (i ? "," : "") << (r->payload.contains(keys[i]) ? csv_value(r->payload[keys[i]]) : "");
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_line(const RunManifest& m) {
  Json body{{"command", m.command},         {"config_digest", m.config_digest},
            {"started", m.started},         {"finished", m.finished},
            {"tool_version", m.tool_version}, {"seed", m.seed},
            {"chunk_size", m.chunk_size},   {"config", m.config}};
  return canonical_dump(Json{{"manifest", body}});
}

std::string record_line(const ResultRecord& record) {
  return canonical_dump(Json{{"kind", record.kind}, {"payload", record.payload}});
}

void write_jsonl(std::ostream& out, const RunManifest& manifest,
                 const std::vector<ResultRecord>& records) {
  out << manifest_line(manifest) << '\n';
  for (const auto& r : records) out << record_line(r) << '\n';
}

JsonlFile read_jsonl(std::istream& in) {
  JsonlFile file;
  std::string line;
  bool have_manifest = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::invalid_input, std::string("malformed JSONL line: ") + e.what());
    }
    if (!have_manifest) {
      if (!j.contains("manifest"))
        throw Error(ErrorKind::invalid_input, "JSONL file does not begin with a manifest");
      const Json& m = j["manifest"];
      file.manifest = {m.value("command", ""),      m.value("config_digest", ""),
                       m.value("started", ""),      m.value("finished", ""),
                       m.value("tool_version", ""), m.value("seed", std::uint64_t{0}),
                       m.value("chunk_size", std::uint64_t{0}), m.value("config", Json::object())};
      have_manifest = true;
      continue;
    }
    if (!j.contains("kind") || !j.contains("payload"))
      throw Error(ErrorKind::invalid_input, "record without kind/payload");
    file.records.push_back({j["kind"].get<std::string>(), j["payload"]});
  }
  if (!have_manifest) throw Error(ErrorKind::invalid_input, "empty JSONL file");
  return file;
}

std::string summarize(const std::string& command, const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  out << command << ": " << records.size() << " record" << (records.size() == 1 ? "" : "s") << '\n';
  std::vector<std::string> kinds;
  for (const auto& r : records)
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) kinds.push_back(r.kind);

  for (const auto& kind : kinds) {
    const auto rows = of_kind(records, kind);
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows.front()->payload.items()) keys.push_back(k);
    std::vector<std::vector<std::string>> cells{keys};
    for (std::size_t i = 0; i < rows.size() && i < kSummaryRows; ++i) {
      std::vector<std::string> row;
      for (const auto& k : keys)
        row.push_back(rows[i]->payload.contains(k) ? short_value(rows[i]->payload[k]) : "-");
      cells.push_back(row);
    }
    std::vector<std::size_t> width(keys.size(), 0);
    for (const auto& row : cells)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    out << '\n' << "[" << kind << "] " << rows.size() << '\n';
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "  " : "") << row[c];
        if (c + 1 < row.size()) out << std::string(width[c] - row[c].size(), ' ');
      }
      out << '\n';
    }
    if (rows.size() > kSummaryRows) out << "... " << rows.size() - kSummaryRows << " more\n";
  }
  return out.str();
}

std::string to_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  if (auto bounds = of_kind(records, "bound"); !bounds.empty()) {
    out << "lemma,grid_point,lhs,bound,ratio\n";
    for (const auto* r : bounds) {
      const Json& p = r->payload;
      out << p["lemma"].get<std::string>() << ',' << grid_point_text(p["grid_point"]) << ','
          << real17(p["lhs"].get<double>()) << ',' << real17(p["bound"].get<double>()) << ','
          << real17(p["ratio"].get<double>()) << '\n';
    }
    return out.str();
  }
  if (auto gaps = of_kind(records, "gap"); !gaps.empty()) {
    out << "bucket_lo,bucket_hi,count\n";
    for (const auto* r : gaps)
      out << r->payload["bucket_lo"].get<std::uint64_t>() << ','
          << r->payload["bucket_hi"].get<std::uint64_t>() << ','
          << r->payload["count"].get<std::uint64_t>() << '\n';
    return out.str();
  }
  if (auto evals = of_kind(records, "eval"); !evals.empty()) {
    const bool complex_values = std::all_of(evals.begin(), evals.end(), [](const ResultRecord* r) {
      return r->payload.contains("re") && r->payload.contains("sigma");
    });
    if (!complex_values) return generic_csv(evals);
    out << "input,re,im,abs\n";
    for (const auto* r : evals) {
      const Json& p = r->payload;
      out << real17(p["sigma"].get<double>()) << '+' << real17(p["t"].get<double>()) << "i,"
          << real17(p["re"].get<double>()) << ',' << real17(p["im"].get<double>()) << ','
          << real17(p["abs"].get<double>()) << '\n';
    }
    return out.str();
  }
  for (const char* kind : {"witness", "coverage"})
    if (auto rows = of_kind(records, kind); !rows.empty()) return generic_csv(rows);
  return "";
}

}  // namespace almsq::cli
