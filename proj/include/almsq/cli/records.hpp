#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "almsq/cli/config.hpp"

namespace almsq::cli {

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::string started;
  std::string finished;
  std::string tool_version;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 0;
  Json config;
};

/// kind is one of witness, coverage, gap, bound, eval.
struct ResultRecord {
  std::string kind;
  Json payload;
};

/// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

/// {"manifest":{...}} line.
std::string manifest_line(const RunManifest& manifest);

/// {"kind":...,"payload":{...}} line.
std::string record_line(const ResultRecord& record);

/// Manifest first, then records, one JSON object per line.
void write_jsonl(std::ostream& out, const RunManifest& manifest,
                 const std::vector<ResultRecord>& records);

struct JsonlFile {
  RunManifest manifest;
  std::vector<ResultRecord> records;
};

/// Inverse of write_jsonl. Throws Error(invalid_input) on malformed input.
JsonlFile read_jsonl(std::istream& in);

/// Human-readable tables, one per record kind, computed from records only.
std::string summarize(const std::string& command, const std::vector<ResultRecord>& records);

/// CSV view of the records: bound reports, gap histograms, evaluations or witnesses.
std::string to_csv(const std::vector<ResultRecord>& records);

}  // namespace almsq::cli
