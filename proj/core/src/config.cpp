#include "ietlab/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "ietlab/json_io.hpp"

namespace ietlab {

const char* kVersion = "0.1.0";

void apply_env_overrides(RunConfig* cfg) {
  if (const char* s = std::getenv("IETLAB_SEED")) cfg->seed = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("IETLAB_PRECISION"))
    cfg->precision_bits = std::atoi(s);
  if (const char* s = std::getenv("IETLAB_TOL")) cfg->tol_quadrature = std::atof(s);
  if (const char* s = std::getenv("IETLAB_JOBS")) cfg->jobs = std::atoi(s);
}

std::uint64_t fnv1a_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_manifest(const RunConfig& cfg, const std::string& canonical_args,
                    const std::string& artifact_path, double wall_ms,
                    const std::map<std::string, std::string>& extras) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config_hash"] = fnv1a_hash(canonical_args);
  j["args"] = canonical_args;
  j["seed"] = cfg.seed;
  j["precision_bits"] = cfg.precision_bits;
  j["wall_ms"] = wall_ms;
  for (const auto& [k, v] : extras) j["extras"][k] = v;
  atomic_write(artifact_path + ".manifest.json", j.dump(2) + "\n");
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns(header.size()) {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  body = os.str();
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  std::ostringstream os;
  for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << "\n";
  body += os.str();
}

}  // namespace ietlab
