#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace ietlab {

// Run configuration shared by every subcommand. Identical configuration must
// produce byte-identical artifacts; all randomness flows from `seed`.
struct RunConfig {
  int precision_bits = 53;
  std::uint64_t seed = 0x1e71ab;
  double tol_quadrature = 1e-10;
  double tol_bisection = 1e-12;
  double tol_guard = 1e-13;
  int jobs = 1;
  std::string out_path;

  std::mt19937_64 make_rng() const { return std::mt19937_64(seed); }
};

// Environment overrides: IETLAB_SEED, IETLAB_PRECISION, IETLAB_TOL,
// IETLAB_JOBS.
void apply_env_overrides(RunConfig* cfg);

std::uint64_t fnv1a_hash(const std::string& s);

// Canonical flag string -> manifest JSON written next to the artifact.
void write_manifest(const RunConfig& cfg, const std::string& canonical_args,
                    const std::string& artifact_path, double wall_ms,
                    const std::map<std::string, std::string>& extras = {});

// printf-style %.17g formatting used by every CSV/JSON emitter so reruns are
// byte-identical
std::string format_double(double v);

struct CsvWriter {
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  std::string str() const { return body; }
  std::string body;
  size_t columns;
};

extern const char* kVersion;

}  // namespace ietlab
