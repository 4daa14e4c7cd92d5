#pragma once

#include "trisph/certify.hpp"
#include "trisph/energy.hpp"
#include "trisph/geometry.hpp"
#include "trisph/kernels.hpp"
#include "trisph/optimize.hpp"
#include "trisph/rng.hpp"
#include "trisph/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace trisph {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Configuration files: {"dim": d, "points": [[...], ...], "weights": [...]}
// with weights optional (uniform by default). Serialization is canonical:
// sorted keys, shortest round-trip doubles, so equal configurations produce
// byte-identical files.
WeightedConfig config_from_json(const std::string& text);
std::string config_to_json(const WeightedConfig& config);
WeightedConfig read_config(const std::string& path);
void write_config(const WeightedConfig& config, const std::string& path);

// Kernel files: {"kind": "pframe"|"uvt"|"s"|"poly"|"cone", ...}. The ambient
// dimension comes from the surrounding context (configuration or --dim).
KernelSpec kernel_from_json(const std::string& text, int dim);
// Treats the argument as inline JSON when it starts with '{', else as a path.
KernelSpec load_kernel(const std::string& path_or_inline, int dim);

std::string report_to_json(const EnergyReport& report);
std::string report_to_json(const CertReport& report);
std::string report_to_json(const PackingReport& report);
std::string report_to_json(const McEstimate& estimate);
std::string report_to_json(const OptimizerResult& result);
std::string report_to_json(const PackingSearchResult& result);
std::string reports_to_json(const std::vector<CertReport>& reports);
std::string cap_to_json(const CapReport& report);

// Columns iter,epsilon,energy; doubles printed with 17 significant digits.
std::string trace_to_csv(const std::vector<TracePoint>& trace);

std::string sha256_hex(const std::string& bytes);
std::string utc_timestamp();

// Reproducibility sidecar written next to every CLI artifact.
struct RunManifest {
  std::string tool_version = kToolVersion;
  int rng_version = kRngVersion;
  std::string command;
  std::string timestamp_utc;
  std::vector<std::uint64_t> seeds;
  // Input path -> SHA-256 of its bytes.
  std::map<std::string, std::string> input_digests;
  std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& manifest);
// Writes <output_path>.manifest.json.
void write_manifest(const RunManifest& manifest,
                    const std::string& output_path);

}  // namespace trisph
