#include "trisph/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace trisph {

using nlohmann::json;

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json require_object(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
  if (!j.is_object()) {
    throw ValidationError(std::string(what) + ": expected a JSON object");
  }
  return j;
}

double number_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ValidationError(std::string(what) + ": missing numeric field '" +
                          key + "'");
  }
  return j[key].get<double>();
}

int int_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ValidationError(std::string(what) + ": missing integer field '" +
                          key + "'");
  }
  return j[key].get<int>();
}

json config_json(const WeightedConfig& config) {
  json points = json::array();
  for (int i = 0; i < config.size(); ++i) {
    json row = json::array();
    for (int r = 0; r < config.dim(); ++r) row.push_back(config.points()(r, i));
    points.push_back(std::move(row));
  }
  json weights = json::array();
  for (int i = 0; i < config.size(); ++i) weights.push_back(config.weight(i));
  return json{{"dim", config.dim()},
              {"points", std::move(points)},
              {"weights", std::move(weights)}};
}

json cert_json(const CertReport& report) {
  return json{{"name", report.name},
              {"passed", report.passed},
              {"residual", report.residual},
              {"tolerance", report.tolerance},
              {"witness", report.witness}};
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
  if (!out) throw ValidationError("write failed: " + path);
}

WeightedConfig config_from_json(const std::string& text) {
  const json j = require_object(text, "configuration");
  const int dim = int_field(j, "dim", "configuration");
  if (dim < 2) throw ValidationError("configuration: dim must be >= 2");
  if (!j.contains("points") || !j["points"].is_array() ||
      j["points"].empty()) {
    throw ValidationError("configuration: 'points' must be a nonempty array");
  }
  const auto& pts = j["points"];
  const int n = static_cast<int>(pts.size());
  Matrix points(dim, n);
  for (int i = 0; i < n; ++i) {
    if (!pts[i].is_array() || static_cast<int>(pts[i].size()) != dim) {
      throw ValidationError("configuration: point " + std::to_string(i) +
                            " must be an array of " + std::to_string(dim) +
                            " numbers");
    }
    for (int r = 0; r < dim; ++r) {
      if (!pts[i][r].is_number()) {
        throw ValidationError("configuration: point " + std::to_string(i) +
                              " has a non-numeric coordinate");
      }
      points(r, i) = pts[i][r].get<double>();
    }
  }
  Vector weights = Vector::Constant(n, 1.0 / n);
  if (j.contains("weights")) {
    if (!j["weights"].is_array() ||
        static_cast<int>(j["weights"].size()) != n) {
      throw ValidationError(
          "configuration: 'weights' must be an array matching 'points'");
    }
    for (int i = 0; i < n; ++i) {
      if (!j["weights"][i].is_number()) {
        throw ValidationError("configuration: weight " + std::to_string(i) +
                              " is not a number");
      }
      weights[i] = j["weights"][i].get<double>();
    }
  }
  return WeightedConfig(std::move(points), std::move(weights));
}

std::string config_to_json(const WeightedConfig& config) {
  return config_json(config).dump(2) + "\n";
}

WeightedConfig read_config(const std::string& path) {
  return config_from_json(read_text_file(path));
}

void write_config(const WeightedConfig& config, const std::string& path) {
  write_text_file(path, config_to_json(config));
}

KernelSpec kernel_from_json(const std::string& text, int dim) {
  const json j = require_object(text, "kernel");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ValidationError("kernel: missing string field 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "pframe") {
    return KernelSpec::pframe(dim, number_field(j, "p", "kernel"));
  }
  if (kind == "uvt") {
    return KernelSpec::triple_product(dim);
  }
  if (kind == "s") {
    return KernelSpec::s_entry(dim, int_field(j, "m", "kernel"),
                               int_field(j, "i", "kernel"),
                               int_field(j, "j", "kernel"));
  }
  if (kind == "poly") {
    if (!j.contains("monomials") || !j["monomials"].is_array()) {
      throw ValidationError("kernel: 'monomials' must be an array");
    }
    std::map<std::array<int, 3>, double> coeffs;
    for (const auto& mono : j["monomials"]) {
      if (!mono.is_object()) {
        throw ValidationError("kernel: each monomial must be an object");
      }
      const std::array<int, 3> expo = {int_field(mono, "a", "kernel"),
                                       int_field(mono, "b", "kernel"),
                                       int_field(mono, "c", "kernel")};
      coeffs[expo] += number_field(mono, "coef", "kernel");
    }
    return KernelSpec::poly_uvt(dim, coeffs);
  }
  if (kind == "cone") {
    if (!j.contains("blocks") || !j["blocks"].is_array()) {
      throw ValidationError("kernel: 'blocks' must be an array");
    }
    std::vector<PsdBlock> blocks;
    for (const auto& blk : j["blocks"]) {
      if (!blk.is_object() || !blk.contains("matrix") ||
          !blk["matrix"].is_array() || blk["matrix"].empty()) {
        throw ValidationError(
            "kernel: each block needs an 'm' and a nonempty 'matrix'");
      }
      const int level = int_field(blk, "m", "kernel");
      const int size = static_cast<int>(blk["matrix"].size());
      Matrix entries(size, size);
      for (int r = 0; r < size; ++r) {
        const auto& row = blk["matrix"][r];
        if (!row.is_array() || static_cast<int>(row.size()) != size) {
          throw ValidationError("kernel: block matrix must be square");
        }
        for (int c = 0; c < size; ++c) {
          if (!row[c].is_number()) {
            throw ValidationError("kernel: block entries must be numbers");
          }
          entries(r, c) = row[c].get<double>();
        }
      }
      blocks.emplace_back(level, std::move(entries));
    }
    return KernelSpec::cone(dim, std::move(blocks));
  }
  throw ValidationError("kernel: unknown kind '" + kind + "'");
}

KernelSpec load_kernel(const std::string& path_or_inline, int dim) {
  if (!path_or_inline.empty() && path_or_inline.front() == '{') {
    return kernel_from_json(path_or_inline, dim);
  }
  return kernel_from_json(read_text_file(path_or_inline), dim);
}

std::string report_to_json(const EnergyReport& report) {
  json j{{"energy", report.value},
         {"kernel", report.kernel},
         {"n_points", report.n_points}};
  if (report.breakdown) {
    j["breakdown"] = json{{"all_equal", report.breakdown->all_equal},
                          {"two_equal", report.breakdown->two_equal},
                          {"all_distinct", report.breakdown->all_distinct}};
  }
  return j.dump(2) + "\n";
}

std::string report_to_json(const CertReport& report) {
  return cert_json(report).dump(2) + "\n";
}

std::string report_to_json(const PackingReport& report) {
  json j{{"mode", report.mode == PackingMode::Nonpositive
                      ? "nonpositive"
                      : "strictly-negative"},
         {"epsilon", report.epsilon},
         {"n_points", report.n_points},
         {"bound", report.bound},
         {"worst_triple", report.worst_triple},
         {"worst_product", report.worst_product},
         {"passed", report.passed},
         {"vacuous", report.vacuous}};
  return j.dump(2) + "\n";
}

std::string report_to_json(const McEstimate& estimate) {
  json j{{"mean", estimate.mean},
         {"std_error", estimate.std_error},
         {"n_samples", estimate.n_samples},
         {"seed", estimate.seed}};
  return j.dump(2) + "\n";
}

std::string report_to_json(const OptimizerResult& result) {
  json restarts = json::array();
  for (const auto& r : result.restarts) {
    restarts.push_back(json{{"restart", r.restart},
                            {"energy", r.energy},
                            {"converged", r.converged},
                            {"iterations", r.iterations}});
  }
  json trace = json::array();
  for (const auto& t : result.trace) {
    trace.push_back(json{
        {"iter", t.iter}, {"epsilon", t.epsilon}, {"energy", t.energy}});
  }
  json j{{"best_energy", result.best_energy},
         {"converged", result.converged},
         {"best_restart", result.best_restart},
         {"best_config", config_json(result.best_config)},
         {"restarts", std::move(restarts)},
         {"trace", std::move(trace)}};
  return j.dump(2) + "\n";
}

std::string report_to_json(const PackingSearchResult& result) {
  json j{{"minimax_product", result.minimax_product},
         {"config", config_json(result.config)}};
  return j.dump(2) + "\n";
}

std::string reports_to_json(const std::vector<CertReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(cert_json(r));
  return arr.dump(2) + "\n";
}

std::string cap_to_json(const CapReport& report) {
  json center = json::array();
  for (int r = 0; r < report.center.dim(); ++r) {
    center.push_back(report.center[r]);
  }
  json j{{"center", std::move(center)},
         {"radius", report.radius},
         {"attained_at", report.attained_at}};
  return j.dump(2) + "\n";
}

std::string trace_to_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream out;
  out << "iter,epsilon,energy\n";
  for (const auto& t : trace) {
    out << t.iter << ',' << format_double(t.epsilon) << ','
        << format_double(t.energy) << '\n';
  }
  return out.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out(2 * len, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[digest[i] >> 4];
    out[2 * i + 1] = hex[digest[i] & 0xf];
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_to_json(const RunManifest& manifest) {
  json digests = json::object();
  for (const auto& [path, digest] : manifest.input_digests) {
    digests[path] = digest;
  }
  json j{{"tool_version", manifest.tool_version},
         {"rng_version", manifest.rng_version},
         {"command", manifest.command},
         {"timestamp_utc", manifest.timestamp_utc},
         {"seeds", manifest.seeds},
         {"input_digests", std::move(digests)},
         {"outputs", manifest.outputs}};
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest,
                    const std::string& output_path) {
  write_text_file(output_path + ".manifest.json", manifest_to_json(manifest));
}

}  // namespace trisph
