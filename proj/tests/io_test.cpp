#include <doctest.h>

#include "trisph/construct.hpp"
#include "trisph/io.hpp"
#include "trisph/rng.hpp"

#include "oracles.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

using namespace trisph;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir =
      std::filesystem::temp_directory_path() / "trisph_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("configuration JSON round trip is bit exact and canonical") {
  Rng rng(81);
  for (int rep = 0; rep < 5; ++rep) {
    const auto config = oracle::random_config(rng, 3 + rep % 3, 4, rep % 2);
    const std::string text = config_to_json(config);
    const auto parsed = config_from_json(text);
    CHECK(parsed.dim() == config.dim());
    CHECK((parsed.points() - config.points()).norm() == 0.0);
    CHECK((parsed.weights() - config.weights()).norm() == 0.0);
    // Serializing the parsed configuration reproduces the bytes.
    CHECK(config_to_json(parsed) == text);
  }
}

TEST_CASE("configuration parsing") {
  SUBCASE("weights default to uniform") {
    const auto config = config_from_json(
        R"({"dim": 2, "points": [[1, 0], [0, 1]]})");
    CHECK(config.weight(0) == 0.5);
    CHECK(config.weight(1) == 0.5);
  }
  SUBCASE("points are renormalized within the acceptance window") {
    const auto config = config_from_json(
        R"({"dim": 2, "points": [[1.0000001, 0], [0, 1]]})");
    CHECK(config.point(0).norm() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(config_from_json("not json"), ValidationError);
    CHECK_THROWS_AS(config_from_json("[1,2]"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"points": [[1,0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"dim": 1, "points": [[1]]})"),
                    ValidationError);
    CHECK_THROWS_AS(
        config_from_json(R"({"dim": 2, "points": [[1, 0, 0]]})"),
        ValidationError);
    CHECK_THROWS_AS(
        config_from_json(R"({"dim": 2, "points": [[1, "x"]]})"),
        ValidationError);
    CHECK_THROWS_AS(config_from_json(
                        R"({"dim": 2, "points": [[1, 0]], "weights": [0.5, 0.5]})"),
                    ValidationError);
    // Far from unit norm.
    CHECK_THROWS_AS(
        config_from_json(R"({"dim": 2, "points": [[2, 0], [0, 1]]})"),
        ValidationError);
    // Negative weight.
    CHECK_THROWS_AS(
        config_from_json(
            R"({"dim": 2, "points": [[1, 0], [0, 1]], "weights": [1.5, -0.5]})"),
        ValidationError);
  }
}

TEST_CASE("kernel JSON") {
  const GramTriple g{0.2, 0.5, -0.3};
  SUBCASE("pframe") {
    const auto k = kernel_from_json(R"({"kind": "pframe", "p": 1.5})", 3);
    CHECK(k.kind() == KernelSpec::Kind::PFrame);
    CHECK(k.p() == 1.5);
    CHECK(k.dim() == 3);
  }
  SUBCASE("triple product") {
    const auto k = kernel_from_json(R"({"kind": "uvt"})", 4);
    CHECK(k.kind() == KernelSpec::Kind::TripleProduct);
    CHECK(k.eval(g) == doctest::Approx(0.2 * 0.5 * -0.3).epsilon(1e-16));
  }
  SUBCASE("s entry") {
    const auto k =
        kernel_from_json(R"({"kind": "s", "m": 1, "i": 0, "j": 2})", 4);
    CHECK(k.eval(g) == s_kernel(1, 0, 2, 4, g));
  }
  SUBCASE("polynomial merges repeated monomials") {
    const auto k = kernel_from_json(
        R"({"kind": "poly", "monomials": [
             {"a": 1, "b": 1, "c": 1, "coef": 2.0},
             {"a": 1, "b": 1, "c": 1, "coef": 1.0}]})",
        3);
    CHECK(k.eval(g) == doctest::Approx(3.0 * 0.2 * 0.5 * -0.3).epsilon(1e-14));
  }
  SUBCASE("cone") {
    const auto k = kernel_from_json(
        R"({"kind": "cone", "blocks": [
             {"m": 0, "matrix": [[0, 0], [0, 1]]},
             {"m": 1, "matrix": [[2]]}]})",
        4);
    CHECK(k.eval(g) == doctest::Approx(s_kernel(0, 1, 1, 4, g) +
                                       2.0 * s_kernel(1, 0, 0, 4, g))
                           .epsilon(1e-13)
                           .scale(1.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(kernel_from_json(R"({"kind": "mystery"})", 3),
                    ValidationError);
    CHECK_THROWS_AS(kernel_from_json(R"({"kind": "pframe"})", 3),
                    ValidationError);
    CHECK_THROWS_AS(kernel_from_json(R"({"p": 2})", 3), ValidationError);
    CHECK_THROWS_AS(
        kernel_from_json(R"({"kind": "cone", "blocks": [{"m": 0, "matrix": [[1, 0]]}]})",
                         3),
        ValidationError);
  }
  SUBCASE("inline JSON versus file path") {
    const auto inline_kernel = load_kernel(R"({"kind": "uvt"})", 3);
    CHECK(inline_kernel.kind() == KernelSpec::Kind::TripleProduct);
    const auto path = temp_file("kernel.json");
    write_text_file(path.string(), R"({"kind": "pframe", "p": 2})");
    const auto from_file = load_kernel(path.string(), 3);
    CHECK(from_file.kind() == KernelSpec::Kind::PFrame);
    CHECK_THROWS_AS(load_kernel((path.parent_path() / "missing.json").string(), 3),
                    ValidationError);
  }
}

TEST_CASE("file round trips") {
  const auto path = temp_file("config.json");
  const auto config = gen_simplex(3);
  write_config(config, path.string());
  const auto loaded = read_config(path.string());
  CHECK((loaded.points() - config.points()).norm() == 0.0);
  CHECK_THROWS_AS(read_config("/nonexistent/trisph/config.json"),
                  ValidationError);
}

TEST_CASE("report serialization") {
  SUBCASE("energy report") {
    EnergyReport report;
    report.value = 0.0625;
    report.kernel = "pframe(p=1)";
    report.n_points = 4;
    report.breakdown = EnergyBreakdown{0.015625, 0.04, 0.006875};
    const json j = json::parse(report_to_json(report));
    CHECK(j["energy"] == 0.0625);
    CHECK(j["kernel"] == "pframe(p=1)");
    CHECK(j["n_points"] == 4);
    CHECK(j["breakdown"]["two_equal"] == 0.04);
  }
  SUBCASE("certificate report and arrays") {
    const CertReport report{"isotropic", true, 1e-16, 1e-9, "ok"};
    const json j = json::parse(report_to_json(report));
    CHECK(j["name"] == "isotropic");
    CHECK(j["passed"] == true);
    CHECK(j["residual"] == 1e-16);
    const json arr = json::parse(reports_to_json({report, report}));
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 2);
    CHECK(arr[1]["tolerance"] == 1e-9);
  }
  SUBCASE("packing report") {
    PackingReport report;
    report.mode = PackingMode::StrictlyNegative;
    report.epsilon = 0.25;
    report.n_points = 4;
    report.bound = 4;
    report.worst_triple = {0, 1, 3};
    report.worst_product = -0.26;
    report.passed = true;
    const json j = json::parse(report_to_json(report));
    CHECK(j["mode"] == "strictly-negative");
    CHECK(j["bound"] == 4);
    CHECK(j["worst_triple"][2] == 3);
    CHECK(j["vacuous"] == false);
  }
  SUBCASE("mc estimate") {
    const json j = json::parse(report_to_json(McEstimate{0.5, 0.01, 100, 7}));
    CHECK(j["mean"] == 0.5);
    CHECK(j["n_samples"] == 100);
    CHECK(j["seed"] == 7);
  }
}

TEST_CASE("trace CSV uses full precision") {
  std::vector<TracePoint> trace = {{1, 0.1, 1.0 / 3},
                                   {2, 0.01, 0.12345678901234567}};
  const std::string csv = trace_to_csv(trace);
  CHECK(csv.rfind("iter,epsilon,energy\n", 0) == 0);
  // Parse the doubles back and compare bitwise.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.substr(0, 2) == "1,");
  const auto second_comma = line.find(',', 2);
  const double parsed =
      std::strtod(line.substr(second_comma + 1).c_str(), nullptr);
  CHECK(parsed == 1.0 / 3);
}

TEST_CASE("sha256 matches published test vectors") {
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("timestamps are ISO 8601 UTC") {
  const std::string ts = utc_timestamp();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("manifests") {
  RunManifest manifest;
  manifest.command = "trisph gen --shape onb";
  manifest.timestamp_utc = utc_timestamp();
  manifest.seeds = {42};
  manifest.input_digests["in.json"] = sha256_hex("body");
  manifest.outputs = {"out.json"};
  const json j = json::parse(manifest_to_json(manifest));
  CHECK(j["tool_version"] == kToolVersion);
  CHECK(j["rng_version"] == kRngVersion);
  CHECK(j["seeds"][0] == 42);
  CHECK(j["input_digests"]["in.json"] == sha256_hex("body"));

  const auto out = temp_file("artifact.json");
  write_text_file(out.string(), "{}\n");
  write_manifest(manifest, out.string());
  const std::string sidecar = read_text_file(out.string() + ".manifest.json");
  CHECK(json::parse(sidecar)["command"] == manifest.command);
}
