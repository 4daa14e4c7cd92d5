#include <CLI11.hpp>

#include "trisph/construct.hpp"
#include "trisph/io.hpp"
#include "trisph/parallel.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace {

using namespace trisph;

std::string join_args(int argc, char** argv) {
  std::ostringstream out;
  for (int i = 0; i < argc; ++i) {
    if (i) out << ' ';
    out << argv[i];
  }
  return out.str();
}

std::string format_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void digest_input(RunManifest& manifest, const std::string& path) {
  manifest.input_digests[path] = sha256_hex(read_text_file(path));
}

void digest_kernel_arg(RunManifest& manifest, const std::string& arg) {
  if (!arg.empty() && arg.front() != '{') digest_input(manifest, arg);
}

// Writes the artifact plus its manifest sidecar, or prints to stdout when no
// output path was requested.
void emit(const std::string& content, const std::string& out_path,
          RunManifest& manifest) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  write_text_file(out_path, content);
  manifest.outputs.push_back(out_path);
  write_manifest(manifest, out_path);
}

void print_cert(const CertReport& report) {
  std::cout << report.name << ": " << (report.passed ? "PASS" : "FAIL")
            << " (residual=" << format_value(report.residual)
            << ", tol=" << format_value(report.tolerance) << ")";
  if (!report.passed) std::cout << " -- " << report.witness;
  std::cout << "\n";
}

CertReport packing_as_cert(const PackingReport& report, double tol) {
  CertReport cert;
  cert.name = report.mode == PackingMode::Nonpositive
                  ? "packing(nonpositive)"
                  : "packing(strict, eps=" + format_value(report.epsilon) + ")";
  cert.passed = report.passed;
  cert.tolerance = tol;
  std::ostringstream witness;
  if (report.vacuous) {
    cert.residual = 0.0;
    witness << "vacuous: " << report.n_points << " distinct support points";
  } else {
    const double shift =
        report.mode == PackingMode::Nonpositive ? 0.0 : report.epsilon;
    cert.residual = std::max(0.0, report.worst_product + shift);
    witness << report.n_points << " distinct points (certified bound "
            << report.bound << "), worst triple (" << report.worst_triple[0]
            << ", " << report.worst_triple[1] << ", " << report.worst_triple[2]
            << ") with product " << format_value(report.worst_product);
  }
  cert.witness = witness.str();
  return cert;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Three-point energies on the sphere: evaluation, certificates, "
      "constructions, optimization"};
  app.name("trisph");
  app.set_version_flag("--version",
                       std::string("trisph ") + kToolVersion);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads for energy evaluation "
                 "(default: TRISPH_THREADS or hardware concurrency)");
  app.require_subcommand(1);

  // gen
  std::string gen_shape, gen_out;
  int gen_dim = 3;
  double gen_theta = std::numbers::pi / 4, gen_lambda = 0.5;
  auto* gen = app.add_subcommand("gen", "Generate a named configuration");
  gen->add_option("--shape", gen_shape, "onb | cross | simplex | two-bases")
      ->required()
      ->check(CLI::IsMember({"onb", "cross", "simplex", "two-bases"}));
  gen->add_option("--dim", gen_dim, "Ambient dimension d (sphere S^{d-1})");
  gen->add_option("--theta", gen_theta, "two-bases rotation angle");
  gen->add_option("--lambda", gen_lambda, "two-bases first-basis weight");
  gen->add_option("--out", gen_out, "Output configuration path");

  // lift
  std::string lift_config, lift_out;
  auto* lift_cmd = app.add_subcommand(
      "lift", "Lift a configuration to the next sphere up");
  lift_cmd->add_option("--config", lift_config, "Input configuration")
      ->required();
  lift_cmd->add_option("--out", lift_out, "Output configuration path");

  // energy
  std::string en_config, en_kernel, en_out;
  bool en_breakdown = false;
  auto* energy_cmd =
      app.add_subcommand("energy", "Evaluate a three-point energy");
  energy_cmd->add_option("--config", en_config, "Input configuration")
      ->required();
  energy_cmd->add_option("--kernel", en_kernel, "Kernel path or inline JSON")
      ->required();
  energy_cmd->add_flag("--breakdown", en_breakdown,
                       "Split by index coincidence");
  energy_cmd->add_option("--out", en_out, "Output report path");

  // certify
  std::string ct_config, ct_checks = "all", ct_out;
  std::optional<double> ct_tol;
  double ct_epsilon = 0.0;
  std::optional<int> ct_mmax;
  int ct_size = 3;
  auto* certify_cmd =
      app.add_subcommand("certify", "Run structural certificates");
  certify_cmd->add_option("--config", ct_config, "Input configuration")
      ->required();
  certify_cmd->add_option(
      "--checks", ct_checks,
      "Comma list: isotropic,balanced,tight-frame,packing,packing-strict,"
      "nearly-orthogonal,nonneg-triples,orthogonal-counterpart,"
      "simplex-rigidity,onb-structure,onb-signs,psd or 'all'");
  certify_cmd->add_option("--tol", ct_tol,
                          "Override the per-check default tolerance");
  certify_cmd->add_option("--epsilon", ct_epsilon,
                          "Strictly-negative packing margin");
  certify_cmd->add_option("--m-max", ct_mmax,
                          "Largest kernel level for the psd check");
  certify_cmd->add_option("--size", ct_size, "psd block size");
  certify_cmd->add_option("--out", ct_out, "Output report path");

  // optimize
  std::string op_kernel, op_out, op_trace;
  int op_dim = 3, op_n = 4, op_restarts = 1, op_max_iters = 500;
  bool op_weights = false;
  std::uint64_t op_seed = 0;
  auto* optimize_cmd =
      app.add_subcommand("optimize", "Minimize a three-point energy");
  optimize_cmd->add_option("--dim", op_dim, "Ambient dimension")->required();
  optimize_cmd->add_option("--n-points", op_n, "Number of points")
      ->required();
  optimize_cmd->add_option("--kernel", op_kernel, "Kernel path or inline JSON")
      ->required();
  optimize_cmd->add_flag("--weights", op_weights,
                         "Optimize weights (softmax) as well");
  optimize_cmd->add_option("--restarts", op_restarts, "Random restarts");
  optimize_cmd->add_option("--max-iters", op_max_iters,
                           "Iterations per smoothing level");
  optimize_cmd->add_option("--seed", op_seed, "Base RNG seed");
  optimize_cmd->add_option("--out", op_out, "Output result path");
  optimize_cmd->add_option("--trace-csv", op_trace,
                           "Write the accepted-step trace as CSV");

  // pack-search
  std::string ps_out;
  int ps_dim = 2, ps_n = 4, ps_restarts = 10, ps_max_iters = 500;
  std::uint64_t ps_seed = 0;
  auto* pack_cmd = app.add_subcommand(
      "pack-search", "Minimize the maximum triple product");
  pack_cmd->add_option("--dim", ps_dim, "Ambient dimension")->required();
  pack_cmd->add_option("--n-points", ps_n, "Number of points")->required();
  pack_cmd->add_option("--restarts", ps_restarts, "Random restarts");
  pack_cmd->add_option("--max-iters", ps_max_iters,
                       "Iterations per temperature level");
  pack_cmd->add_option("--seed", ps_seed, "Base RNG seed");
  pack_cmd->add_option("--out", ps_out, "Output result path");

  // mc
  std::string mc_kernel, mc_out;
  int mc_dim = 3;
  long long mc_samples = 100000;
  std::uint64_t mc_seed = 0;
  auto* mc_cmd = app.add_subcommand(
      "mc", "Monte Carlo estimate of the kernel integral");
  mc_cmd->add_option("--dim", mc_dim, "Ambient dimension")->required();
  mc_cmd->add_option("--kernel", mc_kernel, "Kernel path or inline JSON")
      ->required();
  mc_cmd->add_option("--samples", mc_samples, "Sample count");
  mc_cmd->add_option("--seed", mc_seed, "RNG seed");
  mc_cmd->add_option("--out", mc_out, "Output report path");

  // psd-check
  std::string pc_config, pc_out;
  std::optional<int> pc_mmax;
  int pc_size = 3;
  double pc_tol = 1e-8;
  auto* psd_cmd = app.add_subcommand(
      "psd-check", "Eigenvalue check of the s-moment matrices");
  psd_cmd->add_option("--config", pc_config, "Input configuration")
      ->required();
  psd_cmd->add_option("--m-max", pc_mmax, "Largest kernel level");
  psd_cmd->add_option("--size", pc_size, "Block size");
  psd_cmd->add_option("--tol", pc_tol, "Eigenvalue tolerance");
  psd_cmd->add_option("--out", pc_out, "Output report path");

  // identity-check
  int id_dim = 3, id_samples = 1000;
  std::uint64_t id_seed = 0;
  double id_tol = 1e-10;
  std::string id_out;
  auto* id_cmd = app.add_subcommand(
      "identity-check", "Verify the kernel identities on random samples");
  id_cmd->add_option("--dim", id_dim, "Ambient dimension")->required();
  id_cmd->add_option("--samples", id_samples, "Sample count");
  id_cmd->add_option("--seed", id_seed, "RNG seed");
  id_cmd->add_option("--tol", id_tol, "Residual tolerance");
  id_cmd->add_option("--out", id_out, "Output report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }
  if (threads > 0) set_thread_count(threads);

  RunManifest manifest;
  manifest.command = join_args(argc, argv);
  manifest.timestamp_utc = utc_timestamp();

  if (gen->parsed()) {
    WeightedConfig config = [&] {
      if (gen_shape == "onb") return gen_orthonormal_basis(gen_dim);
      if (gen_shape == "cross") return gen_crosspolytope(gen_dim);
      if (gen_shape == "simplex") return gen_simplex(gen_dim);
      if (gen->count("--dim") && gen_dim != 2) {
        throw ValidationError("two-bases configurations live on S^1 (dim 2)");
      }
      return gen_two_bases(gen_theta, gen_lambda);
    }();
    emit(config_to_json(config), gen_out, manifest);
    return 0;
  }

  if (lift_cmd->parsed()) {
    digest_input(manifest, lift_config);
    const WeightedConfig lifted = lift(read_config(lift_config));
    emit(config_to_json(lifted), lift_out, manifest);
    return 0;
  }

  if (energy_cmd->parsed()) {
    digest_input(manifest, en_config);
    digest_kernel_arg(manifest, en_kernel);
    const WeightedConfig config = read_config(en_config);
    const KernelSpec kernel = load_kernel(en_kernel, config.dim());
    const EnergyReport report =
        three_point_energy(config, kernel, en_breakdown);
    std::cout << format_value(report.value) << "\n";
    if (en_breakdown && report.breakdown) {
      std::cout << "all_equal=" << format_value(report.breakdown->all_equal)
                << " two_equal=" << format_value(report.breakdown->two_equal)
                << " all_distinct="
                << format_value(report.breakdown->all_distinct) << "\n";
    }
    if (!en_out.empty()) emit(report_to_json(report), en_out, manifest);
    return 0;
  }

  if (certify_cmd->parsed()) {
    digest_input(manifest, ct_config);
    const WeightedConfig config = read_config(ct_config);
    const auto tol_or = [&](double fallback) {
      return ct_tol ? *ct_tol : fallback;
    };
    std::vector<std::string> names = split_list(ct_checks);
    if (names.size() == 1 && names[0] == "all") {
      names = {"isotropic",        "balanced",
               "tight-frame",      "packing",
               "nearly-orthogonal", "nonneg-triples",
               "orthogonal-counterpart", "simplex-rigidity",
               "onb-structure",    "onb-signs",
               "psd"};
      if (ct_epsilon > 0.0) names.push_back("packing-strict");
    }
    const int m_max_default = config.dim() >= 3 ? 2 : 1;
    std::vector<CertReport> reports;
    for (const auto& name : names) {
      if (name == "isotropic") {
        reports.push_back(check_isotropic(config, tol_or(1e-9)));
      } else if (name == "balanced") {
        reports.push_back(check_balanced(config, tol_or(1e-9)));
      } else if (name == "tight-frame") {
        reports.push_back(check_tight_frame(config, tol_or(1e-8)));
      } else if (name == "packing") {
        const double tol = tol_or(1e-12);
        reports.push_back(packing_as_cert(
            check_packing(config, PackingMode::Nonpositive, tol), tol));
      } else if (name == "packing-strict") {
        const double tol = tol_or(1e-12);
        reports.push_back(packing_as_cert(
            check_packing(config, PackingMode::StrictlyNegative, tol,
                          ct_epsilon),
            tol));
      } else if (name == "nearly-orthogonal") {
        reports.push_back(check_nearly_orthogonal(config, tol_or(1e-6)));
      } else if (name == "nonneg-triples") {
        reports.push_back(check_nonneg_triples(config, tol_or(1e-12)));
      } else if (name == "orthogonal-counterpart") {
        reports.push_back(check_orthogonal_counterpart(config, tol_or(1e-6)));
      } else if (name == "simplex-rigidity") {
        reports.push_back(check_simplex_rigidity(config, tol_or(1e-9)));
      } else if (name == "onb-structure") {
        reports.push_back(check_onb_structure(config, tol_or(1e-6)));
      } else if (name == "onb-signs") {
        reports.push_back(classify_onb_up_to_signs(config, tol_or(1e-4)));
      } else if (name == "psd") {
        reports.push_back(psd_check(config,
                                    ct_mmax ? *ct_mmax : m_max_default,
                                    ct_size, tol_or(1e-8)));
      } else {
        throw ValidationError("unknown check: " + name);
      }
    }
    bool all_passed = true;
    for (const auto& report : reports) {
      print_cert(report);
      all_passed = all_passed && report.passed;
    }
    if (!ct_out.empty()) emit(reports_to_json(reports), ct_out, manifest);
    return all_passed ? 0 : 1;
  }

  if (optimize_cmd->parsed()) {
    digest_kernel_arg(manifest, op_kernel);
    manifest.seeds.push_back(op_seed);
    OptimizerSettings settings(op_dim, op_n, load_kernel(op_kernel, op_dim));
    settings.optimize_weights = op_weights;
    settings.restarts = op_restarts;
    settings.max_iters = op_max_iters;
    settings.seed = op_seed;
    const OptimizerResult result = minimize_energy(settings);
    std::cout << "best_energy=" << format_value(result.best_energy)
              << " converged=" << (result.converged ? "true" : "false")
              << " restart=" << result.best_restart << "\n";
    if (!op_trace.empty()) {
      write_text_file(op_trace, trace_to_csv(result.trace));
      manifest.outputs.push_back(op_trace);
    }
    if (!op_out.empty()) emit(report_to_json(result), op_out, manifest);
    return 0;
  }

  if (pack_cmd->parsed()) {
    manifest.seeds.push_back(ps_seed);
    const PackingSearchResult result =
        search_packing(ps_dim, ps_n, ps_restarts, ps_seed, ps_max_iters);
    std::cout << "minimax_product=" << format_value(result.minimax_product)
              << "\n";
    if (!ps_out.empty()) emit(report_to_json(result), ps_out, manifest);
    return 0;
  }

  if (mc_cmd->parsed()) {
    digest_kernel_arg(manifest, mc_kernel);
    manifest.seeds.push_back(mc_seed);
    const McEstimate estimate =
        mc_energy(mc_dim, load_kernel(mc_kernel, mc_dim), mc_samples, mc_seed);
    std::cout << "mean=" << format_value(estimate.mean)
              << " std_error=" << format_value(estimate.std_error) << "\n";
    if (!mc_out.empty()) emit(report_to_json(estimate), mc_out, manifest);
    return 0;
  }

  if (psd_cmd->parsed()) {
    digest_input(manifest, pc_config);
    const WeightedConfig config = read_config(pc_config);
    const int m_max = pc_mmax ? *pc_mmax : (config.dim() >= 3 ? 2 : 1);
    const CertReport report = psd_check(config, m_max, pc_size, pc_tol);
    print_cert(report);
    if (!pc_out.empty()) emit(report_to_json(report), pc_out, manifest);
    return report.passed ? 0 : 1;
  }

  if (id_cmd->parsed()) {
    manifest.seeds.push_back(id_seed);
    std::vector<CertReport> reports{
        check_identity_rosenfeld(id_dim, id_samples, id_seed, id_tol),
        check_identity_uvt(id_dim, id_samples, id_seed, id_tol)};
    bool all_passed = true;
    for (const auto& report : reports) {
      print_cert(report);
      all_passed = all_passed && report.passed;
    }
    if (!id_out.empty()) emit(reports_to_json(reports), id_out, manifest);
    return all_passed ? 0 : 1;
  }

  std::cerr << app.help();
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const trisph::TheoremViolation& e) {
    std::cerr << "THEOREM VIOLATION: " << e.what()
              << "\nThis contradicts a proved statement; please report the "
                 "exact command and inputs.\n";
    return 1;
  } catch (const trisph::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
