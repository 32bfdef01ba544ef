// mplex command line: certify formations, run the closed-loop scenarios
// and sweeps, and solve the scalar delay rate equation.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mplex/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitConfig = 2;

std::filesystem::path output_directory(const mplex::OutputConfig& out) {
  if (const char* env = std::getenv("MPLEX_OUTPUT_DIR"); env && *env) {
    return std::filesystem::path(env);
  }
  return std::filesystem::path(out.directory);
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream os(path);
  if (!os) throw mplex::ConfigError("cannot open output file: " + path.string());
  return os;
}

int run_certify(const std::string& config_path) {
  const mplex::ScenarioConfig cfg = mplex::load_config_file(config_path);
  const mplex::ExperimentConfig ex = mplex::to_experiment(cfg);

  mplex::FormationSpec spec = mplex::FormationSpec::concentric(ex.circles, ex.radius_step);
  const mplex::LeaderPath leader(ex.leader_speed, ex.leader_amplitude, ex.leader_period, ex.leader_start);
  std::vector<mplex::RampDisturbance> dists;
  if (ex.disturbance) dists.push_back(*ex.disturbance);
  const mplex::NetworkSystem sys =
      mplex::build_formation(spec, ex.gains, leader, mplex::DelayFunction::constant(ex.tau), dists,
                             mplex::InitialState{ex.init_perturbation, ex.seed});

  const mplex::TransformT transform =
      ex.alpha ? mplex::TransformT::homogeneous(sys.N, ex.alpha->first, ex.alpha->second)
               : mplex::select_alpha(sys, ex.p, ex.region);
  mplex::CertifyOptions opt;
  opt.p = ex.p;
  opt.region = ex.region;
  opt.c1_horizon = ex.horizon;
  const mplex::CertificateReport report = mplex::certify(sys, transform, opt, ex.tau_max);

  mplex::emit_report(report, std::cout);
  auto os = open_output(output_directory(cfg.output), cfg.output.report);
  mplex::emit_report(report, os);
  return report.feasible ? kExitOk : kExitInfeasible;
}

int run_simulate(const std::string& config_path) {
  const mplex::ScenarioConfig cfg = mplex::load_config_file(config_path);
  if (cfg.scenario == "sweep") {
    throw mplex::ConfigError("scenario is 'sweep'; use the sweep subcommand");
  }
  const mplex::ExperimentKind kind = mplex::scenario_kind(cfg);
  const mplex::ExperimentResult result = mplex::run_experiment(kind, mplex::to_experiment(cfg));

  const auto dir = output_directory(cfg.output);
  {
    auto os = open_output(dir, cfg.output.trace);
    mplex::emit_trace(result.traces, result.spec.circle_of, os);
  }
  {
    auto os = open_output(dir, cfg.output.report);
    mplex::emit_report(result.certificate, os);
  }
  {
    auto os = open_output(dir, cfg.output.plot);
    mplex::emit_plotscript(cfg.output, os);
  }
  double peak = 0.0;
  for (const auto& rec : result.traces) {
    for (double d : rec.deviation) peak = std::max(peak, d);
  }
  std::printf("agents: %d\n", result.spec.robot_count());
  std::printf("records: %zu\n", result.traces.size());
  std::printf("peak_deviation_m: %.17g\n", peak);
  std::printf("final_max_deviation_m: %.17g\n",
              *std::max_element(result.traces.back().deviation.begin(),
                                result.traces.back().deviation.end()));
  std::printf("certificate_feasible: %s\n", result.certificate.feasible ? "true" : "false");
  std::printf("trace: %s\n", (dir / cfg.output.trace).c_str());
  return kExitOk;
}

int run_sweep(const std::string& config_path) {
  const mplex::ScenarioConfig cfg = mplex::load_config_file(config_path);
  const mplex::ExperimentResult result =
      mplex::run_experiment(mplex::ExperimentKind::Sweep, mplex::to_experiment(cfg));

  const auto dir = output_directory(cfg.output);
  {
    auto os = open_output(dir, cfg.output.sweep);
    mplex::emit_sweep(*result.sweep, os);
  }
  {
    auto os = open_output(dir, cfg.output.report);
    mplex::emit_report(result.certificate, os);
  }
  {
    auto os = open_output(dir, cfg.output.plot);
    mplex::emit_plotscript(cfg.output, os);
  }
  for (std::size_t row = 0; row < result.sweep->circle_counts.size(); ++row) {
    const auto& devs = result.sweep->max_deviation[row];
    std::printf("circles=%d max_dev_m=%.6g\n", result.sweep->circle_counts[row],
                *std::max_element(devs.begin(), devs.end()));
  }
  std::printf("sweep: %s\n", (dir / cfg.output.sweep).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiplex formation control: certificates, simulation, sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  double ha = 0.0, hb = 0.0, htau = 0.0;

  auto* certify = app.add_subcommand("certify", "check C1-C3 and print the certificate report");
  certify->add_option("config", config_path, "scenario config (JSON)")->required();

  auto* simulate = app.add_subcommand("simulate", "integrate a track / ramp_reject scenario");
  simulate->add_option("config", config_path, "scenario config (JSON)")->required();

  auto* sweep = app.add_subcommand("sweep", "run formations of 1..K circles and record deviations");
  sweep->add_option("config", config_path, "scenario config (JSON)")->required();

  auto* halanay = app.add_subcommand("halanay", "decay rate of the delayed comparison system");
  halanay->add_option("--a", ha, "self coefficient (a < 0)")->required();
  halanay->add_option("--b", hb, "delayed coefficient (b >= 0)")->required();
  halanay->add_option("--tau", htau, "delay [s]")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) return run_certify(config_path);
    if (simulate->parsed()) return run_simulate(config_path);
    if (sweep->parsed()) return run_sweep(config_path);
    if (halanay->parsed()) {
      std::printf("%.17g\n", mplex::halanay_rate(ha, hb, htau));
      return kExitOk;
    }
  } catch (const mplex::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const mplex::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const mplex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
