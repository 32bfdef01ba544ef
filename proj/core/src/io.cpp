#include "mplex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "mplex/errors.hpp"

namespace mplex {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config error at " + path + ": " + msg);
}

void require_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(path + "/" + item.key(), "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "/" + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return v.get<int>();
}

std::uint64_t get_u64(const json& obj, const std::string& path, const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  if (v.is_number_integer() && v.get<long long>() < 0) fail(path + "/" + key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::array<double, 2> get_pair(const json& obj, const std::string& path, const char* key,
                               std::array<double, 2> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(path + "/" + key, "expected an array of 2 numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

PNorm parse_p(const json& obj, const std::string& path) {
  if (!obj.contains("p")) return PNorm::Two;
  const json& v = obj.at("p");
  if (v.is_number_integer()) {
    const int p = v.get<int>();
    if (p == 1) return PNorm::One;
    if (p == 2) return PNorm::Two;
    fail(path + "/p", "p must be 1, 2 or \"inf\"");
  }
  if (v.is_string() && v.get<std::string>() == "inf") return PNorm::Inf;
  fail(path + "/p", "p must be 1, 2 or \"inf\"");
}

json p_to_json(PNorm p) {
  switch (p) {
    case PNorm::One: return 1;
    case PNorm::Two: return 2;
    case PNorm::Inf: return "inf";
  }
  return 2;
}

void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  require_keys(doc, "", {"scenario", "formation", "gains", "delay", "leader", "sim", "disturbance",
                         "certificate", "output"});

  cfg.scenario = get_string(doc, "", "scenario", cfg.scenario);
  if (cfg.scenario != "track" && cfg.scenario != "ramp_reject" && cfg.scenario != "sweep") {
    fail("/scenario", "must be one of track, ramp_reject, sweep");
  }

  if (doc.contains("formation")) {
    const json& f = doc.at("formation");
    require_keys(f, "/formation", {"circles", "radius_step_m"});
    cfg.formation_circles = get_int(f, "/formation", "circles", cfg.formation_circles);
    cfg.formation_radius_step_m = get_number(f, "/formation", "radius_step_m", cfg.formation_radius_step_m);
  }
  if (cfg.formation_circles < 1) fail("/formation/circles", "must be >= 1");
  if (!(cfg.formation_radius_step_m > 0.0)) fail("/formation/radius_step_m", "must be positive");

  if (doc.contains("gains")) {
    const json& g = doc.at("gains");
    require_keys(g, "/gains", {"k0", "k1", "k2", "k0_tau", "k1_tau", "k2_tau", "k_psi"});
    cfg.gains.k0 = get_number(g, "/gains", "k0", cfg.gains.k0);
    cfg.gains.k1 = get_number(g, "/gains", "k1", cfg.gains.k1);
    cfg.gains.k2 = get_number(g, "/gains", "k2", cfg.gains.k2);
    cfg.gains.k0_tau = get_number(g, "/gains", "k0_tau", cfg.gains.k0_tau);
    cfg.gains.k1_tau = get_number(g, "/gains", "k1_tau", cfg.gains.k1_tau);
    cfg.gains.k2_tau = get_number(g, "/gains", "k2_tau", cfg.gains.k2_tau);
    cfg.gains.k_psi = get_number(g, "/gains", "k_psi", cfg.gains.k_psi);
  }
  try {
    cfg.gains.validate();
  } catch (const ConfigError& e) {
    fail("/gains", e.what());
  }

  if (doc.contains("delay")) {
    const json& d = doc.at("delay");
    require_keys(d, "/delay", {"tau_s", "tau_max_s"});
    cfg.delay_tau_s = get_number(d, "/delay", "tau_s", cfg.delay_tau_s);
    cfg.delay_tau_max_s = get_number(d, "/delay", "tau_max_s", cfg.delay_tau_s);
  }
  if (cfg.delay_tau_s < 0.0) fail("/delay/tau_s", "must be nonnegative");
  if (cfg.delay_tau_max_s < cfg.delay_tau_s) fail("/delay/tau_max_s", "must be >= tau_s");

  if (doc.contains("leader")) {
    const json& l = doc.at("leader");
    require_keys(l, "/leader",
                 {"speed_mps", "heading_amplitude_rad", "heading_period_s", "start_m"});
    cfg.leader_speed_mps = get_number(l, "/leader", "speed_mps", cfg.leader_speed_mps);
    cfg.leader_heading_amplitude_rad =
        get_number(l, "/leader", "heading_amplitude_rad", cfg.leader_heading_amplitude_rad);
    cfg.leader_heading_period_s = get_number(l, "/leader", "heading_period_s", cfg.leader_heading_period_s);
    cfg.leader_start_m = get_pair(l, "/leader", "start_m", cfg.leader_start_m);
  }
  if (cfg.leader_speed_mps < 0.0) fail("/leader/speed_mps", "must be nonnegative");
  if (!(cfg.leader_heading_period_s > 0.0)) fail("/leader/heading_period_s", "must be positive");
  if (cfg.leader_heading_amplitude_rad < 0.0) fail("/leader/heading_amplitude_rad", "must be nonnegative");

  if (doc.contains("sim")) {
    const json& s = doc.at("sim");
    require_keys(s, "/sim", {"horizon_s", "dt_s", "record_every", "seed", "init_perturbation_m"});
    cfg.sim_horizon_s = get_number(s, "/sim", "horizon_s", cfg.sim_horizon_s);
    cfg.sim_dt_s = get_number(s, "/sim", "dt_s", cfg.sim_dt_s);
    cfg.sim_record_every = get_int(s, "/sim", "record_every", cfg.sim_record_every);
    cfg.sim_seed = get_u64(s, "/sim", "seed", cfg.sim_seed);
    cfg.sim_init_perturbation_m = get_number(s, "/sim", "init_perturbation_m", cfg.sim_init_perturbation_m);
  }
  if (!(cfg.sim_horizon_s > 0.0)) fail("/sim/horizon_s", "must be positive");
  if (!(cfg.sim_dt_s > 0.0)) fail("/sim/dt_s", "must be positive");
  if (cfg.sim_record_every < 1) fail("/sim/record_every", "must be >= 1");
  if (cfg.sim_init_perturbation_m < 0.0) fail("/sim/init_perturbation_m", "must be nonnegative");
  // Delayed gains are always nonzero (validated positive), so the explicit
  // integrator requires dt <= tau.
  if (cfg.sim_dt_s > cfg.delay_tau_s) {
    fail("/sim/dt_s", "dt_s must be <= delay.tau_s while delayed gains are nonzero (dt <= tau rule)");
  }

  if (doc.contains("disturbance")) {
    const json& d = doc.at("disturbance");
    require_keys(d, "/disturbance",
                 {"target", "d0", "d1_per_s", "residual_amp", "residual_freq_rad_s",
                  "residual_decay_per_s"});
    DisturbanceConfig dc;
    dc.target = get_int(d, "/disturbance", "target", dc.target);
    dc.d0 = get_pair(d, "/disturbance", "d0", dc.d0);
    dc.d1_per_s = get_pair(d, "/disturbance", "d1_per_s", dc.d1_per_s);
    dc.residual_amp = get_pair(d, "/disturbance", "residual_amp", dc.residual_amp);
    dc.residual_freq_rad_s = get_number(d, "/disturbance", "residual_freq_rad_s", dc.residual_freq_rad_s);
    dc.residual_decay_per_s = get_number(d, "/disturbance", "residual_decay_per_s", dc.residual_decay_per_s);
    if (dc.target < 0 ||
        dc.target >= 2 * cfg.formation_circles * (cfg.formation_circles + 1)) {
      fail("/disturbance/target", "agent index out of range for the formation");
    }
    cfg.disturbance = dc;
  }

  if (doc.contains("certificate")) {
    const json& c = doc.at("certificate");
    require_keys(c, "/certificate", {"p", "route", "alpha", "region"});
    cfg.certificate.p = parse_p(c, "/certificate");
    cfg.certificate.route = get_string(c, "/certificate", "route", cfg.certificate.route);
    if (cfg.certificate.route != "analytic" && cfg.certificate.route != "sampled") {
      fail("/certificate/route", "must be analytic or sampled");
    }
    if (c.contains("alpha")) {
      const auto a = get_pair(c, "/certificate", "alpha", {0.0, 0.0});
      cfg.certificate.alpha = a;
    }
    if (c.contains("region")) {
      const json& r = c.at("region");
      require_keys(r, "/certificate/region", {"lo_m", "hi_m", "count", "seed", "sampler", "t_samples_s"});
      RegionConfig rc;
      rc.lo_m = get_number(r, "/certificate/region", "lo_m", rc.lo_m);
      rc.hi_m = get_number(r, "/certificate/region", "hi_m", rc.hi_m);
      rc.count = get_int(r, "/certificate/region", "count", rc.count);
      rc.seed = get_u64(r, "/certificate/region", "seed", rc.seed);
      rc.sampler = get_string(r, "/certificate/region", "sampler", rc.sampler);
      if (rc.sampler != "random" && rc.sampler != "grid") {
        fail("/certificate/region/sampler", "must be random or grid");
      }
      if (r.contains("t_samples_s")) {
        const json& ts = r.at("t_samples_s");
        if (!ts.is_array() || ts.empty()) fail("/certificate/region/t_samples_s", "expected a nonempty array");
        rc.t_samples_s.clear();
        for (const json& v : ts) {
          if (!v.is_number()) fail("/certificate/region/t_samples_s", "expected numbers");
          rc.t_samples_s.push_back(v.get<double>());
        }
      }
      if (!(rc.lo_m <= rc.hi_m)) fail("/certificate/region/lo_m", "must be <= hi_m");
      if (rc.count < 1) fail("/certificate/region/count", "must be >= 1");
      cfg.certificate.region = rc;
    }
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    require_keys(o, "/output", {"directory", "trace", "report", "sweep", "plot"});
    cfg.output.directory = get_string(o, "/output", "directory", cfg.output.directory);
    cfg.output.trace = get_string(o, "/output", "trace", cfg.output.trace);
    cfg.output.report = get_string(o, "/output", "report", cfg.output.report);
    cfg.output.sweep = get_string(o, "/output", "sweep", cfg.output.sweep);
    cfg.output.plot = get_string(o, "/output", "plot", cfg.output.plot);
  }

  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ScenarioConfig& cfg) {
  ordered_json doc;
  doc["scenario"] = cfg.scenario;
  doc["formation"] = {{"circles", cfg.formation_circles}, {"radius_step_m", cfg.formation_radius_step_m}};
  doc["gains"] = {{"k0", cfg.gains.k0},         {"k1", cfg.gains.k1},         {"k2", cfg.gains.k2},
                  {"k0_tau", cfg.gains.k0_tau}, {"k1_tau", cfg.gains.k1_tau}, {"k2_tau", cfg.gains.k2_tau},
                  {"k_psi", cfg.gains.k_psi}};
  doc["delay"] = {{"tau_s", cfg.delay_tau_s}, {"tau_max_s", cfg.delay_tau_max_s}};
  doc["leader"] = {{"speed_mps", cfg.leader_speed_mps},
                   {"heading_amplitude_rad", cfg.leader_heading_amplitude_rad},
                   {"heading_period_s", cfg.leader_heading_period_s},
                   {"start_m", cfg.leader_start_m}};
  doc["sim"] = {{"horizon_s", cfg.sim_horizon_s},
                {"dt_s", cfg.sim_dt_s},
                {"record_every", cfg.sim_record_every},
                {"seed", cfg.sim_seed},
                {"init_perturbation_m", cfg.sim_init_perturbation_m}};
  if (cfg.disturbance) {
    doc["disturbance"] = {{"target", cfg.disturbance->target},
                          {"d0", cfg.disturbance->d0},
                          {"d1_per_s", cfg.disturbance->d1_per_s},
                          {"residual_amp", cfg.disturbance->residual_amp},
                          {"residual_freq_rad_s", cfg.disturbance->residual_freq_rad_s},
                          {"residual_decay_per_s", cfg.disturbance->residual_decay_per_s}};
  }
  ordered_json cert;
  cert["p"] = p_to_json(cfg.certificate.p);
  cert["route"] = cfg.certificate.route;
  if (cfg.certificate.alpha) cert["alpha"] = *cfg.certificate.alpha;
  cert["region"] = {{"lo_m", cfg.certificate.region.lo_m},
                    {"hi_m", cfg.certificate.region.hi_m},
                    {"count", cfg.certificate.region.count},
                    {"seed", cfg.certificate.region.seed},
                    {"sampler", cfg.certificate.region.sampler},
                    {"t_samples_s", cfg.certificate.region.t_samples_s}};
  doc["certificate"] = std::move(cert);
  doc["output"] = {{"directory", cfg.output.directory},
                   {"trace", cfg.output.trace},
                   {"report", cfg.output.report},
                   {"sweep", cfg.output.sweep},
                   {"plot", cfg.output.plot}};
  return doc.dump(2) + "\n";
}

ExperimentKind scenario_kind(const ScenarioConfig& cfg) {
  if (cfg.scenario == "track") return ExperimentKind::Track;
  if (cfg.scenario == "ramp_reject") return ExperimentKind::RampReject;
  return ExperimentKind::Sweep;
}

ExperimentConfig to_experiment(const ScenarioConfig& cfg) {
  ExperimentConfig ex;
  ex.circles = cfg.formation_circles;
  ex.radius_step = cfg.formation_radius_step_m;
  ex.gains = cfg.gains;
  ex.leader_speed = cfg.leader_speed_mps;
  ex.leader_amplitude = cfg.leader_heading_amplitude_rad;
  ex.leader_period = cfg.leader_heading_period_s;
  ex.leader_start = cfg.leader_start_m;
  ex.tau = cfg.delay_tau_s;
  ex.tau_max = cfg.delay_tau_max_s;
  ex.horizon = cfg.sim_horizon_s;
  ex.dt = cfg.sim_dt_s;
  ex.record_every = cfg.sim_record_every;
  ex.seed = cfg.sim_seed;
  ex.init_perturbation = cfg.sim_init_perturbation_m;
  ex.p = cfg.certificate.p;
  if (cfg.disturbance) {
    RampDisturbance d;
    d.agent = cfg.disturbance->target;
    d.d0 = cfg.disturbance->d0;
    d.d1 = cfg.disturbance->d1_per_s;
    d.residual_amp = cfg.disturbance->residual_amp;
    d.residual_freq = cfg.disturbance->residual_freq_rad_s;
    d.residual_decay = cfg.disturbance->residual_decay_per_s;
    ex.disturbance = d;
  }
  if (cfg.certificate.alpha) {
    ex.alpha = std::make_pair((*cfg.certificate.alpha)[0], (*cfg.certificate.alpha)[1]);
  }
  if (cfg.certificate.route == "sampled") {
    const int robots = 2 * cfg.formation_circles * (cfg.formation_circles + 1);
    SampleRegion region = SampleRegion::box(2 * robots, cfg.certificate.region.lo_m,
                                            cfg.certificate.region.hi_m, cfg.certificate.region.count,
                                            cfg.certificate.region.seed);
    region.sampler = cfg.certificate.region.sampler == "grid" ? SampleRegion::Sampler::Grid
                                                              : SampleRegion::Sampler::UniformRandom;
    region.t_samples = cfg.certificate.region.t_samples_s;
    ex.region = region;
  }
  return ex;
}

void emit_trace(const std::vector<TraceRecord>& records, const std::vector<int>& circle_of,
                std::ostream& os) {
  os << "t,agent_id,circle,dev_p,x1,x2,r1_1,r1_2,r2_1,r2_2,bound\n";
  std::string line;
  for (const TraceRecord& rec : records) {
    const int agents = static_cast<int>(rec.deviation.size());
    const int n = agents > 0 ? static_cast<int>(rec.x.size()) / agents : 0;
    if (n != 2) throw ConfigError("trace CSV emission expects 2-dimensional agents");
    for (int i = 0; i < agents; ++i) {
      line.clear();
      append_g17(line, rec.t);
      line += ',';
      line += std::to_string(i);
      line += ',';
      line += std::to_string(circle_of.empty() ? 0 : circle_of[i]);
      line += ',';
      append_g17(line, rec.deviation[i]);
      for (const Vec* part : {&rec.x, &rec.r1, &rec.r2}) {
        for (int c = 0; c < 2; ++c) {
          line += ',';
          append_g17(line, (*part)[static_cast<std::size_t>(i) * 2 + c]);
        }
      }
      line += ',';
      if (rec.bound) append_g17(line, *rec.bound);
      line += '\n';
      os << line;
    }
  }
}

void emit_report(const CertificateReport& report, std::ostream& os) {
  std::string out;
  auto kv = [&out](const char* key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  auto kvd = [&](const char* key, double v) {
    std::string s;
    append_g17(s, v);
    kv(key, s);
  };
  kv("route", report.route);
  kv("p", report.p == PNorm::One ? "1" : (report.p == PNorm::Two ? "2" : "inf"));
  kvd("tau_max", report.tau_max);
  kv("c1_pass", report.c1_pass ? "true" : "false");
  kvd("c1_residual", report.c1_residual);
  kvd("sigma_bar", report.sigma_bar);
  kvd("sigma_underbar", report.sigma_underbar);
  kv("feasible", report.feasible ? "true" : "false");
  if (report.lambda_hat) kvd("lambda_hat", *report.lambda_hat);
  kvd("kappa", report.kappa);
  kvd("alpha1", report.alpha1);
  kvd("alpha2", report.alpha2);
  kv("worst_agent_c2", std::to_string(report.worst_agent_c2));
  kv("worst_agent_c3", std::to_string(report.worst_agent_c3));
  kv("sample_count", std::to_string(report.sample_count));
  kv("violations", std::to_string(report.violations.size()));
  for (std::size_t v = 0; v < report.violations.size(); ++v) {
    std::string s = "t=";
    append_g17(s, report.violations[v].t);
    s += " margin=";
    append_g17(s, report.violations[v].margin);
    kv(("violation_" + std::to_string(v + 1)).c_str(), s);
  }
  os << out;
}

void emit_sweep(const SweepResult& sweep, std::ostream& os) {
  os << "circles,circle,max_dev_m\n";
  std::string line;
  for (std::size_t row = 0; row < sweep.circle_counts.size(); ++row) {
    for (std::size_t c = 0; c < sweep.max_deviation[row].size(); ++c) {
      line.clear();
      line += std::to_string(sweep.circle_counts[row]);
      line += ',';
      line += std::to_string(c + 1);
      line += ',';
      append_g17(line, sweep.max_deviation[row][c]);
      line += '\n';
      os << line;
    }
  }
}

void emit_plotscript(const OutputConfig& output, std::ostream& os) {
  os << "#!/usr/bin/env python3\n"
        "\"\"\"Plot helper generated by the mplex CLI.\n"
        "\n"
        "Reads the CSV outputs next to this script and draws three figures:\n"
        "the reference trajectory with the final formation, per-circle maximum\n"
        "deviations, and the deviation traces of every robot.\n"
        "\"\"\"\n"
        "import os\n"
        "\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n"
        "import pandas as pd\n"
        "\n"
        "HERE = os.path.dirname(os.path.abspath(__file__))\n"
     << "TRACE = os.path.join(HERE, \"" << output.trace << "\")\n"
     << "SWEEP = os.path.join(HERE, \"" << output.sweep << "\")\n"
     << "\n"
        "if os.path.exists(TRACE):\n"
        "    df = pd.read_csv(TRACE)\n"
        "\n"
        "    fig, ax = plt.subplots(figsize=(7, 7))\n"
        "    for agent, sub in df.groupby(\"agent_id\"):\n"
        "        ax.plot(sub[\"x1\"], sub[\"x2\"], lw=0.4, alpha=0.4)\n"
        "    last = df[df[\"t\"] == df[\"t\"].max()]\n"
        "    ax.scatter(last[\"x1\"], last[\"x2\"], c=last[\"circle\"], cmap=\"viridis\", s=14)\n"
        "    ax.set_xlabel(\"x [m]\")\n"
        "    ax.set_ylabel(\"y [m]\")\n"
        "    ax.set_title(\"Hand-position trajectories and final formation\")\n"
        "    ax.set_aspect(\"equal\", adjustable=\"datalim\")\n"
        "    fig.savefig(os.path.join(HERE, \"formation.png\"), dpi=150)\n"
        "\n"
        "    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))\n"
        "    perturbed = df.loc[df[\"dev_p\"].idxmax(), \"agent_id\"]\n"
        "    for agent, sub in df.groupby(\"agent_id\"):\n"
        "        top.plot(sub[\"t\"], sub[\"dev_p\"], lw=0.5)\n"
        "        if agent != perturbed:\n"
        "            bottom.plot(sub[\"t\"], sub[\"dev_p\"], lw=0.5)\n"
        "    if \"bound\" in df.columns and df[\"bound\"].notna().any():\n"
        "        one = df[df[\"agent_id\"] == 0]\n"
        "        top.plot(one[\"t\"], one[\"bound\"], \"k--\", lw=1.2, label=\"certified bound\")\n"
        "        top.legend()\n"
        "    top.set_ylabel(\"deviation [m]\")\n"
        "    bottom.set_ylabel(\"deviation [m] (unperturbed)\")\n"
        "    bottom.set_xlabel(\"t [s]\")\n"
        "    fig.savefig(os.path.join(HERE, \"deviations.png\"), dpi=150)\n"
        "\n"
        "if os.path.exists(SWEEP):\n"
        "    sw = pd.read_csv(SWEEP)\n"
        "    fig, ax = plt.subplots(figsize=(7, 5))\n"
        "    per_circle = sw.groupby(\"circle\")[\"max_dev_m\"].max()\n"
        "    ax.plot(per_circle.index, per_circle.values, \"o-\")\n"
        "    ax.set_xlabel(\"circle\")\n"
        "    ax.set_ylabel(\"max deviation [m]\")\n"
        "    ax.set_title(\"Maximum hand-position deviation per circle\")\n"
        "    fig.savefig(os.path.join(HERE, \"sweep.png\"), dpi=150)\n"
        "\n"
        "print(\"plots written next to\", __file__)\n";
}

}  // namespace mplex
