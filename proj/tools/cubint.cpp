#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cubint/classifier.hpp"
#include "cubint/errors.hpp"
#include "cubint/lemma.hpp"
#include "cubint/models.hpp"
#include "cubint/serialize.hpp"
#include "cubint/simulator.hpp"

using namespace cubint;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitNone = 2;
constexpr int kExitBoundary = 3;
constexpr int kExitUsage = 64;

// JSON config: top-level keys are options of the main app, objects named
// after a subcommand hold that subcommand's options.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const Json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      return buf;
    }
    throw CLI::ConversionError("unsupported config value " + v.dump());
  }

  static void flatten(const Json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        flatten(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

constexpr const char* kParamNames[] = {"c0",   "c1",    "c2",    "rho0",  "k2",
                                       "rho",  "alpha", "beta",  "chi0",  "beta0",
                                       "zeta0", "zeta1", "zeta2", "re",    "im"};

struct ModelArgs {
  std::string preset;
  std::string family;
  std::map<std::string, std::optional<double>> values;
  std::string trig_roots;
  bool half_domain = false;
  double perturb = 0.0;

  void attach(CLI::App* cmd, bool with_perturb) {
    cmd->add_option("--preset", preset, "Named preset (see `catalog`)");
    cmd->add_option("--family", family, "Model family, e.g. GoryachevChaplygin");
    for (const char* name : kParamNames)
      cmd->add_option(std::string("--") + name, values[name], std::string("Parameter ") + name);
    cmd->add_option("--trig-roots", trig_roots, "PnegSphereTrig root data")
        ->check(CLI::IsMember({"real-pair", "degenerate", "complex-pair"}));
    cmd->add_flag("--half-domain", half_domain, "GoryachevChaplygin on theta in (0, pi/2)");
    if (with_perturb)
      cmd->add_option("--debug-perturb-q", perturb,
                      "Multiply the alpha term of Q by (1 + value); negative control");
  }

  ModelSpec spec() const {
    if (preset.empty() && family.empty()) throw ArgumentError("one of --preset or --family is required");
    if (!preset.empty() && !family.empty()) throw ArgumentError("--preset and --family are exclusive");
    ModelSpec s;
    if (!preset.empty()) {
      s = cubint::preset(preset);
    } else {
      s.family = family_from_string(family);
    }
    for (const auto& [name, v] : values)
      if (v) s.params.field(name) = *v;
    if (!trig_roots.empty()) s.params.trig_roots = trig_roots_from_string(trig_roots);
    if (half_domain) s.params.half_domain = true;
    return s;
  }

  Model model() const { return perturb != 0.0 ? build_perturbed(spec(), perturb) : build(spec()); }
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the named file, or stdout for an empty path or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot open '" + path + "' for writing");
  out << text;
}

unsigned thread_count(std::size_t work) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CUBINT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// ---- classify ----

struct ClassifyArgs {
  std::string family;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0, rho0 = 0.0;
  int eps = 1;
  std::vector<double> roots;
  std::string output;
  CLI::Option* c2_opt = nullptr;
};

int cmd_classify(const ClassifyArgs& a) {
  Classification c;
  if (a.family == "q0") {
    if (!a.roots.empty()) throw ArgumentError("--roots is not accepted for the q0 family");
    c = classify_q0(a.c0, a.rho0);
  } else if (a.family == "p0") {
    double c0 = a.c0, c1 = a.c1, c2 = a.c2;
    if (!a.roots.empty()) {
      if (a.roots.size() != 2) throw ArgumentError("--roots for p0 takes two values");
      if (a.c2_opt->count() == 0) throw ArgumentError("--roots for p0 needs --c2");
      c1 = -c2 * (a.roots[0] + a.roots[1]);
      c0 = c2 * a.roots[0] * a.roots[1];
    }
    c = classify_p0(c0, c1, c2);
  } else {
    if (a.eps != 1 && a.eps != -1) throw ArgumentError("--eps must be +1 or -1");
    double c0 = a.c0, c1 = a.c1, c2 = a.c2;
    if (!a.roots.empty()) {
      if (a.roots.size() != 3) throw ArgumentError("--roots for general takes three values");
      const double r0 = a.roots[0], r1 = a.roots[1], r2 = a.roots[2];
      c2 = -(r0 + r1 + r2);
      c1 = r0 * r1 + r0 * r2 + r1 * r2;
      c0 = -r0 * r1 * r2;
    }
    c = classify_general(a.eps, c0, c1, c2);
  }
  emit(a.output, dump(to_json(c)));
  return c.manifold == Manifold::None ? kExitNone : kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  ModelArgs model;
  std::size_t samples = 1000;
  double tol = 1e-9;
  double oracle_tol = 1e-6;
  double fd_step = 1e-5;
  std::uint64_t seed = 1;
  std::string output;
};

struct SampleResult {
  double dual = 0.0;
  double oracle = 0.0;
  double disagreement = 0.0;
  PhaseState worst{};
};

int cmd_verify(const VerifyArgs& a) {
  if (a.samples == 0) throw ArgumentError("--samples must be positive");
  if (!(a.tol > 0.0) || !(a.oracle_tol > 0.0)) throw ArgumentError("tolerances must be positive");
  const Model m = a.model.model();

  // Sample i draws from its own seed sequence, so results do not depend on
  // the thread count.
  const unsigned nt = thread_count(a.samples);
  std::vector<SampleResult> partial(nt);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      SampleResult& r = partial[t];
      for (std::size_t i = t; i < a.samples; i += nt) {
        std::seed_seq seq{static_cast<std::uint32_t>(a.seed), static_cast<std::uint32_t>(a.seed >> 32),
                          static_cast<std::uint32_t>(i)};
        std::mt19937_64 rng(seq);
        const PhaseState s = sample_state(m, rng);
        const double d = scaled_bracket(m.H, m.Q, s).scaled();
        const ScaledBracket o = scaled_bracket_oracle(m.H, m.Q, s, a.fd_step);
        if (d > r.dual) {
          r.dual = d;
          r.worst = s;
        }
        r.oracle = std::max(r.oracle, o.scaled());
        r.disagreement = std::max(r.disagreement,
                                  std::abs(poisson_bracket(m.H, m.Q, s) - o.bracket) / o.scale);
      }
    });
  }
  for (auto& th : pool) th.join();

  SampleResult total;
  for (const auto& r : partial) {
    if (r.dual > total.dual || (r.dual == total.dual && total.dual == 0.0)) {
      total.dual = r.dual;
      total.worst = r.worst;
    }
    total.oracle = std::max(total.oracle, r.oracle);
    total.disagreement = std::max(total.disagreement, r.disagreement);
  }
  const bool pass = total.dual <= a.tol && total.oracle <= a.oracle_tol;

  Json report = {{"model", to_json(m)},
                 {"samples", a.samples},
                 {"seed", a.seed},
                 {"tol", a.tol},
                 {"oracle_tol", a.oracle_tol},
                 {"fd_step", a.fd_step},
                 {"max_scaled_bracket_dual", total.dual},
                 {"max_scaled_bracket_oracle", total.oracle},
                 {"max_dual_oracle_disagreement", total.disagreement},
                 {"worst_state",
                  {total.worst.x1, total.worst.x2, total.worst.p1, total.worst.p2}},
                 {"pass", pass}};
  if (a.model.perturb != 0.0) report["debug_perturb_q"] = a.model.perturb;
  emit(a.output, dump(report));
  if (!pass)
    std::cerr << "verify: FAIL max scaled bracket " << g17(total.dual) << " (dual), "
              << g17(total.oracle) << " (oracle)\n";
  return pass ? kExitOk : kExitFail;
}

// ---- simulate ----

struct SimulateArgs {
  ModelArgs model;
  std::optional<double> x1, x2, p1, p2;
  double dt = 1e-3;
  double t_end = 1.0;
  std::string output;
  std::string report;
  std::string format = "csv";
};

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t,x1,x2,p1,p2,H,Q\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto& s = tr.states[i];
    out += g17(tr.times[i]) + "," + g17(s.x1) + "," + g17(s.x2) + "," + g17(s.p1) + "," +
           g17(s.p2) + "," + g17(tr.H_values[i]) + "," + g17(tr.Q_values[i]) + "\n";
  }
  return out;
}

std::string trajectory_json(const Trajectory& tr) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto& s = tr.states[i];
    rows.push_back({tr.times[i], s.x1, s.x2, s.p1, s.p2, tr.H_values[i], tr.Q_values[i]});
  }
  return dump({{"columns", {"t", "x1", "x2", "p1", "p2", "H", "Q"}}, {"rows", rows}});
}

int cmd_simulate(const SimulateArgs& a) {
  const Model m = a.model.model();
  // Unset coordinates come from the preset's default start.
  PhaseState s0;
  if (!a.model.preset.empty()) {
    s0 = preset_initial_state(a.model.preset);
  } else {
    s0 = default_initial_state(m);
  }
  if (a.x1) s0.x1 = *a.x1;
  if (a.x2) s0.x2 = *a.x2;
  if (a.p1) s0.p1 = *a.p1;
  if (a.p2) s0.p2 = *a.p2;
  const Trajectory tr = run(m, s0, a.dt, a.t_end);

  emit(a.output, a.format == "json" ? trajectory_json(tr) : trajectory_csv(tr));

  Json report = {{"model", to_json(m)},
                 {"dt", a.dt},
                 {"t_end", a.t_end},
                 {"initial_state", {s0.x1, s0.x2, s0.p1, s0.p2}}};
  if (!tr.times.empty()) report["drift"] = to_json(drift_report(tr));
  else report["drift"] = nullptr;
  report["halted"] = tr.halted;
  if (tr.halted)
    report["halt"] = {{"step", tr.halt_step}, {"distance", tr.halt_distance}, {"reason", tr.halt_reason}};
  std::string report_path = a.report;
  if (report_path.empty() && !a.output.empty() && a.output != "-") report_path = a.output + ".drift.json";
  if (report_path.empty()) std::cerr << dump(report);
  else emit(report_path, dump(report));

  if (tr.halted) {
    std::cerr << "simulate: halted: " << tr.halt_reason << "\n";
    return kExitBoundary;
  }
  return kExitOk;
}

// ---- catalog ----

int cmd_catalog(const std::string& output) {
  std::string out;
  for (auto name : preset_names()) {
    const ModelSpec s = preset(name);
    out += std::string(name) + "\t" + std::string(to_string(s.family)) + "\t" +
           std::string(to_string(manifold_of(s.family))) + "\t" + std::string(equation_tag(s.family)) +
           "\n";
  }
  emit(output, out);
  return kExitOk;
}

// ---- residuals ----

struct ResidualArgs {
  ModelArgs model;
  int grid = 50;
  double gamma_offset = 0.0;
  double tol = 1e-8;
  std::string output;
};

int cmd_residuals(const ResidualArgs& a) {
  const Model m = build(a.model.spec());
  const LemmaResiduals r = residual_lemma1(m, {a.grid, a.gamma_offset});
  Json rel = Json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) rel[std::string(r.names[i])] = r.max_abs[i];
  const bool pass = r.max() <= a.tol;
  emit(a.output, dump({{"model", to_json(m)},
                       {"grid_points", r.points},
                       {"gamma_offset", a.gamma_offset},
                       {"residuals", rel},
                       {"max", r.max()},
                       {"tol", a.tol},
                       {"pass", pass}}));
  return pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic integrals of geodesic flows with potential: classify, verify, simulate"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the flags; flags win on conflict");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Global geometry of a metric family");
  classify->add_option("--family", ca.family, "q0, p0 or general")
      ->required()
      ->check(CLI::IsMember({"q0", "p0", "general"}));
  classify->add_option("--c0", ca.c0);
  classify->add_option("--c1", ca.c1);
  ca.c2_opt = classify->add_option("--c2", ca.c2);
  classify->add_option("--rho0", ca.rho0);
  classify->add_option("--eps", ca.eps, "Sign of the leading coefficient (general)");
  classify->add_option("--roots", ca.roots, "Roots instead of coefficients (comma separated)")
      ->delimiter(',');
  classify->add_option("-o,--output", ca.output, "Output file (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check {H, Q} = 0 on random admissible states");
  va.model.attach(verify, true);
  verify->add_option("--samples", va.samples);
  verify->add_option("--tol", va.tol, "Bound on the scaled dual-number bracket");
  verify->add_option("--oracle-tol", va.oracle_tol, "Bound on the finite-difference bracket");
  verify->add_option("--fd-step", va.fd_step);
  verify->add_option("--seed", va.seed);
  verify->add_option("-o,--output", va.output);

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Implicit-midpoint trajectory with drift report");
  sa.model.attach(simulate, false);
  simulate->add_option("--x1", sa.x1);
  simulate->add_option("--x2", sa.x2);
  simulate->add_option("--p1", sa.p1);
  simulate->add_option("--p2", sa.p2);
  simulate->add_option("--dt", sa.dt)->check(CLI::PositiveNumber);
  simulate->add_option("--t-end", sa.t_end)->check(CLI::NonNegativeNumber);
  simulate->add_option("-o,--output", sa.output, "Trajectory file (default stdout)");
  simulate->add_option("--report", sa.report,
                       "Drift report JSON (default <output>.drift.json, or stderr)");
  simulate->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "json"}));

  std::string catalog_output;
  auto* catalog = app.add_subcommand("catalog", "List presets");
  catalog->add_option("-o,--output", catalog_output);

  ResidualArgs ra;
  auto* residuals = app.add_subcommand("residuals", "Metric-data relations of a zeta-chart model");
  ra.model.attach(residuals, false);
  residuals->add_option("--grid", ra.grid)->check(CLI::Range(2, 1000000));
  residuals->add_option("--gamma-offset", ra.gamma_offset);
  residuals->add_option("--tol", ra.tol);
  residuals->add_option("-o,--output", ra.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(ca);
    if (verify->parsed()) return cmd_verify(va);
    if (simulate->parsed()) return cmd_simulate(sa);
    if (catalog->parsed()) return cmd_catalog(catalog_output);
    if (residuals->parsed()) return cmd_residuals(ra);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BuildError& e) {
    std::cerr << "build failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const BoundaryError& e) {
    std::cerr << "boundary: " << e.what() << "\n";
    return kExitBoundary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
