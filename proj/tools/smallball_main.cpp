// Batch front end: configure runs, execute samplers / estimators / constant
// evaluations, and persist results with manifests.
//
// Exit codes: 0 success, 1 verification failure, 2 domain error,
//             3 infeasible statistics, 4 I/O failure.

#include <chrono>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smallball/constants.hpp"
#include "smallball/errors.hpp"
#include "smallball/estimator.hpp"
#include "smallball/io.hpp"
#include "smallball/path_sim.hpp"
#include "smallball/pow_util.hpp"
#include "smallball/rng.hpp"
#include "smallball/stable_law.hpp"
#include "smallball/variation.hpp"
#include "smallball/verify.hpp"

namespace {

using nlohmann::json;
using namespace smallball;

// Config-file merge: a flag given on the command line wins; otherwise the
// config key (same name, underscores for dashes) supplies the value.
template <typename T>
void merge_key(const json& cfg, const char* key, const CLI::Option* opt, T& var) {
  if (opt->count() > 0) return;
  auto it = cfg.find(key);
  if (it != cfg.end()) var = it->get<T>();
}

bool present(const json& cfg, const char* key, const CLI::Option* opt) {
  return opt->count() > 0 || cfg.contains(key);
}

struct LawOpts {
  double alpha = 0.0;
  double kappa = 1.0;
  bool subordinator = false;
  double c_minus = 0.0;
  double c_plus = 0.0;
  double drift = 0.0;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_kappa = nullptr;
  CLI::Option* o_sub = nullptr;
  CLI::Option* o_cm = nullptr;
  CLI::Option* o_cp = nullptr;
  CLI::Option* o_drift = nullptr;

  void add(CLI::App* cmd) {
    o_alpha = cmd->add_option("--alpha", alpha, "stability index in (0, 2]");
    o_kappa = cmd->add_option("--kappa", kappa,
                              "scale constant: symmetric characteristic exponent kappa*|u|^alpha, "
                              "or Laplace exponent kappa*lambda^alpha with --subordinator");
    o_sub = cmd->add_flag("--subordinator", subordinator,
                          "one-sided increasing law (requires alpha < 1)");
    o_cm = cmd->add_option("--c-minus", c_minus, "negative-jump intensity c-");
    o_cp = cmd->add_option("--c-plus", c_plus, "positive-jump intensity c+");
    o_drift = cmd->add_option("--drift", drift, "drift term (free only at alpha = 1)");
  }

  void merge(const json& cfg) {
    merge_key(cfg, "alpha", o_alpha, alpha);
    merge_key(cfg, "kappa", o_kappa, kappa);
    merge_key(cfg, "subordinator", o_sub, subordinator);
    merge_key(cfg, "c_minus", o_cm, c_minus);
    merge_key(cfg, "c_plus", o_cp, c_plus);
    merge_key(cfg, "drift", o_drift, drift);
  }

  StableLaw resolve(const json& cfg) const {
    if (!present(cfg, "alpha", o_alpha))
      throw std::invalid_argument("--alpha is required (flag or config)");
    const bool has_cm = present(cfg, "c_minus", o_cm);
    const bool has_cp = present(cfg, "c_plus", o_cp);
    if (has_cm != has_cp)
      throw std::invalid_argument("--c-minus and --c-plus must be given together");
    if (has_cm) return from_levy(alpha, c_minus, c_plus, drift);
    if (subordinator) return from_subordinator(alpha, kappa);
    return from_symmetric(alpha, kappa);
  }
};

json law_json(const StableLaw& law) {
  return json{{"alpha", law.alpha},
              {"c_minus", law.c_minus},
              {"c_plus", law.c_plus},
              {"drift", law.drift},
              {"gauss_scale", law.gauss_scale}};
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  const std::string text = read_text_file(path);  // io_error -> exit 4
  json cfg = json::parse(text, nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object())
    throw std::invalid_argument("config file is not a JSON object: " + path);
  return cfg;
}

Seminorm parse_seminorm(const std::string& s) {
  if (s == "pvar") return Seminorm::pvar;
  if (s == "sup") return Seminorm::sup;
  if (s == "osc" || s == "oscillation") return Seminorm::oscillation;
  if (s == "l2") return Seminorm::l2;
  if (s == "holder") return Seminorm::holder;
  throw std::invalid_argument("unknown seminorm '" + s + "' (pvar, sup, osc, l2, holder)");
}

struct ManifestScope {
  RunManifest m;
  std::string dir;
  std::chrono::steady_clock::time_point t0;

  ManifestScope(const std::string& command, const json& params, std::uint64_t seed,
                const std::string& out_dir)
      : dir(out_dir), t0(std::chrono::steady_clock::now()) {
    m.command = command;
    m.parameters = params;
    m.master_seed = seed;
    m.hash = config_hash(params);
    m.status = "incomplete";
    m.started_utc = utc_now_iso8601();
    // Best effort; an unwritable target still surfaces as io_error below.
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    write_manifest(dir, m);
  }

  void complete(std::vector<std::string> outputs) {
    m.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.outputs = std::move(outputs);
    m.status = "complete";
    write_manifest(dir, m);
  }
};

// ---------------------------------------------------------------- constants

int run_constants(const LawOpts& law_opts, const json& cfg, double p, const CLI::Option* o_p,
                  const std::string& out_dir, const std::string& output) {
  if (!present(cfg, "p", o_p)) throw std::invalid_argument("--p is required (flag or config)");
  const StableLaw law = law_opts.resolve(cfg);
  json params = law_json(law);
  params["p"] = p;
  ManifestScope scope("constants", params, 0, out_dir);
  const ConstantsReport rep = constants_report(law, p);
  const std::string text = to_json(rep).dump(2) + "\n";
  std::cout << text;
  std::vector<std::string> outputs;
  if (!output.empty()) {
    write_text_file(output, text);
    outputs.push_back(output);
  }
  scope.complete(outputs);
  return 0;
}

// ---------------------------------------------------------------- smallball

int run_smallball(const LawOpts& law_opts, const json& cfg, const std::string& seminorm_name,
                  double p, const MCConfig& mc, const std::string& out_dir) {
  const StableLaw law = law_opts.resolve(cfg);
  const Seminorm sn = parse_seminorm(seminorm_name);
  if (mc.epsilon_list.empty())
    throw std::invalid_argument("at least one --epsilons value is required");

  json params = law_json(law);
  params["seminorm"] = seminorm_name;
  params["p"] = p;
  params["epsilons"] = mc.epsilon_list;
  params["n_paths"] = mc.n_paths;
  params["grid_n"] = mc.grid_n;
  params["seed"] = mc.master_seed;
  params["eta"] = mc.eta;
  params["grid_doubling"] = mc.grid_doubling;

  ManifestScope scope("smallball", params, mc.master_seed, out_dir);
  const SmallBallEstimate est = estimate_smallball(law, sn, p, mc);
  write_text_file(out_dir + "/estimate.json", to_json(est).dump(2) + "\n");
  write_text_file(out_dir + "/table.csv", table_csv(est));
  scope.complete({"estimate.json", "table.csv"});

  std::cout << "route " << to_string(est.route) << ", gamma " << format_double(est.gamma) << "\n";
  for (const auto& e : est.per_epsilon) {
    std::cout << "eps " << format_double(e.epsilon) << ": p_hat " << format_double(e.p_hat);
    if (e.k_valid) std::cout << ", K_hat " << format_double(e.k_hat);
    std::cout << "\n";
  }
  for (const auto& w : est.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << out_dir << "/estimate.json, " << out_dir << "/table.csv\n";
  return 0;
}

// ------------------------------------------------------------------- verify

int run_verify(const std::string& suite, unsigned threads, const std::string& out_dir) {
  json params{{"suite", suite}};
  ManifestScope scope("verify", params, 0, out_dir);
  const auto checks = verify_suite(suite, threads);
  bool all_pass = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    all_pass = all_pass && c.pass;
  }
  std::cout << (all_pass ? "suite passed" : "suite FAILED") << " (" << checks.size()
            << " checks)\n";
  scope.complete({});
  return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- simulate

int run_simulate(const LawOpts& law_opts, const json& cfg, const std::string& route,
                 std::size_t n, std::uint64_t seed, double eta, const std::string& out_dir,
                 std::string output) {
  const StableLaw law = law_opts.resolve(cfg);
  if (output.empty()) output = out_dir + "/path.csv";

  json params = law_json(law);
  params["route"] = route;
  params["n"] = n;
  params["seed"] = seed;
  params["eta"] = eta;

  ManifestScope scope("simulate", params, seed, out_dir);
  RngStream g(seed, 0);
  std::vector<double> values;
  if (route == "grid") {
    values = simulate_grid(law, n, g).values;
  } else if (route == "jumps") {
    values = step_path_from_jumps(simulate_jumps(law, eta, g), n).values;
  } else if (route == "subordinated") {
    values = simulate_subordinated(law.alpha, law.kappa_symmetric(), n, g).composed;
  } else {
    throw std::invalid_argument("unknown route '" + route + "' (grid, jumps, subordinated)");
  }
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = double(k) / double(n);
  write_text_file(output, path_csv(t, values));
  scope.complete({output});
  std::cout << "wrote " << output << "\n";
  return 0;
}

// --------------------------------------------------------------------- pvar

int run_pvar(const std::string& input, double p, std::size_t mesh, const CLI::Option* o_mesh,
             std::size_t blocks, const CLI::Option* o_blocks, const std::string& out_dir,
             const std::string& output) {
  const std::string content = read_text_file(input);
  std::vector<double> t, values;
  parse_path_csv(content, t, values);

  json params{{"input", input}, {"p", p}};
  if (o_mesh->count() > 0) params["mesh"] = mesh;
  if (o_blocks->count() > 0) params["blocks"] = blocks;

  ManifestScope scope("pvar", params, 0, out_dir);
  const VariationResult res = pvar_dp(values, p);
  json out;
  out["p"] = p;
  out["value"] = res.value;
  out["root"] = res.root;
  out["optimal_partition_size"] = res.optimal_indices.size();
  if (o_mesh->count() > 0) out["mesh_value"] = pvar_mesh(values, p, mesh);
  if (o_blocks->count() > 0) {
    const BlockDecomposition bd = block_pvars(values, p, blocks);
    KahanSum total;
    for (double b : bd.block_values) total.add(b);
    json jb;
    jb["n_blocks"] = bd.n_blocks;
    jb["block_values"] = bd.block_values;
    jb["sum"] = total.value();
    out["blocks"] = jb;
  }
  const std::string text = out.dump(2) + "\n";
  std::cout << text;
  std::vector<std::string> outputs;
  if (!output.empty()) {
    write_text_file(output, text);
    outputs.push_back(output);
  }
  scope.complete(outputs);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"small-deviation laboratory for strictly stable processes"};
  app.require_subcommand(1);

  // constants ---------------------------------------------------------------
  auto* c_cmd = app.add_subcommand("constants", "closed-form constants and exponents");
  LawOpts c_law;
  c_law.add(c_cmd);
  double c_p = 0.0;
  auto* c_p_opt = c_cmd->add_option("--p", c_p, "variation exponent");
  std::string c_config, c_out_dir = default_output_dir(), c_output;
  c_cmd->add_option("--config", c_config, "JSON config file (flags override)");
  c_cmd->add_option("--out-dir", c_out_dir, "manifest directory");
  c_cmd->add_option("--output", c_output, "also write the report JSON here");

  // smallball ---------------------------------------------------------------
  auto* s_cmd = app.add_subcommand("smallball", "Monte Carlo small-ball probability estimation");
  LawOpts s_law;
  s_law.add(s_cmd);
  std::string s_seminorm = "pvar";
  double s_p = 2.0;
  MCConfig s_mc;
  std::string s_config, s_out_dir = default_output_dir();
  bool s_no_doubling = false;
  auto* s_sem_opt = s_cmd->add_option("--seminorm", s_seminorm, "pvar, sup, osc, l2, holder");
  auto* s_p_opt = s_cmd->add_option("--p", s_p, "variation exponent");
  auto* s_eps_opt =
      s_cmd->add_option("--epsilons", s_mc.epsilon_list, "ball radii")->delimiter(',');
  auto* s_n_opt = s_cmd->add_option("--n-paths", s_mc.n_paths, "Monte Carlo sample size");
  auto* s_grid_opt = s_cmd->add_option("--grid-n", s_mc.grid_n, "time grid size");
  auto* s_seed_opt = s_cmd->add_option("--seed", s_mc.master_seed, "master seed");
  auto* s_eta_opt = s_cmd->add_option("--eta", s_mc.eta, "jump truncation level");
  auto* s_thr_opt = s_cmd->add_option("--threads", s_mc.threads, "worker threads");
  auto* s_nod_opt =
      s_cmd->add_flag("--no-doubling", s_no_doubling, "skip the grid-doubling sensitivity pass");
  s_cmd->add_option("--config", s_config, "JSON config file (flags override)");
  s_cmd->add_option("--out-dir", s_out_dir, "output directory");

  // verify ------------------------------------------------------------------
  auto* v_cmd = app.add_subcommand("verify", "deterministic and statistical self-check suites");
  std::string v_suite;
  unsigned v_threads = 1;
  v_cmd->add_option("--suite", v_suite, "dp, lemmas, laplace, subordination, gaussian")
      ->required();
  v_cmd->add_option("--threads", v_threads, "worker threads");
  std::string v_out_dir = default_output_dir();
  v_cmd->add_option("--out-dir", v_out_dir, "manifest directory");

  // simulate ----------------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "sample one path to CSV");
  LawOpts sim_law;
  sim_law.add(sim_cmd);
  std::string sim_route = "grid";
  std::size_t sim_n = 256;
  std::uint64_t sim_seed = 1;
  double sim_eta = 1e-4;
  std::string sim_config, sim_out_dir = default_output_dir(), sim_output;
  auto* sim_route_opt =
      sim_cmd->add_option("--route", sim_route, "grid, jumps (truncated), subordinated");
  auto* sim_n_opt = sim_cmd->add_option("--n", sim_n, "grid size")->check(CLI::PositiveNumber);
  auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "seed");
  auto* sim_eta_opt = sim_cmd->add_option("--eta", sim_eta, "jump truncation level");
  sim_cmd->add_option("--config", sim_config, "JSON config file (flags override)");
  sim_cmd->add_option("--out-dir", sim_out_dir, "output directory");
  sim_cmd->add_option("--output", sim_output, "CSV path (default <out-dir>/path.csv)");

  // pvar --------------------------------------------------------------------
  auto* p_cmd = app.add_subcommand("pvar", "semi-norms of a path read from CSV");
  std::string p_input;
  double p_p = 2.0;
  std::size_t p_mesh = 1, p_blocks = 1;
  std::string p_out_dir = default_output_dir(), p_output;
  p_cmd->add_option("--input", p_input, "t,value CSV file")->required();
  p_cmd->add_option("--p", p_p, "variation exponent")->required();
  auto* p_mesh_opt =
      p_cmd->add_option("--mesh", p_mesh, "also report mesh-restricted variation, gaps <= k");
  auto* p_blocks_opt = p_cmd->add_option("--blocks", p_blocks, "also report the block split");
  p_cmd->add_option("--out-dir", p_out_dir, "manifest directory");
  p_cmd->add_option("--output", p_output, "also write the result JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // domain error: bad flags
  }

  try {
    if (c_cmd->parsed()) {
      const json cfg = load_config(c_config);
      c_law.merge(cfg);
      merge_key(cfg, "p", c_p_opt, c_p);
      return run_constants(c_law, cfg, c_p, c_p_opt, c_out_dir, c_output);
    }
    if (s_cmd->parsed()) {
      const json cfg = load_config(s_config);
      s_law.merge(cfg);
      merge_key(cfg, "seminorm", s_sem_opt, s_seminorm);
      merge_key(cfg, "p", s_p_opt, s_p);
      merge_key(cfg, "epsilons", s_eps_opt, s_mc.epsilon_list);
      merge_key(cfg, "n_paths", s_n_opt, s_mc.n_paths);
      merge_key(cfg, "grid_n", s_grid_opt, s_mc.grid_n);
      merge_key(cfg, "seed", s_seed_opt, s_mc.master_seed);
      merge_key(cfg, "eta", s_eta_opt, s_mc.eta);
      merge_key(cfg, "threads", s_thr_opt, s_mc.threads);
      merge_key(cfg, "no_doubling", s_nod_opt, s_no_doubling);
      s_mc.grid_doubling = !s_no_doubling;
      return run_smallball(s_law, cfg, s_seminorm, s_p, s_mc, s_out_dir);
    }
    if (v_cmd->parsed()) return run_verify(v_suite, v_threads, v_out_dir);
    if (sim_cmd->parsed()) {
      const json cfg = load_config(sim_config);
      sim_law.merge(cfg);
      merge_key(cfg, "route", sim_route_opt, sim_route);
      merge_key(cfg, "n", sim_n_opt, sim_n);
      merge_key(cfg, "seed", sim_seed_opt, sim_seed);
      merge_key(cfg, "eta", sim_eta_opt, sim_eta);
      return run_simulate(sim_law, cfg, sim_route, sim_n, sim_seed, sim_eta, sim_out_dir,
                          sim_output);
    }
    if (p_cmd->parsed())
      return run_pvar(p_input, p_p, p_mesh, p_mesh_opt, p_blocks, p_blocks_opt, p_out_dir,
                      p_output);
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
