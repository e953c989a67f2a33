#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qjl/duality.hpp"
#include "qjl/io_util.hpp"
#include "qjl/lyapunov.hpp"
#include "qjl/parallel.hpp"
#include "qjl/spectra.hpp"
#include "qjl/zero_count.hpp"

using nlohmann::json;
using namespace qjl;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
  unsigned long seed = 1234;
};

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config " + path);
  json j;
  f >> j;
  return j;
}

std::vector<double> energies(const json& cfg, const BlockModel& m) {
  if (cfg.contains("E")) {
    if (cfg["E"].is_number()) return {cfg["E"].get<double>()};
    return cfg["E"].get<std::vector<double>>();
  }
  if (cfg.contains("E_from_spectrum")) {
    const json& s = cfg["E_from_spectrum"];
    int count = s.value("count", 5);
    int n_spec = s.value("n_spec", 50);
    double theta_spec = s.value("theta_spec", 0.0);
    std::vector<double> ev =
        finite_spectrum(m, theta_spec, n_spec, BoundaryCondition::Dirichlet);
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
      out.push_back(ev[static_cast<size_t>((i + 0.5) * ev.size() / count)]);
    return out;
  }
  throw std::invalid_argument("config needs E or E_from_spectrum");
}

void write_sidecar(const std::string& out_dir, const std::string& task, const json& cfg,
                   const CommonArgs& args, double wall_ms) {
  json meta;
  meta["task"] = task;
  meta["config"] = cfg;
  meta["threads"] = args.threads;
  meta["seed"] = args.seed;
  meta["version"] = "qjl 1.0.0";
  meta["wall_time_ms"] = wall_ms;
  std::ofstream f(out_dir + "/" + task + ".meta.json");
  f << meta.dump(2) << "\n";
}

int run_task(const std::string& task, const CommonArgs& args) {
  json cfg = load_config(args.config_path);
  std::filesystem::create_directories(args.out_dir);
  set_default_threads(args.threads);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  if (task == "lyapunov") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    long n = cfg.at("n").get<long>();
    int grid = cfg.value("grid", 100);
    std::vector<double> eps = cfg.value("eps", std::vector<double>{0.0});
    header = {"E", "eps", "j", "L_j", "Lsum_j"};
    for (double E : energies(cfg, m))
      for (double e : eps) {
        LyapunovProfile p = finite_scale_exponents(m, E, e, n, grid);
        for (int j = 0; j < p.L.size(); ++j)
          rows.push_back({fmt_double(E), fmt_double(e), std::to_string(j + 1),
                          fmt_double(p.L[j]), fmt_double(p.Lsum[j])});
      }
  } else if (task == "accel") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    long n = cfg.at("n").get<long>();
    int grid = cfg.value("grid", 64);
    int j = cfg.value("j", m.d);
    double eps0 = cfg.value("eps0", 0.03), h = cfg.value("h", 0.03);
    header = {"E", "j", "kappa_raw", "kappa_rounded", "quantization_gap", "noisy"};
    for (double E : energies(cfg, m)) {
      AccelerationEstimate a = acceleration(m, E, j, eps0, h, n, grid);
      rows.push_back({fmt_double(E), std::to_string(a.j), fmt_double(a.kappa_raw),
                      std::to_string(a.kappa_rounded), fmt_double(a.quantization_gap),
                      a.noisy ? "1" : "0"});
    }
  } else if (task == "zeros") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    int n = cfg.at("n").get<int>();
    double eps_ann = cfg.contains("eps_annulus") ? cfg["eps_annulus"].get<double>() : m.eta / 3.0;
    header = {"E", "count", "re", "im", "log_mag_over_2pi", "boundary_flag", "pair_index"};
    for (double E : energies(cfg, m)) {
      AnnulusZeroReport rep = count_zeros(extract_laurent(m, E, n, cfg.value("oversample", 2)),
                                          eps_ann);
      for (size_t r = 0; r < rep.roots.size(); ++r) {
        bool bd = std::find(rep.boundary_flags.begin(), rep.boundary_flags.end(),
                            static_cast<int>(r)) != rep.boundary_flags.end();
        rows.push_back({fmt_double(E), std::to_string(rep.count), fmt_double(rep.roots[r].real()),
                        fmt_double(rep.roots[r].imag()),
                        fmt_double(std::fabs(std::log(std::abs(rep.roots[r]))) /
                                   (2.0 * std::numbers::pi)),
                        bd ? "1" : "0", "-1"});
      }
    }
  } else if (task == "green") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    int n = cfg.at("n").get<int>();
    double theta = cfg.value("theta", 0.0);
    int x = cfg.value("x", 0), y = cfg.value("y", 0);
    FiniteVolumeOperator op =
        assemble(m, ComplexPhase(theta, 0.0), n, BoundaryCondition::Periodic);
    header = {"E", "x", "y", "re", "im", "log_f", "cramer_rel_err"};
    for (double E : energies(cfg, m)) {
      GreenEntry g = green(op, E, x, y);
      rows.push_back({fmt_double(E), std::to_string(x), std::to_string(y),
                      fmt_double(g.value.real()), fmt_double(g.value.imag()),
                      fmt_double(g.f.log_mag), fmt_double(g.cramer_rel_err)});
    }
  } else if (task == "spectrum") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    SpectrumApprox s = spectrum_union(m, cfg.at("n").get<int>(), cfg.value("theta_grid", 64),
                                      cfg.value("merge_tol", 1e-3));
    header = {"lo", "hi"};
    for (const auto& [lo, hi] : s.intervals) rows.push_back({fmt_double(lo), fmt_double(hi)});
  } else if (task == "verify") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    header = {"check", "residual", "pass"};
    auto add = [&](const std::string& name, double r, double tol) {
      rows.push_back({name, fmt_double(r), r < tol ? "1" : "0"});
    };
    validate_model(m);
    add("validate_model", 0.0, 1.0);
    std::string jn = cfg.value("J", std::string("none"));
    if (jn != "none") {
      MatrixXc J = jn == "identity" ? J_identity(m.d)
                 : jn == "antidiagonal" ? J_antidiagonal(m.d)
                 : J_xy();
      add("J_symmetry", verify_J_symmetry(m, J), 1e-10);
    }
    if (cfg.contains("period_denom"))
      add("f_periodicity",
          verify_f_periodicity(m, cfg.value("E", 0.1), cfg.value("n", 8),
                               cfg["period_denom"].get<int>()),
          1e-10);
    if (cfg.contains("detP_n")) {
      DetPResidual r = detP_identity_residual(m, cfg.value("E", 0.1),
                                              ComplexPhase(cfg.value("theta", 0.1234), 0.0),
                                              cfg["detP_n"].get<int>());
      add("detP_identity", r.degenerate ? 0.0 : r.residual, 1e-6);
    }
  } else if (task == "ldt") {
    BlockModel m = model_from_json_text(cfg.at("model").dump());
    header = {"E", "fraction", "clusters", "threshold"};
    for (double E : energies(cfg, m)) {
      LdtReport r = ldt_deviation_fraction(m, E, cfg.value("eps", 0.0), cfg.at("n").get<long>(),
                                           cfg.value("grid", 4096), cfg.value("delta", 0.3));
      rows.push_back({fmt_double(E), fmt_double(r.fraction), std::to_string(r.clusters),
                      fmt_double(r.threshold)});
    }
  } else if (task == "skewshift") {
    double lambda = cfg.at("lambda").get<double>();
    long p = cfg.value("p", 1L), q = cfg.value("q", 3L);
    Frequency y(cfg.value("y", 0.6180339887498949));
    long ell = cfg.value("ell", 4000L);
    int x_grid = cfg.value("x_grid", 64);
    std::vector<double> Es;
    if (cfg.contains("E")) {
      Es = cfg["E"].is_number() ? std::vector<double>{cfg["E"].get<double>()}
                                : cfg["E"].get<std::vector<double>>();
    } else {
      const json& s = cfg.at("E_from_spectrum");
      std::vector<double> ev = skewshift_truncation_spectrum(
          lambda, p, q, y.omega[0], s.value("x_spec", 0.0), s.value("n_spec", 200));
      int count = s.value("count", 5);
      for (int i = 0; i < count; ++i)
        Es.push_back(ev[static_cast<size_t>((i + 0.5) * ev.size() / count)]);
    }
    header = {"E", "avg_lyapunov"};
    for (double E : Es)
      rows.push_back({fmt_double(E),
                      fmt_double(skewshift_avg_lyapunov(lambda, p, q, y, E, ell, x_grid))});
  } else if (task == "duality") {
    double lambda = cfg.at("lambda").get<double>();
    long p = cfg.value("p", 1L), q = cfg.value("q", 3L);
    Frequency y(cfg.value("y", 0.6180339887498949));
    double r = duality_unitary_residual(lambda, p, q, y, cfg.value("trunc", 24),
                                        cfg.value("probes", 10), args.seed);
    header = {"residual"};
    rows.push_back({fmt_double(r)});
  } else {
    throw std::invalid_argument("unknown task " + task);
  }

  write_csv(args.out_dir + "/" + task + ".csv", header, rows);
  double wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0).count();
  write_sidecar(args.out_dir, task, cfg, args, wall_ms);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-periodic block Jacobi lab: Lyapunov exponents, periodic determinants, "
               "annulus zero counts, spectra, and skew-shift duality checks"};
  app.require_subcommand(1);
  CommonArgs args;
  const std::vector<std::string> tasks = {"lyapunov", "accel", "zeros", "green", "spectrum",
                                          "verify", "ldt", "skewshift", "duality"};
  for (const auto& t : tasks) {
    CLI::App* sub = app.add_subcommand(t, "run the '" + t + "' task from a JSON config");
    sub->add_option("--config", args.config_path, "JSON config file")->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--threads", args.threads, "worker cap (0 = hardware)");
    sub->add_option("--seed", args.seed, "RNG seed for probe-based tasks");
  }
  CLI11_PARSE(app, argc, argv);
  std::string task = app.get_subcommands().front()->get_name();
  try {
    return run_task(task, args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "[" << task << "] validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "[" << task << "] numerical failure: " << e.what() << "\n";
    return 3;
  }
}
