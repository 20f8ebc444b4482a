// geothresh: sampling, thresholds, theory constants and Monte Carlo experiments.
//
//   geothresh sample --domain '{"kind":"disk","radius":1}' --n 1000 --seed 7 --out pts.csv
//   geothresh threshold --in pts.csv --k 2
//   geothresh theory --d 2 --k 1 --beta 0 --n 1e5
//   geothresh experiment --config cfg.json --out results/
//   geothresh oracle --in small.csv --k 2
//
// Exit codes: 0 success, 2 infeasible input, 3 solver failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "geothresh/geothresh.hpp"

namespace gt = geothresh;

namespace {

void echo(const gt::Json& resolved) { std::cerr << "config: " << resolved.dump() << "\n"; }

gt::Domain parse_domain(const std::string& text) {
  return gt::domain_from_json(gt::parse_json_text(text, "--domain"));
}

gt::Density parse_density(const std::string& text, const gt::Domain& a) {
  return gt::density_from_json(gt::parse_json_text(text, "--density"), a);
}

gt::PointsCsv load_points(const std::string& path) {
  if (path == "-") return gt::read_points_csv(std::cin);
  std::ifstream in(path);
  if (!in) throw gt::InfeasibleError("cannot open " + path);
  return gt::read_points_csv(in);
}

// Grid sized to the connectivity scale of the points' bounding box.
gt::PointSet index_points(gt::PointsCsv csv) {
  gt::Point lo = csv.points.front(), hi = lo;
  for (const auto& p : csv.points)
    for (int c = 0; c < 3; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  double vol = 1.0;
  for (int c = 0; c < csv.dimension; ++c) vol *= std::max(hi[c] - lo[c], 1e-9);
  const auto n = csv.points.size();
  return gt::PointSet::build(std::move(csv.points), gt::default_cell_size(n, vol, csv.dimension), csv.dimension);
}

int cmd_sample(const std::string& domain_text, const std::string& density_text, const std::string& model,
               double n, std::uint64_t seed, const std::string& out_path) {
  const auto a = parse_domain(domain_text);
  const auto f = parse_density(density_text, a);
  const auto m = gt::parse_model(model);
  if (!(n >= 0.0)) throw gt::InfeasibleError("--n must be nonnegative");
  if (m == gt::Model::binomial && n != std::floor(n)) throw gt::InfeasibleError("binomial --n must be an integer");
  echo({{"command", "sample"},
        {"domain", gt::to_json(a)},
        {"density", gt::to_json(f)},
        {"model", model},
        {"n", n},
        {"seed", seed},
        {"out", out_path}});
  gt::Rng rng = gt::replication_stream(seed, 0);
  const auto count = m == gt::Model::poisson ? gt::poisson(rng, n) : static_cast<std::uint64_t>(n);
  const auto pts = gt::sample_points(f, count, rng);
  if (out_path == "-") {
    gt::write_points_csv(std::cout, pts, a.dimension());
  } else {
    std::ofstream out(out_path);
    if (!out) throw gt::InfeasibleError("cannot write " + out_path);
    gt::write_points_csv(out, pts, a.dimension());
  }
  return 0;
}

int cmd_threshold(const std::string& in_path, int k) {
  echo({{"command", "threshold"}, {"in", in_path}, {"k", k}});
  if (k < 1) throw gt::InfeasibleError("--k must be at least 1");
  auto csv = load_points(in_path);
  if (csv.points.size() < static_cast<std::size_t>(k) + 2)
    throw gt::InfeasibleError("threshold needs at least k+2 points");
  const auto ps = index_points(std::move(csv));
  const auto t = gt::compute_thresholds(ps, k);
  gt::Json out{{"L", t.L}, {"M", t.M}, {"coincide", t.coincide}};
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_oracle(const std::string& in_path, int k) {
  echo({{"command", "oracle"}, {"in", in_path}, {"k", k}});
  if (k < 1) throw gt::InfeasibleError("--k must be at least 1");
  const auto csv = load_points(in_path);
  if (csv.points.size() > gt::oracle::kMaxOraclePoints) throw gt::InfeasibleError("oracle accepts at most 14 points");
  const double L = gt::oracle::largest_knn_link(csv.points, k);
  const double M = gt::oracle::k_connectivity_threshold(csv.points, k);
  gt::Json out{{"L", L}, {"M", M}, {"coincide", L == M}};
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_theory(int d, int k, std::optional<std::string> domain_text, const std::string& density_text,
               double beta, double n, bool solve) {
  if (d != 2 && d != 3) throw gt::InfeasibleError("--d must be 2 or 3");
  if (k < 1) throw gt::InfeasibleError("--k must be at least 1");
  const auto a = domain_text ? parse_domain(*domain_text) : (d == 2 ? gt::Domain::disk(1.0) : gt::Domain::ball3(1.0));
  if (a.dimension() != d) throw gt::InfeasibleError("--domain dimension does not match --d");
  const auto f = parse_density(density_text, a);
  echo({{"command", "theory"},
        {"d", d},
        {"k", k},
        {"domain", gt::to_json(a)},
        {"density", gt::to_json(f)},
        {"beta", beta},
        {"n", n},
        {"solve", solve}});
  gt::Json out;
  out["theta_d"] = gt::unit_ball_volume(d);
  out["c_dk"] = gt::cdk(d, k);
  out["volume"] = gt::volume(a);
  out["perimeter"] = gt::perimeter(a);
  out["sigma_A"] = gt::isoperimetric_sigma(a);
  out["f0"] = f.f0();
  out["f1"] = f.f1();
  out["fmax"] = f.fmax();
  out["regime"] = gt::to_string(gt::regime(f, d));
  out["slln_constant"] = gt::slln_constant(f);
  const bool finite = std::isfinite(n);
  if (finite && !(n > std::exp(1.0))) throw gt::InfeasibleError("--n must exceed e");
  if (f.kind() == gt::DensityKind::uniform) {
    const auto spec = gt::make_limit_spec(f, k, gt::Centring::explicit_uniform);
    out["family"] = gt::to_string(spec.family);
    out["centring"] = {{"log_n", spec.centring_log}, {"loglog_n", spec.centring_loglog}};
    out["limit_cdf"] = gt::limit_cdf(spec, beta, gt::kInfiniteN);
    if (finite) {
      out["centring_offset"] = gt::centring_offset(d, k, n);
      out["centring_radius"] = gt::centring_radius(d, k, n, f.f0(), beta);
      out["limit_cdf_corrected"] = gt::limit_cdf(spec, beta, n);
      out["limit_cdf_refined"] = gt::limit_cdf(spec, beta, n, gt::Correction::refined);
      out["expansion"] = gt::isolated_expansion(spec, beta, n);
    }
  }
  const auto median = gt::make_limit_spec(f, k, gt::Centring::empirical_median);
  out["median_centred"] = {{"law_available", median.law_available},
                           {"alpha", median.law_available ? gt::Json(median.alpha) : gt::Json(nullptr)}};
  if (median.law_available) out["median_centred"]["cdf"] = gt::nonuniform_limit_cdf(median, beta);
  if (solve) {
    if (!finite) throw gt::InfeasibleError("--solve needs a finite --n");
    const double r = gt::solve_rn(f, n, k, beta);
    const auto e = gt::expected_isolated(f, n, r, k);
    out["r_n"] = r;
    out["expected_isolated"] = {{"value", e.value}, {"abs_error", e.abs_error}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, std::optional<unsigned> threads) {
  auto cfg = gt::config_from_json(gt::parse_json_text(gt::read_file(config_path), config_path));
  if (threads) cfg.threads = *threads;
  cfg.progress = true;
  auto resolved = gt::to_json(cfg);
  resolved["threads"] = cfg.threads;
  resolved["out"] = out_dir;
  echo(resolved);
  gt::validate(cfg);
  const auto recs = gt::run(cfg);
  const auto summary = gt::summarise(cfg, recs);
  std::filesystem::create_directories(out_dir);
  std::ofstream csv(std::filesystem::path(out_dir) / "records.csv");
  std::ofstream js(std::filesystem::path(out_dir) / "summary.json");
  if (!csv || !js) throw gt::InfeasibleError("cannot write to " + out_dir);
  gt::write_records_csv(csv, recs);
  js << gt::to_json(summary, cfg).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connectivity thresholds of random geometric graphs"};
  app.require_subcommand(1);

  auto* sample = app.add_subcommand("sample", "Sample a point set to CSV");
  std::string domain_text = R"({"kind":"disk","radius":1})", density_text = R"({"kind":"uniform"})";
  std::string model = "binomial", out_path = "-";
  double n = 100;
  std::uint64_t seed = 0;
  sample->add_option("--domain", domain_text, "Domain JSON")->capture_default_str();
  sample->add_option("--density", density_text, "Density JSON")->capture_default_str();
  sample->add_option("--model", model, "poisson or binomial")->capture_default_str();
  sample->add_option("--n", n, "Sample size or intensity")->capture_default_str();
  sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample->add_option("--out", out_path, "Output CSV ('-' for stdout)")->capture_default_str();

  std::string in_path = "-";
  int k = 1;
  auto* threshold = app.add_subcommand("threshold", "L_k and M_k of a point CSV");
  threshold->add_option("--in", in_path, "Point CSV ('-' for stdin)")->capture_default_str();
  threshold->add_option("--k", k, "Connectivity order")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Brute-force L_k and M_k (at most 14 points)");
  oracle->add_option("--in", in_path, "Point CSV ('-' for stdin)")->capture_default_str();
  oracle->add_option("--k", k, "Connectivity order")->capture_default_str();

  auto* theory = app.add_subcommand("theory", "Closed-form constants and limit laws as JSON");
  int d = 2;
  double beta = 0.0;
  double theory_n = gt::kInfiniteN;
  bool solve = false;
  std::optional<std::string> theory_domain;
  std::string theory_density = R"({"kind":"uniform"})";
  theory->add_option("--d", d, "Dimension")->capture_default_str();
  theory->add_option("--k", k, "Connectivity order")->capture_default_str();
  theory->add_option("--domain", theory_domain, "Domain JSON (default unit disk/ball)");
  theory->add_option("--density", theory_density, "Density JSON")->capture_default_str();
  theory->add_option("--beta", beta, "Level beta")->capture_default_str();
  theory->add_option("--n", theory_n, "n (omit for the limit)");
  theory->add_flag("--solve", solve, "Also solve for r_n(beta)");

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  std::string config_path, out_dir = ".";
  std::optional<unsigned> threads;
  experiment->add_option("--config", config_path, "Config JSON")->required();
  experiment->add_option("--out", out_dir, "Output directory")->capture_default_str();
  experiment->add_option("--threads", threads, "Worker threads (default GEOTHRESH_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) return cmd_sample(domain_text, density_text, model, n, seed, out_path);
    if (*threshold) return cmd_threshold(in_path, k);
    if (*oracle) return cmd_oracle(in_path, k);
    if (*theory) return cmd_theory(d, k, theory_domain, theory_density, beta, theory_n, solve);
    if (*experiment) return cmd_experiment(config_path, out_dir, threads);
  } catch (const gt::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gt::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
