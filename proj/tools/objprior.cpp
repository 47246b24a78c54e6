// objprior: command-line front end.
//
//   objprior refdist   --m M --n N [--grid lo:hi:k[:log]] --out DIR
//   objprior hier      --input FILE [--prior exact|approx] [--chain N] [--seed S] --out DIR
//   objprior shrink    --input FILE [--chain N] [--seed S] --out DIR
//   objprior catalogue list | eval NAME --point v1,v2,...
//
// Exit codes: 0 success, 1 usage or parse error, 2 I/O error, 3 precondition.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "objprior/catalogue.hpp"
#include "objprior/hier.hpp"
#include "objprior/numerics.hpp"
#include "objprior/refdist.hpp"
#include "objprior/shrinkage.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace objprior;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitPrecondition = 3;
constexpr const char* kSchemaVersion = "v1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double lo = 0.0, hi = 0.0;
  std::size_t points = 0;
  bool log = false;
};

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("--grid expects lo:hi:k[:log], got '" + text + "'");
  GridSpec g;
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw UsageError("");
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw UsageError("");
    const long k = std::stol(parts[2], &used);
    if (used != parts[2].size() || k < 1) throw UsageError("");
    g.points = static_cast<std::size_t>(k);
  } catch (const std::exception&) {
    throw UsageError("--grid expects lo:hi:k[:log], got '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") g.log = true;
    else if (parts[3] != "lin") throw UsageError("--grid scale must be 'log' or 'lin'");
  }
  if (!(g.lo < g.hi) || (g.log && !(g.lo > 0.0))) throw UsageError("--grid needs lo < hi (and lo > 0 for log)");
  return g;
}

std::vector<double> expand_grid(const GridSpec& g) {
  if (g.points == 1) return {g.lo};
  return g.log ? numerics::logspace(g.lo, g.hi, g.points) : numerics::linspace(g.lo, g.hi, g.points);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

// Pins: values with no published reference are written on the first --pin run
// and compared on later runs.
void check_pins(const fs::path& dir, const std::string& key, const ordered_json& values) {
  const fs::path path = dir / "pins.json";
  ordered_json pins = ordered_json::object();
  if (fs::exists(path)) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    try {
      pins = ordered_json::parse(in);
    } catch (const std::exception& e) {
      throw ParseError("pins file: " + std::string(e.what()));
    }
  }
  if (!pins.contains(key)) {
    pins[key] = values;
    write_json(path, pins);
    std::cout << "pinned " << key << '\n';
    return;
  }
  for (const auto& [name, expected] : pins[key].items()) {
    if (!values.contains(name) || !expected.is_number()) continue;
    const double e = expected.get<double>();
    const double v = values[name].get<double>();
    if (std::abs(v - e) > 1e-9 * std::max(1.0, std::abs(e)))
      throw PreconditionError("pin mismatch for " + key + "." + name + ": pinned " + fmt(e) + ", got " + fmt(v));
  }
  std::cout << "pins match for " << key << '\n';
}

int run_refdist(std::int64_t m, std::int64_t n, const std::string& grid_text, double tol, const fs::path& out,
                bool pin) {
  const refdist::RefDistConfig cfg = refdist::RefDistConfig::uniform(m, n);
  const GridSpec grid = grid_text.empty()
                            ? GridSpec{refdist::kBracketLowFactor / static_cast<double>(m), refdist::kBracketHigh, 200, true}
                            : parse_grid(grid_text);
  const auto best = refdist::optimal_a(cfg, tol);
  const auto curve = refdist::loss_curve(cfg, expand_grid(grid));
  ensure_dir(out);
  {
    auto csv = open_out(out / "loss_curve.csv");
    csv << "a,loss\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
      csv << fmt(curve.grid.points()[i]) << ',' << fmt(curve.grid.values()[i]) << '\n';
  }
  ordered_json summary = {{"schema", std::string("refdist/") + kSchemaVersion},
                          {"m", m},
                          {"n", n},
                          {"a_star", best.argmin},
                          {"d_star", best.min_value}};
  write_json(out / "refdist_summary.json", summary);
  std::cout << summary.dump() << '\n';
  if (pin) check_pins(out, "refdist_m" + std::to_string(m) + "_n" + std::to_string(n),
                      {{"a_star", best.argmin}, {"d_star", best.min_value}});
  return 0;
}

int run_hier(const std::string& input, const std::string& prior_name, std::size_t chain_length, std::uint64_t seed,
             const std::string& grid_text, bool with_theta, bool want_mode, const fs::path& out, bool pin) {
  const hier::PriorKind prior = hier::parse_prior_kind(prior_name);
  if (!fs::exists(input)) throw IoError("cannot open count table '" + input + "'");
  hier::CountTable x = [&] {
    try {
      return hier::read_count_table(input);
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    }
  }();
  const auto m = static_cast<std::int64_t>(x.m());
  const auto n = static_cast<std::int64_t>(x.n());

  ordered_json summary = {{"schema", std::string("hier/") + kSchemaVersion},
                          {"m", m},
                          {"n", n},
                          {"r0", x.r0()},
                          {"prior", hier::to_string(prior)},
                          {"seed", seed},
                          {"chain_length", chain_length}};
  if (want_mode) {
    if (x.r0() <= 1)
      throw BoundaryModeError("only one occupied cell (r0 = 1): the posterior mode of a is 0, which cannot be used");
    summary["posterior_mode"] = hier::posterior_mode_a(x, prior);
    try {
      summary["likelihood_mode"] = hier::likelihood_mode_a(x);
    } catch (const BoundaryModeError&) {
      summary["likelihood_mode"] = nullptr;
    }
  }

  hier::SamplerOptions opt;
  opt.with_theta = with_theta;
  const auto chain = hier::sample_posterior(x, chain_length, seed, prior, opt);
  summary["acceptance_rate"] = chain.acceptance_rate;
  summary["proposal_scale"] = chain.proposal_scale;
  double mean_a = 0.0;
  for (double a : chain.a_samples) mean_a += a;
  summary["posterior_mean_a"] = mean_a / static_cast<double>(chain.a_samples.size());

  ensure_dir(out);
  {
    auto csv = open_out(out / "chain.csv");
    csv << "iteration,a";
    if (with_theta)
      for (std::int64_t i = 1; i <= m; ++i) csv << ",theta_" << i;
    csv << '\n';
    for (std::size_t i = 0; i < chain.a_samples.size(); ++i) {
      csv << i << ',' << fmt(chain.a_samples[i]);
      if (with_theta)
        for (double t : chain.theta_samples[i]) csv << ',' << fmt(t);
      csv << '\n';
    }
  }
  {
    const GridSpec grid =
        grid_text.empty() ? GridSpec{1e-4 / static_cast<double>(m), 1e3, 200, true} : parse_grid(grid_text);
    auto csv = open_out(out / "prior_curve.csv");
    csv << "a,exact,approx\n";
    hier::PriorDiagnostics diag;
    for (double a : expand_grid(grid))
      csv << fmt(a) << ',' << fmt(hier::reference_prior_exact(a, m, n, &diag)) << ','
          << fmt(hier::reference_prior_approx(a, m, n)) << '\n';
    summary["bracket_clamps"] = diag.clamped;
  }
  write_json(out / "hier_summary.json", summary);
  std::cout << summary.dump() << '\n';
  if (pin && want_mode) {
    ordered_json pinned = {{"posterior_mode", summary["posterior_mode"]}};
    if (!summary["likelihood_mode"].is_null()) pinned["likelihood_mode"] = summary["likelihood_mode"];
    check_pins(out, "hier_" + fs::path(input).stem().string() + "_" + hier::to_string(prior), pinned);
  }
  return 0;
}

int run_shrink(const std::string& input, std::size_t chain_length, std::uint64_t seed, bool keep_mu,
               const fs::path& out, bool pin) {
  if (!fs::exists(input)) throw IoError("cannot open vector file '" + input + "'");
  const auto data = [&] {
    try {
      return shrinkage::read_means_file(input);
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    }
  }();
  shrinkage::GibbsOptions opt;
  opt.keep_mu = keep_mu;
  const auto chain = shrinkage::gibbs_sample(data, chain_length, seed, opt);
  const auto theta = shrinkage::theta_posterior_samples(chain);
  const auto s = shrinkage::summarize_theta(theta);
  ensure_dir(out);
  {
    auto csv = open_out(out / "chain.csv");
    csv << "iteration,tau2,theta";
    if (keep_mu)
      for (std::size_t i = 1; i <= data.m(); ++i) csv << ",mu_" << i;
    csv << '\n';
    for (std::size_t i = 0; i < chain.tau2_samples.size(); ++i) {
      csv << i << ',' << fmt(chain.tau2_samples[i]) << ',' << fmt(theta[i]);
      if (keep_mu)
        for (double v : chain.mu_samples[i]) csv << ',' << fmt(v);
      csv << '\n';
    }
  }
  ordered_json summary = {{"schema", std::string("shrink/") + kSchemaVersion},
                          {"m", data.m()},
                          {"seed", seed},
                          {"chain_length", chain_length},
                          {"flat_theta_mean", shrinkage::flat_prior_theta_mean(data)},
                          {"theta_mean", s.mean},
                          {"theta_lower_90", s.lower},
                          {"theta_upper_90", s.upper},
                          {"rejection_rate", chain.rejection_rate}};
  write_json(out / "shrink_summary.json", summary);
  std::cout << summary.dump() << '\n';
  if (pin) check_pins(out, "shrink_" + fs::path(input).stem().string(), {{"theta_mean", s.mean}});
  return 0;
}

int run_catalogue_list() {
  for (const auto& e : catalogue::catalogue_entries()) {
    std::cout << e.name << "  (";
    if (e.parameters.empty()) std::cout << "xi_1,...";
    for (std::size_t i = 0; i < e.parameters.size(); ++i) std::cout << (i ? "," : "") << e.parameters[i];
    std::cout << ")  domain: " << e.domain << "  proper: " << (e.proper ? "yes" : "no") << '\n';
  }
  return 0;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size()) throw UsageError("--point expects comma-separated numbers, got '" + text + "'");
    v.push_back(d);
  }
  if (v.empty()) throw UsageError("--point is empty");
  return v;
}

int run_catalogue_eval(const std::string& name, const std::string& point_text, const std::string& out) {
  const auto entries = catalogue::catalogue_entries();
  const auto* e = catalogue::find_entry(entries, name);
  if (!e) {
    std::ostringstream msg;
    msg << "unknown catalogue entry '" << name << "'; valid names:";
    for (const auto& x : entries) msg << ' ' << x.name;
    throw UsageError(msg.str());
  }
  const auto point = parse_point(point_text);
  const double value = catalogue::evaluate_entry(*e, point);
  std::cout << e->name << " value=" << fmt(value) << " proper=" << (e->proper ? "yes" : "no") << '\n';
  if (!out.empty()) {
    ensure_dir(out);
    write_json(fs::path(out) / "catalogue_value.json", {{"schema", std::string("catalogue/") + kSchemaVersion},
                                                         {"entry", e->name},
                                                         {"point", point},
                                                         {"value", value},
                                                         {"proper", e->proper}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overall objective priors: reference distance, hierarchical hyperpriors, catalogue"};
  app.require_subcommand(1);

  std::int64_t m = 0, n = 0;
  std::string grid, out = "out", input, prior = "exact", point;
  std::size_t chain = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  bool pin = false, theta = false, no_mode = false, keep_mu = false;

  auto* refdist_cmd = app.add_subcommand("refdist", "Dirichlet reference-distance loss curve and optimum");
  refdist_cmd->add_option("--m", m, "number of cells")->required();
  refdist_cmd->add_option("--n", n, "sample size")->required();
  refdist_cmd->add_option("--grid", grid, "a grid lo:hi:k[:log]");
  refdist_cmd->add_option("--tol", tol, "relative tolerance on a*")->check(CLI::PositiveNumber);
  refdist_cmd->add_option("--out", out, "output directory");
  refdist_cmd->add_flag("--pin", pin, "write or compare regression pins");

  auto* hier_cmd = app.add_subcommand("hier", "Hierarchical multinomial: prior curve, modes, posterior chain");
  hier_cmd->add_option("--input", input, "sparse count table")->required();
  hier_cmd->add_option("--prior", prior, "exact|approx")->check(CLI::IsMember({"exact", "approx"}));
  hier_cmd->add_option("--chain", chain, "chain length")->check(CLI::PositiveNumber);
  hier_cmd->add_option("--seed", seed, "random seed");
  hier_cmd->add_option("--grid", grid, "prior-curve grid lo:hi:k[:log]");
  hier_cmd->add_option("--out", out, "output directory");
  hier_cmd->add_flag("--theta", theta, "also draw cell probabilities");
  hier_cmd->add_flag("--no-mode", no_mode, "skip the mode computations");
  hier_cmd->add_flag("--pin", pin, "write or compare regression pins");

  auto* shrink_cmd = app.add_subcommand("shrink", "Multi-normal means under the hierarchical prior");
  shrink_cmd->add_option("--input", input, "whitespace-separated observations")->required();
  shrink_cmd->add_option("--chain", chain, "chain length")->check(CLI::PositiveNumber);
  shrink_cmd->add_option("--seed", seed, "random seed");
  shrink_cmd->add_option("--out", out, "output directory");
  shrink_cmd->add_flag("--mu", keep_mu, "write mu draws to the chain file");
  shrink_cmd->add_flag("--pin", pin, "write or compare regression pins");

  auto* cat_cmd = app.add_subcommand("catalogue", "Closed-form reference priors");
  cat_cmd->require_subcommand(1);
  cat_cmd->add_subcommand("list", "list entries");
  auto* eval_cmd = cat_cmd->add_subcommand("eval", "evaluate an entry");
  std::string entry;
  std::string cat_out;
  eval_cmd->add_option("name", entry, "entry name")->required();
  eval_cmd->add_option("--point", point, "comma-separated parameter values")->required();
  eval_cmd->add_option("--out", cat_out, "optional output directory for a JSON record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (refdist_cmd->parsed()) return run_refdist(m, n, grid, tol, out, pin);
    if (hier_cmd->parsed()) return run_hier(input, prior, chain, seed, grid, theta, !no_mode, out, pin);
    if (shrink_cmd->parsed()) return run_shrink(input, chain, seed, keep_mu, out, pin);
    if (eval_cmd->parsed()) return run_catalogue_eval(entry, point, cat_out);
    return run_catalogue_list();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const BoundaryModeError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
}
