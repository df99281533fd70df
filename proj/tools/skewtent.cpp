#include "skewtent/birkhoff.hpp"
#include "skewtent/error.hpp"
#include "skewtent/isentrope.hpp"
#include "skewtent/kneading.hpp"
#include "skewtent/map.hpp"
#include "skewtent/markov.hpp"
#include "skewtent/raster.hpp"
#include "skewtent/theta.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace skewtent;

namespace {

struct Pair
{
  double alpha;
  double beta;
};

const std::vector<Pair> kReferenceSet = {
  { 0.3, 0.8 },  { 0.49, 0.56 }, { 0.5, 0.7 },
  { 0.5, 0.8 },  { 0.6, 0.75 },  { 0.6, 0.9 },
};

std::string num(double x)
{
  return fmt::format("{:.17g}", x);
}

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    out.push_back(trim(item));
  }
  return out;
}

double to_double(const std::string& s)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) {
      return v;
    }
  } catch (const std::exception&) {
  }
  throw MalformedError(fmt::format("not a number: '{}'", s));
}

Interval parse_range(const std::string& s)
{
  const auto parts = split(s, ',');
  if (parts.size() != 2) {
    throw MalformedError(fmt::format("expected lo,hi, got '{}'", s));
  }
  const Interval r{ to_double(parts[0]), to_double(parts[1]) };
  if (!(r.lo < r.hi)) {
    throw MalformedError(fmt::format("empty range '{}'", s));
  }
  return r;
}

std::vector<Pair> parse_pairs(const std::string& s)
{
  std::vector<Pair> out;
  for (const auto& item : split(s, ';')) {
    if (item.empty()) {
      continue;
    }
    const auto ab = split(item, ',');
    if (ab.size() != 2) {
      throw MalformedError(fmt::format("expected alpha,beta, got '{}'", item));
    }
    out.push_back({ to_double(ab[0]), to_double(ab[1]) });
  }
  return out;
}

std::vector<Pair> read_pairs_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw DomainError(fmt::format("cannot read '{}'", path));
  }
  std::vector<Pair> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line.rfind("alpha", 0) == 0) {
      continue;
    }
    for (const auto& p : parse_pairs(line)) {
      out.push_back(p);
    }
  }
  return out;
}

OverlaySpec parse_overlay(const std::string& s)
{
  const auto parts = split(s, ',');
  if (parts.size() != 3 || (parts[2] != "gamma" && parts[2] != "theta")) {
    throw MalformedError(
      fmt::format("expected alpha,beta,gamma|theta, got '{}'", s));
  }
  return { to_double(parts[0]), to_double(parts[1]),
           parts[2] == "gamma" ? TangentSource::gamma : TangentSource::theta };
}

std::filesystem::path output_path(const std::string& name)
{
  std::filesystem::path p(name);
  const char* dir = std::getenv("SKEWTENT_OUT_DIR");
  if (dir && *dir && p.is_relative()) {
    p = std::filesystem::path(dir) / p;
  }
  return p;
}

// Writes through `emit` to stdout for "-", to a file otherwise.
template<class F>
void with_output(const std::string& name, F&& emit, bool binary = false)
{
  if (name == "-") {
    emit(std::cout);
    return;
  }
  const auto path = output_path(name);
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) {
    throw DomainError(fmt::format("cannot write '{}'", path.string()));
  }
  emit(out);
}

void cmd_kneading(double alpha, double beta, std::size_t len, double c_tol)
{
  const auto seq = kneading_prefix(SkewTentMap(alpha, beta), len, c_tol);
  if (seq.c_terminated()) {
    std::cout << fmt::format("{} (periodic, n={})\n", seq.str(),
                             seq.size() - 1);
  } else {
    std::cout << seq.str() << " (open)\n";
  }
}

void cmd_tangent_table(const std::vector<Pair>& rows, std::size_t n,
                       std::uint64_t seed, std::size_t prefix)
{
  std::cout << "alpha,beta,gamma_birkhoff,slope_from_gamma,slope_from_theta,"
               "slope_discrepancy,lambda_birkhoff,lambda_markov,error\n";
  for (const auto& [alpha, beta] : rows) {
    try {
      const SkewTentMap map(alpha, beta);
      const double gamma = estimate_gamma(map, n, seed).gamma;
      const double sg = slope_from_gamma(alpha, beta, gamma);
      const double st =
        implicit_slope(rl_blocks(kneading_prefix(map, prefix)), alpha, beta,
                       ThetaOptions{ 1e-12, 10000, false });
      std::string lambda_markov;
      if (const auto period = detect_markov(map)) {
        const auto part = markov_partition(map, *period);
        const auto density =
          invariant_density(transfer_matrix(map, part), part);
        lambda_markov = num(lyapunov_exact(map, density).lambda_exponent);
      }
      std::cout << fmt::format("{},{},{},{},{},{},{},{},\n", num(alpha),
                               num(beta), num(gamma), num(sg), num(st),
                               num(std::abs(sg - st)),
                               num(lyapunov_from_gamma(alpha, beta, gamma)),
                               lambda_markov);
    } catch (const Error& e) {
      std::cout << fmt::format("{},{},,,,,,,{}\n", num(alpha), num(beta),
                               e.category());
    }
  }
}

void cmd_isentrope(double alpha0, double beta0, std::optional<Interval> range,
                   std::size_t steps, std::size_t prefix,
                   const std::string& out, const std::string& format)
{
  const SkewTentMap ref(alpha0, beta0);
  const Interval r = range.value_or(
    Interval{ std::max(alpha0 - 0.1, 0.01), std::min(alpha0 + 0.1, 0.99) });
  const auto trace = trace_isentrope(ref, r.lo, r.hi, steps, prefix);
  with_output(out, [&](std::ostream& os) {
    if (format == "json") {
      write_trace_json(os, trace);
    } else {
      write_trace_csv(os, trace);
    }
  });
}

void cmd_raster(const RasterConfig& config,
                const std::vector<std::string>& overlays,
                const OverlayOptions& options, const std::string& out,
                const std::string& csv)
{
  std::vector<OverlaySegment> segments;
  for (const auto& o : overlays) {
    segments.push_back(resolve_overlay(parse_overlay(o), options));
  }
  auto image = kneading_raster(config);
  image = render_overlay(std::move(image), config, segments);
  with_output(out, [&](std::ostream& os) { write_ppm(os, image); }, true);
  if (!csv.empty()) {
    with_output(csv, [&](std::ostream& os) {
      write_raster_csv(os, image, config);
    });
  }
  for (const auto& s : segments) {
    std::cerr << fmt::format(
      "overlay {},{} {} slope {}\n", num(s.alpha), num(s.beta),
      s.source == TangentSource::gamma ? "gamma" : "theta", num(s.slope));
  }
}

void cmd_markov(double alpha, double beta, std::size_t max_iter, double tol)
{
  const SkewTentMap map(alpha, beta);
  nlohmann::ordered_json j;
  const auto closure = find_markov_closure(map, max_iter, tol);
  if (!closure) {
    j["status"] = "no period found";
    j["period"] = nullptr;
    std::cout << j.dump(2) << '\n';
    return;
  }
  const auto period = detect_markov(map, max_iter, tol);
  const auto part = markov_partition(map, closure->orbit_length);
  const auto density = invariant_density(transfer_matrix(map, part), part);
  const auto est = lyapunov_exact(map, density);
  j["status"] = "ok";
  j["period"] = period ? nlohmann::ordered_json(*period) : nullptr;
  j["orbit_length"] = closure->orbit_length;
  j["partition"] = part.points;
  j["density"] = density.values;
  j["gamma"] = est.gamma;
  j["lambda"] = est.lambda_exponent;
  std::cout << j.dump(2) << '\n';
}

void cmd_gamma(double alpha, double beta, std::size_t n, std::uint64_t seed,
               std::size_t burn_in)
{
  const auto g = estimate_gamma(SkewTentMap(alpha, beta), n, seed, burn_in);
  std::cout << "alpha,beta,gamma,lambda,slope,n,seed,x0,restarts\n";
  std::cout << fmt::format("{},{},{},{},{},{},{},{},{}\n", num(alpha),
                           num(beta), num(g.gamma),
                           num(lyapunov_from_gamma(alpha, beta, g.gamma)),
                           num(slope_from_gamma(alpha, beta, g.gamma)),
                           g.n_iterates, g.seed, num(g.x0), g.restarts);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Skew tent map kneading, isentropes and tangents" };
  app.require_subcommand(1);

  double alpha = 0.0;
  double beta = 0.0;

  auto* kn = app.add_subcommand("kneading", "kneading sequence of (A, B)");
  std::size_t kn_len = 20;
  double kn_ctol = kDefaultCTol;
  kn->add_option("alpha", alpha)->required();
  kn->add_option("beta", beta)->required();
  kn->add_option("--len", kn_len, "symbols to compute");
  kn->add_option("--ctol", kn_ctol, "distance to alpha that counts as C");

  auto* tt = app.add_subcommand("tangent-table", "isentrope slopes by γ and Θ");
  std::string tt_params;
  std::string tt_file;
  bool tt_reference = false;
  std::size_t tt_n = kDefaultBirkhoffIterates;
  std::uint64_t tt_seed = 1;
  std::size_t tt_prefix = kDefaultPrefixLength;
  tt->add_option("--params", tt_params, "alpha,beta;alpha,beta;...");
  tt->add_option("--params-file", tt_file, "one alpha,beta per line");
  tt->add_flag("--reference-set", tt_reference, "the six reference parameters");
  tt->add_option("--n", tt_n, "Birkhoff iterates");
  tt->add_option("--seed", tt_seed);
  tt->add_option("--prefix", tt_prefix, "kneading symbols for Θ");

  auto* is = app.add_subcommand("isentrope", "trace beta = Psi_M(alpha)");
  std::string is_range;
  std::size_t is_steps = 11;
  std::size_t is_prefix = kDefaultPrefixLength;
  std::string is_out = "-";
  std::string is_format = "csv";
  is->add_option("alpha", alpha)->required();
  is->add_option("beta", beta)->required();
  is->add_option("--range", is_range, "lo,hi in alpha");
  is->add_option("--steps", is_steps);
  is->add_option("--prefix", is_prefix);
  is->add_option("--out", is_out, "file, or - for stdout");
  is->add_option("--format", is_format)
    ->check(CLI::IsMember({ "csv", "json" }));

  auto* ra = app.add_subcommand("raster", "equi-kneading raster as PPM");
  std::string ra_alpha = "0,1";
  std::string ra_beta = "0.5,1";
  std::string ra_size = "512x512";
  std::size_t ra_prefix = 10;
  std::vector<std::string> ra_overlays;
  std::string ra_out = "raster.ppm";
  std::string ra_csv;
  OverlayOptions ra_opts;
  ra->add_option("--alpha-range", ra_alpha);
  ra->add_option("--beta-range", ra_beta);
  ra->add_option("--size", ra_size, "WxH");
  ra->add_option("--prefix", ra_prefix);
  ra->add_option("--overlay", ra_overlays, "alpha,beta,gamma|theta");
  ra->add_option("--out", ra_out);
  ra->add_option("--csv", ra_csv, "per-pixel identifiers");
  ra->add_option("--n", ra_opts.n, "Birkhoff iterates for gamma overlays");
  ra->add_option("--seed", ra_opts.seed);

  auto* mk = app.add_subcommand("markov", "exact density of a Markov map");
  std::size_t mk_iter = 100;
  double mk_tol = kMarkovTol;
  mk->add_option("alpha", alpha)->required();
  mk->add_option("beta", beta)->required();
  mk->add_option("--maxiter", mk_iter);
  mk->add_option("--tol", mk_tol);

  auto* ga = app.add_subcommand("gamma", "Birkhoff estimate of gamma");
  std::size_t ga_n = kDefaultBirkhoffIterates;
  std::uint64_t ga_seed = 1;
  std::size_t ga_burn = kDefaultBurnIn;
  ga->add_option("alpha", alpha)->required();
  ga->add_option("beta", beta)->required();
  ga->add_option("--n", ga_n);
  ga->add_option("--seed", ga_seed);
  ga->add_option("--burn-in", ga_burn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    if (kn->parsed()) {
      cmd_kneading(alpha, beta, kn_len, kn_ctol);
    } else if (tt->parsed()) {
      std::vector<Pair> rows;
      if (tt_reference) {
        rows = kReferenceSet;
      }
      if (!tt_file.empty()) {
        for (const auto& p : read_pairs_file(tt_file)) {
          rows.push_back(p);
        }
      }
      for (const auto& p : parse_pairs(tt_params)) {
        rows.push_back(p);
      }
      cmd_tangent_table(rows, tt_n, tt_seed, tt_prefix);
    } else if (is->parsed()) {
      std::optional<Interval> range;
      if (!is_range.empty()) {
        range = parse_range(is_range);
      }
      cmd_isentrope(alpha, beta, range, is_steps, is_prefix, is_out,
                    is_format);
    } else if (ra->parsed()) {
      RasterConfig config;
      config.alpha_range = parse_range(ra_alpha);
      config.beta_range = parse_range(ra_beta);
      const auto wh = split(ra_size, 'x');
      if (wh.size() != 2) {
        throw MalformedError(fmt::format("expected WxH, got '{}'", ra_size));
      }
      config.width = static_cast<std::size_t>(to_double(wh[0]));
      config.height = static_cast<std::size_t>(to_double(wh[1]));
      config.prefix_len = ra_prefix;
      cmd_raster(config, ra_overlays, ra_opts, ra_out, ra_csv);
    } else if (mk->parsed()) {
      cmd_markov(alpha, beta, mk_iter, mk_tol);
    } else if (ga->parsed()) {
      cmd_gamma(alpha, beta, ga_n, ga_seed, ga_burn);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.category() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
