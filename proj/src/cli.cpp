#include "sphcode/cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sphcode/algebra.hpp"
#include "sphcode/errors.hpp"
#include "sphcode/io.hpp"
#include "sphcode/optimize.hpp"
#include "sphcode/registry.hpp"
#include "sphcode/symmetry.hpp"
#include "sphcode/verify.hpp"

namespace sphcode {

namespace {

struct Globals {
  int precision = BigReal::kDefaultDigits;
  std::uint64_t seed = 1;
  std::string potential = "r1";
  std::string output;
  std::string manifest;
  int threads = 0;
};

std::string energy_text(const BigReal& e, int digits) { return e.to_string(std::max(1, digits - 5)); }

struct Spec {
  ConfigSpec spec;
  ParamVector params;
};

// Registry entry for --n, or a spec file with an optional params file.
Spec load_spec(std::size_t n, const std::string& spec_path, const std::string& params_path, const Potential& pot,
               int digits) {
  Spec s;
  if (!spec_path.empty()) {
    s.spec = read_spec(spec_path);
    if (!params_path.empty()) s.params = read_params(params_path);
  } else {
    if (n == 0) throw DomainError("need --n or --spec");
    RegistryEntry e = builtin_spec(n, pot, digits);
    s.spec = std::move(e.spec);
    s.params = std::move(e.seed);
    if (!params_path.empty()) s.params = read_params(params_path);
  }
  if (s.params.size() != s.spec.arity()) {
    throw SizeMismatch("spec has " + std::to_string(s.spec.arity()) + " parameters, params file has " +
                       std::to_string(s.params.size()));
  }
  s.params = with_precision(s.params, digits);
  return s;
}

// First value in a file (last token of the first data line) or the literal itself.
std::string value_text(const std::string& v) {
  if (!std::filesystem::exists(v)) return v;
  std::ifstream in(v);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string tok, last;
    while (is >> tok) last = tok;
    if (!last.empty() && line.find_first_not_of(" \t")  != std::string::npos && line[line.find_first_not_of(" \t")] != '#') {
      return last;
    }
  }
  throw ParseError("no value in '" + v + "'", 0);
}

int significant_digits(const std::string& s) {
  int count = 0;
  bool leading = true;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal-energy point configurations on the sphere", "sphcode"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision", g.precision, "Working precision in decimal digits")->check(CLI::Range(16, 100000));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--potential", g.potential, "log | r1 | r2 | rs:<k>");
  app.add_option("--output", g.output, "Output file");
  app.add_option("--manifest", g.manifest, "Write a run manifest");
  app.add_option("--threads", g.threads, "Worker thread cap")->check(CLI::NonNegativeNumber);

  std::string input, spec_path, params_path, report_path, algo = "descent", value, compare;
  std::size_t n = 0;
  long restarts = 1, passes = 2000, max_degree = 8;
  int target = 80;
  double tol_value = 0;
  bool renormalize = false, even = false;
  std::string tolerance;

  auto* energy = app.add_subcommand("energy", "Energy of a point file");
  auto* minimize = app.add_subcommand("minimize", "Search for a minimal configuration");
  auto* build = app.add_subcommand("build", "Points from a parameterized structure");
  auto* refine = app.add_subcommand("refine", "Newton-refine structure parameters");
  auto* hessian = app.add_subcommand("hessian", "Tangent-space Hessian check");
  auto* symmetry = app.add_subcommand("symmetry", "Planes, polygons and Gram groups");
  auto* gram = app.add_subcommand("gram", "Gram signature, optional isometry test");
  auto* algdep = app.add_subcommand("algdep", "Integer polynomial for a real value");
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string replay_path;

  for (auto* sub : {energy, hessian, symmetry, gram}) {
    sub->add_option("--input", input, "Point file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--renormalize", renormalize, "Project off-sphere points back onto the sphere");
  }
  minimize->add_option("--n", n, "Number of points")->check(CLI::Range(1, 100000));
  minimize->add_option("--input", input, "Start from this point file")->check(CLI::ExistingFile);
  minimize->add_option("--algo", algo, "anneal | descent | both")->check(CLI::IsMember({"anneal", "descent", "both"}));
  minimize->add_option("--restarts", restarts, "Independent restarts")->check(CLI::PositiveNumber);
  minimize->add_option("--passes", passes, "Anneal passes per round")->check(CLI::PositiveNumber);
  minimize->add_option("--tolerance", tolerance, "Descent residual tolerance");
  minimize->add_option("--report", report_path, "Run report file");
  for (auto* sub : {build, refine}) {
    sub->add_option("--n", n, "Built-in structure size");
    sub->add_option("--spec", spec_path, "Spec file")->check(CLI::ExistingFile);
    sub->add_option("--params", params_path, "Parameter file")->check(CLI::ExistingFile);
  }
  refine->add_option("--target", target, "Target digits")->check(CLI::Range(16, 100000));
  symmetry->add_option("--tol", tol_value, "Feature tolerance");
  gram->add_option("--tol", tol_value, "Gram entry tolerance");
  gram->add_option("--compare", compare, "Second point file for an isometry test")->check(CLI::ExistingFile);
  algdep->add_option("--value", value, "File or literal")->required();
  algdep->add_option("--max-degree", max_degree, "Largest degree tried")->check(CLI::Range(1, 48));
  algdep->add_flag("--even", even, "Even powers only");
  replay->add_option("manifest", replay_path, "Manifest file")->required()->check(CLI::ExistingFile);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  RunManifest man;
  man.command = app.get_subcommands().front()->get_name();
  man.precision = g.precision;
  man.seed = g.seed;
  man.potential = g.potential;
  man.input = input;
  man.output = g.output;
  man.argv = args;
  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);
    const Potential pot = Potential::parse(g.potential);
    const int p = g.precision;
    const auto sym_tol = [&] { return tol_value > 0 ? BigReal(tol_value, p) : default_symmetry_tol(p); };

    if (replay->parsed()) {
      RunManifest m = read_manifest(replay_path);
      if (m.argv.empty()) throw ParseError("manifest has no recorded arguments", 0);
      return cli_dispatch(m.argv, out, err);
    }
    if (energy->parsed()) {
      PointSet pts = read_points(input, p, renormalize);
      BigReal e = sphcode::energy(pts, pot).value;
      man.n = pts.size();
      man.energy = energy_text(e, p);
      out << man.energy << '\n';
    } else if (minimize->parsed()) {
      std::optional<PointSet> start;
      if (!input.empty()) {
        start = read_points(input, p, renormalize);
        n = start->size();
      }
      if (n == 0) throw DomainError("need --n or --input");
      man.n = n;
      DescentConfig dc = DescentConfig::for_precision(p);
      dc.tolerance = tolerance.empty() ? BigReal::pow10(-(p / 3), p) : BigReal::parse(tolerance, p);
      AnnealConfig ac;
      ac.passes_per_round = passes;
      ac.scale_init = with_precision(ac.scale_init, p);
      ac.scale_ratio = with_precision(ac.scale_ratio, p);
      ac.final_precision = BigReal::pow10(-(p / 2), p);
      const bool use_anneal = algo != "descent", use_descent = algo != "anneal";
      if (use_anneal) man.algorithms.push_back("percolating_anneal");
      if (use_descent) man.algorithms.push_back("descent");
      man.algorithms.push_back(std::string("rng:") + std::string(Rng::kAlgorithm));
      RunReport best;
      bool have = false;
      if (!use_anneal && !start) {
        MultiStartResult ms = multi_start(n, pot, restarts, dc, g.seed, p);
        best = ms.best;
        have = true;
      } else {
        for (long r = 0; r < restarts; ++r) {
          Rng rng(g.seed, static_cast<std::uint64_t>(r));
          PointSet p0 = start ? *start : random_point_set(n, rng, p);
          RunReport rep;
          if (use_anneal) {
            rep = percolating_anneal(p0, pot, ac, rng);
            p0 = rep.final_points;
          }
          if (use_descent) rep = descent(p0, pot, dc);
          if (!have || rep.final_energy.value < best.final_energy.value) best = std::move(rep);
          have = true;
        }
      }
      man.energy = energy_text(best.final_energy.value, p);
      out << man.energy << '\n';
      if (!g.output.empty()) write_points(g.output, best.final_points, p, pot);
      if (!report_path.empty()) {
        std::ofstream rep(report_path);
        rep << "n " << n << "\npotential " << pot.token() << "\nenergy " << man.energy << "\nresidual "
            << best.residual.to_string(6) << "\niterations " << best.iterations << "\nstop " << to_string(best.stop)
            << "\ngram " << gram_signature(gram_matrix(best.final_points), half_precision_tol(p)).to_string() << '\n';
      }
    } else if (build->parsed()) {
      Spec s = load_spec(n, spec_path, params_path, pot, p);
      PointSet pts = build_points(s.spec, s.params);
      man.n = pts.size();
      man.energy = energy_text(sphcode::energy(pts, pot).value, p);
      out << man.energy << '\n';
      if (!g.output.empty()) write_points(g.output, pts, p, pot);
    } else if (refine->parsed()) {
      Spec s = load_spec(n, spec_path, params_path, pot, std::max(p, 40));
      NewtonReport rep = newton_refine_report(s.spec, s.params, pot, target);
      man.n = s.spec.point_count();
      const BigReal e = param_energy(s.spec, rep.params, pot);
      man.energy = energy_text(e, target);
      for (std::size_t i = 0; i < rep.params.size(); ++i) {
        out << rep.params.names[i] << ' ' << rep.params.values[i].to_string(target) << '\n';
      }
      out << "energy " << man.energy << '\n';
      out << "gradient " << rep.grad_norm.to_string(6) << '\n';
      if (!g.output.empty()) write_params(g.output, rep.params);
    } else if (hessian->parsed()) {
      PointSet pts = read_points(input, p, renormalize);
      man.n = pts.size();
      HessianReport h = verify_minimum(pts, pot);
      if (!h.eigenvalues.empty()) {
        out << "smallest " << h.eigenvalues.front().to_string(12) << '\n';
        for (std::size_t i = 0; i < h.eigenvalues.size(); ++i) {
          if (abs(h.eigenvalues[i]) >= half_precision_tol(p)) {
            out << "smallest_nonzero " << h.eigenvalues[i].to_string(12) << '\n';
            break;
          }
        }
        out << "largest " << h.eigenvalues.back().to_string(12) << '\n';
      }
      out << "zero_count " << h.zero_count << "\nexpected_zeros " << h.expected_zeros << "\nverdict "
          << to_string(h.verdict) << '\n';
    } else if (symmetry->parsed()) {
      PointSet pts = read_points(input, p, renormalize);
      man.n = pts.size();
      SymmetryReport r = symmetry_report(pts, sym_tol());
      out << "planes " << to_string(r.planes) << "\ngram_groups " << r.gram_groups.to_string() << "\npolygons "
          << to_string(r.polygons) << '\n';
    } else if (gram->parsed()) {
      PointSet pts = read_points(input, p, renormalize);
      man.n = pts.size();
      const BigReal tol = tol_value > 0 ? BigReal(tol_value, p) : half_precision_tol(p);
      out << gram_signature(gram_matrix(pts), tol).to_string() << '\n';
      if (!compare.empty()) {
        IsometryResult r = isometric(pts, read_points(compare, p, renormalize), tol);
        out << (r.verdict == Isometry::Match ? (r.confirmed ? "match" : "signature match") : "mismatch") << '\n';
      }
    } else if (algdep->parsed()) {
      const std::string text = value_text(value);
      int digits = significant_digits(text);
      if (app.get_option("--precision")->count() > 0) digits = std::min(digits, p);
      if (digits < BigReal::kMinDigits) digits = BigReal::kMinDigits;
      BigReal x = BigReal::parse(text, digits);
      RecoveryResult r = minimal_polynomial(x, static_cast<int>(max_degree), even);
      out << format_poly(r.poly) << '\n';
      out << "polynomial " << r.poly.to_string() << '\n';
      out << "residual " << r.residual.to_string(6) << '\n';
      out << "accepted " << (r.accepted ? "true" : "false") << '\n';
      if (!g.output.empty()) write_poly(g.output, r.poly);
    }
    man.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!g.manifest.empty()) write_manifest(g.manifest, man);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace sphcode
