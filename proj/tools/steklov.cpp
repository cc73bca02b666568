// steklov: command-line front end of the toolkit.
#include "steklov/bounds.hpp"
#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/error.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/spectra.hpp"
#include "steklov/surface.hpp"
#include "steklov/verify.hpp"
#include "steklov/version.hpp"
#include "steklov/zoo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace steklov;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kBadInput = 2, kSolver = 3 };

struct SurfaceArgs {
  std::string path;
  std::string preset;
  double h = 0.0;        // metric edge length; 0 means factor * min(a, L)
  double h_factor = 0.0; // 0 means the zoo default
};

void add_surface_options(CLI::App* cmd, SurfaceArgs& s) {
  auto* file = cmd->add_option("--surface", s.path, "JSON surface spec");
  auto* preset = cmd->add_option("--preset", s.preset, "zoo surface id");
  file->excludes(preset);
  cmd->add_option("--h", s.h, "target edge length")->check(CLI::PositiveNumber);
  cmd->add_option("--h-factor", s.h_factor, "edge length relative to min(a, L)")->check(CLI::PositiveNumber);
}

SurfaceSpec load_spec(const SurfaceArgs& s) {
  if (!s.preset.empty()) return zoo_entry(s.preset).spec;
  if (s.path.empty()) throw InvalidArgument("one of --surface or --preset is required");
  std::ifstream in(s.path);
  if (!in) throw ParseError("cannot read " + s.path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_surface_spec(buf.str());
}

std::string surface_id(const SurfaceArgs& s) { return s.preset.empty() ? s.path : s.preset; }

double mesh_h(const SurfaceArgs& s, const MetricSurface& surface) {
  if (s.h > 0.0) return s.h;
  return mesh_size(surface, s.h_factor > 0.0 ? s.h_factor : zoo_h_factor());
}

// Writes to `path`, or standard output for an empty path or "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write(out);
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  }
}

void print_closed_form(const ClosedFormSpectrum& s) {
  std::cout.precision(17);
  std::cout << "k,sigma,j,mode\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    std::cout << i << ',' << s.entries[i].value << ',' << s.entries[i].j << ',' << to_string(s.entries[i].mode) << '\n';
}

MixedKind parse_kind(const std::string& k) {
  if (k == "N") return MixedKind::Neumann;
  if (k == "D") return MixedKind::Dirichlet;
  throw InvalidArgument("kind must be N or D");
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0)) throw InvalidArgument(std::string(name) + " must be positive");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov eigenvalues and eigenvalue bounds on surfaces with cylindrical boundary neighbourhoods"};
  // "--h" is the mesh size, so help is long-form only
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // spectrum
  SurfaceArgs sp_surface;
  int sp_k = 6;
  std::string sp_problem = "steklov", sp_output, sp_eigen, sp_dump;
  bool sp_lumped = false, sp_midpoint = false;
  auto* spectrum = app.add_subcommand("spectrum", "FEM Steklov or mixed spectrum as CSV (k, sigma, residual)");
  add_surface_options(spectrum, sp_surface);
  spectrum->add_option("--k", sp_k, "highest eigenvalue index")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--problem", sp_problem, "steklov | mixed-N | mixed-D (mixed: on the boundary strips)");
  spectrum->add_option("--output,-o", sp_output, "CSV output path (default: stdout)");
  spectrum->add_option("--eigenfunctions", sp_eigen, "vertex CSV of the eigenfunctions");
  spectrum->add_option("--dump-matrices", sp_dump, "prefix for stiffness/mass coordinate dumps");
  spectrum->add_flag("--lumped-mass", sp_lumped, "lumped boundary mass");
  spectrum->add_flag("--midpoint-metric", sp_midpoint, "3-point metric sampling");

  // closed-form
  auto* closed = app.add_subcommand("closed-form", "closed-form spectra and constants");
  closed->require_subcommand(1);
  double cf_R = 1.0, cf_T = 1.0, cf_a = kTwoPi, cf_L = 1.0, cf_l = 1.0;
  int cf_k = 6;
  std::string cf_kind = "N";
  auto* cf_cyl = closed->add_subcommand("cylinder", "Steklov spectrum of S^1_R x [-T, T]");
  cf_cyl->add_option("--R", cf_R)->required();
  cf_cyl->add_option("--T", cf_T)->required();
  cf_cyl->add_option("--k", cf_k)->check(CLI::NonNegativeNumber);
  auto* cf_rho = closed->add_subcommand("rho", "positive root of x tanh x = 1");
  auto* cf_mixed = closed->add_subcommand("cylinder-mixed", "mixed spectrum of a flat strip");
  cf_mixed->add_option("--a", cf_a)->required();
  cf_mixed->add_option("--L", cf_L)->required();
  cf_mixed->add_option("--kind", cf_kind)->check(CLI::IsMember({"N", "D"}));
  cf_mixed->add_option("--k", cf_k)->check(CLI::NonNegativeNumber);
  auto* cf_collar = closed->add_subcommand("collar", "mixed spectrum of a half collar");
  cf_collar->add_option("--a", cf_a)->required();
  cf_collar->add_option("--kind", cf_kind)->check(CLI::IsMember({"N", "D"}));
  cf_collar->add_option("--k", cf_k)->check(CLI::NonNegativeNumber);
  auto* cf_width = closed->add_subcommand("collar-width", "collar half-width and test-function energy");
  cf_width->add_option("--l", cf_l)->required();

  // verify
  std::string vf_suite = "all", vf_report;
  double vf_h = 0.0;
  bool vf_no_timings = false, vf_quiet = false;
  auto* verify = app.add_subcommand("verify", "run acceptance suites over the surface zoo");
  verify->add_option("--suite", vf_suite, "closed-forms | fem-accuracy | sandwich | length-bound | thin-neck | "
                                          "curvature-bound | cheeger | constants | homogeneity | all");
  verify->add_option("--report", vf_report, "JSON report path");
  verify->add_option("--h", vf_h, "mesh size as a fraction of min(a, L)")->check(CLI::PositiveNumber);
  verify->add_flag("--no-timings", vf_no_timings, "write zero runtimes (byte-identical reports)");
  verify->add_flag("--quiet,-q", vf_quiet, "no per-check log");

  // constants
  int ct_g = 0, ct_b = 2;
  bool ct_csv = false;
  auto* constants = app.add_subcommand("constants", "constants of the hyperbolic bound for signature (g, b)");
  constants->add_option("--g", ct_g)->required();
  constants->add_option("--b", ct_b)->required();
  constants->add_flag("--csv", ct_csv, "CSV instead of JSON");

  // bounds
  SurfaceArgs bd_surface;
  std::string bd_output;
  bool bd_csv = false;
  double bd_tol = 0.02;
  auto* bounds = app.add_subcommand("bounds", "evaluate the lower/upper bounds against the FEM spectrum");
  add_surface_options(bounds, bd_surface);
  bounds->add_option("--tol", bd_tol, "relative tolerance")->check(CLI::NonNegativeNumber);
  bounds->add_option("--output,-o", bd_output);
  bounds->add_flag("--csv", bd_csv);

  // sweep
  SurfaceArgs sw_surface;
  std::string sw_output;
  auto* sweep = app.add_subcommand("sweep", "level-set sweep of the first eigenfunction (CSV)");
  add_surface_options(sweep, sw_surface);
  sweep->add_option("--output,-o", sw_output);

  // geometry
  SurfaceArgs gm_surface;
  auto* geometry = app.add_subcommand("geometry", "certified geometric brackets (JSON)");
  add_surface_options(geometry, gm_surface);

  auto* zoo = app.add_subcommand("zoo", "print the built-in surface zoo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  if (spectrum->parsed()) {
    return guarded([&] {
      const SurfaceSpec spec = load_spec(sp_surface);
      const MetricSurface surface = build_surface(spec);
      const double h = mesh_h(sp_surface, surface);
      SpectrumOptions opts;
      opts.surface_id = surface_id(sp_surface);
      opts.assembly.lumped_mass = sp_lumped;
      opts.assembly.midpoint_metric = sp_midpoint;
      MeshOptions mopts;
      mopts.midpoint_metric = sp_midpoint;
      std::optional<TriMesh> mesh;
      std::optional<SpectrumResult> result;
      if (sp_problem == "steklov") {
        mesh.emplace(triangulate(surface, h, mopts));
        result.emplace(steklov_spectrum(*mesh, sp_k, opts));
      } else if (sp_problem == "mixed-N" || sp_problem == "mixed-D") {
        const auto strips = boundary_strips(surface);
        mopts.extra_rows = {strips[0][1], strips[1][0]};
        mesh.emplace(triangulate_bands(surface, h, strips, mopts));
        const std::vector<int> outer{0, 1}, inner{2, 3};
        result.emplace(mixed_spectrum(*mesh, outer, inner,
                                      sp_problem == "mixed-N" ? MixedKind::Neumann : MixedKind::Dirichlet, sp_k, opts));
      } else {
        throw InvalidArgument("unknown problem '" + sp_problem + "'");
      }
      result->problem.h = h;
      emit(sp_output, [&](std::ostream& o) { write_spectrum_csv(o, *result); });
      if (!sp_eigen.empty()) emit(sp_eigen, [&](std::ostream& o) { write_eigenfunctions_csv(o, *mesh, *result); });
      if (!sp_dump.empty()) {
        emit(sp_dump + "_stiffness.txt", [&](std::ostream& o) { assemble_stiffness(*mesh, opts.assembly).write_coordinate(o); });
        const auto labels = mesh->boundary_labels();
        emit(sp_dump + "_mass.txt",
             [&](std::ostream& o) { assemble_boundary_mass(*mesh, labels, opts.assembly).matrix.write_coordinate(o); });
      }
      return kOk;
    });
  }

  if (closed->parsed()) {
    return guarded([&] {
      if (cf_cyl->parsed()) {
        require_positive(cf_R, "R");
        require_positive(cf_T, "T");
        print_closed_form(cylinder_steklov(cf_R, cf_T, cf_k));
      } else if (cf_rho->parsed()) {
        std::cout.precision(17);
        std::cout << rho() << '\n';
      } else if (cf_mixed->parsed()) {
        require_positive(cf_a, "a");
        require_positive(cf_L, "L");
        print_closed_form(cylinder_mixed(cf_a, cf_L, parse_kind(cf_kind), cf_k));
      } else if (cf_collar->parsed()) {
        require_positive(cf_a, "a");
        print_closed_form(collar_mixed(cf_a, parse_kind(cf_kind), cf_k));
      } else if (cf_width->parsed()) {
        require_positive(cf_l, "l");
        json j{{"l", cf_l}, {"width", collar_width(cf_l)}, {"depth", collar_depth(cf_l)},
               {"test_energy", collar_test_energy(cf_l)}};
        std::cout << j.dump(2) << '\n';
      }
      return kOk;
    });
  }

  if (verify->parsed()) {
    if (!is_suite(vf_suite)) {
      std::cerr << "error: unknown suite '" << vf_suite << "'\n";
      return kBadInput;
    }
    return guarded([&] {
      VerifyOptions opts;
      opts.h_factor = vf_h > 0.0 ? vf_h : zoo_h_factor();
      opts.timings = !vf_no_timings;
      opts.log = vf_quiet ? nullptr : &std::cerr;
      const VerificationReport report = run_verification(vf_suite, opts);
      if (!vf_report.empty()) emit(vf_report, [&](std::ostream& o) { o << to_json(report, opts.timings).dump(2) << '\n'; });
      const auto s = report.summary();
      std::ostream& tally = vf_report == "-" ? std::cerr : std::cout; // keep stdout pure JSON
      tally << "suite " << report.suite << ": " << s.pass << " pass, " << s.fail << " fail, " << s.not_applicable
                << " not-applicable\n";
      return s.fail == 0 ? kOk : kFailed;
    });
  }

  if (constants->parsed()) {
    return guarded([&] {
      const ConstantsReport c = hyperbolic_constants(ct_g, ct_b);
      if (ct_csv) write_constants_csv(std::cout, c);
      else std::cout << to_json(c).dump(2) << '\n';
      return kOk;
    });
  }

  if (bounds->parsed()) {
    return guarded([&] {
      const SurfaceSpec spec = load_spec(bd_surface);
      const MetricSurface surface = build_surface(spec);
      const double h = mesh_h(bd_surface, surface);
      const TriMesh mesh = triangulate(surface, h);
      const GeometryData g = geometric_data(surface, mesh);
      const int b = g.b;
      const int kmax = std::max(2, std::min(2 * b, 6));
      SpectrumOptions opts;
      opts.surface_id = surface_id(bd_surface);
      const SpectrumResult s = steklov_spectrum(mesh, kmax, opts);
      BoundReport rep;
      rep.tol = bd_tol;
      const double s1 = s.sigma(1);
      if (b >= 2 && g.equal_boundary_lengths()) rep.add("length", BoundKind::Lower, bound_length(g), 1, s1);
      else rep.entries.push_back(not_applicable("length", BoundKind::Lower, 0.0, 1, s1, "unequal boundary lengths"));
      if (g.kappa < 0.0 && b >= 2) {
        const auto cb = bound_curvature(g);
        if (cb.sharp_applicable) rep.add("curvature-sharp", BoundKind::Lower, cb.sharp, 1, s1);
        else rep.entries.push_back(not_applicable("curvature-sharp", BoundKind::Lower, cb.sharp, 1, s1, cb.note));
        if (cb.simplified_applicable) rep.add("curvature-simplified", BoundKind::Lower, cb.simplified, 1, s1);
        else rep.entries.push_back(not_applicable("curvature-simplified", BoundKind::Lower, cb.simplified, 1, s1, cb.note));
      }
      const auto est = cheeger_estimate(level_set_sweep(mesh, s.extensions.col(1)));
      rep.add("cheeger", BoundKind::Lower, est.bound, 1, s1);
      if (g.L > 0.0 && g.equal_boundary_lengths()) {
        for (int k = 0; k <= kmax; ++k) {
          const auto iv = sandwich_bounds(g.a, g.L, b, k);
          rep.add("sandwich-lower-k" + std::to_string(k), BoundKind::Lower, iv.lower, k, s.sigma_clean(k));
          rep.add("sandwich-upper-k" + std::to_string(k), BoundKind::Upper, iv.upper, k, s.sigma_clean(k));
        }
      }
      emit(bd_output, [&](std::ostream& o) {
        if (bd_csv) {
          write_bound_csv(o, rep);
        } else {
          json j{{"surface", surface_id(bd_surface)}, {"h", h}, {"geometry", to_json(g)},
                 {"sigma", s.eigenvalues},          {"report", to_json(rep)}};
          o << j.dump(2) << '\n';
        }
      });
      return rep.all_satisfied() ? kOk : kFailed;
    });
  }

  if (sweep->parsed()) {
    return guarded([&] {
      const SurfaceSpec spec = load_spec(sw_surface);
      const MetricSurface surface = build_surface(spec);
      const TriMesh mesh = triangulate(surface, mesh_h(sw_surface, surface));
      const SpectrumResult s = steklov_spectrum(mesh, 1);
      const LevelSetSweep sw = level_set_sweep(mesh, s.extensions.col(1));
      emit(sw_output, [&](std::ostream& o) { write_sweep_csv(o, sw); });
      const auto est = cheeger_estimate(sw);
      std::cerr.precision(10);
      std::cerr << "sigma1 " << s.sigma(1) << " h1 " << est.h1 << " h2 " << est.h2 << " bound " << est.bound << '\n';
      return kOk;
    });
  }

  if (geometry->parsed()) {
    return guarded([&] {
      const SurfaceSpec spec = load_spec(gm_surface);
      const MetricSurface surface = build_surface(spec);
      const double h = mesh_h(gm_surface, surface);
      const GeometryData g = geometric_data(surface, triangulate(surface, h));
      json j = to_json(g);
      j["h"] = h;
      std::cout << j.dump(2) << '\n';
      return kOk;
    });
  }

  if (zoo->parsed()) {
    std::cout << zoo_document();
    return kOk;
  }
  return kBadInput;
}
