#include "steklov/verify.hpp"

#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/error.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"
#include "steklov/oracles.hpp"
#include "steklov/spectra.hpp"
#include "steklov/version.hpp"
#include "steklov/zoo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace steklov {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kMaxIndex = 6;

double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

double clean_sigma(const SpectrumResult& s, int k) { return s.sigma_clean(k); }

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

bool flat_ended(const SurfaceSpec& spec) {
  return std::holds_alternative<FlatCylinder>(spec.family) || std::holds_alternative<ThinNeckComposite>(spec.family) ||
         std::holds_alternative<HyperbolicNeck>(spec.family);
}

// Everything computed for one zoo surface at the suite mesh size.
struct SurfaceCase {
  explicit SurfaceCase(const ZooEntry& e) : entry(&e), surface(build_surface(e.spec)) {}

  const ZooEntry* entry = nullptr;
  MetricSurface surface;
  double h = 0.0;
  std::vector<std::array<double, 2>> strips;
  MeshOptions mesh_options;
  std::optional<TriMesh> mesh;
  std::optional<GeometryData> geom;
  std::optional<SpectrumResult> spectrum;
  std::optional<TriMesh> bands;
  std::optional<SpectrumResult> mixed[2];
};

class Context {
public:
  explicit Context(double factor) : factor_(factor) {}

  double factor() const { return factor_; }

  SurfaceCase& get(const ZooEntry& e) {
    auto it = cases_.find(e.id);
    if (it != cases_.end()) return *it->second;
    auto c = std::make_unique<SurfaceCase>(e);
    c->h = mesh_size(c->surface, factor_);
    c->strips = boundary_strips(c->surface);
    c->mesh_options.extra_rows = {c->strips[0][1], c->strips[1][0]};
    return *cases_.emplace(e.id, std::move(c)).first->second;
  }

  const TriMesh& mesh(SurfaceCase& c) {
    if (!c.mesh) c.mesh.emplace(triangulate(c.surface, c.h, c.mesh_options));
    return *c.mesh;
  }
  const GeometryData& geom(SurfaceCase& c) {
    if (!c.geom) c.geom.emplace(geometric_data(c.surface, mesh(c)));
    return *c.geom;
  }
  const SpectrumResult& spectrum(SurfaceCase& c) {
    if (!c.spectrum) c.spectrum.emplace(steklov_spectrum(mesh(c), kMaxIndex, options(c)));
    return *c.spectrum;
  }
  const SpectrumResult& mixed(SurfaceCase& c, MixedKind kind) {
    auto& slot = c.mixed[kind == MixedKind::Neumann ? 0 : 1];
    if (!slot) {
      if (!c.bands) c.bands.emplace(triangulate_bands(c.surface, c.h, c.strips, c.mesh_options));
      const std::vector<int> outer{0, 1}, inner{2, 3};
      slot.emplace(mixed_spectrum(*c.bands, outer, inner, kind, kMaxIndex, options(c)));
    }
    return *slot;
  }

private:
  static SpectrumOptions options(const SurfaceCase& c) {
    SpectrumOptions o;
    o.surface_id = c.entry->id;
    return o;
  }
  double factor_;
  std::map<std::string, std::unique_ptr<SurfaceCase>> cases_;
};

class Runner {
public:
  Runner(VerificationReport& report, const VerifyOptions& options) : report_(report), options_(options) {}

  void check(std::string id, std::string surface, double h, const std::function<Verdict(json&)>& body) {
    CheckRecord r;
    r.id = std::move(id);
    r.surface = std::move(surface);
    r.h = h;
    const auto start = Clock::now();
    try {
      r.verdict = body(r.values);
    } catch (const std::exception& e) {
      r.verdict = Verdict::Fail;
      r.message = e.what();
    }
    r.runtime = std::chrono::duration<double>(Clock::now() - start).count();
    if (options_.log) {
      *options_.log << to_string(r.verdict) << ' ' << r.id;
      if (options_.timings) *options_.log << " (" << fmt(r.runtime) << " s)";
      if (!r.message.empty()) *options_.log << ": " << r.message;
      *options_.log << '\n';
    }
    report_.records.push_back(std::move(r));
  }

  const VerifyOptions& options() const { return options_; }

private:
  VerificationReport& report_;
  const VerifyOptions& options_;
};

// ---------------------------------------------------------------- closed forms

void suite_closed_forms(Runner& run, Context&) {
  run.check("closed-forms/rho", "", 0.0, [](json& v) {
    const double r = rho();
    v["rho"] = r;
    v["defining_residual"] = r * std::tanh(r) - 1.0;
    return verdict_of(std::abs(r - 1.19968) <= 1e-4 && std::abs(r * std::tanh(r) - 1.0) <= 1e-12);
  });

  for (int n : {1, 2, 4}) {
    const ZooEntry& e = zoo_entry("cyl-n" + std::to_string(n));
    run.check("closed-forms/growing-cylinder/n" + std::to_string(n), e.id, 0.0, [&](json& v) {
      const auto& cyl = std::get<FlatCylinder>(e.spec.family);
      const auto spec = cylinder_steklov(cyl.R, cyl.T, 3);
      const double expected = 1.0 / (kTwoPi * n);
      v["sigma1"] = spec[1];
      v["expected"] = expected;
      v["mode"] = to_string(spec.entries[1].mode);
      return verdict_of(rel_err(spec[1], expected) <= 1e-15 && spec.entries[1].mode == ModeType::Linear);
    });
  }

  for (double T : {0.5, 0.99, 1.01, 2.0}) {
    const double t = T * rho();
    run.check("closed-forms/threshold/T=" + fmt(T) + "rho", "", 0.0, [&](json& v) {
      const double s1 = cylinder_steklov(1.0, t, 3)[1];
      const double expected = t >= rho() ? 1.0 / t : std::tanh(t);
      v["sigma1"] = s1;
      v["expected"] = expected;
      return verdict_of(rel_err(s1, expected) <= 1e-14);
    });
  }

  auto compare = [](json& v, const std::vector<double>& closed, const std::vector<double>& oracle) {
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      const double err = oracle[i] == 0.0 && closed[i] == 0.0 ? 0.0
                         : std::abs(oracle[i]) < 1e-12 ? std::abs(closed[i] - oracle[i])
                                                       : rel_err(closed[i], oracle[i]);
      worst = std::max(worst, err);
    }
    v["closed_form"] = closed;
    v["oracle"] = oracle;
    v["max_rel_err"] = worst;
    return verdict_of(worst <= 1e-10);
  };

  const int k = 8;
  for (const auto& [a, L] : std::vector<std::array<double, 2>>{{kTwoPi, 1.0}, {1.0, 0.3}, {kTwoPi, 0.5}}) {
    for (MixedKind kind : {MixedKind::Neumann, MixedKind::Dirichlet}) {
      run.check("closed-forms/cylinder-mixed/a=" + fmt(a) + ",L=" + fmt(L) + "," + std::string(to_string(kind)), "", 0.0,
                [&](json& v) {
                  const double r = a / kTwoPi;
                  const auto oracle = separation_spectrum([r](double) { return r; }, L, kind, k);
                  return compare(v, cylinder_mixed(a, L, kind, k).values(), oracle);
                });
    }
  }
  for (double a : {2.0 * std::asinh(1.0), 1.0, 0.5}) {
    for (MixedKind kind : {MixedKind::Neumann, MixedKind::Dirichlet}) {
      run.check("closed-forms/collar-mixed/a=" + fmt(a) + "," + std::string(to_string(kind)), "", 0.0, [&](json& v) {
        const double r0 = a / kTwoPi;
        // Mixed problem on the warped half collar itself.
        const auto oracle =
            separation_spectrum([r0](double t) { return r0 * std::cosh(t); }, collar_width(a), kind, k);
        return compare(v, collar_mixed(a, kind, k).values(), oracle);
      });
    }
  }

  // Two strips of depth L inside S^1_R x [-T, T]: mixed values bracket the full spectrum.
  for (const auto& [T, L] : std::vector<std::array<double, 2>>{{1.0, 1.0}, {1.0, 0.5}, {kTwoPi, kTwoPi}, {0.3, 0.1}}) {
    run.check("closed-forms/interleaving/T=" + fmt(T) + ",L=" + fmt(L), "", 0.0, [&](json& v) {
      const int kk = 20;
      auto doubled = [&](MixedKind kind) {
        std::vector<double> one = cylinder_mixed(kTwoPi, L, kind, kk).values();
        std::vector<double> two;
        for (double x : one) two.insert(two.end(), {x, x});
        std::sort(two.begin(), two.end());
        two.resize(kk + 1);
        return two;
      };
      const auto n = doubled(MixedKind::Neumann), d = doubled(MixedKind::Dirichlet);
      const auto full = cylinder_steklov(1.0, T, kk).values();
      int bad = 0;
      for (int i = 0; i <= kk; ++i)
        if (n[i] > full[i] * (1 + 1e-14) || full[i] > d[i] * (1 + 1e-14)) ++bad;
      v["violations"] = bad;
      return verdict_of(bad == 0);
    });
  }
}

// ---------------------------------------------------------------- FEM accuracy

void suite_fem_accuracy(Runner& run, Context& ctx) {
  const ZooEntry& e = zoo_entry("cyl-unit");
  const auto& cyl = std::get<FlatCylinder>(e.spec.family);
  const MetricSurface surface = build_surface(e.spec);
  const double h = mesh_size(surface, ctx.factor());
  const auto closed = cylinder_steklov(cyl.R, cyl.T, kMaxIndex).values();
  std::vector<double> err(2, 0.0);
  for (int level = 0; level < 2; ++level) {
    const double hl = level == 0 ? h : 0.5 * h;
    run.check("fem-accuracy/cyl-unit/h" + std::string(level == 0 ? "" : "/2"), e.id, hl, [&](json& v) {
      const TriMesh mesh = triangulate(surface, hl);
      SpectrumOptions o;
      o.surface_id = e.id;
      const auto s = steklov_spectrum(mesh, kMaxIndex, o);
      std::vector<double> rel;
      for (int i = 1; i <= kMaxIndex; ++i) rel.push_back(rel_err(s.sigma(i), closed[i]));
      err[level] = *std::max_element(rel.begin(), rel.end());
      v["vertices"] = mesh.vertex_count();
      v["sigma"] = s.eigenvalues;
      v["closed_form"] = closed;
      v["rel_err"] = rel;
      v["max_residual"] = s.max_residual();
      v["sigma0_is_zero"] = is_zero_eigenvalue(s.sigma(0), s.sigma(1));
      v["pair_gap"] = rel_err(s.sigma(2), s.sigma(1));
      const bool pair = rel_err(s.sigma(2), s.sigma(1)) < 1e-6;
      return verdict_of(err[level] <= 0.01 && is_zero_eigenvalue(s.sigma(0), s.sigma(1)) && pair);
    });
  }
  run.check("fem-accuracy/cyl-unit/order", e.id, h, [&](json& v) {
    if (!(err[0] > 0.0) || !(err[1] > 0.0)) throw SolverError("missing refinement level");
    const double order = std::log2(err[0] / err[1]);
    v["err_h"] = err[0];
    v["err_h2"] = err[1];
    v["order"] = order;
    return verdict_of(order >= 1.5);
  });
}

// ---------------------------------------------------------------- sandwich

void suite_sandwich(Runner& run, Context& ctx) {
  for (const auto& e : surface_zoo()) {
    SurfaceCase& c = ctx.get(e);
    run.check("sandwich/" + e.id + "/solve", e.id, c.h, [&](json& v) {
      const auto& s = ctx.spectrum(c);
      const auto& n = ctx.mixed(c, MixedKind::Neumann);
      const auto& d = ctx.mixed(c, MixedKind::Dirichlet);
      v["vertices"] = ctx.mesh(c).vertex_count();
      v["max_residual"] = std::max({s.max_residual(), n.max_residual(), d.max_residual()});
      return Verdict::Pass;
    });
    for (int k = 0; k <= kMaxIndex; ++k) {
      run.check("sandwich/" + e.id + "/k" + std::to_string(k), e.id, c.h, [&](json& v) {
        const double s = clean_sigma(ctx.spectrum(c), k);
        const double n = clean_sigma(ctx.mixed(c, MixedKind::Neumann), k);
        const double d = clean_sigma(ctx.mixed(c, MixedKind::Dirichlet), k);
        v["sigma_N"] = n;
        v["sigma"] = s;
        v["sigma_D"] = d;
        return verdict_of(n <= s * 1.02 && s <= d * 1.02);
      });
    }
    if (!flat_ended(e.spec)) continue;
    const int b = c.surface.boundary_count();
    for (int k = 0; k <= std::min(2 * b, kMaxIndex); ++k) {
      run.check("sandwich-bounds/" + e.id + "/k" + std::to_string(k), e.id, c.h, [&](json& v) {
        const auto& g = ctx.geom(c);
        const auto iv = sandwich_bounds(g.a, g.L, g.b, k);
        const double s = clean_sigma(ctx.spectrum(c), k);
        v["lower"] = iv.lower;
        v["upper"] = iv.upper;
        v["j"] = iv.j;
        v["sigma"] = s;
        return verdict_of(iv.lower <= s * 1.02 && s * 1.02 <= iv.upper * 1.04);
      });
    }
  }
}

// ---------------------------------------------------------------- length bound

void suite_length_bound(Runner& run, Context& ctx) {
  for (const auto& e : surface_zoo()) {
    SurfaceCase& c = ctx.get(e);
    run.check("length-bound/" + e.id, e.id, c.h, [&](json& v) {
      const auto& g = ctx.geom(c);
      const double s1 = ctx.spectrum(c).sigma(1);
      v["sigma1"] = s1;
      if (g.b < 2 || !g.equal_boundary_lengths()) {
        v["note"] = "boundary circles of different lengths";
        return Verdict::NotApplicable;
      }
      const double bound = bound_length(g);
      v["bound"] = bound;
      v["length_sep_lo"] = g.length_sep.lo;
      v["L"] = g.L;
      v["area_hi"] = g.area.hi;
      v["ratio"] = s1 / bound;
      return verdict_of(bound <= s1 * 1.02);
    });
    if (e.id.rfind("cyl-n", 0) == 0) {
      run.check("length-bound/" + e.id + "/ratio", e.id, c.h, [&](json& v) {
        const double ratio = ctx.spectrum(c).sigma(1) / bound_length(ctx.geom(c));
        v["ratio"] = ratio;
        return verdict_of(std::abs(ratio - 4.0) <= 0.08);
      });
    }
  }
}

// ---------------------------------------------------------------- thin neck

void suite_thin_neck(Runner& run, Context& ctx) {
  for (const auto& e : surface_zoo()) {
    if (!std::holds_alternative<ThinNeckComposite>(e.spec.family)) continue;
    const double eps = std::get<ThinNeckComposite>(e.spec.family).epsilon;
    SurfaceCase& c = ctx.get(e);
    run.check("thin-neck/" + e.id + "/upper", e.id, c.h, [&](json& v) {
      const double s1 = ctx.spectrum(c).sigma(1);
      v["sigma1"] = s1;
      v["two_eps2"] = 2 * eps * eps;
      return verdict_of(s1 <= 2 * eps * eps * 1.05);
    });
    run.check("thin-neck/" + e.id + "/lower", e.id, c.h, [&](json& v) {
      const double s1 = ctx.spectrum(c).sigma(1);
      const double bound = bound_length(ctx.geom(c));
      v["sigma1"] = s1;
      v["bound_length"] = bound;
      return verdict_of(bound <= s1);
    });
    run.check("thin-neck/" + e.id + "/test-energy", e.id, c.h, [&](json& v) {
      const TriMesh& mesh = ctx.mesh(c);
      const Eigen::VectorXd f = thin_neck_test_function(c.surface, mesh);
      const double energy = assemble_stiffness(mesh).quad_form(f);
      const double trace = assemble_boundary_mass(mesh, mesh.boundary_labels()).matrix.quad_form(f);
      v["energy"] = energy;
      v["expected"] = 4 * eps * eps;
      v["rayleigh"] = energy / trace;
      return verdict_of(rel_err(energy, 4 * eps * eps) <= 0.01);
    });
  }
}

// ---------------------------------------------------------------- curvature bound

void suite_curvature_bound(Runner& run, Context& ctx) {
  run.check("curvature-bound/C(-1,2)", "", 0.0, [](json& v) {
    const double c = curvature_constant(-1.0, 2);
    const double expected = 1.0 / (64.0 * std::cosh(1.0));
    v["value"] = c;
    v["expected"] = expected;
    return verdict_of(std::abs(c - expected) <= 1e-12);
  });
  for (const auto& e : surface_zoo()) {
    if (!std::holds_alternative<HyperbolicNeck>(e.spec.family)) continue;
    SurfaceCase& c = ctx.get(e);
    auto data = [&](json& v) {
      const auto& g = ctx.geom(c);
      v["sigma1"] = ctx.spectrum(c).sigma(1);
      v["kappa"] = g.kappa;
      v["L"] = g.L;
      v["a"] = g.a;
      v["inj_lo"] = g.inj_bd.lo;
      v["diam_lo"] = g.diam_bd.lo;
      v["diam_hi"] = g.diam_bd.hi;
      return bound_curvature(g);
    };
    run.check("curvature-bound/" + e.id + "/sharp", e.id, c.h, [&](json& v) {
      const auto cb = data(v);
      v["bound"] = cb.sharp;
      if (!cb.sharp_applicable) {
        v["note"] = cb.note;
        return Verdict::NotApplicable;
      }
      return verdict_of(cb.sharp <= ctx.spectrum(c).sigma(1) * 1.02);
    });
    run.check("curvature-bound/" + e.id + "/simplified", e.id, c.h, [&](json& v) {
      const auto cb = data(v);
      v["bound"] = cb.simplified;
      if (!cb.simplified_applicable) {
        v["note"] = cb.note;
        return Verdict::NotApplicable;
      }
      return verdict_of(cb.simplified <= ctx.spectrum(c).sigma(1) * 1.02);
    });
    run.check("curvature-bound/" + e.id + "/sharp-vs-simplified", e.id, c.h, [&](json& v) {
      const auto cb = data(v);
      v["sharp"] = cb.sharp;
      v["simplified"] = cb.simplified;
      if (!cb.simplified_applicable) return Verdict::NotApplicable;
      return verdict_of(cb.sharp >= cb.simplified);
    });
  }
}

// ---------------------------------------------------------------- Cheeger

void suite_cheeger(Runner& run, Context& ctx) {
  for (const auto& e : surface_zoo()) {
    SurfaceCase& c = ctx.get(e);
    run.check("cheeger/" + e.id, e.id, c.h, [&](json& v) {
      const auto& s = ctx.spectrum(c);
      const auto sweep = level_set_sweep(ctx.mesh(c), s.extensions.col(1));
      const auto est = cheeger_estimate(sweep);
      v["sigma1"] = s.sigma(1);
      v["h1"] = est.h1;
      v["h2"] = est.h2;
      v["bound"] = est.bound;
      v["admissible_thresholds"] = est.admissible;
      v["thresholds"] = sweep.records.size();
      return verdict_of(est.bound <= s.sigma(1) * 1.05);
    });
    run.check("cheeger/" + e.id + "/max-principle", e.id, c.h, [&](json& v) {
      const auto& s = ctx.spectrum(c);
      std::size_t thresholds = 0, violations = 0;
      // every eigenfunction of the sigma_1 eigenspace
      for (std::size_t j = 1; j < s.eigenvalues.size(); ++j) {
        if (j > 1 && rel_err(s.sigma(j), s.sigma(1)) > 1e-6) break;
        const auto rep = max_principle_check(ctx.mesh(c), s.extensions.col(j));
        thresholds += rep.thresholds;
        violations += rep.violations;
      }
      v["thresholds"] = thresholds;
      v["violations"] = violations;
      if (violations == 0) return Verdict::Pass;
      if (ctx.factor() < 0.02) {
        v["warning"] = "violations below the default mesh size";
        return Verdict::Pass;
      }
      return Verdict::Fail;
    });
    if (!std::holds_alternative<FlatCylinder>(e.spec.family)) continue;
    run.check("cheeger/" + e.id + "/isoperimetric-estimates", e.id, c.h, [&](json& v) {
      const auto& g = ctx.geom(c);
      const auto est = cheeger_estimate(level_set_sweep(ctx.mesh(c), ctx.spectrum(c).extensions.col(1)));
      const double m = std::min(g.length_sep.lo, g.L);
      const double h1_lo = 2.0 * m / g.area.hi;
      const double h2_lo = m / ((g.b - 1) * g.a);
      v["h1"] = est.h1;
      v["h1_lower"] = h1_lo;
      v["h2"] = est.h2;
      v["h2_lower"] = h2_lo;
      return verdict_of(est.h1 >= h1_lo * 0.9 && est.h2 >= h2_lo * 0.9);
    });
  }
}

// ---------------------------------------------------------------- constants

void suite_constants(Runner& run, Context&) {
  for (const auto& [g, b] : std::vector<std::array<int, 2>>{{0, 4}, {1, 2}, {2, 3}}) {
    const std::string sig = "g" + std::to_string(g) + "-b" + std::to_string(b);
    run.check("constants/" + sig, "", 0.0, [&](json& v) {
      const auto c = hyperbolic_constants(g, b);
      // the log argument reduces to 8 pi / 3 for every signature
      const double oracle = 12.0 * (g + b - 1) * std::log(8.0 * kPi / 3.0);
      const double err = rel_err(c.L_gb, oracle);
      bool positive = true;
      for (int i = 1; i <= 13; ++i) positive = positive && c.beta[i] > 0.0;
      v = to_json(c);
      v["L_gb_oracle"] = oracle;
      v["L_gb_rel_err"] = err;
      v["betas_positive"] = positive;
      return verdict_of(err <= 1e-12 && positive && c.C1 > 0.0 && c.C1 < c.C2);
    });
  }
  for (double l : {1.0, 2.0 * std::asinh(1.0)}) {
    const double h = 0.01;
    run.check("constants/collar-test-energy/l=" + fmt(l), "", h, [&](json& v) {
      const double formula = collar_test_energy(l);
      const double quad = collar_energy_quadrature(l, h);
      v["formula"] = formula;
      v["quadrature"] = quad;
      v["rel_err"] = rel_err(quad, formula);
      return verdict_of(rel_err(quad, formula) <= 1e-6);
    });
  }
}

// ---------------------------------------------------------------- homogeneity

struct LowerBounds {
  std::map<std::string, double> values;
};

LowerBounds emitted_lower_bounds(const ZooEntry& e, const GeometryData& g, const TriMesh& mesh,
                                 const SpectrumResult& s) {
  LowerBounds out;
  if (g.b >= 2 && g.equal_boundary_lengths()) out.values["length"] = bound_length(g);
  if (std::holds_alternative<HyperbolicNeck>(e.spec.family) && g.kappa < 0.0) {
    const auto cb = bound_curvature(g);
    if (cb.sharp_applicable) out.values["curvature-sharp"] = cb.sharp;
    if (cb.simplified_applicable) out.values["curvature-simplified"] = cb.simplified;
  }
  out.values["cheeger"] = cheeger_estimate(level_set_sweep(mesh, s.extensions.col(1))).bound;
  if (flat_ended(e.spec))
    for (int k = 2; k <= std::min(2 * g.b, kMaxIndex); ++k)
      out.values["sandwich-k" + std::to_string(k)] = sandwich_bounds(g.a, g.L, g.b, k).lower;
  return out;
}

void suite_homogeneity(Runner& run, Context& ctx) {
  for (const auto& e : surface_zoo()) {
    SurfaceCase& c = ctx.get(e);
    for (double scale : {0.5, 3.0}) {
      const std::string tag = "homogeneity/" + e.id + "/c=" + fmt(scale);
      std::optional<TriMesh> mesh;
      std::optional<SpectrumResult> spec;
      std::optional<GeometryData> geom;
      run.check(tag + "/eigenvalues", e.id, c.h * scale, [&](json& v) {
        const auto& base = ctx.spectrum(c);
        mesh.emplace(ctx.mesh(c).scaled_metric(scale));
        SpectrumOptions o;
        o.surface_id = e.id;
        spec.emplace(steklov_spectrum(*mesh, kMaxIndex, o));
        double worst = 0.0;
        for (int k = 1; k <= kMaxIndex; ++k) worst = std::max(worst, rel_err(scale * spec->sigma(k), base.sigma(k)));
        const bool zero = is_zero_eigenvalue(spec->sigma(0), spec->sigma(1));
        v["max_rel_err"] = worst;
        v["sigma0_is_zero"] = zero;
        return verdict_of(worst <= 1e-8 && zero);
      });
      if (!spec) continue;
      std::map<std::string, double> base_b, scaled_b;
      run.check(tag + "/geometry", e.id, c.h * scale, [&](json& v) {
        geom.emplace(geometric_data(c.surface.scaled(scale), *mesh));
        base_b = emitted_lower_bounds(e, ctx.geom(c), ctx.mesh(c), ctx.spectrum(c)).values;
        scaled_b = emitted_lower_bounds(e, *geom, *mesh, *spec).values;
        json names = json::array();
        for (const auto& [name, value] : scaled_b) names.push_back(name);
        v["emitted"] = names;
        return Verdict::Pass;
      });
      for (const auto& [name, value] : scaled_b) {
        run.check(tag + "/" + name, e.id, c.h * scale, [&](json& v) {
          v["scaled"] = value;
          const auto it = base_b.find(name);
          if (it == base_b.end()) {
            v["note"] = "not emitted at scale 1";
            return Verdict::NotApplicable;
          }
          v["base"] = it->second;
          const double err = it->second == 0.0 ? std::abs(value) : rel_err(scale * value, it->second);
          v["rel_err"] = err;
          return verdict_of(err <= 1e-8);
        });
      }
      for (const auto& [name, value] : base_b) {
        if (scaled_b.count(name)) continue;
        run.check(tag + "/" + name, e.id, c.h * scale, [&](json& v) {
          v["base"] = value;
          v["note"] = "hypotheses fail after scaling";
          return Verdict::NotApplicable;
        });
      }
    }
  }
}

using SuiteFn = void (*)(Runner&, Context&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s{
      {"closed-forms", suite_closed_forms},   {"fem-accuracy", suite_fem_accuracy},
      {"sandwich", suite_sandwich},           {"length-bound", suite_length_bound},
      {"thin-neck", suite_thin_neck},         {"curvature-bound", suite_curvature_bound},
      {"cheeger", suite_cheeger},             {"constants", suite_constants},
      {"homogeneity", suite_homogeneity}};
  return s;
}

} // namespace

VerifySummary VerificationReport::summary() const {
  VerifySummary s;
  for (const auto& r : records) {
    switch (r.verdict) {
    case Verdict::Pass: ++s.pass; break;
    case Verdict::Fail: ++s.fail; break;
    case Verdict::NotApplicable: ++s.not_applicable; break;
    }
  }
  return s;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

bool is_suite(std::string_view name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

VerificationReport run_verification(std::string_view suite, const VerifyOptions& options) {
  if (!is_suite(suite)) throw InvalidArgument("unknown suite '" + std::string(suite) + "'");
  if (!(options.h_factor > 0.0)) throw InvalidArgument("h factor must be positive");
  VerificationReport report;
  report.version = kVersion;
  report.suite = suite;
  report.h_factor = options.h_factor;
  const auto start = Clock::now();
  Runner run(report, options);
  Context ctx(options.h_factor);
  for (const auto& [name, fn] : suites())
    if (suite == "all" || suite == name) fn(run, ctx);
  report.runtime = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

json to_json(const CheckRecord& r, bool timings) {
  json j{{"id", r.id}, {"surface", r.surface}, {"h", r.h}, {"values", r.values}, {"verdict", to_string(r.verdict)}};
  j["runtime"] = timings ? r.runtime : 0.0;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

json to_json(const VerificationReport& r, bool timings) {
  json records = json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec, timings));
  const auto s = r.summary();
  return {{"version", r.version},
          {"suite", r.suite},
          {"h_factor", r.h_factor},
          {"runtime", timings ? r.runtime : 0.0},
          {"records", records},
          {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"not-applicable", s.not_applicable}, {"total", s.total()}}}};
}

} // namespace steklov
