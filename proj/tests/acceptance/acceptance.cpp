// Acceptance runner: one PASS/FAIL line per numbered criterion.
//
//   steklov_acceptance            all criteria
//   steklov_acceptance 3 7        selected criteria
//
// Each criterion runs its verification suite at the default mesh factor,
// then re-checks the recorded values against the pinned tolerances, the
// coverage of the surface zoo, and the wall-clock limit where one is set.

#include "steklov/verify.hpp"
#include "steklov/zoo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace steklov;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Findings {
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

const CheckRecord* find(const VerificationReport& r, const std::string& id) {
  for (const auto& rec : r.records)
    if (rec.id == id) return &rec;
  return nullptr;
}

std::vector<const CheckRecord*> with_prefix(const VerificationReport& r, const std::string& prefix) {
  std::vector<const CheckRecord*> out;
  for (const auto& rec : r.records)
    if (rec.id.rfind(prefix, 0) == 0) out.push_back(&rec);
  return out;
}

double num(const CheckRecord& rec, const char* key) {
  const auto it = rec.values.find(key);
  if (it == rec.values.end() || !it->is_number()) return std::nan("");
  return it->get<double>();
}

std::string show(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

// Every zoo surface (optionally filtered) carries at least one record with the prefix.
void require_coverage(Findings& f, const VerificationReport& r, const std::string& prefix,
                      const std::function<bool(const ZooEntry&)>& want = {}) {
  std::set<std::string> seen;
  for (const auto* rec : with_prefix(r, prefix)) seen.insert(rec->surface);
  for (const auto& e : surface_zoo())
    if ((!want || want(e)) && !seen.count(e.id)) f.problems.push_back("no " + prefix + " record for " + e.id);
}

void closed_forms(Findings& f, const VerificationReport& r) {
  const auto* rho = find(r, "closed-forms/rho");
  f.require(rho && std::abs(num(*rho, "rho") - 1.19968) <= 1e-4, "rho outside 1.19968 +- 1e-4");
  for (int n : {1, 2, 4}) {
    const auto* g = find(r, "closed-forms/growing-cylinder/n" + std::to_string(n));
    const double expect = 1.0 / (2.0 * kPi * n);
    f.require(g && std::abs(num(*g, "sigma1") - expect) <= 1e-15 * expect,
              "sigma1 of the growing cylinder n=" + std::to_string(n) + " is not 1/(2 pi n)");
  }
  std::size_t oracles = 0;
  for (const char* p : {"closed-forms/cylinder-mixed/", "closed-forms/collar-mixed/"})
    for (const auto* rec : with_prefix(r, p)) {
      ++oracles;
      f.require(num(*rec, "max_rel_err") <= 1e-10, rec->id + " oracle error " + show(num(*rec, "max_rel_err")));
    }
  f.require(oracles >= 4, "too few separation-oracle comparisons");
}

void fem_accuracy(Findings& f, const VerificationReport& r) {
  const auto* h = find(r, "fem-accuracy/cyl-unit/h");
  f.require(h && std::abs(h->h - 0.02) <= 1e-15, "unit cylinder not solved at h = 0.02");
  if (h) {
    const auto& errs = h->values.at("rel_err");
    f.require(errs.size() == 6, "expected sigma_1..sigma_6");
    for (std::size_t k = 0; k < errs.size(); ++k)
      f.require(errs[k].get<double>() <= 0.01, "sigma_" + std::to_string(k + 1) + " off by " + show(errs[k].get<double>()));
  }
  const auto* order = find(r, "fem-accuracy/cyl-unit/order");
  f.require(order && num(*order, "order") >= 1.5, "observed order below 1.5");
}

void sandwich(Findings& f, const VerificationReport& r) {
  require_coverage(f, r, "sandwich/");
  for (const auto& e : surface_zoo())
    for (int k = 0; k <= 6; ++k) {
      const auto* rec = find(r, "sandwich/" + e.id + "/k" + std::to_string(k));
      if (!rec) {
        f.problems.push_back("missing sandwich record " + e.id + " k=" + std::to_string(k));
        continue;
      }
      const double s = num(*rec, "sigma"), n = num(*rec, "sigma_N"), d = num(*rec, "sigma_D");
      f.require(n <= s * 1.02 + 1e-12 && s <= d * 1.02 + 1e-12, rec->id + " violates the sandwich");
    }
}

void length_bound(Findings& f, const VerificationReport& r) {
  require_coverage(f, r, "length-bound/");
  for (const auto* rec : with_prefix(r, "length-bound/")) {
    if (rec->verdict == Verdict::NotApplicable || rec->id.ends_with("/ratio")) continue;
    f.require(num(*rec, "bound") <= num(*rec, "sigma1") * 1.02, rec->id + " bound above sigma1");
  }
  for (int n : {1, 2, 4}) {
    const auto* rec = find(r, "length-bound/cyl-n" + std::to_string(n) + "/ratio");
    f.require(rec && std::abs(num(*rec, "ratio") - 4.0) <= 0.08, "sigma1/bound on cyl-n" + std::to_string(n) + " not 4 +- 2%");
  }
}

void thin_neck(Findings& f, const VerificationReport& r) {
  for (const char* eps : {"0.2", "0.1", "0.05"}) {
    const std::string base = std::string("thin-neck/thin-neck-eps") + eps;
    const auto* up = find(r, base + "/upper");
    const auto* lo = find(r, base + "/lower");
    const auto* en = find(r, base + "/test-energy");
    f.require(up && num(*up, "sigma1") <= num(*up, "two_eps2") * 1.05, base + ": sigma1 above 2 eps^2 * 1.05");
    f.require(lo && num(*lo, "sigma1") >= num(*lo, "bound_length"), base + ": sigma1 below the length bound");
    f.require(en && std::abs(num(*en, "energy") - num(*en, "expected")) <= 0.01 * num(*en, "expected"),
              base + ": test-function energy not 4 eps^2 +- 1%");
  }
}

void curvature(Findings& f, const VerificationReport& r) {
  const auto* c = find(r, "curvature-bound/C(-1,2)");
  f.require(c && std::abs(num(*c, "value") - 1.0 / (64.0 * std::cosh(1.0))) <= 1e-12, "C(-1,2) != 1/(64 cosh 1)");
  std::size_t checked = 0;
  for (const char* id : {"hyp-neck-std", "hyp-neck-thin"}) {
    const std::string base = std::string("curvature-bound/") + id;
    for (const char* form : {"/sharp", "/simplified"}) {
      const auto* rec = find(r, base + form);
      if (rec && rec->verdict == Verdict::NotApplicable) continue;
      ++checked;
      f.require(rec && num(*rec, "bound") <= num(*rec, "sigma1") * 1.02, base + form + " above sigma1 * 1.02");
    }
    const auto* both = find(r, base + "/sharp-vs-simplified");
    if (both && both->verdict != Verdict::NotApplicable)
      f.require(num(*both, "sharp") >= num(*both, "simplified"), base + ": sharp < simplified");
  }
  f.require(checked > 0, "no hyperbolic-neck surface met the hypotheses");
}

void cheeger(Findings& f, const VerificationReport& r) {
  for (const auto& e : surface_zoo()) {
    const auto* rec = find(r, "cheeger/" + e.id);
    f.require(rec && num(*rec, "bound") <= num(*rec, "sigma1") * 1.05, "cheeger bound above sigma1 * 1.05 on " + e.id);
  }
  std::size_t flat = 0;
  for (const auto* rec : with_prefix(r, "cheeger/")) {
    if (!rec->id.ends_with("/isoperimetric-estimates")) continue;
    ++flat;
    f.require(num(*rec, "h1") >= 0.9 * num(*rec, "h1_lower"), rec->id + ": h1 below 90% of its lower estimate");
    f.require(num(*rec, "h2") >= 0.9 * num(*rec, "h2_lower"), rec->id + ": h2 below 90% of its lower estimate");
  }
  f.require(flat >= 4, "isoperimetric estimates missing on flat cylinders");
}

void constants(Findings& f, const VerificationReport& r) {
  for (const char* sig : {"g0-b4", "g1-b2", "g2-b3"}) {
    const auto* rec = find(r, std::string("constants/") + sig);
    if (!rec) {
      f.problems.push_back(std::string("missing constants for ") + sig);
      continue;
    }
    f.require(num(*rec, "L_gb_rel_err") <= 1e-12, std::string(sig) + ": L_gb off its formula");
    for (int i = 1; i <= 13; ++i)
      f.require(num(*rec, ("beta" + std::to_string(i)).c_str()) > 0.0, std::string(sig) + ": beta" + std::to_string(i) + " <= 0");
    f.require(num(*rec, "C1") < num(*rec, "C2"), std::string(sig) + ": C1 >= C2");
  }
  const auto energies = with_prefix(r, "constants/collar-test-energy/");
  f.require(energies.size() >= 2, "collar test energy checks missing");
  for (const auto* rec : energies) {
    f.require(std::abs(rec->h - 0.01) <= 1e-15, rec->id + " not at h = 0.01");
    f.require(num(*rec, "rel_err") <= 1e-6, rec->id + " quadrature off by " + show(num(*rec, "rel_err")));
  }
}

void homogeneity(Findings& f, const VerificationReport& r) {
  require_coverage(f, r, "homogeneity/");
  for (const auto* rec : with_prefix(r, "homogeneity/")) {
    if (rec->verdict == Verdict::NotApplicable) continue;
    const double err = rec->id.ends_with("/eigenvalues") ? num(*rec, "max_rel_err") : num(*rec, "rel_err");
    if (rec->id.ends_with("/geometry")) continue;
    f.require(err <= 1e-8, rec->id + " scales with relative error " + show(err));
  }
}

struct Criterion {
  int number;
  const char* title;
  const char* suite;
  double limit; // seconds, 0 = none
  const char* tolerance;
  void (*check)(Findings&, const VerificationReport&);
};

const Criterion kCriteria[] = {
    {1, "closed-form reproduction", "closed-forms", 5.0, "rho +-1e-4, 1/(2 pi n) exact, oracle 1e-10", closed_forms},
    {2, "FEM accuracy", "fem-accuracy", 120.0, "1% at h = 0.02, order >= 1.5", fem_accuracy},
    {3, "sandwich inequality", "sandwich", 300.0, "factor 1.02, k <= 6", sandwich},
    {4, "length bound", "length-bound", 0.0, "factor 1.02, ratio 4 +-2%", length_bound},
    {5, "thin-neck example", "thin-neck", 0.0, "2 eps^2 * 1.05, energy +-1%", thin_neck},
    {6, "curvature bound", "curvature-bound", 0.0, "factor 1.02, C(-1,2) +-1e-12", curvature},
    {7, "Cheeger certificate", "cheeger", 0.0, "factor 1.05, estimates within 10%", cheeger},
    {8, "hyperbolic constants", "constants", 0.0, "L_gb 1e-12, energy 1e-6 at h = 0.01", constants},
    {9, "homogeneity", "homogeneity", 0.0, "1e-8 relative, c in {0.5, 3}", homogeneity},
};

bool run(const Criterion& c) {
  VerifyOptions opt;
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  Findings f;
  try {
    report = run_verification(c.suite, opt);
  } catch (const std::exception& e) {
    f.problems.push_back(std::string("suite aborted: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto& rec : report.records)
    if (rec.verdict == Verdict::Fail)
      f.problems.push_back("fail " + rec.id + (rec.message.empty() ? "" : ": " + rec.message));
  if (!report.records.empty()) c.check(f, report);
  if (c.limit > 0.0) f.require(secs < c.limit, "runtime " + show(secs) + " s exceeds " + show(c.limit) + " s");

  const auto s = report.summary();
  std::printf("criterion %d %s: %s [%s] (%zu pass, %zu fail, %zu not-applicable; %.2f s%s)\n", c.number, c.title,
              f.problems.empty() ? "PASS" : "FAIL", c.tolerance, s.pass, s.fail, s.not_applicable, secs,
              c.limit > 0.0 ? (", limit " + show(c.limit) + " s").c_str() : "");
  for (const auto& p : f.problems) std::printf("    %s\n", p.c_str());
  std::fflush(stdout);
  return f.problems.empty();
}

} // namespace

int main(int argc, char** argv) {
  std::vector<const Criterion*> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long n = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1-9 ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(&kCriteria[n - 1]);
  }
  if (selected.empty())
    for (const auto& c : kCriteria) selected.push_back(&c);
  bool ok = true;
  for (const auto* c : selected) ok = run(*c) && ok;
  return ok ? 0 : 1;
}
