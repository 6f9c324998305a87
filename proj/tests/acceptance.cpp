// Acceptance run: one PASS/FAIL line per criterion; exits 1 if any fails.
// Usage: acceptance <path to fracslice>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fracslice/specfun.hpp"
#include "fracslice/theorems.hpp"

using namespace fracslice;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Requires a named check to exist, pass, and stay within `limit` (max_rel).
void need(Outcome& o, const VerificationReport& r, const std::string& check, double limit) {
  for (const auto& c : r.checks)
    if (c.name == check) {
      const bool ok = c.passed && c.max_rel <= limit;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s%s %.2e<=%.0e", o.detail.empty() ? "" : ", ", check.c_str(), c.max_rel,
                    limit);
      o.detail += buf;
      o.pass = o.pass && ok;
      return;
    }
  o.detail += (o.detail.empty() ? "" : ", ") + check + " missing";
  o.pass = false;
}

void need_time(Outcome& o, double seconds, double limit) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.2fs<%.0fs", seconds, limit);
  o.detail += buf;
  o.pass = o.pass && seconds < limit;
}

template <class F>
std::pair<VerificationReport, double> timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r = f();
  return {r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& cli, const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" + cli + "' " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path to fracslice>\n");
    return 2;
  }
  const std::string cli = fs::absolute(argv[1]).string();
  const VerifyContext ctx;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  criteria.emplace_back("power rule", [&] {
    Outcome o;
    auto [r, s] = timed([&] { return verify_power_rule(ctx); });
    need(o, r, "numeric_relative", 1e-6);
    need(o, r, "symbolic", 1e-12);
    need_time(o, s, 2.0);
    return o;
  });
  criteria.emplace_back("fundamental theorem", [&] {
    Outcome o;
    const auto r = verify_fund_theorem(ctx);
    need(o, r, "numeric", 1e-6);
    need(o, r, "symbolic_coefficients", 1e-13);
    return o;
  });
  criteria.emplace_back("Caputo-RL link", [&] {
    Outcome o;
    const auto r = verify_rl_caputo_link(ctx);
    need(o, r, "symbolic", 1e-10);
    need(o, r, "sampled", 1e-5);
    need(o, r, "sampled_agreement", 1e-5);
    return o;
  });
  criteria.emplace_back("product example kernel membership", [&] {
    Outcome o;
    auto [r, s] = timed([&] { return verify_example45_kernel(ctx); });
    need(o, r, "variant:corrected", 1e-12);
    need(o, r, "sampled_agreement", 1e-5);
    need(o, r, "sampled_kernel_linear", 1e-5);  // non-vacuous: the corrected product collapses to 0
    need_time(o, s, 5.0);
    return o;
  });
  criteria.emplace_back("classical representation formula", [&] {
    Outcome o;
    const auto r = run_identity("representation", ctx);
    need(o, r, "formula", 1e-12);
    need(o, r, "power_oracle", 1e-12);
    return o;
  });
  criteria.emplace_back("Cauchy formula", [&] {
    Outcome o;
    const auto r = verify_cauchy(ctx);
    need(o, r, "reconstruct", 1e-6);
    need(o, r, "unit_independence", 1e-6);
    return o;
  });
  criteria.emplace_back("fractional representation formula", [&] {
    Outcome o;
    const auto r = run_identity("frac_representation", ctx);
    need(o, r, "variant:corrected", 1e-10);
    need(o, r, "collapse", 1e-14);
    return o;
  });
  criteria.emplace_back("series expansion", [&] {
    Outcome o;
    const auto r = run_identity("series", ctx);
    need(o, r, "variant:corrected", 1e-8);
    need(o, r, "lambda_direct", 1e-12);
    return o;
  });
  criteria.emplace_back("kernel N consistency", [&] {
    Outcome o;
    const auto r = verify_kernel_N(ctx);
    need(o, r, "variant:corrected", 1e-8);
    return o;
  });
  criteria.emplace_back("Gamma quality gates", [&] {
    Outcome o;
    const PlaneComplex h = gamma(PlaneComplex(0.5));
    const double e_half = std::abs(h * h - std::numbers::pi);
    double e_rec = 0.0;
    for (double re = -2.7; re <= 6.0; re += 0.37)
      for (double im = -4.0; im <= 4.0; im += 0.53) {
        const PlaneComplex z(re, im);
        e_rec = std::max(e_rec, std::abs(gamma(z + 1.0) - z * gamma(z)) / std::abs(z * gamma(z)));
      }
    double e_abs = 0.0;
    for (double y : {0.5, 1.0, 2.0}) {
      const double ref = std::numbers::pi * y / std::sinh(std::numbers::pi * y);
      e_abs = std::max(e_abs, std::abs(std::norm(gamma(PlaneComplex(1.0, y))) - ref) / ref);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "half %.1e<=1e-12, recurrence %.1e<=1e-11, |G(1+iy)|^2 %.1e<=1e-10", e_half,
                  e_rec, e_abs);
    o.detail = buf;
    o.pass = e_half <= 1e-12 && e_rec <= 1e-11 && e_abs <= 1e-10;
    return o;
  });
  criteria.emplace_back("determinism and exit codes", [&] {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("fracslice_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const int r1 = run_cli(cli, dir, "verify all --seed 7 --out run1");
    const int r2 = run_cli(cli, dir, "verify all --seed 7 --out run2");
    const std::string a = slurp(dir / "run1" / "report.json"), b = slurp(dir / "run2" / "report.json");
    const bool same = !a.empty() && a == b;
    const int fail = run_cli(cli, dir, "verify frac_splitting --variant displayed --out run3");
    const int usage = run_cli(cli, dir, "verify no_such_identity");
    fs::remove_all(dir);
    char buf[160];
    std::snprintf(buf, sizeof buf, "report.json %s (%zu bytes), exits %d/%d/%d (expect 0/1/2)",
                  same ? "identical" : "DIFFERENT", a.size(), r1 == r2 ? r1 : -1, fail, usage);
    o.detail = buf;
    o.pass = same && r1 == 0 && r2 == 0 && fail == 1 && usage == 2;
    return o;
  });

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
