// fracslice: verification driver, point evaluation and grid dumps.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracslice/config.hpp"
#include "fracslice/errors.hpp"
#include "fracslice/parallel.hpp"
#include "fracslice/report.hpp"
#include "fracslice/theorems.hpp"

using namespace fracslice;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  std::string config_path;
  std::string variant;
  std::optional<std::uint64_t> seed;
  std::string format;  // per-command default
  std::string out;
};

void add_common(CLI::App* sub, Common& c, const char* format_help) {
  sub->add_option("--config", c.config_path, "JSON config file (defaults apply to missing keys)");
  sub->add_option("--variant", c.variant, "convention variant: corrected (default) or displayed");
  sub->add_option("--seed", c.seed, "seed for random units, orders and test functions (default 0)");
  sub->add_option("--format", c.format, format_help)->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "output directory");
}

RunConfig load(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_run_config(c.config_path);
  if (!c.variant.empty()) cfg.variant = parse_variant(c.variant);
  if (c.seed) cfg.seed = *c.seed;
  cfg.validate();
  return cfg;
}

std::string out_path(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
  return (std::filesystem::path(dir) / file).string();
}

ImaginaryUnit parse_unit(const std::vector<double>& u) {
  if (u.size() != 3) throw ConfigError("--unit needs three components");
  try {
    return {u[0], u[1], u[2]};
  } catch (const DomainError& e) {
    throw ConfigError(std::string("--unit: ") + e.what());
  }
}

bool is_point_operator(const std::string& op) { return op == "assoc_map" || operator_from_name(op).has_value(); }

Quaternion eval_operator(const std::string& op, const MonomialSum& f, const RunConfig& cfg, const ImaginaryUnit& unit,
                         double x, double y) {
  if (op == "assoc_map")
    return sym_assoc_integral_map(f, cfg.domain, cfg.orders, cfg.variant).eval(unit, x, y);
  return apply_operator(*operator_from_name(op), f, cfg.domain, cfg.orders, unit, x, y, cfg.quadrature);
}

std::string point_text(const ImaginaryUnit& u, double x, double y) {
  return "unit=(" + format_double(u.u1()) + ", " + format_double(u.u2()) + ", " + format_double(u.u3()) +
         ") x=" + format_double(x) + " y=" + format_double(y);
}

std::string quaternion_csv(const Quaternion& q) {
  return format_double(q.w) + "," + format_double(q.x1) + "," + format_double(q.x2) + "," + format_double(q.x3);
}

int cmd_verify(const std::vector<std::string>& names_in, const Common& c) {
  const RunConfig cfg = load(c);
  std::vector<std::string> names;
  for (const auto& n : names_in) {
    if (n == "all") {
      names.insert(names.end(), identity_names().begin(), identity_names().end());
    } else if (is_identity(n)) {
      names.push_back(n);
    } else {
      throw ConfigError("unknown identity '" + n + "'");
    }
  }
  const auto reports = run_identities(names, cfg.context());
  const std::string json = reports_to_json(reports);
  const std::string csv = reports_to_csv(reports);
  write_file_atomic(out_path(c.out, "report.json"), json);
  write_file_atomic(out_path(c.out, "report.csv"), csv);
  std::cout << summary_table(reports);
  for (const auto& r : reports)
    if (!r.passed) return kFail;
  return kOk;
}

struct EvalArgs {
  std::string op;
  std::string f = "one";
  std::vector<double> unit{1.0, 0.0, 0.0};
  double x = 0.5;
  double y = 0.5;
  std::vector<double> zeta;
  int truncation = 30;
};

int cmd_eval(const EvalArgs& a, const Common& c) {
  const RunConfig cfg = load(c);
  const ImaginaryUnit unit = parse_unit(a.unit);
  nlohmann::ordered_json j;
  j["operator"] = a.op;
  j["unit"] = {unit.u1(), unit.u2(), unit.u3()};
  j["x"] = a.x;
  j["y"] = a.y;
  Quaternion value;
  std::string warning;
  if (a.op == "kernel_N") {
    if (a.zeta.size() != 2) throw ConfigError("kernel_N needs --zeta X,Y (a point on the same slice)");
    if (a.truncation < 0) throw ConfigError("--truncation must be >= 0");
    const Quaternion q = unit.realize({a.x, a.y});
    const Quaternion zeta = unit.realize({a.zeta[0], a.zeta[1]});
    const KernelNResult r = kernel_N(zeta, q, cfg.domain.a, cfg.orders, a.truncation);
    value = r.value;
    if (r.warning) warning = r.message;
    j["ratio"] = r.ratio;
    j["tail_estimate"] = std::isfinite(r.tail_estimate) ? nlohmann::ordered_json(r.tail_estimate) : nullptr;
  } else if (is_point_operator(a.op)) {
    const MonomialSum f = resolve_function(a.f, cfg);
    try {
      value = eval_operator(a.op, f, cfg, unit, a.x, a.y);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      std::cerr << "error: " << a.op << " at " << point_text(unit, a.x, a.y) << ": " << e.what() << "\n";
      return kFail;
    }
  } else {
    throw ConfigError("unknown operator '" + a.op + "'");
  }
  if (!warning.empty()) std::cerr << warning << "\n";  // message carries the ConvergenceWarning tag
  if (c.format == "csv") {
    std::cout << "w,x1,x2,x3\n" << quaternion_csv(value) << "\n";
  } else {
    j["value"] = format_quaternion(value);
    j["warning"] = warning.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(warning);
    std::cout << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_grid(const std::string& op, const std::string& fspec, const Common& c) {
  const RunConfig cfg = load(c);
  if (!is_point_operator(op)) throw ConfigError("unknown or non-grid operator '" + op + "'");
  const MonomialSum f = resolve_function(fspec, cfg);
  GridSpec spec = cfg.grid;
  spec.seed = cfg.seed;
  const auto grid = make_grid(cfg.domain, spec);
  std::vector<Quaternion> values(grid.size());
  std::vector<std::string> errors(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    try {
      values[k] = eval_operator(op, f, cfg, grid[k].unit, grid[k].x, grid[k].y);
    } catch (const Error& e) {
      errors[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (!errors[k].empty()) {
      std::cerr << "error: " << op << " at " << point_text(grid[k].unit, grid[k].x, grid[k].y) << ": "
                << errors[k] << "\n";
      return kFail;
    }
  const bool csv = c.format != "json";
  std::string text;
  if (csv) {
    text = "u1,u2,u3,x,y,w,qx1,qx2,qx3\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto& g = grid[k];
      text += format_double(g.unit.u1()) + "," + format_double(g.unit.u2()) + "," + format_double(g.unit.u3()) +
              "," + format_double(g.x) + "," + format_double(g.y) + "," + quaternion_csv(values[k]) + "\n";
    }
  } else {
    text = "[";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto& g = grid[k];
      text += std::string(k ? ",\n  " : "\n  ") + "{\"unit\": [" + format_double(g.unit.u1()) + ", " +
              format_double(g.unit.u2()) + ", " + format_double(g.unit.u3()) + "], \"x\": " + format_double(g.x) +
              ", \"y\": " + format_double(g.y) + ", \"value\": " + format_quaternion(values[k]) + "}";
    }
    text += "\n]\n";
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path(c.out, csv ? "grid.csv" : "grid.json"), text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracslice: fractional slice calculus on quaternions"};
  app.footer(
      "Config JSON keys: domain{a,b,c,u,v}, orders{alpha,beta} as [re,im], quadrature{nodes,diff_step,"
      "richardson_levels}, grid{units,random_units,nx,ny,margin}, seed, variant, tolerances{identity:value}, "
      "example45{q1,q2,delta,gamma}.\nDefaults: domain [0,1]x[0,1] with (u,v)=(0.5,0.5), alpha=0.5+0.2i, "
      "beta=0.4-0.15i, 64 nodes, 8x8 grid on e1,e2,e3 plus 5 random units, seed 0, variant corrected.\n"
      "Flags override config keys. FRACSLICE_THREADS caps worker threads.\n"
      "Exit codes: 0 success, 1 identity failure or evaluation error, 2 usage or config error.");
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> names{"all"};
  auto* verify = app.add_subcommand("verify", "run identity verifications, write report.json and report.csv");
  verify->add_option("names", names, "identity names or 'all'");
  add_common(verify, common, "unused by verify (both report formats are written)");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate an operator at one point");
  eval->add_option("operator", ev.op,
                   "d_rl_left, d_rl_rightsided, d_rl_left_r, d_caputo_left, d_caputo_rightsided, "
                   "d_caputo_left_r, assoc_map or kernel_N")
      ->required();
  eval->add_option("--f", ev.f, "builtin name or inline JSON sum (default one)");
  eval->add_option("--unit", ev.unit, "slice unit u1 u2 u3 (normalized)")->expected(3)->delimiter(',');
  eval->add_option("--x", ev.x, "x coordinate (default 0.5)");
  eval->add_option("--y", ev.y, "y coordinate (default 0.5)");
  eval->add_option("--zeta", ev.zeta, "kernel_N: zeta as X,Y on the same slice")->expected(2)->delimiter(',');
  eval->add_option("--truncation", ev.truncation, "kernel_N truncation (default 30)");
  add_common(eval, common, "json (default) or csv");

  std::string grid_op;
  std::string grid_f = "one";
  auto* grid = app.add_subcommand("grid", "evaluate an operator over the configured grid");
  grid->add_option("operator", grid_op, "operator name (as for eval, except kernel_N)")->required();
  grid->add_option("--f", grid_f, "builtin name or inline JSON sum (default one)");
  add_common(grid, common, "csv (default; u1,u2,u3,x,y,w,qx1,qx2,qx3 rows) or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(names, common);
    if (*eval) return cmd_eval(ev, common);
    if (*grid) return cmd_grid(grid_op, grid_f, common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
