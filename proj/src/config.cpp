#include "fracslice/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fracslice/errors.hpp"

namespace fracslice {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + " must be finite");
  return v;
}

void read(const json& j, const char* key, double& out, const std::string& where) {
  if (j.contains(key)) out = number(j.at(key), where + "." + key);
}

void read_int(const json& j, const char* key, int& out, const std::string& where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  out = v.get<int>();
}

PlaneComplex complex_of(const json& j, const std::string& where) {
  if (j.is_number()) return {number(j, where), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
  throw ConfigError(where + " must be a number or [re, im]");
}

Quaternion quaternion_of(const json& j, const std::string& where) {
  if (j.is_number()) return Quaternion(number(j, where));
  if (j.is_array() && j.size() == 4) {
    double c[4];
    for (int k = 0; k < 4; ++k) c[k] = number(j[k], where + "[" + std::to_string(k) + "]");
    return {c[0], c[1], c[2], c[3]};
  }
  throw ConfigError(where + " must be a number or [w, x1, x2, x3]");
}

ImaginaryUnit unit_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + " must be [u1, u2, u3]");
  try {
    return {number(j[0], where), number(j[1], where), number(j[2], where)};
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

json complex_json(const PlaneComplex& z) { return json::array({z.real(), z.imag()}); }
json quaternion_json(const Quaternion& q) { return json::array({q.w, q.x1, q.x2, q.x3}); }

MonomialSum sum_from_json(const json& j, double default_anchor) {
  Frame frame;
  frame.x_anchor = default_anchor;
  const json* terms = &j;
  if (j.is_object()) {
    only_keys(j, "function", {"frame", "terms"});
    if (j.contains("frame")) {
      const json& f = j.at("frame");
      only_keys(f, "function.frame", {"x_anchor", "x_dir", "y_anchor", "y_dir"});
      read(f, "x_anchor", frame.x_anchor, "frame");
      read(f, "x_dir", frame.x_dir, "frame");
      read(f, "y_anchor", frame.y_anchor, "frame");
      read(f, "y_dir", frame.y_dir, "frame");
      if (std::abs(frame.x_dir) != 1.0 || std::abs(frame.y_dir) != 1.0)
        throw ConfigError("frame directions must be +1 or -1");
    }
    if (!j.contains("terms")) throw ConfigError("function needs a 'terms' array");
    terms = &j.at("terms");
  }
  if (!terms->is_array()) throw ConfigError("function terms must be an array");
  MonomialSum s(frame);
  for (std::size_t k = 0; k < terms->size(); ++k) {
    const json& t = (*terms)[k];
    const std::string where = "terms[" + std::to_string(k) + "]";
    only_keys(t, where, {"c", "mu", "nu", "q"});
    MonomialTerm m;
    if (t.contains("c")) m.scalar = complex_of(t.at("c"), where + ".c");
    if (t.contains("mu")) m.mu = complex_of(t.at("mu"), where + ".mu");
    if (t.contains("nu")) m.nu = complex_of(t.at("nu"), where + ".nu");
    if (t.contains("q")) m.right_const = quaternion_of(t.at("q"), where + ".q");
    s.add(m);
  }
  return s;
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + " is not valid JSON: " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  try {
    domain.validate();
    quadrature.validate();
    if (grid.nx < 1 || grid.ny < 1 || grid.random_units < 0 || !(grid.margin > 0.0 && grid.margin < 0.5))
      throw ConfigError("grid needs nx, ny >= 1, random_units >= 0 and margin in (0, 0.5)");
    for (const auto& [k, v] : tolerances) {
      if (!is_identity(k)) throw ConfigError("unknown identity '" + k + "' in tolerances");
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("tolerance for '" + k + "' must be positive");
    }
    const auto in_band = [](const PlaneComplex& z) { return z.real() > 0.0 && z.real() < 1.0; };
    if (!in_band(example45.delta) || !in_band(example45.gamma_p))
      throw ConfigError("example45 delta and gamma need real parts in (0, 1)");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

VerifyContext RunConfig::context() const {
  VerifyContext c;
  c.domain = domain;
  c.orders = orders;
  c.quad = quadrature;
  c.grid = grid;
  c.grid.seed = seed;
  c.seed = seed;
  c.variant = variant;
  c.tolerances = tolerances;
  c.example45 = example45;
  return c;
}

RunConfig parse_run_config(const std::string& text) {
  const json j = parse_text(text, "config");
  only_keys(j, "config",
            {"domain", "orders", "quadrature", "grid", "seed", "variant", "tolerances", "example45"});
  RunConfig cfg;
  try {
    if (j.contains("domain")) {
      const json& d = j.at("domain");
      only_keys(d, "domain", {"a", "b", "c", "u", "v"});
      read(d, "a", cfg.domain.a, "domain");
      read(d, "b", cfg.domain.b, "domain");
      read(d, "c", cfg.domain.c, "domain");
      read(d, "u", cfg.domain.u, "domain");
      read(d, "v", cfg.domain.v, "domain");
    }
    if (j.contains("orders")) {
      const json& o = j.at("orders");
      only_keys(o, "orders", {"alpha", "beta"});
      if (o.contains("alpha")) cfg.orders.alpha = ComplexOrder(complex_of(o.at("alpha"), "orders.alpha"));
      if (o.contains("beta")) cfg.orders.beta = ComplexOrder(complex_of(o.at("beta"), "orders.beta"));
    }
    if (j.contains("quadrature")) {
      const json& q = j.at("quadrature");
      only_keys(q, "quadrature", {"nodes", "diff_step", "richardson_levels"});
      read_int(q, "nodes", cfg.quadrature.nodes, "quadrature");
      read(q, "diff_step", cfg.quadrature.diff_step, "quadrature");
      read_int(q, "richardson_levels", cfg.quadrature.richardson_levels, "quadrature");
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      only_keys(g, "grid", {"units", "random_units", "nx", "ny", "margin"});
      read_int(g, "random_units", cfg.grid.random_units, "grid");
      read_int(g, "nx", cfg.grid.nx, "grid");
      read_int(g, "ny", cfg.grid.ny, "grid");
      read(g, "margin", cfg.grid.margin, "grid");
      if (g.contains("units")) {
        const json& u = g.at("units");
        if (!u.is_array()) throw ConfigError("grid.units must be an array");
        for (std::size_t k = 0; k < u.size(); ++k)
          cfg.grid.units.push_back(unit_of(u[k], "grid.units[" + std::to_string(k) + "]"));
      }
    }
    if (j.contains("seed")) {
      const json& s = j.at("seed");
      if (!s.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
      cfg.seed = s.get<std::uint64_t>();
    }
    if (j.contains("variant")) {
      if (!j.at("variant").is_string()) throw ConfigError("variant must be a string");
      cfg.variant = parse_variant(j.at("variant").get<std::string>());
    }
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      if (!t.is_object()) throw ConfigError("tolerances must be an object");
      for (const auto& [k, v] : t.items()) cfg.tolerances[k] = number(v, "tolerances." + k);
    }
    if (j.contains("example45")) {
      const json& e = j.at("example45");
      only_keys(e, "example45", {"q1", "q2", "delta", "gamma"});
      if (e.contains("q1")) cfg.example45.q1 = quaternion_of(e.at("q1"), "example45.q1");
      if (e.contains("q2")) cfg.example45.q2 = quaternion_of(e.at("q2"), "example45.q2");
      if (e.contains("delta")) cfg.example45.delta = complex_of(e.at("delta"), "example45.delta");
      if (e.contains("gamma")) cfg.example45.gamma_p = complex_of(e.at("gamma"), "example45.gamma");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string run_config_to_json(const RunConfig& c) {
  json j;
  j["domain"] = {{"a", c.domain.a}, {"b", c.domain.b}, {"c", c.domain.c}, {"u", c.domain.u}, {"v", c.domain.v}};
  j["orders"] = {{"alpha", complex_json(c.orders.alpha.value())}, {"beta", complex_json(c.orders.beta.value())}};
  j["quadrature"] = {{"nodes", c.quadrature.nodes},
                     {"diff_step", c.quadrature.diff_step},
                     {"richardson_levels", c.quadrature.richardson_levels}};
  json units = json::array();
  for (const auto& u : c.grid.units) units.push_back({u.u1(), u.u2(), u.u3()});
  j["grid"] = {{"units", units}, {"random_units", c.grid.random_units}, {"nx", c.grid.nx}, {"ny", c.grid.ny},
               {"margin", c.grid.margin}};
  j["seed"] = c.seed;
  j["variant"] = variant_name(c.variant);
  j["tolerances"] = json::object();
  for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
  j["example45"] = {{"q1", quaternion_json(c.example45.q1)},
                    {"q2", quaternion_json(c.example45.q2)},
                    {"delta", complex_json(c.example45.delta)},
                    {"gamma", complex_json(c.example45.gamma_p)}};
  return j.dump(2);
}

MonomialSum parse_monomial_sum(const std::string& text, double default_anchor) {
  const json j = parse_text(text, "function");
  try {
    return sum_from_json(j, default_anchor);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("function: ") + e.what());
  }
}

std::string monomial_sum_to_json(const MonomialSum& s) {
  const Frame& f = s.frame();
  json terms = json::array();
  for (const auto& t : s.terms())
    terms.push_back({{"c", complex_json(t.scalar)},
                     {"mu", complex_json(t.mu)},
                     {"nu", complex_json(t.nu)},
                     {"q", quaternion_json(t.right_const)}});
  json j = {{"frame", {{"x_anchor", f.x_anchor}, {"x_dir", f.x_dir}, {"y_anchor", f.y_anchor}, {"y_dir", f.y_dir}}},
            {"terms", terms}};
  return j.dump(2);
}

bool is_builtin(const std::string& name) {
  static const std::set<std::string> names = {"one",       "zero",         "identity",     "q2",
                                              "example45", "kernel_power", "kernel_linear"};
  return names.count(name) > 0;
}

MonomialSum builtin_function(const std::string& name, const RunConfig& cfg) {
  const double a = cfg.domain.a;
  if (name == "one") return slice_polynomial({Quaternion(1.0)}, a);
  if (name == "zero") return MonomialSum(Frame{a, 1.0, 0.0, 1.0});
  // q = (q - a) + a, q^2 = (q - a)^2 + 2a (q - a) + a^2
  if (name == "identity") return slice_polynomial({Quaternion(a), Quaternion(1.0)}, a);
  if (name == "q2") return slice_polynomial({Quaternion(a * a), Quaternion(2.0 * a), Quaternion(1.0)}, a);
  if (name == "example45") return example45(cfg.example45, cfg.orders, cfg.domain, cfg.variant);
  if (name == "kernel_power") return kernel_power(cfg.orders, cfg.domain);
  if (name == "kernel_linear") return kernel_linear(cfg.orders, cfg.domain);
  throw ConfigError("unknown function '" + name +
                    "' (builtins: one, zero, identity, q2, example45, kernel_power, kernel_linear, or inline JSON)");
}

MonomialSum resolve_function(const std::string& text, const RunConfig& cfg) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
    return parse_monomial_sum(text, cfg.domain.a);
  return builtin_function(text, cfg);
}

}  // namespace fracslice
