#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "fracslice/theorems.hpp"

namespace fracslice {

/// Everything the driver reads from its JSON config. Missing keys keep the
/// defaults below; unknown keys and identity names are rejected.
struct RunConfig {
  SliceDomain domain;
  OrderPair orders = VerifyContext{}.orders;
  QuadratureConfig quadrature;
  GridSpec grid;
  std::uint64_t seed = 0;
  Variant variant = Variant::Corrected;
  std::map<std::string, double> tolerances;
  Example45Params example45;

  /// Runs every component validation; throws ConfigError.
  void validate() const;
  VerifyContext context() const;
};

/// Parses a config document. All failures surface as ConfigError.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& cfg);

/// Inline sum:
///   {"frame": {"x_anchor": a, "x_dir": 1, "y_anchor": 0, "y_dir": 1},
///    "terms": [{"c": [re, im], "mu": [re, im], "nu": [re, im], "q": [w, x1, x2, x3]}]}
/// Every field is optional (c = 1, mu = nu = 0, q = 1); numbers are accepted
/// for real complex values. A bare term array is also accepted. Without a
/// frame the sum is anchored at `default_anchor`.
MonomialSum parse_monomial_sum(const std::string& json_text, double default_anchor = 0.0);
std::string monomial_sum_to_json(const MonomialSum& s);

/// Builtins: one, zero, identity, q2, example45, kernel_power, kernel_linear.
bool is_builtin(const std::string& name);
MonomialSum builtin_function(const std::string& name, const RunConfig& cfg);
/// A builtin name, or inline JSON (text starting with '{' or '[').
MonomialSum resolve_function(const std::string& text, const RunConfig& cfg);

}  // namespace fracslice
