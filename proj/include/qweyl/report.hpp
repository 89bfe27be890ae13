#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qweyl::report {

struct Check {
  std::string identity;
  std::string block;
  long dimension = 0;
  bool pass = true;
  double residual = 0.0;          // numeric residual when applicable
  std::string certificate;        // failure certificate / exact residual text
  std::string info;               // auxiliary detail (integrator statistics, ...)
};

struct Report {
  std::string suite;
  bool pass = true;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> config;  // ordered key/value

  void add(Check c) {
    if (!c.pass) pass = false;
    checks.push_back(std::move(c));
  }
  void set_config(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
  }
};

// Versioned JSON document (schema: 1), deterministic key order.
std::string to_json(const Report& rep);

// Deterministic human-readable table: suite, block, dimension, status, worst
// residual.
std::string render_table(const Report& rep);

// Eigenvalue table: re, im, matched_re, matched_im, deviation.
std::string eigenvalues_csv(const std::vector<std::complex<double>>& got,
                            const std::vector<std::complex<double>>& matched);

}  // namespace qweyl::report
