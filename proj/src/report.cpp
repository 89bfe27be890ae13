#include "qweyl/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace qweyl::report {

using ordered_json = nlohmann::ordered_json;

std::string to_json(const Report& rep) {
  ordered_json j;
  j["schema"] = 1;
  j["suite"] = rep.suite;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : rep.config) cfg[k] = v;
  j["config"] = cfg;
  j["pass"] = rep.pass;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json jc;
    jc["identity"] = c.identity;
    jc["block"] = c.block;
    jc["dimension"] = c.dimension;
    jc["status"] = c.pass ? "pass" : "fail";
    if (c.residual != 0.0) jc["residual"] = c.residual;
    if (!c.certificate.empty()) jc["residual_certificate"] = c.certificate;
    if (!c.info.empty()) jc["info"] = c.info;
    checks.push_back(std::move(jc));
  }
  j["checks"] = checks;
  if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
  return j.dump(2) + "\n";
}

std::string render_table(const Report& rep) {
  std::ostringstream os;
  os << "suite: " << rep.suite << "\n";
  std::size_t wident = 8, wblock = 5;
  for (const auto& c : rep.checks) {
    wident = std::max(wident, c.identity.size());
    wblock = std::max(wblock, c.block.size());
  }
  wident = std::min<std::size_t>(wident, 48);
  wblock = std::min<std::size_t>(wblock, 32);
  os << std::left << std::setw(static_cast<int>(wident)) << "identity" << "  "
     << std::setw(static_cast<int>(wblock)) << "block" << "  " << std::setw(6) << "dim"
     << "  " << std::setw(6) << "status" << "  residual\n";
  for (const auto& c : rep.checks) {
    os << std::left << std::setw(static_cast<int>(wident)) << c.identity.substr(0, wident)
       << "  " << std::setw(static_cast<int>(wblock)) << c.block.substr(0, wblock) << "  "
       << std::setw(6) << c.dimension << "  " << std::setw(6)
       << (c.pass ? "OK" : "FAIL") << "  ";
    if (c.residual != 0.0)
      os << std::scientific << std::setprecision(3) << c.residual;
    else
      os << (c.pass ? "0" : c.certificate.substr(0, 60));
    os << "\n";
  }
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  os << (rep.pass ? "ALL CHECKS PASSED" : "FAILURES PRESENT") << " ("
     << rep.checks.size() << " checks)\n";
  return os.str();
}

std::string eigenvalues_csv(const std::vector<std::complex<double>>& got,
                            const std::vector<std::complex<double>>& matched) {
  std::ostringstream os;
  os << "re,im,matched_re,matched_im,deviation\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < got.size(); ++i) {
    os << got[i].real() << "," << got[i].imag() << "," << matched[i].real() << ","
       << matched[i].imag() << "," << std::abs(got[i] - matched[i]) << "\n";
  }
  return os.str();
}

}  // namespace qweyl::report
