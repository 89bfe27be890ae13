// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qweyl/braidops.hpp"
#include "qweyl/glrep.hpp"
#include "qweyl/monodromy.hpp"
#include "qweyl/qmatspace.hpp"

using namespace qweyl;
using Cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("runtime budget exceeded");
  }
  if (!ok) ++failures;
  std::printf("[%s] C%02d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              secs, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

const std::vector<Cplx> kHSamples = {Cplx(0.02, 0.0), Cplx(0.05, 0.0), Cplx(0.03, 0.01)};

}  // namespace

int main() {
  criterion(1, "exact R_j = S_j * correction, k,n in {2,3}, bidegree sum <= 4", 60.0,
            [](std::string& detail) {
              for (int k = 2; k <= 3; ++k)
                for (int n = 2; n <= 3; ++n) {
                  auto rep = braidops::verify_RS(k, n, 4);
                  if (!rep.pass || !rep.warnings.empty()) {
                    detail = "k=" + std::to_string(k) + " n=" + std::to_string(n);
                    for (const auto& c : rep.checks)
                      if (!c.pass) detail += " " + c.certificate;
                    return false;
                  }
                }
              return true;
            });

  criterion(2, "q-Serre relations exact for both actions, k,n <= 3, degree <= 4", 0,
            [](std::string& detail) {
              for (int k = 1; k <= 3; ++k)
                for (int n = 1; n <= 3; ++n)
                  for (auto side : {qmat::Side::K, qmat::Side::N}) {
                    auto rep = qmat::verify_serre(k, n, side, 4);
                    if (!rep.pass) {
                      detail = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                               " " + rep.violations.front().relation;
                      return false;
                    }
                  }
              return true;
            });

  criterion(3, "straightening: 1000 seeded words, confluence and span; dims d <= 5", 0,
            [](std::string& detail) {
              Rng rng(20260808);
              for (int t = 0; t < 1000; ++t) {
                qmat::QWord w;
                w.k = static_cast<int>(rng.range(2, 3));
                w.n = static_cast<int>(rng.range(2, 3));
                long len = rng.range(0, 6);
                for (long i = 0; i < len; ++i)
                  w.letters.emplace_back(static_cast<int>(rng.range(1, w.k)),
                                         static_cast<int>(rng.range(1, w.n)));
                auto a = qmat::straighten(w, qmat::RewriteStrategy::LeftmostFirst);
                auto b = qmat::straighten(w, qmat::RewriteStrategy::RightmostFirst);
                if (!(a == b)) {
                  detail = "strategies disagree at word " + std::to_string(t);
                  return false;
                }
                for (const auto& [m, c] : a.terms())
                  if (m.degree() != len) {
                    detail = "degree not preserved at word " + std::to_string(t);
                    return false;
                  }
              }
              for (int k = 1; k <= 3; ++k)
                for (int n = 1; n <= 3; ++n)
                  for (long d = 0; d <= 5; ++d)
                    if (Int(MonomialBasis::degree(k, n, d).size()) !=
                        glrep::binomial(static_cast<long>(k) * n + d - 1, d)) {
                      detail = "dimension mismatch";
                      return false;
                    }
              return true;
            });

  criterion(4, "2 Omega~_ij = kappa_ij - E_ii - E_jj exactly, k,n <= 3, degree <= 5", 0,
            [](std::string& detail) {
              for (int k = 1; k <= 3; ++k)
                for (int n = 2; n <= 3; ++n)
                  for (long d = 0; d <= 5; ++d) {
                    MonomialBasis b = MonomialBasis::degree(k, n, d);
                    for (int i = 1; i <= n; ++i)
                      for (int j = i + 1; j <= n; ++j) {
                        auto lhs = glrep::omega_operator(i, j, b, glrep::OmegaVariant::GL)
                                       .scaled(Rat(2));
                        auto rhs = glrep::casimir_truncated(i, j, b) -
                                   glrep::gl_generator(glrep::Side::N, i, i, b) -
                                   glrep::gl_generator(glrep::Side::N, j, j, b);
                        if (!(lhs == rhs)) {
                          detail = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                                   " d=" + std::to_string(d);
                          return false;
                        }
                      }
                  }
              return true;
            });

  criterion(5, "Howe dimension identity, k,n <= 4, d <= 6, exact integers", 0,
            [](std::string& detail) {
              for (int k = 1; k <= 4; ++k)
                for (int n = 1; n <= 4; ++n)
                  for (int d = 0; d <= 6; ++d) {
                    Int total = 0;
                    for (const auto& c : glrep::howe_components(k, n, d))
                      total += c.dim_k * c.dim_n;
                    if (total != glrep::binomial(static_cast<long>(k) * n + d - 1, d)) {
                      detail = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                               " d=" + std::to_string(d);
                      return false;
                    }
                  }
              return true;
            });

  criterion(6, "q-Pieri kernel dimension and exact annihilation of v_i, mu <= 4, k <= 3",
            0, [](std::string& detail) {
              for (int k = 2; k <= 3; ++k)
                for (long mu1 = 0; mu1 <= 4; ++mu1)
                  for (long mu2 = 0; mu2 <= 4; ++mu2) {
                    MonomialBasis b = MonomialBasis::multidegree(k, 2, {mu1, mu2});
                    auto kernel = qmat::quantum_singular_vectors(b);
                    if (static_cast<long>(kernel.size()) != std::min(mu1, mu2) + 1) {
                      detail = "kernel dim k=" + std::to_string(k) + " (" +
                               std::to_string(mu1) + "," + std::to_string(mu2) + ")";
                      return false;
                    }
                    for (long i = 0; i <= std::min(mu1, mu2); ++i) {
                      auto v = qmat::hw_vector(k, mu1, mu2, i);
                      for (int a = 1; a <= k - 1; ++a)
                        if (!qmat::apply_uq(qmat::Side::K, qmat::Gen::E, a, v).is_zero()) {
                          detail = "v_i not annihilated";
                          return false;
                        }
                    }
                  }
              return true;
            });

  criterion(7, "S^mu_alpha = 1 exactly for 0 <= alpha <= mu <= 8", 0,
            [](std::string& detail) {
              for (long mu = 0; mu <= 8; ++mu)
                for (long alpha = 0; alpha <= mu; ++alpha)
                  if (!braidops::s_mu_alpha(mu, alpha).is_one()) {
                    detail = "mu=" + std::to_string(mu) + " alpha=" + std::to_string(alpha);
                    return false;
                  }
              return true;
            });

  criterion(8, "Kohno flatness exact: Casimir n <= 4 (fibres <= 100), KZ n <= 3", 0,
            [](std::string& detail) {
              for (int n = 2; n <= 4; ++n) {
                for (auto [k, d] : {std::pair{1, 3}, {2, 2}, {3, 2}}) {
                  if (MonomialBasis::degree(k, n, d).size() > 100) continue;
                  MonomialBasis b = MonomialBasis::degree(k, n, d);
                  std::vector<SparseOp<Rat>> kappa;
                  for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j)
                      kappa.push_back(glrep::casimir_truncated(i, j, b));
                  if (!mono::kohno_flatness(mono::casimir_connection(n, kappa)).pass) {
                    detail = "casimir n=" + std::to_string(n);
                    return false;
                  }
                }
              }
              for (int n = 2; n <= 3; ++n)
                for (int k = 1; k <= 2; ++k) {
                  std::vector<long> mu(n, 1);
                  MonomialBasis b = MonomialBasis::multidegree(k, n, mu);
                  std::vector<SparseOp<Rat>> omega;
                  for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j)
                      omega.push_back(
                          glrep::omega_operator(i, j, b, glrep::OmegaVariant::SL));
                  if (!mono::kohno_flatness(mono::kz_connection(n, omega)).pass) {
                    detail = "kz n=" + std::to_string(n);
                    return false;
                  }
                }
              return true;
            });

  criterion(9, "braid relations: S_j exact on S_h(k,3) deg <= 3; numeric residual < 1e-6",
            0, [](std::string& detail) {
              for (int k = 2; k <= 3; ++k)
                for (long d = 0; d <= 3; ++d) {
                  MonomialBasis b = MonomialBasis::degree(k, 3, d);
                  std::vector<braidops::BraidOperator> ops;
                  for (int j = 1; j <= 2; ++j)
                    ops.push_back(
                        braidops::BraidOperator{braidops::weyl_element_j(j, b), "S", j});
                  if (!braidops::verify_braid_relations(ops).pass) {
                    detail = "exact S family k=" + std::to_string(k) +
                             " d=" + std::to_string(d);
                    return false;
                  }
                }
              mono::HarnessConfig hc;
              hc.n = 3;
              hc.k = 3;
              hc.lambda = {1};
              hc.h_values = {Cplx(0.05, 0.0)};
              hc.ode_tol = 1e-10;
              hc.spec_tol = 1e-6;
              auto res = mono::main_theorem_harness(hc);
              if (res.worst_braid_residual >= 1e-6) {
                detail = "numeric braid residual " + std::to_string(res.worst_braid_residual);
                return false;
              }
              return true;
            });

  criterion(10, "sl_2 closed form: monodromy eigenvalues {+-i e^{i pi h}} = S spectra",
            5.0, [](std::string& detail) {
              mono::HarnessConfig hc;
              hc.n = 2;
              hc.k = 2;
              hc.lambda = {1};
              hc.h_values = kHSamples;
              hc.ode_tol = 1e-12;
              hc.spec_tol = 1e-8;
              auto res = mono::main_theorem_harness(hc);
              if (!res.pass) {
                detail = "spectral deviation " + std::to_string(res.worst_deviation);
                return false;
              }
              for (const auto& rep : res.reports) {
                Cplx w = Cplx(0, 1) * std::exp(Cplx(0, kPi) * rep.h);
                std::vector<Cplx> closed{w, -w};
                std::vector<int> perm;
                double dev = mono::bottleneck_match(rep.eigen_monodromy, closed, perm);
                if (dev >= 1e-8) {
                  detail = "closed-form deviation " + std::to_string(dev);
                  return false;
                }
              }
              return true;
            });

  criterion(11, "main theorem at n = 3: lambda (1,0,0) and (2,1,0), three h samples",
            300.0, [](std::string& detail) {
              struct Case {
                glrep::Partition lambda;
                std::vector<long> mu;
              };
              for (const auto& cs : {Case{{1}, {}}, Case{{2, 1}, {2, 1, 0}},
                                     Case{{2, 1}, {1, 1, 1}}}) {
                mono::HarnessConfig hc;
                hc.n = 3;
                hc.k = 3;
                hc.lambda = cs.lambda;
                hc.mu = cs.mu;
                hc.h_values = kHSamples;
                hc.ode_tol = 1e-12;
                hc.spec_tol = 1e-6;
                auto res = mono::main_theorem_harness(hc);
                if (res.worst_deviation >= 1e-6) {
                  detail = "spectral deviation " + std::to_string(res.worst_deviation);
                  return false;
                }
                if (res.worst_trace_deviation >= 1e-5) {
                  detail = "trace deviation " + std::to_string(res.worst_trace_deviation);
                  return false;
                }
                if (res.worst_braid_residual >= 1e-6) {
                  detail = "braid residual " + std::to_string(res.worst_braid_residual);
                  return false;
                }
              }
              return true;
            });

  criterion(12, "KZ/Casimir bridge on (k,n) = (2,3), mu = (1,1,1), residual < 1e-6", 0,
            [](std::string& detail) {
              for (Cplx h : {Cplx(0.05, 0.0), Cplx(0.03, 0.01)}) {
                auto res = mono::kz_casimir_bridge(2, 3, {1, 1, 1}, h, 1e-12, 1e-6);
                if (!res.pass) {
                  detail = "residual " + std::to_string(res.worst_residual);
                  return false;
                }
              }
              return true;
            });

  if (failures == 0)
    std::printf("acceptance: all 12 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
