// Command-line front end: run named verification suites over the quantum
// matrix space operators and the Casimir/KZ monodromy, emit JSON reports and
// a human-readable summary.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qweyl/braidops.hpp"
#include "qweyl/glrep.hpp"
#include "qweyl/monodromy.hpp"
#include "qweyl/qmatspace.hpp"
#include "qweyl/report.hpp"

using namespace qweyl;
using report::Check;
using report::Report;
using Cplx = std::complex<double>;

namespace {

struct RunConfig {
  std::string suite;
  int k = 2;
  int n = 2;
  int deg = 3;
  std::vector<long> lambda;
  std::vector<long> mu;
  std::vector<std::string> h = {"0.05"};
  double tol_ode = 1e-12;
  double tol_spec = 1e-6;
  std::string out;
  std::string csv;
  unsigned long long seed = 20260808;
  bool parallel = false;
  std::string type = "casimir";
  long words = 1000;
};

Cplx parse_complex(const std::string& in) {
  std::string s;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw CLI::ValidationError("empty complex number");
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  }
  auto to_double = [](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    if (split == std::string::npos) return Cplx(0.0, to_double(body));
    return Cplx(to_double(body.substr(0, split)), to_double(body.substr(split)));
  }
  if (split != std::string::npos && s.find('i') != std::string::npos)
    throw CLI::ValidationError("complex number must end in i");
  return Cplx(std::stod(s), 0.0);
}

std::vector<Cplx> parse_h(const std::vector<std::string>& hs) {
  std::vector<Cplx> out;
  for (const auto& s : hs) out.push_back(parse_complex(s));
  return out;
}

std::string vec_str(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string cplx_str(Cplx z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
  return os.str();
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 1) {}
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

// ---- suites -----------------------------------------------------------------

Report suite_serre(const RunConfig& cfg) {
  Report rep;
  rep.suite = "serre";
  for (auto side : {qmat::Side::K, qmat::Side::N}) {
    auto r = qmat::verify_serre(cfg.k, cfg.n, side, cfg.deg);
    Check c;
    c.identity = std::string("q-Serre relations, ") +
                 (side == qmat::Side::K ? "gl_k action" : "gl_n action");
    c.block = "degree <= " + std::to_string(cfg.deg);
    c.dimension = r.relations_checked;
    c.pass = r.pass;
    if (!r.violations.empty())
      c.certificate = r.violations.front().relation + " @ " + r.violations.front().entry +
                      " : " + r.violations.front().residual;
    rep.add(std::move(c));
  }
  return rep;
}

Report suite_manin(const RunConfig& cfg) {
  Report rep;
  rep.suite = "manin";
  Rng rng(cfg.seed);
  long violations = 0;
  std::string cert;
  for (long t = 0; t < cfg.words; ++t) {
    qmat::QWord w;
    w.k = static_cast<int>(rng.range(2, std::max(2, cfg.k)));
    w.n = static_cast<int>(rng.range(2, std::max(2, cfg.n)));
    long len = rng.range(0, 6);
    for (long i = 0; i < len; ++i)
      w.letters.emplace_back(static_cast<int>(rng.range(1, w.k)),
                             static_cast<int>(rng.range(1, w.n)));
    auto left = qmat::straighten(w, qmat::RewriteStrategy::LeftmostFirst);
    auto right = qmat::straighten(w, qmat::RewriteStrategy::RightmostFirst);
    bool ok = left == right;
    // the normal form lies in the degree-len monomial span
    for (const auto& [m, c] : left.terms())
      if (m.degree() != len) ok = false;
    if (!ok) {
      ++violations;
      if (cert.empty()) cert = "word #" + std::to_string(t);
    }
  }
  Check c1;
  c1.identity = "straightening: strategy independence + span membership";
  c1.block = std::to_string(cfg.words) + " random words, length <= 6";
  c1.dimension = cfg.words;
  c1.pass = violations == 0;
  c1.certificate = cert;
  rep.add(std::move(c1));
  for (int k = 2; k <= std::max(2, cfg.k); ++k)
    for (int n = 2; n <= std::max(2, cfg.n); ++n)
      for (long d = 0; d <= std::min(cfg.deg, 5); ++d) {
        Check c;
        c.identity = "monomial count = C(kn+d-1, d)";
        c.block = "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                  " d=" + std::to_string(d);
        long dim = MonomialBasis::degree(k, n, d).size();
        c.dimension = dim;
        c.pass = Int(dim) == glrep::binomial(static_cast<long>(k) * n + d - 1, d);
        rep.add(std::move(c));
      }
  return rep;
}

Report suite_howe_dims(const RunConfig& cfg) {
  Report rep;
  rep.suite = "howe-dims";
  for (int k = 1; k <= cfg.k; ++k)
    for (int n = 1; n <= cfg.n; ++n) {
      bool pass = true;
      long worst_dim = 0;
      for (int d = 0; d <= cfg.deg; ++d) {
        Int total = 0;
        for (const auto& comp : glrep::howe_components(k, n, d))
          total += comp.dim_k * comp.dim_n;
        Int expect = glrep::binomial(static_cast<long>(k) * n + d - 1, d);
        if (total != expect) pass = false;
        worst_dim = std::max(worst_dim, expect.get_si());
      }
      Check c;
      c.identity = "sum dim x dim = C(kn+d-1, d), d <= " + std::to_string(cfg.deg);
      c.block = "k=" + std::to_string(k) + " n=" + std::to_string(n);
      c.dimension = worst_dim;
      c.pass = pass;
      rep.add(std::move(c));
    }
  return rep;
}

Report suite_omega_kappa(const RunConfig& cfg) {
  Report rep;
  rep.suite = "omega-kappa";
  for (int d = 0; d <= cfg.deg; ++d) {
    MonomialBasis b = MonomialBasis::degree(cfg.k, cfg.n, d);
    bool pass = true;
    for (int i = 1; i <= cfg.n && pass; ++i)
      for (int j = i + 1; j <= cfg.n && pass; ++j) {
        auto lhs = glrep::omega_operator(i, j, b, glrep::OmegaVariant::GL).scaled(Rat(2));
        auto rhs = glrep::casimir_truncated(i, j, b) -
                   glrep::gl_generator(glrep::Side::N, i, i, b) -
                   glrep::gl_generator(glrep::Side::N, j, j, b);
        if (!(lhs == rhs)) pass = false;
      }
    Check c;
    c.identity = "2 Omega~_ij = kappa_ij - E_ii - E_jj";
    c.block = "degree " + std::to_string(d);
    c.dimension = b.size();
    c.pass = pass;
    rep.add(std::move(c));
  }
  return rep;
}

Report suite_q_pieri(const RunConfig& cfg) {
  Report rep;
  rep.suite = "q-pieri";
  for (int k = 2; k <= std::max(2, cfg.k); ++k)
    for (long mu1 = 0; mu1 <= cfg.deg; ++mu1)
      for (long mu2 = 0; mu2 <= cfg.deg; ++mu2) {
        MonomialBasis b = MonomialBasis::multidegree(k, 2, {mu1, mu2});
        auto kernel = qmat::quantum_singular_vectors(b);
        bool pass = static_cast<long>(kernel.size()) == std::min(mu1, mu2) + 1;
        for (long i = 0; i <= std::min(mu1, mu2) && pass; ++i) {
          auto v = qmat::hw_vector(k, mu1, mu2, i);
          for (int a = 1; a <= k - 1; ++a)
            if (!qmat::apply_uq(qmat::Side::K, qmat::Gen::E, a, v).is_zero()) pass = false;
        }
        Check c;
        c.identity = "raising kernel dim = min+1; v_i annihilated";
        c.block = "k=" + std::to_string(k) + " (" + std::to_string(mu1) + "," +
                  std::to_string(mu2) + ")";
        c.dimension = b.size();
        c.pass = pass;
        rep.add(std::move(c));
      }
  return rep;
}

Report suite_rs_identity(const RunConfig& cfg) {
  Report rep;
  rep.suite = "rs-identity";
  auto r = braidops::verify_RS(cfg.k, cfg.n, cfg.deg, cfg.parallel);
  for (const auto& c : r.checks) {
    Check rc;
    rc.identity = c.mu1 >= 0 ? "R_j = S_j * correction" : "R_j = S_j * correction (lifted, n=3)";
    rc.block = c.mu1 >= 0 ? "j=" + std::to_string(c.j) + " (" + std::to_string(c.mu1) +
                               "," + std::to_string(c.mu2) + ")"
                          : "j=" + std::to_string(c.j) + " deg=" + std::to_string(c.mu2);
    rc.dimension = c.dimension;
    rc.pass = c.pass;
    rc.certificate = c.certificate;
    rep.add(std::move(rc));
  }
  rep.warnings = r.warnings;
  return rep;
}

Report suite_braid(const RunConfig& cfg) {
  Report rep;
  rep.suite = "braid";
  for (long d = 0; d <= cfg.deg; ++d) {
    MonomialBasis b = MonomialBasis::degree(cfg.k, 3, d);
    std::vector<braidops::BraidOperator> ops;
    for (int j = 1; j <= 2; ++j)
      ops.push_back(braidops::BraidOperator{braidops::weyl_element_j(j, b), "S", j});
    auto r = braidops::verify_braid_relations(ops);
    Check c;
    c.identity = "S_1 S_2 S_1 = S_2 S_1 S_2 on S_h(k,3)";
    c.block = "degree " + std::to_string(d);
    c.dimension = b.size();
    c.pass = r.pass;
    rep.add(std::move(c));
  }
  {
    auto s1 = glrep::sigma_matrix(1, 3), s2 = glrep::sigma_matrix(2, 3);
    Check c;
    c.identity = "sigma braid relation (integer matrices)";
    c.block = "n=3";
    c.dimension = 3;
    c.pass = s1 * s2 * s1 == s2 * s1 * s2;
    rep.add(std::move(c));
  }
  {
    mono::HarnessConfig hc;
    hc.n = 3;
    hc.k = 3;
    hc.lambda = {1};
    hc.h_values = parse_h(cfg.h);
    hc.ode_tol = cfg.tol_ode;
    hc.spec_tol = cfg.tol_spec;
    hc.parallel = cfg.parallel;
    auto r = mono::main_theorem_harness(hc);
    Check c;
    c.identity = "numerical monodromy braid relation (vector rep)";
    c.block = "n=3";
    c.dimension = r.fibre_dim;
    c.residual = r.worst_braid_residual;
    c.pass = r.worst_braid_residual < cfg.tol_spec;
    rep.add(std::move(c));
  }
  return rep;
}

Report suite_flatness(const RunConfig& cfg) {
  Report rep;
  rep.suite = "flatness";
  if (cfg.type == "casimir") {
    for (int n = 2; n <= cfg.n; ++n) {
      long d = cfg.deg;
      long dim;
      // keep fibres at desk scale
      while ((dim = MonomialBasis::degree(cfg.k, n, d).size()) > 100 && d > 1) --d;
      MonomialBasis b = MonomialBasis::degree(cfg.k, n, d);
      std::vector<SparseOp<Rat>> kappa;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          kappa.push_back(glrep::casimir_truncated(i, j, b));
      auto r = mono::kohno_flatness(mono::casimir_connection(n, kappa));
      Check c;
      c.identity = "Kohno codimension-2 commutators (Casimir)";
      c.block = "n=" + std::to_string(n) + " fibre deg " + std::to_string(d) + ", " +
                std::to_string(r.families) + " families";
      c.dimension = dim;
      c.pass = r.pass;
      rep.add(std::move(c));
    }
  } else if (cfg.type == "kz") {
    for (int n = 2; n <= std::min(cfg.n, 3); ++n) {
      std::vector<long> mu(n, 1);
      MonomialBasis b = MonomialBasis::multidegree(cfg.k, n, mu);
      std::vector<SparseOp<Rat>> omega;
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          omega.push_back(glrep::omega_operator(i, j, b, glrep::OmegaVariant::SL));
      auto r = mono::kohno_flatness(mono::kz_connection(n, omega));
      Check c;
      c.identity = "Kohno codimension-2 commutators (KZ)";
      c.block = "n=" + std::to_string(n) + " block (1,...,1)";
      c.dimension = b.size();
      c.pass = r.pass;
      rep.add(std::move(c));
    }
  } else {
    throw CLI::ValidationError("--type must be casimir or kz");
  }
  return rep;
}

Report suite_kz_casimir(const RunConfig& cfg) {
  Report rep;
  rep.suite = "kz-casimir";
  std::vector<long> mu = cfg.mu.empty() ? std::vector<long>(cfg.n, 1) : cfg.mu;
  for (Cplx h : parse_h(cfg.h)) {
    auto r = mono::kz_casimir_bridge(cfg.k, cfg.n, mu, h, cfg.tol_ode, cfg.tol_spec);
    for (auto& [j, resid] : r.per_generator) {
      Check c;
      c.identity = "pi_KZ^{2h}(T_j) = pi_kappa^h(T_j) * diag * parity";
      c.block = "j=" + std::to_string(j) + " h=" + cplx_str(h);
      c.dimension = r.fibre_dim;
      c.residual = resid;
      c.pass = resid < cfg.tol_spec;
      rep.add(std::move(c));
    }
  }
  return rep;
}

Report suite_main_theorem(const RunConfig& cfg) {
  Report rep;
  rep.suite = "main-theorem";
  mono::HarnessConfig hc;
  hc.n = cfg.n;
  hc.k = std::max(cfg.k, cfg.n);
  hc.lambda = cfg.lambda.empty() ? glrep::Partition{1} : cfg.lambda;
  hc.mu = cfg.mu;
  hc.h_values = parse_h(cfg.h);
  hc.ode_tol = cfg.tol_ode;
  hc.spec_tol = cfg.tol_spec;
  hc.parallel = cfg.parallel;
  auto r = mono::main_theorem_harness(hc);
  std::string csv;
  for (const auto& mrep : r.reports) {
    Check c;
    c.identity = "monodromy spectra vs quantum Weyl spectra";
    c.block = "T_" + std::to_string(mrep.generator) + " h=" + cplx_str(mrep.h);
    c.dimension = r.fibre_dim;
    c.residual = mrep.max_deviation;
    c.pass = mrep.max_deviation < cfg.tol_spec;
    {
      std::ostringstream os;
      os << "ode steps: accepted " << mrep.stats.accepted << ", rejected "
         << mrep.stats.rejected << ", tol " << mrep.stats.tol;
      c.info = os.str();
    }
    rep.add(std::move(c));
    if (!cfg.csv.empty())
      csv += report::eigenvalues_csv(mrep.eigen_monodromy, mrep.eigen_target);
  }
  {
    Check c;
    c.identity = "braid relations of the monodromy matrices";
    c.block = "all h";
    c.dimension = r.fibre_dim;
    c.residual = r.worst_braid_residual;
    c.pass = r.worst_braid_residual < cfg.tol_spec;
    rep.add(std::move(c));
  }
  {
    Check c;
    c.identity = "word traces tr(M_w) vs tr(S_w)";
    c.block = "all h";
    c.dimension = r.fibre_dim;
    c.residual = r.worst_trace_deviation;
    c.pass = r.worst_trace_deviation < 10.0 * cfg.tol_spec;
    rep.add(std::move(c));
  }
  if (!cfg.csv.empty()) {
    std::ofstream f(cfg.csv);
    f << csv;
  }
  return rep;
}

void fill_config_json(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("cannot open config file " + path);
  nlohmann::json j;
  f >> j;
  if (j.contains("k")) cfg.k = j["k"];
  if (j.contains("n")) cfg.n = j["n"];
  if (j.contains("deg")) cfg.deg = j["deg"];
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<std::vector<long>>();
  if (j.contains("mu")) cfg.mu = j["mu"].get<std::vector<long>>();
  if (j.contains("h")) cfg.h = j["h"].get<std::vector<std::string>>();
  if (j.contains("tol-ode")) cfg.tol_ode = j["tol-ode"];
  if (j.contains("tol-spec")) cfg.tol_spec = j["tol-spec"];
  if (j.contains("out")) cfg.out = j["out"];
  if (j.contains("csv")) cfg.csv = j["csv"];
  if (j.contains("seed")) cfg.seed = j["seed"];
  if (j.contains("parallel")) cfg.parallel = j["parallel"];
  if (j.contains("type")) cfg.type = j["type"];
  if (j.contains("words")) cfg.words = j["words"];
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  // config file first, flags override
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        fill_config_json(cfg, argv[i + 1]);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
    }

  CLI::App app{"verification suites for quantum Weyl group / monodromy identities"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");

  const std::vector<std::string> suites = {
      "serre",    "manin",       "howe-dims",  "omega-kappa", "q-pieri",
      "rs-identity", "braid",    "flatness",   "kz-casimir",  "main-theorem"};
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : suites) {
    CLI::App* sub = app.add_subcommand(name);
    sub->set_help_flag("--help", "print usage");
    sub->add_option("--config", config_path, "JSON config file (flags override it)");
    sub->add_option("--k", cfg.k, "gl_k rank / rank bound");
    sub->add_option("--n", cfg.n, "gl_n rank / rank bound");
    sub->add_option("--deg", cfg.deg, "degree / weight bound");
    sub->add_option("--lambda", cfg.lambda, "highest weight (comma separated)")
        ->delimiter(',');
    sub->add_option("--mu", cfg.mu, "weight whose orbit spans the fibre")
        ->delimiter(',');
    sub->add_option("--h", cfg.h, "deformation parameter samples (complex, e.g. 0.03+0.01i)")
        ->delimiter(',');
    sub->add_option("--tol-ode", cfg.tol_ode, "integrator relative tolerance");
    sub->add_option("--tol-spec", cfg.tol_spec, "spectral comparison tolerance");
    sub->add_option("--out", cfg.out, "write the JSON report here");
    sub->add_option("--csv", cfg.csv, "write eigenvalue tables here (CSV)");
    sub->add_option("--seed", cfg.seed, "seed for randomized property checks");
    sub->add_flag("--parallel", cfg.parallel, "run independent blocks concurrently");
    sub->add_option("--type", cfg.type, "flatness suite: casimir or kz");
    sub->add_option("--words", cfg.words, "number of random words (manin suite)");
    subs[name] = sub;
  }

  CLI11_PARSE(app, argc, argv);

  if (cfg.tol_ode > cfg.tol_spec / 100.0) {
    std::cerr << "tolerance hierarchy violated: need tol-ode <= tol-spec / 100\n";
    return 2;
  }

  std::string suite;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) suite = name;
  cfg.suite = suite;

  Report rep;
  try {
    if (suite == "serre") rep = suite_serre(cfg);
    else if (suite == "manin") rep = suite_manin(cfg);
    else if (suite == "howe-dims") rep = suite_howe_dims(cfg);
    else if (suite == "omega-kappa") rep = suite_omega_kappa(cfg);
    else if (suite == "q-pieri") rep = suite_q_pieri(cfg);
    else if (suite == "rs-identity") rep = suite_rs_identity(cfg);
    else if (suite == "braid") rep = suite_braid(cfg);
    else if (suite == "flatness") rep = suite_flatness(cfg);
    else if (suite == "kz-casimir") rep = suite_kz_casimir(cfg);
    else if (suite == "main-theorem") rep = suite_main_theorem(cfg);
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  rep.set_config("suite", suite);
  rep.set_config("k", std::to_string(cfg.k));
  rep.set_config("n", std::to_string(cfg.n));
  rep.set_config("deg", std::to_string(cfg.deg));
  if (!cfg.lambda.empty()) rep.set_config("lambda", vec_str(cfg.lambda));
  if (!cfg.mu.empty()) rep.set_config("mu", vec_str(cfg.mu));
  {
    std::string hs;
    for (std::size_t i = 0; i < cfg.h.size(); ++i) hs += (i ? "," : "") + cfg.h[i];
    rep.set_config("h", hs);
  }
  rep.set_config("seed", std::to_string(cfg.seed));
  if (suite == "main-theorem" || suite == "kz-casimir" || suite == "braid")
    rep.set_config("branch", "log q = 2*pi*i*h, continuous in h");

  std::cout << report::render_table(rep);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    f << report::to_json(rep);
  }
  return rep.pass ? 0 : 1;
}
