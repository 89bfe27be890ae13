#include "qweyl/monodromy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <sstream>

#include "qweyl/braidops.hpp"
#include "qweyl/elim.hpp"
#include "qweyl/qexp.hpp"
#include "qweyl/qmatspace.hpp"

namespace qweyl::mono {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_covectors(const RationalConnection& c) {
  // pairwise non-proportional
  for (std::size_t i = 0; i < c.covectors.size(); ++i)
    for (std::size_t j = i + 1; j < c.covectors.size(); ++j) {
      std::vector<std::vector<Rat>> rows{c.covectors[i], c.covectors[j]};
      auto ker = kernel_basis(std::move(rows), c.ambient);
      if (static_cast<long>(ker.size()) != c.ambient - 2)
        throw StructureError("connection: proportional covectors");
    }
}

std::vector<std::vector<Rat>> difference_covectors(int n) {
  std::vector<std::vector<Rat>> cov;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rat> phi(n, Rat(0));
      phi[i] = 1;
      phi[j] = -1;
      cov.push_back(std::move(phi));
    }
  return cov;
}

}  // namespace

RationalConnection casimir_connection(int n, const std::vector<SparseOp<Rat>>& kappa) {
  RationalConnection c;
  c.ambient = n;
  c.covectors = difference_covectors(n);
  if (kappa.size() != c.covectors.size())
    throw StructureError("casimir_connection: need one residue per pair i<j");
  c.residues = kappa;
  check_covectors(c);
  return c;
}

RationalConnection kz_connection(int n, const std::vector<SparseOp<Rat>>& omega) {
  return casimir_connection(n, omega);  // same covector layout
}

NumericConnection to_numeric(const RationalConnection& c, Cplx coupling) {
  NumericConnection nc;
  nc.ambient = c.ambient;
  for (const auto& phi : c.covectors) {
    std::vector<double> p;
    for (const auto& x : phi) p.push_back(x.get_d());
    nc.covectors.push_back(std::move(p));
  }
  for (const auto& r : c.residues) {
    CMatrix m = CMatrix::Zero(r.rows(), r.cols());
    r.for_each([&](long i, long j, const Rat& v) { m(i, j) = coupling * v.get_d(); });
    nc.residues.push_back(std::move(m));
  }
  return nc;
}

// ---- Kohno flatness ---------------------------------------------------------

namespace {

long rational_rank(std::vector<std::vector<Rat>> rows, long ncols) {
  long rank = 0;
  for (long c = 0; c < ncols && rank < static_cast<long>(rows.size()); ++c) {
    long sel = -1;
    for (long i = rank; i < static_cast<long>(rows.size()); ++i)
      if (sgn(rows[i][c]) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    for (long i = rank + 1; i < static_cast<long>(rows.size()); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Rat f = rows[i][c] / rows[rank][c];
      for (long j = c; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

template <class Conn, class Residue>
std::vector<std::vector<long>> codim2_families(const Conn& c,
                                               const std::vector<std::vector<Rat>>& cov) {
  (void)c;
  std::set<std::vector<long>> families;
  const long m = static_cast<long>(cov.size());
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j) {
      std::vector<long> fam;
      for (long l = 0; l < m; ++l) {
        std::vector<std::vector<Rat>> rows{cov[i], cov[j], cov[l]};
        if (rational_rank(std::move(rows), static_cast<long>(cov[i].size())) <= 2)
          fam.push_back(l);
      }
      families.insert(std::move(fam));
    }
  return {families.begin(), families.end()};
}

std::string family_str(const std::vector<long>& fam) {
  std::ostringstream os;
  os << "{";
  for (std::size_t t = 0; t < fam.size(); ++t) os << (t ? "," : "") << fam[t];
  os << "}";
  return os.str();
}

}  // namespace

FlatnessReport kohno_flatness(const RationalConnection& c) {
  FlatnessReport rep;
  auto families = codim2_families<RationalConnection, SparseOp<Rat>>(c, c.covectors);
  rep.families = static_cast<long>(families.size());
  for (const auto& fam : families) {
    if (fam.size() < 2) continue;
    SparseOp<Rat> sum(c.residues[fam[0]].rows(), c.residues[fam[0]].cols());
    for (long l : fam) sum += c.residues[l];
    for (long j : fam) {
      auto comm = commutator(c.residues[j], sum);
      bool pass = comm.is_zero();
      rep.checks.push_back(FlatnessCheck{family_str(fam), j, pass, 0.0});
      if (!pass) rep.pass = false;
    }
  }
  return rep;
}

FlatnessReport kohno_flatness(const NumericConnection& c, double tol) {
  FlatnessReport rep;
  std::vector<std::vector<Rat>> cov;
  for (const auto& phi : c.covectors) {
    std::vector<Rat> p;
    for (double x : phi) {
      if (std::abs(x - std::llround(x)) > 1e-9)
        throw StructureError("kohno_flatness: numeric covectors must be integral");
      p.emplace_back(static_cast<long>(std::llround(x)));
    }
    cov.push_back(std::move(p));
  }
  auto families = codim2_families<NumericConnection, CMatrix>(c, cov);
  rep.families = static_cast<long>(families.size());
  for (const auto& fam : families) {
    if (fam.size() < 2) continue;
    CMatrix sum = CMatrix::Zero(c.residues[fam[0]].rows(), c.residues[fam[0]].cols());
    for (long l : fam) sum += c.residues[l];
    for (long j : fam) {
      double res = (c.residues[j] * sum - sum * c.residues[j]).cwiseAbs().maxCoeff();
      bool pass = res <= tol;
      rep.checks.push_back(FlatnessCheck{family_str(fam), j, pass, res});
      if (!pass) rep.pass = false;
    }
  }
  return rep;
}

// ---- paths ------------------------------------------------------------------

std::vector<double> default_basepoint(int n) {
  std::vector<double> t(n);
  double shift = (n - 1) / 2.0;
  for (int i = 0; i < n; ++i) t[i] = (n - 1 - i) - shift;
  return t;
}

Cplx BraidPath::w(double s) const {
  if (reverse) s = 1.0 - s;
  if (s <= 1.0 / 3.0) {
    double u = 3.0 * s;
    return Cplx(w0 + u * (radius - w0), 0.0);
  }
  if (s <= 2.0 / 3.0) {
    double theta = kPi * (3.0 * s - 1.0);
    return radius * Cplx(std::cos(theta), std::sin(theta));
  }
  double u = 3.0 * s - 2.0;
  return Cplx(-radius - u * (w0 - radius), 0.0);
}

Cplx BraidPath::dw(double s) const {
  double sf = reverse ? 1.0 - s : s;
  Cplx d;
  if (sf <= 1.0 / 3.0) {
    d = Cplx(3.0 * (radius - w0), 0.0);
  } else if (sf <= 2.0 / 3.0) {
    double theta = kPi * (3.0 * sf - 1.0);
    d = radius * 3.0 * kPi * Cplx(-std::sin(theta), std::cos(theta));
  } else {
    d = Cplx(-3.0 * (w0 - radius), 0.0);
  }
  return reverse ? -d : d;
}

Eigen::VectorXcd BraidPath::point(double s) const {
  Eigen::VectorXcd p(n);
  Cplx ws = w(s);
  for (int i = 0; i < n; ++i) {
    p(i) = Cplx(center[i], 0.0);
    if (i == gen - 1) p(i) += ws;
    if (i == gen) p(i) -= ws;
  }
  return p;
}

Eigen::VectorXcd BraidPath::velocity(double s) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  Cplx d = dw(s);
  v(gen - 1) = d;
  v(gen) = -d;
  return v;
}

BraidPath braid_path(int j, int n, const std::vector<double>& t, double radius_scale) {
  if (!(1 <= j && j <= n - 1)) throw StructureError("braid_path: 1 <= j <= n-1");
  for (int i = 0; i + 1 < n; ++i)
    if (!(t[i] > t[i + 1]))
      throw StructureError("braid_path: basepoint must be regular dominant");
  BraidPath p;
  p.gen = j;
  p.n = n;
  p.base = t;
  p.center = t;
  double alpha_t = t[j - 1] - t[j];
  p.center[j - 1] -= alpha_t / 2.0;
  p.center[j] += alpha_t / 2.0;
  p.w0 = alpha_t / 2.0;
  // distance from the reflection point to other hyperplanes along the line
  double min_dist = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (a == j - 1 && b == j) continue;
      double phi_c = p.center[a] - p.center[b];
      double phi_dir = (a == j - 1 ? 1.0 : 0.0) - (a == j ? 1.0 : 0.0) -
                       (b == j - 1 ? 1.0 : 0.0) + (b == j ? 1.0 : 0.0);
      if (phi_dir == 0.0) continue;
      min_dist = std::min(min_dist, std::abs(phi_c / phi_dir));
    }
  double r = radius_scale * std::min(min_dist / 2.0, p.w0 / 2.0);
  // shrink-and-retry against the disc margin
  for (int attempt = 0; attempt < 40; ++attempt) {
    bool ok = r > 0 && r < p.w0;
    if (ok) {
      for (int a = 0; a < n && ok; ++a)
        for (int b = a + 1; b < n && ok; ++b) {
          if (a == j - 1 && b == j) continue;
          double phi_c = p.center[a] - p.center[b];
          double phi_dir = (a == j - 1 ? 1.0 : 0.0) - (a == j ? 1.0 : 0.0) -
                           (b == j - 1 ? 1.0 : 0.0) + (b == j ? 1.0 : 0.0);
          if (std::abs(phi_c) - r * std::abs(phi_dir) < 1e-9) ok = false;
        }
    }
    if (ok) {
      p.radius = r;
      return p;
    }
    r /= 2.0;
  }
  throw StructureError("braid_path: could not find an admissible disc radius");
}

// ---- integrator -------------------------------------------------------------

namespace {

// Dormand-Prince 5(4) tableau
const double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
const double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
const double kE[7] = {71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                      -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

}  // namespace

CMatrix integrate_linear(const std::function<CMatrix(double)>& rhs_matrix,
                         double s0, double s1, CMatrix y0, double rtol,
                         double atol, TransportStats* stats) {
  const double span = s1 - s0;
  if (span == 0.0) return y0;
  double s = s0;
  double h = span * 0.05;
  CMatrix y = std::move(y0);
  CMatrix k[7];
  while ((span > 0 && s < s1) || (span < 0 && s > s1)) {
    if ((span > 0 && s + h > s1) || (span < 0 && s + h < s1)) h = s1 - s;
    CMatrix ynew;
    for (int i = 0; i < 7; ++i) {
      CMatrix yi = y;
      for (int t = 0; t < i && t < 6; ++t)
        if (kA[i][t] != 0.0) yi += (h * kA[i][t]) * k[t];
      if (i == 6) ynew = yi;  // stage 7 sits at the 5th-order solution (FSAL)
      k[i] = rhs_matrix(s + kC[i] * h) * yi;
    }
    // the embedded error estimate uses all 7 stages
    CMatrix err = CMatrix::Zero(y.rows(), y.cols());
    for (int t = 0; t < 7; ++t)
      if (kE[t] != 0.0) err += (h * kE[t]) * k[t];
    double norm = 0.0;
    for (long i = 0; i < y.rows(); ++i)
      for (long jj = 0; jj < y.cols(); ++jj) {
        double sc = atol + rtol * std::max(std::abs(y(i, jj)), std::abs(ynew(i, jj)));
        norm = std::max(norm, std::abs(err(i, jj)) / sc);
      }
    if (norm <= 1.0) {
      s += h;
      y = std::move(ynew);
      if (stats) {
        ++stats->accepted;
        stats->min_step = std::min(stats->min_step, std::abs(h / span));
      }
    } else if (stats) {
      ++stats->rejected;
    }
    double factor = 0.9 * std::pow(std::max(norm, 1e-10), -0.2);
    factor = std::min(5.0, std::max(0.2, factor));
    h *= factor;
    if (std::abs(h) < 1e-14 * std::abs(span))
      throw StructureError("integrate_linear: step size underflow (singularity?)");
  }
  return y;
}

CMatrix parallel_transport(const NumericConnection& c, const BraidPath& path,
                           double rtol, TransportStats* stats) {
  if (c.residues.empty()) throw StructureError("parallel_transport: empty connection");
  const long dim = c.residues[0].rows();
  TransportStats local;
  local.tol = rtol;
  auto rhs = [&](double s) {
    Eigen::VectorXcd gamma = path.point(s);
    Eigen::VectorXcd vel = path.velocity(s);
    CMatrix a = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < c.residues.size(); ++i) {
      Cplx num(0.0, 0.0), den(0.0, 0.0);
      for (int x = 0; x < c.ambient; ++x) {
        num += c.covectors[i][x] * vel(x);
        den += c.covectors[i][x] * gamma(x);
      }
      if (std::abs(den) < 1e-13)
        throw StructureError("parallel_transport: path too close to a hyperplane");
      a += (num / den) * c.residues[i];
    }
    return a;
  };
  CMatrix y = CMatrix::Identity(dim, dim);
  const double atol = rtol * 1e-2;
  for (int piece = 0; piece < 3; ++piece)
    y = integrate_linear(rhs, piece / 3.0, (piece + 1) / 3.0, std::move(y), rtol, atol,
                         &local);
  if (stats) *stats = local;
  return y;
}

// ---- spectral comparison ----------------------------------------------------

namespace {

bool feasible_matching(const std::vector<std::vector<double>>& cost, double t,
                       std::vector<int>& match_b) {
  const int n = static_cast<int>(cost.size());
  match_b.assign(n, -1);
  std::vector<int> match_a(n, -1);
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::function<bool(int)> aug = [&](int u) -> bool {
      for (int v = 0; v < n; ++v) {
        if (seen[v] || cost[u][v] > t) continue;
        seen[v] = true;
        if (match_b[v] < 0 || aug(match_b[v])) {
          match_b[v] = u;
          match_a[u] = v;
          return true;
        }
      }
      return false;
    };
    if (!aug(i)) return false;
  }
  return true;
}

}  // namespace

double bottleneck_match(const std::vector<Cplx>& a, const std::vector<Cplx>& b,
                        std::vector<int>& perm) {
  const int n = static_cast<int>(a.size());
  if (n == 0) {
    perm.clear();
    return 0.0;
  }
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  std::vector<double> thresholds;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cost[i][j] = std::abs(a[i] - b[j]);
      thresholds.push_back(cost[i][j]);
    }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  long lo = 0, hi = static_cast<long>(thresholds.size()) - 1;
  std::vector<int> match_b;
  while (lo < hi) {
    long mid = (lo + hi) / 2;
    if (feasible_matching(cost, thresholds[mid], match_b))
      hi = mid;
    else
      lo = mid + 1;
  }
  feasible_matching(cost, thresholds[lo], match_b);
  perm.assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (match_b[v] >= 0) perm[match_b[v]] = v;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, cost[i][perm[i]]);
  return worst;
}

SpectralReport spectral_compare(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw StructureError("spectral_compare: dimension mismatch");
  SpectralReport rep;
  rep.dimension = a.rows();
  Eigen::ComplexEigenSolver<CMatrix> sa(a, false), sb(b, false);
  for (long i = 0; i < a.rows(); ++i) {
    rep.eigen_a.push_back(sa.eigenvalues()(i));
    rep.eigen_b.push_back(sb.eigenvalues()(i));
  }
  std::vector<int> perm;
  rep.max_deviation = bottleneck_match(rep.eigen_a, rep.eigen_b, perm);
  std::vector<Cplx> matched(rep.eigen_b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) matched[i] = rep.eigen_b[perm[i]];
  rep.eigen_b = std::move(matched);
  return rep;
}

// ---- fibres -----------------------------------------------------------------

std::vector<std::vector<long>> weight_orbit(const std::vector<long>& mu) {
  std::vector<long> w = mu;
  std::sort(w.begin(), w.end());
  std::vector<std::vector<long>> orbit;
  do {
    orbit.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  std::sort(orbit.begin(), orbit.end(), std::greater<>());
  return orbit;
}

ClassicalFibre classical_fibre(int k, int n, const glrep::Partition& lambda,
                               const std::vector<long>& mu) {
  ClassicalFibre f;
  f.k = k;
  f.n = n;
  f.lambda = lambda;
  f.orbit = weight_orbit(mu);
  long d = 0;
  for (long v : lambda) d += v;
  long dmu = 0;
  for (long v : mu) dmu += v;
  if (d != dmu) throw StructureError("classical_fibre: |mu| != |lambda|");
  f.ambient = make_degree_basis(k, n, d);
  f.block_offsets.push_back(0);
  for (const auto& nu : f.orbit) {
    MonomialBasis bnu = MonomialBasis::multidegree(k, n, nu);
    auto hw = glrep::highest_weight_subspace(lambda, bnu);
    Int expect = glrep::kostka_number(lambda, nu);
    if (Int(static_cast<long>(hw.size())) != expect)
      throw StructureError("classical_fibre: weight multiplicity mismatch");
    for (auto& v : hw) {
      std::vector<Rat> emb(f.ambient->size(), Rat(0));
      for (long c = 0; c < bnu.size(); ++c)
        if (sgn(v[c]) != 0) emb[f.ambient->index_checked(bnu[c])] = v[c];
      f.vectors.push_back(std::move(emb));
    }
    f.block_offsets.push_back(static_cast<long>(f.vectors.size()));
  }
  if (f.vectors.empty()) throw StructureError("classical_fibre: empty fibre");
  return f;
}

QuantumFibre quantum_fibre(int k, int n, const glrep::Partition& lambda,
                           const std::vector<long>& mu) {
  QuantumFibre f;
  f.k = k;
  f.n = n;
  f.lambda = lambda;
  f.orbit = weight_orbit(mu);
  long d = 0;
  for (long v : lambda) d += v;
  f.ambient = make_degree_basis(k, n, d);
  std::vector<long> lam(k, 0);
  for (std::size_t r = 0; r < lambda.size(); ++r)
    if (lambda[r] > 0) lam[r] = lambda[r];
  f.block_offsets.push_back(0);
  for (const auto& nu : f.orbit) {
    MonomialBasis bnu = MonomialBasis::multidegree(k, n, nu);
    auto sing = qmat::quantum_singular_vectors(bnu);
    long count = 0;
    for (auto& v : sing) {
      // kernel vectors are weight-homogeneous; keep the lambda block
      std::vector<long> rows;
      bool found = false;
      for (long c = 0; c < bnu.size() && !found; ++c)
        if (!v[c].is_zero()) {
          rows = bnu[c].row_sums();
          found = true;
        }
      if (!found || rows != lam) continue;
      ++count;
      std::vector<ExactScalar> emb(f.ambient->size());
      for (long c = 0; c < bnu.size(); ++c)
        if (!v[c].is_zero()) emb[f.ambient->index_checked(bnu[c])] = v[c];
      f.vectors.push_back(std::move(emb));
    }
    Int expect = glrep::kostka_number(lambda, nu);
    if (Int(count) != expect)
      throw StructureError("quantum_fibre: weight multiplicity mismatch");
    f.block_offsets.push_back(static_cast<long>(f.vectors.size()));
  }
  if (f.vectors.empty()) throw StructureError("quantum_fibre: empty fibre");
  return f;
}

std::vector<std::vector<Rat>> restrict_rational(const SparseOp<Rat>& op,
                                                const ClassicalFibre& fibre) {
  SpanTracker<Rat> span(fibre.ambient->size());
  for (const auto& v : fibre.vectors) span.insert(v);
  const long dim = static_cast<long>(fibre.vectors.size());
  std::vector<std::vector<Rat>> out(dim, std::vector<Rat>(dim, Rat(0)));
  for (long c = 0; c < dim; ++c) {
    auto coords = span.coordinates(op.apply(fibre.vectors[c]));
    if (!coords)
      throw StructureError("restrict_rational: operator leaves the fibre span");
    for (long r = 0; r < dim; ++r) out[r][c] = (*coords)[r];
  }
  return out;
}

std::vector<std::vector<ExactScalar>> restrict_exact(const SparseOp<ExactScalar>& op,
                                                     const QuantumFibre& fibre) {
  SpanTracker<ExactScalar> span(fibre.ambient->size());
  for (const auto& v : fibre.vectors) span.insert(v);
  const long dim = static_cast<long>(fibre.vectors.size());
  std::vector<std::vector<ExactScalar>> out(dim, std::vector<ExactScalar>(dim));
  for (long c = 0; c < dim; ++c) {
    auto coords = span.coordinates(op.apply(fibre.vectors[c]));
    if (!coords)
      throw StructureError("restrict_exact: operator leaves the fibre span");
    for (long r = 0; r < dim; ++r) out[r][c] = (*coords)[r];
  }
  return out;
}

CMatrix to_cmatrix(const std::vector<std::vector<Rat>>& m) {
  CMatrix out = CMatrix::Zero(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j].get_d();
  return out;
}

CMatrix eval_cmatrix(const std::vector<std::vector<ExactScalar>>& m, Cplx logq) {
  CMatrix out = CMatrix::Zero(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (!m[i][j].is_zero()) out(i, j) = m[i][j].eval_log(logq);
  return out;
}

// ---- harness ----------------------------------------------------------------

namespace {

SparseOp<Rat> dense_to_sparse(const std::vector<std::vector<Rat>>& m) {
  SparseOp<Rat> op(static_cast<long>(m.size()),
                   m.empty() ? 0 : static_cast<long>(m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (sgn(m[i][j]) != 0) op.add(static_cast<long>(i), static_cast<long>(j), m[i][j]);
  return op;
}

}  // namespace

HarnessResult main_theorem_harness(const HarnessConfig& cfg) {
  HarnessResult res;
  const int n = cfg.n, k = cfg.k;
  if (k < n) throw StructureError("main_theorem_harness: k >= n required");
  std::vector<long> mu = cfg.mu.empty() ? std::vector<long>(cfg.lambda.begin(), cfg.lambda.end())
                                        : cfg.mu;
  while (static_cast<int>(mu.size()) < n) mu.push_back(0);

  ClassicalFibre cf = classical_fibre(k, n, cfg.lambda, mu);
  QuantumFibre qf = quantum_fibre(k, n, cfg.lambda, mu);
  res.fibre_dim = static_cast<long>(cf.vectors.size());
  if (cf.vectors.size() != qf.vectors.size())
    throw StructureError("main_theorem_harness: classical/quantum fibre dimension mismatch");

  // exact residues restricted to the fibre
  std::vector<SparseOp<Rat>> kappa;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      kappa.push_back(dense_to_sparse(
          restrict_rational(glrep::casimir_truncated(i, j, *cf.ambient), cf)));
  RationalConnection conn = casimir_connection(n, kappa);

  // sigma representations and paths per generator
  std::vector<CMatrix> sigma;
  std::vector<BraidPath> paths;
  auto t = default_basepoint(n);
  for (int j = 1; j <= n - 1; ++j) {
    sigma.push_back(to_cmatrix(restrict_rational(glrep::sigma_on_basis(j, *cf.ambient), cf)));
    paths.push_back(braid_path(j, n, t));
  }

  // exact quantum Weyl operators on the quantum fibre
  std::vector<std::vector<std::vector<ExactScalar>>> s_exact;
  for (int j = 1; j <= n - 1; ++j)
    s_exact.push_back(restrict_exact(braidops::weyl_element_j(j, *qf.ambient), qf));

  struct PerH {
    std::vector<MonodromyReport> reports;
    double braid = 0.0;
    double trace = 0.0;
  };
  auto run_h = [&](Cplx h) {
    PerH out;
    NumericConnection nc = to_numeric(conn, h);
    Cplx logq = Cplx(0.0, 2.0 * kPi) * h;  // hbar = 2 pi i h
    std::vector<CMatrix> monodromy, weyl;
    for (int j = 1; j <= n - 1; ++j) {
      TransportStats stats;
      CMatrix p = parallel_transport(nc, paths[j - 1], cfg.ode_tol, &stats);
      CMatrix m = monodromy_generator(sigma[j - 1], p);
      CMatrix s = eval_cmatrix(s_exact[j - 1], logq);
      auto spec = spectral_compare(m, s);
      MonodromyReport rep;
      rep.generator = j;
      rep.h = h;
      rep.eigen_monodromy = spec.eigen_a;
      rep.eigen_target = spec.eigen_b;
      rep.max_deviation = spec.max_deviation;
      rep.stats = stats;
      out.reports.push_back(std::move(rep));
      monodromy.push_back(std::move(m));
      weyl.push_back(std::move(s));
    }
    for (int j = 0; j + 1 < n - 1; ++j) {
      double braid = (monodromy[j] * monodromy[j + 1] * monodromy[j] -
                      monodromy[j + 1] * monodromy[j] * monodromy[j + 1])
                         .cwiseAbs()
                         .maxCoeff();
      out.braid = std::max(out.braid, braid);
      // conjugation-invariant word traces across the two constructions
      double tr2 = std::abs((monodromy[j] * monodromy[j + 1]).trace() -
                            (weyl[j] * weyl[j + 1]).trace());
      out.trace = std::max(out.trace, tr2);
    }
    for (std::size_t a = 0; a < monodromy.size(); ++a) {
      double tr1 = std::abs(monodromy[a].trace() - weyl[a].trace());
      out.trace = std::max(out.trace, tr1);
      for (std::size_t b = a + 2; b < monodromy.size(); ++b) {
        double far = (monodromy[a] * monodromy[b] - monodromy[b] * monodromy[a])
                         .cwiseAbs()
                         .maxCoeff();
        out.braid = std::max(out.braid, far);
      }
    }
    return out;
  };
  std::vector<PerH> per_h(cfg.h_values.size());
  if (cfg.parallel) {
    std::vector<std::future<PerH>> futs;
    for (Cplx h : cfg.h_values)
      futs.push_back(std::async(std::launch::async, run_h, h));
    for (std::size_t i = 0; i < futs.size(); ++i) per_h[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < cfg.h_values.size(); ++i) per_h[i] = run_h(cfg.h_values[i]);
  }
  for (auto& out : per_h) {
    for (auto& rep : out.reports) {
      res.worst_deviation = std::max(res.worst_deviation, rep.max_deviation);
      res.reports.push_back(std::move(rep));
    }
    res.worst_braid_residual = std::max(res.worst_braid_residual, out.braid);
    res.worst_trace_deviation = std::max(res.worst_trace_deviation, out.trace);
  }
  res.pass = res.worst_deviation < cfg.spec_tol &&
             res.worst_braid_residual < cfg.spec_tol &&
             res.worst_trace_deviation < 10.0 * cfg.spec_tol;
  return res;
}

// ---- KZ / Casimir bridge ----------------------------------------------------

BridgeResult kz_casimir_bridge(int k, int n, const std::vector<long>& mu, Cplx h,
                               double ode_tol, double tol) {
  BridgeResult res;
  auto orbit = weight_orbit(mu);
  long d = 0;
  for (long v : mu) d += v;
  BasisPtr ambient = make_degree_basis(k, n, d);
  // fibre: all monomials whose column degrees lie in the orbit, grouped by block
  std::vector<long> fibre_idx;
  for (const auto& nu : orbit)
    for (long c = 0; c < ambient->size(); ++c)
      if ((*ambient)[c].col_sums() == nu) fibre_idx.push_back(c);
  const long dim = static_cast<long>(fibre_idx.size());
  res.fibre_dim = dim;
  std::vector<long> pos(ambient->size(), -1);
  for (long i = 0; i < dim; ++i) pos[fibre_idx[i]] = i;

  auto restrict_sub = [&](const SparseOp<Rat>& op) {
    SparseOp<Rat> out(dim, dim);
    op.for_each([&](long r, long c, const Rat& v) {
      if (pos[c] < 0) return;
      if (pos[r] < 0) throw StructureError("kz_casimir_bridge: operator leaks the block");
      out.add(pos[r], pos[c], v);
    });
    return out;
  };

  std::vector<SparseOp<Rat>> kappa, omega;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      kappa.push_back(restrict_sub(glrep::casimir_truncated(i, j, *ambient)));
      omega.push_back(restrict_sub(
          glrep::omega_operator(i, j, *ambient, glrep::OmegaVariant::SL)));
    }
  NumericConnection conn_c = to_numeric(casimir_connection(n, kappa), h);
  NumericConnection conn_kz = to_numeric(kz_connection(n, omega), 2.0 * h);

  auto t = default_basepoint(n);
  for (int j = 1; j <= n - 1; ++j) {
    BraidPath path = braid_path(j, n, t);
    CMatrix p_c = parallel_transport(conn_c, path, ode_tol, nullptr);
    CMatrix p_kz = parallel_transport(conn_kz, path, ode_tol, nullptr);
    CMatrix sig = CMatrix::Zero(dim, dim);
    restrict_sub(glrep::sigma_on_basis(j, *ambient))
        .for_each([&](long r, long c, const Rat& v) { sig(r, c) = v.get_d(); });
    // permutation of the tensor factors j, j+1
    CMatrix perm = CMatrix::Zero(dim, dim);
    for (long c = 0; c < dim; ++c) {
      Monomial m = (*ambient)[fibre_idx[c]];
      for (int i = 0; i < k; ++i) std::swap(m.at(i, j - 1), m.at(i, j));
      perm(pos[ambient->index_checked(m)], c) = 1.0;
    }
    CMatrix lhs = perm * p_kz;
    CMatrix rhs = sig * p_c;
    // diagonal and parity factors e^{-pi i h (nu_j + nu_{j+1} + 2 nu_j nu_{j+1}/k)} e^{i pi nu_j}
    for (long c = 0; c < dim; ++c) {
      const Monomial& m = (*ambient)[fibre_idx[c]];
      double nj = static_cast<double>(m.col_sum(j - 1));
      double nj1 = static_cast<double>(m.col_sum(j));
      Cplx dfac = std::exp(Cplx(0.0, -kPi) * h * (nj + nj1 + 2.0 * nj * nj1 / k));
      Cplx pfac = std::exp(Cplx(0.0, kPi) * nj);
      rhs.col(c) *= dfac * pfac;
    }
    double resid = (lhs - rhs).cwiseAbs().maxCoeff();
    res.per_generator.emplace_back(j, resid);
    res.worst_residual = std::max(res.worst_residual, resid);
  }
  res.pass = res.worst_residual < tol;
  return res;
}

}  // namespace qweyl::mono
