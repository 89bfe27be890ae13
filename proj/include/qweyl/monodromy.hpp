#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qweyl/basis.hpp"
#include "qweyl/glrep.hpp"
#include "qweyl/qarith.hpp"
#include "qweyl/sparse.hpp"

namespace qweyl::mono {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// ---- connection forms -------------------------------------------------------

// Fuchsian one-form d - sum_i (d phi_i / phi_i) r_i with exact residues; the
// scalar coupling (h or hbar) is applied when converting to numeric form.
struct RationalConnection {
  int ambient = 0;
  std::vector<std::vector<Rat>> covectors;
  std::vector<SparseOp<Rat>> residues;
};

struct NumericConnection {
  int ambient = 0;
  std::vector<std::vector<double>> covectors;
  std::vector<CMatrix> residues;  // coupling folded in
};

// Covectors z_i - z_j (lexicographic (i,j), i < j) with the supplied residue
// operators on a common basis.
RationalConnection casimir_connection(int n, const std::vector<SparseOp<Rat>>& kappa);
RationalConnection kz_connection(int n, const std::vector<SparseOp<Rat>>& omega);

NumericConnection to_numeric(const RationalConnection& c, Cplx coupling);
NumericConnection to_numeric(const RationalConnection& c, Cplx coupling,
                             const std::vector<std::vector<Rat>>& span_vectors);

// ---- Kohno flatness ---------------------------------------------------------

struct FlatnessCheck {
  std::string family;  // codimension-2 family as a set of covector indices
  long member;         // index j whose commutator was tested
  bool pass;
  double residual;     // 0 for exact checks
};

struct FlatnessReport {
  bool pass = true;
  long families = 0;
  std::vector<FlatnessCheck> checks;
};

FlatnessReport kohno_flatness(const RationalConnection& c);
FlatnessReport kohno_flatness(const NumericConnection& c, double tol);

// ---- braid generator paths --------------------------------------------------

// Path from t to s_j t inside the line t + C * (e_j - e_{j+1}): two affine
// segments and a positively oriented semicircle around the reflection point.
struct BraidPath {
  int gen = 0;
  int n = 0;
  std::vector<double> base;    // t
  std::vector<double> center;  // t_alpha, the reflection fixed point
  double w0 = 0;               // coordinate of t along alpha^vee / its own scale
  double radius = 0;
  bool reverse = false;

  Cplx w(double s) const;
  Cplx dw(double s) const;
  Eigen::VectorXcd point(double s) const;
  Eigen::VectorXcd velocity(double s) const;
  BraidPath reversed() const {
    BraidPath p = *this;
    p.reverse = !p.reverse;
    return p;
  }
};

// Dominant regular integral basepoint (n-1, n-2, ..., 0) shifted to trace 0.
std::vector<double> default_basepoint(int n);

// radius_scale scales the default radius (half the distance from the
// reflection point to the nearest other hyperplane along the line, capped at
// w0/2). Shrinks and retries when the disc margin check fails.
BraidPath braid_path(int j, int n, const std::vector<double>& t,
                     double radius_scale = 1.0);

// ---- parallel transport -----------------------------------------------------

struct TransportStats {
  long accepted = 0;
  long rejected = 0;
  double min_step = 1.0;
  double tol = 0.0;
};

// Fundamental solution of y' = (sum_i phi_i(gamma')/phi_i(gamma) r_i) y along
// the path, adaptive embedded Runge-Kutta (Dormand-Prince 5(4)).
CMatrix parallel_transport(const NumericConnection& c, const BraidPath& path,
                           double rtol, TransportStats* stats = nullptr);

// General driver used by transport and by quadrature-style checks.
CMatrix integrate_linear(const std::function<CMatrix(double)>& rhs_matrix,
                         double s0, double s1, CMatrix y0, double rtol,
                         double atol, TransportStats* stats);

inline CMatrix monodromy_generator(const CMatrix& sigma_rep, const CMatrix& transport) {
  return sigma_rep * transport;
}

// ---- spectral comparison ----------------------------------------------------

struct SpectralReport {
  long dimension = 0;
  std::vector<Cplx> eigen_a;
  std::vector<Cplx> eigen_b;        // in matched order against eigen_a
  double max_deviation = 0.0;
};

// Optimal bijective (bottleneck) matching of the eigenvalue multisets.
SpectralReport spectral_compare(const CMatrix& a, const CMatrix& b);

double bottleneck_match(const std::vector<Cplx>& a, const std::vector<Cplx>& b,
                        std::vector<int>& perm);

// ---- fibres -----------------------------------------------------------------

// sum over the S_n-orbit of mu of the highest-weight subspaces M_lambda^nu,
// realised inside the degree-|lambda| polynomial space on k x n matrices.
struct ClassicalFibre {
  int k = 0, n = 0;
  glrep::Partition lambda;
  std::vector<std::vector<long>> orbit;  // weight blocks in order
  BasisPtr ambient;
  std::vector<std::vector<Rat>> vectors;  // fibre basis, ambient coordinates
  std::vector<long> block_offsets;        // size orbit.size() + 1
};

struct QuantumFibre {
  int k = 0, n = 0;
  glrep::Partition lambda;
  std::vector<std::vector<long>> orbit;
  BasisPtr ambient;
  std::vector<std::vector<ExactScalar>> vectors;
  std::vector<long> block_offsets;
};

std::vector<std::vector<long>> weight_orbit(const std::vector<long>& mu);

ClassicalFibre classical_fibre(int k, int n, const glrep::Partition& lambda,
                               const std::vector<long>& mu);
QuantumFibre quantum_fibre(int k, int n, const glrep::Partition& lambda,
                           const std::vector<long>& mu);

// Matrix of an invariant operator in the fibre basis; throws StructureError
// when the operator leaks out of the span.
std::vector<std::vector<Rat>> restrict_rational(const SparseOp<Rat>& op,
                                                const ClassicalFibre& fibre);
std::vector<std::vector<ExactScalar>> restrict_exact(const SparseOp<ExactScalar>& op,
                                                     const QuantumFibre& fibre);

CMatrix to_cmatrix(const std::vector<std::vector<Rat>>& m);
CMatrix eval_cmatrix(const std::vector<std::vector<ExactScalar>>& m, Cplx logq);

// ---- main-theorem harness ---------------------------------------------------

struct MonodromyReport {
  int generator = 0;
  Cplx h;
  std::vector<Cplx> eigen_monodromy;
  std::vector<Cplx> eigen_target;  // matched order
  double max_deviation = 0.0;
  TransportStats stats;
};

struct HarnessConfig {
  int n = 2;
  int k = 2;  // >= n
  glrep::Partition lambda;
  std::vector<long> mu;  // defaults to lambda when empty
  std::vector<Cplx> h_values;
  double ode_tol = 1e-12;
  double spec_tol = 1e-6;
  bool parallel = false;  // transports for distinct h values run concurrently
};

struct HarnessResult {
  bool pass = true;
  long fibre_dim = 0;
  std::vector<MonodromyReport> reports;
  double worst_deviation = 0.0;
  double worst_braid_residual = 0.0;
  double worst_trace_deviation = 0.0;
  std::vector<std::string> notes;
};

// Numerical Casimir monodromy vs exact quantum Weyl spectra at q = e^{2 pi i h},
// plus braid-relation residuals and word-trace cross-checks.
HarnessResult main_theorem_harness(const HarnessConfig& cfg);

// ---- KZ / Casimir bridge ----------------------------------------------------

struct BridgeResult {
  bool pass = true;
  long fibre_dim = 0;
  double worst_residual = 0.0;
  std::vector<std::pair<int, double>> per_generator;
};

// pi_KZ^{2h}(T_j) == pi_kappa^h(T_j) * diag factor * parity factor on the full
// weight-orbit block of S^mu inside C[M_{k,n}].
BridgeResult kz_casimir_bridge(int k, int n, const std::vector<long>& mu, Cplx h,
                               double ode_tol, double tol);

}  // namespace qweyl::mono
