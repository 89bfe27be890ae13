#pragma once

#include <utility>
#include <vector>

#include "qweyl/basis.hpp"
#include "qweyl/qarith.hpp"
#include "qweyl/sparse.hpp"

namespace qweyl::glrep {

// Which member of the dual pair acts: the k-side acts through rows
// (E_{ab} = sum_j x_{aj} d/dx_{bj}), the n-side through columns
// (E_{ij} = sum_a x_{ai} d/dx_{aj}).
enum class Side { K, N };

// Image of E_{ab} (1-based a, b) applied to a single monomial.
std::vector<std::pair<Rat, Monomial>> apply_gl(Side side, int a, int b,
                                               const Monomial& m);

// Matrix of E_{ab} on a basis closed under it (degree bases always are;
// multidegree bases are closed for the k-side and for diagonal n-side
// generators). Throws StructureError when the image leaves the basis.
SparseOp<Rat> gl_generator(Side side, int a, int b, const MonomialBasis& basis);

// Truncated Casimir kappa_{ij} = E_ij E_ji + E_ji E_ij of the sl_2 for the
// n-side root theta_i - theta_j, 1 <= i < j <= n. Weight 0, so any basis is
// closed.
SparseOp<Rat> casimir_truncated(int i, int j, const MonomialBasis& basis);

enum class OmegaVariant { GL, SL };

// Two-column Casimir Omega~_{ij} (GL variant, dual bases of gl_k under the
// trace pairing) or Omega_{ij} (SL variant); they differ by the diagonal
// d_i(m) d_j(m) / k.
SparseOp<Rat> omega_operator(int i, int j, const MonomialBasis& basis,
                             OmegaVariant variant);

// ---- Howe decomposition bookkeeping ---------------------------------------

using Partition = std::vector<long>;  // weakly decreasing, trailing zeros ok

struct HoweComponent {
  Partition lambda;
  Int dim_k;
  Int dim_n;
};

// All lambda with at most min(k,n) rows and |lambda| = d, with the dimensions
// of the paired irreducibles (hook content formula).
std::vector<HoweComponent> howe_components(int k, int n, int d);

// dim of the irreducible GL_p module with highest weight lambda.
Int gl_dimension(const Partition& lambda, int p);

// Weight multiplicity dim V_lambda[mu] as a count of semistandard tableaux;
// serves as the independent oracle for kernel dimensions.
Int kostka_number(const Partition& lambda, const std::vector<long>& mu);

Int binomial(long a, long b);

// Basis of the space of gl_k highest-weight vectors of weight lambda inside
// the span of the given basis (vectors annihilated by all E^(k)_{a,a+1} with
// row sums lambda). Dense rational coordinates in basis indexing.
std::vector<std::vector<Rat>> highest_weight_subspace(const Partition& lambda,
                                                      const MonomialBasis& basis);

// exp(E_{j,j+1}) exp(-E_{j+1,j}) exp(E_{j,j+1}) in GL_n: identity except for
// the block [[0,1],[-1,0]] at rows/columns j, j+1.
SparseOp<Rat> sigma_matrix(int j, int n);

// The same element pushed to a representation: the product of exponentials of
// the (nilpotent) n-side generators on the basis.
SparseOp<Rat> sigma_on_basis(int j, const MonomialBasis& basis);

// Coordinate-list text "row col scalar" (one entry per line, row-major order)
// for cross-checking operators in external systems.
std::string coordinate_list(const SparseOp<Rat>& op);
std::string coordinate_list(const SparseOp<ExactScalar>& op);

}  // namespace qweyl::glrep
