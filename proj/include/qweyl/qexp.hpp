#pragma once

#include "qweyl/qarith.hpp"
#include "qweyl/sparse.hpp"

namespace qweyl {

enum class QExpVariant { Q, QInverse };

// Truncating q-exponential exp_{q^{±1}}(A) = sum_n q^{±n(n-1)/2} A^n / [n]!
// for nilpotent A; the series must terminate within the basis dimension.
inline SparseOp<ExactScalar> qexp_nilpotent(QExpVariant variant,
                                            const SparseOp<ExactScalar>& a) {
  if (a.rows() != a.cols())
    throw StructureError("qexp_nilpotent: operator must be square");
  const long dim = a.rows();
  SparseOp<ExactScalar> sum = SparseOp<ExactScalar>::identity(dim);
  SparseOp<ExactScalar> power = a;
  for (long n = 1; !power.is_zero(); ++n) {
    if (n > dim)
      throw NotNilpotentError("qexp_nilpotent: series did not terminate");
    long tri = n * (n - 1) / 2;
    Frac e = variant == QExpVariant::Q ? Frac(tri) : Frac(-tri);
    ExactScalar coeff = ExactScalar::q_power(e) /
                        ExactScalar(qfactorial_poly(n));
    sum += power.scaled(coeff);
    power = power * a;
  }
  return sum;
}

// Classical exponential of a nilpotent operator over the rationals.
inline SparseOp<Rat> exp_nilpotent(const SparseOp<Rat>& a) {
  if (a.rows() != a.cols())
    throw StructureError("exp_nilpotent: operator must be square");
  const long dim = a.rows();
  SparseOp<Rat> sum = SparseOp<Rat>::identity(dim);
  SparseOp<Rat> power = a;
  Rat fact(1);
  for (long n = 1; !power.is_zero(); ++n) {
    if (n > dim) throw NotNilpotentError("exp_nilpotent: series did not terminate");
    fact *= n;
    sum += power.scaled(1 / fact);
    power = power * a;
  }
  return sum;
}

}  // namespace qweyl
