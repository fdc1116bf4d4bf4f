#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "loopfact/config.hpp"
#include "loopfact/laurent.hpp"

namespace loopfact {

/// g = l diag(d) u with l unit lower and u unit upper triangular.
struct LDU {
  Eigen::MatrixXcd l;
  Eigen::VectorXcd d;
  Eigen::MatrixXcd u;
};

/// LDU through ratios of minors. Throws VanishingMinorError(k) when the
/// k-th leading principal minor is zero relative to its Hadamard bound.
LDU ldu_minors(const Eigen::MatrixXcd& g, double tol = 1e-13);
LDU pointwise_ldu(const LaurentMatrix& g, cd z, double tol = 1e-13);

/// Which subgroup the l-part is claimed to lie in.
enum class FactorVariant {
  kK1,       // l in N^-(C[z^-1]): pointwise lower unipotent
  kK2,       // l in N^+(z^-1 C[z^-1]): upper unipotent, identity at infinity
  kGeneral,  // l holomorphic outside the disk with l(infinity) in N^-
};

/// g = l diag(m) diag(a) u; u holomorphic in the disk with u(0) unit upper
/// triangular, m unimodular, a positive.
struct TriangularFactorization {
  LaurentMatrix l;
  Eigen::VectorXcd m;
  Eigen::VectorXd a;
  LaurentMatrix u;
  FactorVariant variant = FactorVariant::kGeneral;

  LaurentMatrix product() const;
};

/// Minors of g on rows 0..k-1, for every column set of size k, indexed
/// as result[k][mask].
std::vector<std::map<unsigned, Series>> leading_row_minors(
    const LaurentMatrix& g);

/// Triangular factorization of a loop satisfying (a2) (variant kK2) or
/// (a1) (variant kK1), built from the minors of k^-1. Throws
/// AdmissibilityError naming the fundamental representation at fault.
TriangularFactorization factor_k2(const LaurentMatrix& k,
                                  FactorVariant variant,
                                  const Config& config = {});

enum class ConstantTerm { kPlus, kMinus };

/// v = minus * plus for v pointwise unit upper triangular. minus has
/// only negative degrees off the diagonal (plus degree 0 when
/// `constant` is kMinus); plus has only nonnegative degrees (positive
/// when kMinus). Degrees above `max_degree` are discarded on the way,
/// which makes the routine usable on truncated series.
std::pair<LaurentMatrix, LaurentMatrix> unipotent_birkhoff_split(
    const LaurentMatrix& v, ConstantTerm constant = ConstantTerm::kPlus,
    int max_degree = 1 << 28);

/// Compression of multiplication by g to degrees 0..N-1; block (i, j)
/// is the coefficient of z^(i-j).
struct ToeplitzTruncation {
  LaurentMatrix symbol;
  int cutoff = 0;
  Eigen::MatrixXcd matrix;
};

ToeplitzTruncation toeplitz_compression(const LaurentMatrix& g, int N);

struct ToeplitzDet {
  double value = 0;
  double log_value = 0;
  int cutoff = 0;
};

/// det(A^* A) for the compression A of multiplication by g from inputs of
/// degree 0..N-1 into the full Hardy space. Approximates |sigma_0|^2.
ToeplitzDet toeplitz_det_sq(const LaurentMatrix& g, int N);

/// log |sigma_j|^2 for j = 0..n-1, realized on the shifted polarizations
/// H+ + z^-1 span(e_1..e_j).
std::vector<double> log_sigma_sq(const LaurentMatrix& g, int N);

/// Positive diagonal a_i = |sigma_i| / |sigma_{i-1}| with sigma_n = sigma_0.
Eigen::VectorXd diagonal_from_toeplitz(const LaurentMatrix& g, int N);

/// Shape constraint on y = l^-1 for the linear solver.
enum class LShape {
  kGeneral,        // y(infinity) unit lower triangular
  kUpperNegative,  // y = I + strictly upper entries of negative degree
};

struct SolvedFactorization {
  TriangularFactorization factorization;
  LaurentMatrix l_inverse;  // y, degrees -M..0
  double residual = 0;      // worst violated linear constraint
};

/// Triangular factorization by solving y g holomorphic with y a
/// polynomial in z^-1 of degree <= M (least squares). The l-part is the
/// series inverse of y truncated below degree -l_truncation.
SolvedFactorization triangular_factor(const LaurentMatrix& g, LShape shape,
                                      int M, int l_truncation);

/// Largest coefficient of u at negative degree, and the deviation of
/// u(0) from a unit upper triangular matrix.
double holomorphic_defect(const LaurentMatrix& u);

}  // namespace loopfact
