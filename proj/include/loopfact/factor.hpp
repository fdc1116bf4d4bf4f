#pragma once

#include <Eigen/Dense>
#include <vector>

#include "loopfact/affine_weyl.hpp"
#include "loopfact/birkhoff.hpp"
#include "loopfact/config.hpp"
#include "loopfact/laurent.hpp"
#include "loopfact/loops.hpp"

namespace loopfact {

/// Parameters of i_{tau_N}(k(p_N)) ... i_{tau_1}(k(p_1)) over the first
/// params.size() positions of `sequence`. On a sequence with a prepended
/// longest-element word the parameters are the eta_j, starting at
/// eta_{-N}; otherwise they are the zeta_j.
struct ElementaryFactorization {
  ReducedSequence sequence;
  std::vector<cd> params;
};

struct Synthesis {
  LaurentMatrix loop;
  TriangularFactorization factorization;
  LaurentMatrix l_inverse;
  double residual = 0;  // |l m a u - loop| on coefficients
};

/// Builds the product left to right while maintaining its triangular
/// factorization inductively.
Synthesis synthesize(const ElementaryFactorization& fac);

/// prod a(p_j)^{h_{tau_j}} in the defining representation, computed from
/// the affine roots alone.
Eigen::VectorXd a2_product(const ElementaryFactorization& fac);

/// Smallest prefix of `seq` whose root vectors can carry an l-part whose
/// lowest degree is `min_degree` (extends periodic sequences as needed).
int peel_count(const ReducedSequence& seq, int min_degree);

/// Recovers the parameters top-down: factor, read the top coordinate of
/// log l, strip that factor, repeat. count < 0 chooses the count from the
/// degree of l. Throws ConvergenceError naming the stuck label.
std::vector<cd> peel(const LaurentMatrix& k, const ReducedSequence& seq,
                     int count = -1, const Config& config = {});

/// Coordinates of log(l) in the basis f_{tau_0..count-1}.
std::vector<cd> xstar_from_l2(const LaurentMatrix& l,
                              const ReducedSequence& seq, int count,
                              double tol = 1e-10);

/// Inverts xstar(synthesize(.)) by backward substitution with remainders
/// from tail synthesis.
std::vector<cd> zeta_from_xstar(const std::vector<cd>& x,
                                const ReducedSequence& seq, int count,
                                double tol = 1e-8);

/// One Fourier mode of chi: chi(z) = sum_k chi_k z^k with
/// chi_{-k} = -conj(chi_k); mode 0 is imaginary. Diagonal entries.
struct ChiMode {
  int k = 0;
  std::vector<cd> coeffs;
};

struct SmoothFactorizationData {
  int rank = 1;
  IntVec period;  // coroot-lattice coefficients; empty means default
  std::vector<cd> etas;
  std::vector<ChiMode> chi;
  std::vector<cd> zetas;
};

/// Period point in coweight coordinates.
IntVec resolve_period(const CartanData& data, const IntVec& coroot_coeffs);
/// Sequence for the zeta side with at least `count` letters.
ReducedSequence zeta_sequence(const CartanData& data, const IntVec& h,
                              int count);
/// Sequence with the prepended longest-element word, at least `count`
/// letters in total.
ReducedSequence eta_sequence(const CartanData& data, const IntVec& h,
                             int count);

/// exp(chi) as a Laurent polynomial (sampled and transformed, with the
/// sample count doubled until the tail is below roundoff).
LaurentMatrix exp_chi(const std::vector<ChiMode>& chi, int n, int samples);
/// sum_{k>0} k |chi_k|_HS^2.
double chi_energy(const std::vector<ChiMode>& chi);

/// g = k1^* exp(chi) k2.
LaurentMatrix compose_g(const SmoothFactorizationData& data,
                        const Config& config = {});

struct Decomposition {
  SmoothFactorizationData params;
  TriangularFactorization factorization;
  LaurentMatrix k1;
  LaurentMatrix k2;
  LaurentMatrix exp_chi;
  double solver_residual = 0;
  double reconstruction_residual = 0;  // |compose_g(params) - g|
  double diagonal_residual = 0;        // a(g) vs a(k1) a(exp chi) a(k2)
};

/// Inverse of compose_g through pointwise N+AK decompositions of l^-1
/// and u sampled on the circle.
Decomposition decompose_g(const LaurentMatrix& g, const IntVec& period,
                          const Config& config = {});

/// prod (1+|eta_j|^2)^{-level(tau'_j)} exp(-sum k |chi_k|^2)
///   prod (1+|zeta_i|^2)^{-level(tau_i)}.
double det_formula(const SmoothFactorizationData& data);

}  // namespace loopfact
