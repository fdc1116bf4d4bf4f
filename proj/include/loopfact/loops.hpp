#pragma once

#include <Eigen/Dense>
#include <vector>

#include "loopfact/affine_weyl.hpp"
#include "loopfact/laurent.hpp"

namespace loopfact {

/// k(zeta) = a(zeta) [[1, -conj(zeta)], [zeta, 1]].
Eigen::Matrix2cd elementary_k(cd zeta);
/// a(zeta) = (1 + |zeta|^2)^(-1/2).
double a_of(cd zeta);

/// SU(2) -> loop embedding with image on coordinates p, q (0-based):
/// M -> identity off {p,q}, (p,p) = m11, (q,q) = m22,
/// (p,q) = m12 phase z^power, (q,p) = m21 conj(phase) z^-power.
struct RootEmbedding {
  int n = 0;
  int p = 0;
  int q = 1;
  cd phase = 1.0;
  int power = 0;

  LaurentMatrix embed(const Eigen::Matrix2cd& m) const;
  /// Image of the upper generator: phase z^power E_pq.
  LaurentMatrix e() const;
  /// Image of the lower generator: conj(phase) z^-power E_qp.
  LaurentMatrix f() const;
  /// Diagonal of h = E_pp - E_qq.
  Eigen::VectorXd h() const;
};

/// i_gamma for SU(rank+1); gamma = 0 sends the lower generator to
/// E_{1n} z^-1.
RootEmbedding affine_root_homomorphism(const CartanData& data, int gamma);

/// Loop with exactly one nonzero entry per column: column c goes to row
/// perm[c] with entry phase[c] z^power[c].
struct MonomialLoop {
  std::vector<int> perm;
  std::vector<cd> phase;
  std::vector<int> power;

  static MonomialLoop identity(int n);
  MonomialLoop operator*(const MonomialLoop& o) const;
  LaurentMatrix to_laurent() const;
  /// this * i(.) * this^-1.
  RootEmbedding conjugate(const RootEmbedding& emb) const;
};

/// r_gamma = i_gamma([[0, i], [i, 0]]).
MonomialLoop weyl_representative_monomial(const CartanData& data, int gamma);
LaurentMatrix weyl_representative(const CartanData& data, int gamma);

/// Root vectors attached to tau at one sequence position.
struct RootVector {
  AffineRoot tau;
  RootEmbedding embedding;

  LaurentMatrix e() const { return embedding.e(); }
  LaurentMatrix f() const { return embedding.f(); }
  Eigen::VectorXd h() const { return embedding.h(); }
};

/// i_{tau_p} = w i_{gamma_p} w^-1 with w = r_{gamma_0} ... r_{gamma_{p-1}}
/// over all earlier positions (including a prepended word).
std::vector<RootEmbedding> conjugated_embeddings(const ReducedSequence& seq,
                                                 int count);
LaurentMatrix conjugated_embedding(const ReducedSequence& seq, int pos,
                                   cd zeta);
std::vector<RootVector> f_tau_basis(const ReducedSequence& seq, int count);

}  // namespace loopfact
