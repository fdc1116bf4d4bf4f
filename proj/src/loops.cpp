#include "loopfact/loops.hpp"

#include <cmath>

#include "loopfact/errors.hpp"

namespace loopfact {

double a_of(cd zeta) { return 1.0 / std::sqrt(1.0 + std::norm(zeta)); }

Eigen::Matrix2cd elementary_k(cd zeta) {
  Eigen::Matrix2cd k;
  k << 1.0, -std::conj(zeta), zeta, 1.0;
  return a_of(zeta) * k;
}

LaurentMatrix RootEmbedding::embed(const Eigen::Matrix2cd& m) const {
  Eigen::MatrixXcd c0 = Eigen::MatrixXcd::Identity(n, n);
  c0(p, p) = m(0, 0);
  c0(q, q) = m(1, 1);
  LaurentMatrix g = LaurentMatrix::constant(c0);
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(n, n);
  up(p, q) = m(0, 1) * phase;
  Eigen::MatrixXcd lo = Eigen::MatrixXcd::Zero(n, n);
  lo(q, p) = m(1, 0) * std::conj(phase);
  g.add_to_coefficient(power, up);
  g.add_to_coefficient(-power, lo);
  return g;
}

LaurentMatrix RootEmbedding::e() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(p, q) = phase;
  return LaurentMatrix::monomial(m, power);
}

LaurentMatrix RootEmbedding::f() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(q, p) = std::conj(phase);
  return LaurentMatrix::monomial(m, -power);
}

Eigen::VectorXd RootEmbedding::h() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  d(p) = 1;
  d(q) = -1;
  return d;
}

RootEmbedding affine_root_homomorphism(const CartanData& data, int gamma) {
  const int n = data.n();
  if (gamma < 0 || gamma > data.rank)
    throw InvalidArgument("root index out of range");
  if (gamma == 0) return {n, n - 1, 0, 1.0, 1};
  return {n, gamma - 1, gamma, 1.0, 0};
}

MonomialLoop MonomialLoop::identity(int n) {
  MonomialLoop m;
  for (int c = 0; c < n; ++c) {
    m.perm.push_back(c);
    m.phase.push_back(1.0);
    m.power.push_back(0);
  }
  return m;
}

MonomialLoop MonomialLoop::operator*(const MonomialLoop& o) const {
  MonomialLoop r;
  const int n = static_cast<int>(perm.size());
  for (int c = 0; c < n; ++c) {
    const int mid = o.perm[c];
    r.perm.push_back(perm[mid]);
    r.phase.push_back(phase[mid] * o.phase[c]);
    r.power.push_back(power[mid] + o.power[c]);
  }
  return r;
}

LaurentMatrix MonomialLoop::to_laurent() const {
  const int n = static_cast<int>(perm.size());
  LaurentMatrix g(n);
  for (int c = 0; c < n; ++c) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(perm[c], c) = phase[c];
    g.add_to_coefficient(power[c], m);
  }
  return g;
}

RootEmbedding MonomialLoop::conjugate(const RootEmbedding& emb) const {
  // w E_ab z^s w^-1 = w_a conj(w_b) z^(m_a - m_b + s) E_{perm a, perm b}
  RootEmbedding r = emb;
  r.p = perm[emb.p];
  r.q = perm[emb.q];
  r.phase = phase[emb.p] * std::conj(phase[emb.q]) * emb.phase;
  r.power = power[emb.p] - power[emb.q] + emb.power;
  return r;
}

MonomialLoop weyl_representative_monomial(const CartanData& data, int gamma) {
  const RootEmbedding e = affine_root_homomorphism(data, gamma);
  MonomialLoop m = MonomialLoop::identity(e.n);
  const cd i(0, 1);
  // Column p -> row q with i conj(phase) z^-power; column q -> row p.
  m.perm[e.p] = e.q;
  m.phase[e.p] = i * std::conj(e.phase);
  m.power[e.p] = -e.power;
  m.perm[e.q] = e.p;
  m.phase[e.q] = i * e.phase;
  m.power[e.q] = e.power;
  return m;
}

LaurentMatrix weyl_representative(const CartanData& data, int gamma) {
  return weyl_representative_monomial(data, gamma).to_laurent();
}

std::vector<RootEmbedding> conjugated_embeddings(const ReducedSequence& seq,
                                                 int count) {
  if (count > seq.size())
    throw SequenceTooShort(count, "embedding index exceeds the sequence");
  const CartanData& d = seq.data();
  std::vector<RootEmbedding> out;
  MonomialLoop w = MonomialLoop::identity(d.n());
  for (int p = 0; p < count; ++p) {
    out.push_back(w.conjugate(affine_root_homomorphism(d, seq.gamma(p))));
    w = w * weyl_representative_monomial(d, seq.gamma(p));
  }
  return out;
}

LaurentMatrix conjugated_embedding(const ReducedSequence& seq, int pos,
                                   cd zeta) {
  if (pos < 0 || pos >= seq.size())
    throw SequenceTooShort(pos + 1, "embedding index exceeds the sequence");
  return conjugated_embeddings(seq, pos + 1).back().embed(elementary_k(zeta));
}

std::vector<RootVector> f_tau_basis(const ReducedSequence& seq, int count) {
  auto emb = conjugated_embeddings(seq, count);
  std::vector<RootVector> out;
  for (int p = 0; p < count; ++p) out.push_back({seq.tau(p), emb[p]});
  return out;
}

}  // namespace loopfact
