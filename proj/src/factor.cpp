#include "loopfact/factor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loopfact/errors.hpp"

namespace loopfact {

namespace {

LaurentMatrix clean(const LaurentMatrix& g) {
  return g.trimmed(1e-15 * std::max(1.0, g.max_abs()));
}

Eigen::MatrixXcd diag_matrix(const Eigen::VectorXd& v) {
  return v.cast<cd>().asDiagonal();
}

// Index pair (p, q) with alpha = e_p - e_q, read off simple-root
// coefficients c: the e-coordinates are c_0, c_1 - c_0, ..., -c_{r-1}.
std::pair<int, int> epsilon_pair(const IntVec& c) {
  const int n = static_cast<int>(c.size()) + 1;
  int p = -1, q = -1;
  for (int i = 0; i < n; ++i) {
    const long long hi = i < n - 1 ? c[i] : 0;
    const long long lo = i > 0 ? c[i - 1] : 0;
    const long long v = hi - lo;
    if (v == 1) p = i;
    if (v == -1) q = i;
  }
  if (p < 0 || q < 0) throw InvalidArgument("not a root of type A");
  return {p, q};
}

ReducedSequence long_enough(const ReducedSequence& seq, int count) {
  if (count <= seq.size()) return seq;
  if (!seq.is_periodic())
    throw SequenceTooShort(count, "sequence has " +
                                      std::to_string(seq.size()) +
                                      " letters, " + std::to_string(count) +
                                      " needed");
  return seq.extended(count);
}

}  // namespace

Synthesis synthesize(const ElementaryFactorization& fac) {
  const ReducedSequence& seq = fac.sequence;
  const int count = static_cast<int>(fac.params.size());
  const int n = seq.data().n();
  if (count > seq.size())
    throw SequenceTooShort(count, "more parameters than sequence letters");
  for (const cd& z : fac.params)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidArgument("non-finite parameter");
  const bool k1 = seq.w0_length() > 0;
  const LShape shape = k1 ? LShape::kGeneral : LShape::kUpperNegative;
  const auto emb = conjugated_embeddings(seq, count);

  LaurentMatrix k = LaurentMatrix::identity(n);
  LaurentMatrix l = LaurentMatrix::identity(n);
  LaurentMatrix y = LaurentMatrix::identity(n);
  LaurentMatrix u = LaurentMatrix::identity(n);
  Eigen::VectorXd a = Eigen::VectorXd::Ones(n);

  for (int p = 0; p < count; ++p) {
    const cd z = fac.params[p];
    if (z == cd(0)) continue;
    const RootEmbedding& e = emb[p];
    Eigen::Matrix2cd lower, upper, lower_inv;
    lower << 1, 0, z, 1;
    lower_inv << 1, 0, -z, 1;
    upper << 1, -std::conj(z), 0, 1;
    const LaurentMatrix L = e.embed(lower);
    Eigen::VectorXd A = Eigen::VectorXd::Ones(n);
    A(e.p) = a_of(z);
    A(e.q) = 1.0 / a_of(z);

    k = clean(e.embed(elementary_k(z)) * k);

    // U l = l'' U' with U = i(upper); then k = (L A l'' A^-1)(A a)(a^-1 U' a u).
    const LaurentMatrix Y = e.embed(upper) * l;
    const int M = std::max(0, -y.min_degree()) + std::abs(e.power) + 1;
    SolvedFactorization sf = triangular_factor(Y, shape, M, n * M + 1);
    const double diag_dev = std::max(
        (sf.factorization.a - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff(),
        (sf.factorization.m - Eigen::VectorXcd::Ones(n)).cwiseAbs().maxCoeff());
    if (diag_dev > 1e-8 || sf.residual > 1e-8)
      throw ConvergenceError(seq.label(p), std::max(diag_dev, sf.residual),
                             "inductive triangular update failed");

    const Eigen::MatrixXcd Ad = diag_matrix(A);
    const Eigen::MatrixXcd Ainv = diag_matrix(A.cwiseInverse());
    l = clean(L * (Ad * clean(sf.factorization.l) * Ainv));
    y = clean((Ad * sf.l_inverse * Ainv) * e.embed(lower_inv));
    u = clean(diag_matrix(a.cwiseInverse()) * sf.factorization.u *
              diag_matrix(a) * u);
    a = A.cwiseProduct(a);
  }

  Synthesis out;
  out.loop = k;
  out.factorization.l = l;
  out.factorization.m = Eigen::VectorXcd::Ones(n);
  out.factorization.a = a;
  out.factorization.u = u;
  out.factorization.variant = k1 ? FactorVariant::kK1 : FactorVariant::kK2;
  out.l_inverse = y;
  out.residual = coeff_distance(out.factorization.product(), k);
  return out;
}

Eigen::VectorXd a2_product(const ElementaryFactorization& fac) {
  const int n = fac.sequence.data().n();
  const int count = static_cast<int>(fac.params.size());
  if (count > fac.sequence.size())
    throw SequenceTooShort(count, "more parameters than sequence letters");
  Eigen::VectorXd a = Eigen::VectorXd::Ones(n);
  for (int p = 0; p < count; ++p) {
    const auto [i, j] = epsilon_pair(fac.sequence.tau(p).alpha);
    const double s = a_of(fac.params[p]);
    a(i) *= s;
    a(j) /= s;
  }
  return a;
}

int peel_count(const ReducedSequence& seq, int min_degree) {
  const long long depth = std::max(0, -min_degree);
  ReducedSequence s = seq;
  if (seq.is_periodic()) {
    const int need =
        seq.w0_length() + seq.period_length() * static_cast<int>(depth + 1);
    s = long_enough(seq, need);
  }
  int count = 0;
  for (int p = 0; p < s.size(); ++p)
    if (level(s.data(), s.tau(p)) <= depth) count = p + 1;
  if (depth == 0 && seq.w0_length() == 0) return 0;
  return count;
}

std::vector<cd> xstar_from_l2(const LaurentMatrix& l,
                              const ReducedSequence& seq, int count,
                              double tol) {
  const ReducedSequence s = long_enough(seq, count);
  const auto emb = conjugated_embeddings(s, count);
  const LaurentMatrix lg = nilpotent_log(l);
  std::vector<cd> x(count);
  LaurentMatrix rest = lg;
  for (int p = 0; p < count; ++p) {
    const RootEmbedding& e = emb[p];
    x[p] = lg.coefficient(-e.power)(e.q, e.p) / std::conj(e.phase);
    rest -= x[p] * e.f();
  }
  const double residual = rest.max_abs();
  if (residual > tol)
    throw NotInSpanError(residual, "log l leaves the span of the first " +
                                       std::to_string(count) +
                                       " root vectors (residual " +
                                       std::to_string(residual) + ")");
  return x;
}

std::vector<cd> peel(const LaurentMatrix& k, const ReducedSequence& seq,
                     int count, const Config& config) {
  const FactorVariant variant =
      seq.w0_length() > 0 ? FactorVariant::kK1 : FactorVariant::kK2;
  if (k.size() != seq.data().n())
    throw InvalidArgument("loop size does not match the sequence rank");
  TriangularFactorization tf = factor_k2(k, variant, config);
  if (count < 0) count = peel_count(seq, tf.l.min_degree());
  const ReducedSequence s = long_enough(seq, count);
  const auto emb = conjugated_embeddings(s, count);
  const double span_tol = 1e3 * config.tol_exact;

  std::vector<cd> zetas(count, 0.0);
  LaurentMatrix cur = k;
  for (int p = count - 1; p >= 0; --p) {
    if (p != count - 1) tf = factor_k2(cur, variant, config);
    std::vector<cd> x;
    try {
      x = xstar_from_l2(tf.l, s, p + 1, span_tol);
    } catch (const NotInSpanError& err) {
      throw ConvergenceError(s.label(p), err.residual(),
                             "peeling stuck at factor " +
                                 std::to_string(s.label(p)) + ": " +
                                 err.what());
    }
    zetas[p] = x[p];
    cur = clean(emb[p].embed(elementary_k(zetas[p])).adjoint() * cur);
  }
  const double residual =
      coeff_distance(cur, LaurentMatrix::identity(k.size()));
  if (residual > span_tol)
    throw ConvergenceError(count > 0 ? s.label(0) : s.first_label(), residual,
                           "loop is not exhausted after peeling " +
                               std::to_string(count) + " factors");
  return zetas;
}

std::vector<cd> zeta_from_xstar(const std::vector<cd>& x,
                                const ReducedSequence& seq, int count,
                                double tol) {
  if (static_cast<int>(x.size()) < count)
    throw InvalidArgument("fewer coordinates than requested factors");
  const ReducedSequence s = long_enough(seq, count);
  const CartanData& data = s.data();
  std::vector<cd> zeta(count, 0.0);
  auto coordinates = [&](const std::vector<cd>& z) {
    const Synthesis syn = synthesize({s, z});
    return xstar_from_l2(syn.factorization.l, s, count, 1e-8);
  };
  auto coordinate = [&](int j, cd value) {
    std::vector<cd> trial = zeta;
    trial[j] = value;
    return coordinates(trial)[j];
  };
  // Solves x_j(zeta_j) = x[j] with the other entries held fixed; x_j is
  // affine in zeta_j when the prefix vanishes, nearly so otherwise.
  auto solve_one = [&](int j, cd start) {
    cd z = start;
    double last = INFINITY;
    for (int iter = 0; iter < 30; ++iter) {
      const cd value = coordinate(j, z);
      const cd err = x[j] - value;
      if (std::abs(err) <= 1e-14 * std::max(1.0, std::abs(x[j]))) break;
      if (!(std::abs(err) < last))
        throw ConvergenceError(s.label(j), std::abs(err),
                               "coordinate solve is not contracting");
      last = std::abs(err);
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      const cd dr = (coordinate(j, z + h) - value) / h;
      const cd di = (coordinate(j, z + cd(0, h)) - value) / h;
      Eigen::Matrix2d J;
      J << dr.real(), di.real(), dr.imag(), di.imag();
      const Eigen::Vector2d step =
          J.partialPivLu().solve(Eigen::Vector2d(err.real(), err.imag()));
      if (!step.allFinite())
        throw ConvergenceError(s.label(j), std::abs(err),
                               "coordinate solve diverged");
      z += cd(step(0), step(1));
    }
    return z;
  };

  // Backward substitution with zero prefix: the remainder comes from the
  // synthesized tail and the a-factor product gives the first guess.
  for (int j = count - 1; j >= 0; --j) {
    const cd remainder = j < count - 1 ? coordinate(j, 0.0) : cd(0.0);
    double slope = 1.0;
    for (int q = j + 1; q < count; ++q)
      slope *= std::pow(a_of(zeta[q]),
                        -static_cast<double>(pairing(data, s.tau(j), s.tau(q))));
    zeta[j] = solve_one(j, (x[j] - remainder) / slope);
  }
  // In rank >= 2 lower entries feed back into higher coordinates through
  // commutators; sweep until the coordinates reproduce.
  double worst = 0;
  int where = 0;
  for (int sweep = 0; sweep < 50; ++sweep) {
    const auto back = coordinates(zeta);
    worst = 0;
    for (int j = 0; j < count; ++j)
      if (std::abs(back[j] - x[j]) > worst) {
        worst = std::abs(back[j] - x[j]);
        where = j;
      }
    if (worst <= std::min(tol, 1e-13)) break;
    for (int j = count - 1; j >= 0; --j) zeta[j] = solve_one(j, zeta[j]);
  }
  if (worst > tol)
    throw ConvergenceError(s.label(where), worst,
                           "coordinates do not round-trip");
  return zeta;
}

}  // namespace loopfact
