#include <algorithm>
#include <cmath>
#include <string>

#include "loopfact/errors.hpp"
#include "loopfact/factor.hpp"

namespace loopfact {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rows of m as upper-triangular r times rows of k, with k unitary and r
// positive on the diagonal; the last row is normalized first.
void bottom_up_gram_schmidt(const Eigen::MatrixXcd& m, Eigen::VectorXd& r,
                            Eigen::MatrixXcd& k) {
  const int n = static_cast<int>(m.rows());
  k = Eigen::MatrixXcd::Zero(n, n);
  r = Eigen::VectorXd::Zero(n);
  for (int i = n - 1; i >= 0; --i) {
    Eigen::RowVectorXcd v = m.row(i);
    for (int j = i + 1; j < n; ++j) {
      const cd c = std::conj(v.dot(k.row(j)));
      v -= c * k.row(j);
    }
    r(i) = v.norm();
    if (r(i) < 1e-300)
      throw DegenerateInputError("pointwise decomposition hit a zero row");
    k.row(i) = v / r(i);
  }
}

LaurentMatrix to_laurent(const std::vector<Eigen::MatrixXcd>& values,
                         const char* what) {
  double alias = 0;
  LaurentMatrix out = from_samples(values, 1e-13, &alias);
  if (alias > 1e-9)
    throw ConvergenceError(0, alias,
                           std::string(what) +
                               " has more Fourier modes than the sample count "
                               "resolves");
  return out;
}

std::vector<cd> trim_tail(std::vector<cd> v, double tol) {
  while (!v.empty() && std::abs(v.back()) <= tol) v.pop_back();
  return v;
}

}  // namespace

IntVec resolve_period(const CartanData& data, const IntVec& coroot_coeffs) {
  if (coroot_coeffs.empty()) return default_period(data);
  if (static_cast<int>(coroot_coeffs.size()) != data.rank)
    throw InvalidArgument("period needs " + std::to_string(data.rank) +
                          " coroot coefficients");
  return data.coroot_lattice_point(coroot_coeffs);
}

ReducedSequence zeta_sequence(const CartanData& data, const IntVec& h,
                              int count) {
  return periodic_sequence(data, h, std::max(count, 1));
}

ReducedSequence eta_sequence(const CartanData& data, const IntVec& h,
                             int count) {
  const std::vector<int> w0 = longest_element_word(data);
  const int base = std::max(1, count - static_cast<int>(w0.size()));
  return prepend_w0(periodic_sequence(data, h, base), w0);
}

LaurentMatrix exp_chi(const std::vector<ChiMode>& chi, int n, int samples) {
  int kmax = 0;
  for (const ChiMode& m : chi) {
    if (m.k < 0) throw InvalidArgument("chi modes are given for k >= 0");
    if (static_cast<int>(m.coeffs.size()) != n)
      throw InvalidArgument("chi mode has " + std::to_string(m.coeffs.size()) +
                            " entries, expected " + std::to_string(n));
    cd trace = 0;
    for (const cd& c : m.coeffs) trace += c;
    if (std::abs(trace) > 1e-12)
      throw InvalidArgument("chi mode " + std::to_string(m.k) +
                            " is not trace free");
    if (m.k == 0)
      for (const cd& c : m.coeffs)
        if (std::abs(c.real()) > 1e-12)
          throw InvalidArgument("chi_0 must be imaginary");
    kmax = std::max(kmax, m.k);
  }
  int S = std::max(samples, 8);
  while (S < 8 * (kmax + 1)) S *= 2;
  for (int attempt = 0; attempt < 6; ++attempt, S *= 2) {
    const auto zs = circle_points(S);
    std::vector<Eigen::MatrixXcd> values(S, Eigen::MatrixXcd::Zero(n, n));
    for (int s = 0; s < S; ++s)
      for (int i = 0; i < n; ++i) {
        cd v = 0;
        for (const ChiMode& m : chi) {
          const cd zk = std::pow(zs[s], m.k);
          if (m.k == 0)
            v += m.coeffs[i];
          else
            v += m.coeffs[i] * zk - std::conj(m.coeffs[i]) / zk;
        }
        values[s](i, i) = std::exp(v);
      }
    double alias = 0;
    LaurentMatrix out = from_samples(values, 1e-15, &alias);
    if (alias <= 1e-14) return out;
  }
  throw ConvergenceError(0, 0, "exp(chi) does not resolve within the sample "
                               "budget");
}

double chi_energy(const std::vector<ChiMode>& chi) {
  double s = 0;
  for (const ChiMode& m : chi)
    if (m.k > 0)
      for (const cd& c : m.coeffs) s += m.k * std::norm(c);
  return s;
}

LaurentMatrix compose_g(const SmoothFactorizationData& data,
                        const Config& config) {
  if (data.rank < 1) throw InvalidArgument("rank must be at least 1");
  const CartanData root_data = build_type_a(data.rank);
  const int n = root_data.n();
  const IntVec h = resolve_period(root_data, data.period);
  const int nz = static_cast<int>(data.zetas.size());
  const int ne = static_cast<int>(data.etas.size());
  const LaurentMatrix k2 =
      synthesize({zeta_sequence(root_data, h, nz), data.zetas}).loop;
  const LaurentMatrix k1 =
      synthesize({eta_sequence(root_data, h, ne), data.etas}).loop;
  const LaurentMatrix e = exp_chi(data.chi, n, config.samples);
  return k1.adjoint() * e * k2;
}

Decomposition decompose_g(const LaurentMatrix& g, const IntVec& period,
                          const Config& config) {
  const int n = g.size();
  if (n < 2) throw InvalidArgument("loop must be at least 2 x 2");
  const double unit = unitarity_residual(g, 64);
  if (unit > 1e3 * config.tol_exact)
    throw NotUnitaryError(unit, "loop is not unitary on the circle");
  const CartanData data = build_type_a(n - 1);
  const IntVec h = resolve_period(data, period);

  Decomposition out;
  out.params.rank = n - 1;
  out.params.period = period;

  const int M = config.toeplitz_n;
  SolvedFactorization sf = triangular_factor(g, LShape::kGeneral, M, M);
  out.factorization = sf.factorization;
  out.solver_residual = sf.residual;

  // Pointwise N+ A K of y = l^-1 and of u.
  const int S = config.samples;
  const auto zs = circle_points(S);
  std::vector<Eigen::MatrixXcd> K1(S), K2(S), E(S);
  std::vector<std::vector<cd>> log_a1(n, std::vector<cd>(S)),
      log_a2(n, std::vector<cd>(S));
  for (int s = 0; s < S; ++s) {
    Eigen::VectorXd r;
    bottom_up_gram_schmidt(sf.l_inverse.evaluate(zs[s]), r, K1[s]);
    for (int i = 0; i < n; ++i) log_a1[i][s] = -std::log(r(i));
    bottom_up_gram_schmidt(sf.factorization.u.evaluate(zs[s]), r, K2[s]);
    for (int i = 0; i < n; ++i) log_a2[i][s] = std::log(r(i));
  }

  // k_i = exp(chi_i^* - chi_i) K_i with chi_i the positive-frequency part
  // of log a_i; chi_i^* - chi_i = -2 i Im chi_i on the circle.
  auto correct = [&](const std::vector<std::vector<cd>>& log_a,
                     std::vector<Eigen::MatrixXcd>& K) {
    for (int i = 0; i < n; ++i) {
      const auto c = fourier_coefficients(log_a[i]);
      for (int s = 0; s < S; ++s) {
        cd chi = 0;
        for (int k = 1; k < S / 2; ++k) chi += c[k + S / 2] * std::pow(zs[s], k);
        const cd phase = std::exp(cd(0, -2.0 * chi.imag()));
        K[s].row(i) *= phase;
      }
    }
  };
  correct(log_a1, K1);
  correct(log_a2, K2);

  // exp(chi) = k1 g k2^*, diagonal and unimodular.
  double offdiag = 0;
  std::vector<std::vector<double>> theta(n, std::vector<double>(S));
  for (int s = 0; s < S; ++s) {
    E[s] = K1[s] * g.evaluate(zs[s]) * K2[s].adjoint();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(E[s](i, j)));
    for (int i = 0; i < n; ++i) theta[i][s] = std::arg(E[s](i, i));
  }
  if (offdiag > 1e-7)
    throw ConvergenceError(0, offdiag,
                           "middle factor is not diagonal; the pointwise "
                           "decompositions are inconsistent");

  std::vector<std::vector<cd>> modes(n);
  for (int i = 0; i < n; ++i) {
    std::vector<cd> v(S);
    v[0] = theta[i][0];
    double shift = 0;
    // Unwrap along the circle.
    for (int s = 1; s < S; ++s) {
      double d = theta[i][s] - theta[i][s - 1];
      if (d > kPi) shift -= 2 * kPi;
      if (d < -kPi) shift += 2 * kPi;
      v[s] = theta[i][s] + shift;
    }
    if (std::abs(shift) > kPi)
      throw ConvergenceError(i + 1, std::abs(shift),
                             "diagonal factor winds around the circle");
    for (auto& x : v) x = cd(0, x.real());
    modes[i] = fourier_coefficients(v);
  }
  // Make the constant mode trace free by moving whole turns.
  double t = 0;
  for (int i = 0; i < n; ++i) t += modes[i][S / 2].imag();
  modes[n - 1][S / 2] -= cd(0, 2 * kPi * std::round(t / (2 * kPi)));

  int kmax = -1;
  double alias = 0;
  for (int k = 0; k < S / 2; ++k)
    for (int i = 0; i < n; ++i) {
      const double mag = std::abs(modes[i][k + S / 2]);
      if (mag > 1e-12) kmax = std::max(kmax, k);
      if (k >= S / 4) alias = std::max(alias, mag);
    }
  if (alias > 1e-9)
    throw ConvergenceError(0, alias, "chi has more Fourier modes than the "
                                     "sample count resolves");
  for (int k = 0; k <= kmax; ++k) {
    ChiMode m;
    m.k = k;
    bool any = false;
    for (int i = 0; i < n; ++i) {
      cd c = modes[i][k + S / 2];
      if (k == 0) c = cd(0, c.imag());
      if (std::abs(c) <= 1e-13) c = 0;
      any = any || c != cd(0);
      m.coeffs.push_back(c);
    }
    if (any) out.params.chi.push_back(m);
  }

  out.k1 = to_laurent(K1, "k1");
  out.k2 = to_laurent(K2, "k2");
  out.exp_chi = exp_chi(out.params.chi, n, S);

  const int nz = peel_count(zeta_sequence(data, h, 1),
                            factor_k2(out.k2, FactorVariant::kK2, config)
                                .l.min_degree());
  const ReducedSequence zs_seq = zeta_sequence(data, h, nz);
  out.params.zetas = trim_tail(peel(out.k2, zs_seq, nz, config), 1e-12);

  const ReducedSequence es_seq = eta_sequence(data, h, 1);
  out.params.etas = trim_tail(peel(out.k1, es_seq, -1, config), 1e-12);

  out.reconstruction_residual = coeff_distance(compose_g(out.params, config), g);
  const CartanData& d = data;
  const Eigen::VectorXd a_eta = a2_product(
      {eta_sequence(d, h, static_cast<int>(out.params.etas.size())),
       out.params.etas});
  const Eigen::VectorXd a_zeta = a2_product(
      {zeta_sequence(d, h, static_cast<int>(out.params.zetas.size())),
       out.params.zetas});
  const Eigen::VectorXd a_chi = diagonal_from_toeplitz(out.exp_chi, M);
  out.diagonal_residual =
      (out.factorization.a - a_eta.cwiseProduct(a_chi).cwiseProduct(a_zeta))
          .cwiseAbs()
          .maxCoeff();
  return out;
}

double det_formula(const SmoothFactorizationData& data) {
  if (data.rank < 1) throw InvalidArgument("rank must be at least 1");
  const CartanData d = build_type_a(data.rank);
  const IntVec h = resolve_period(d, data.period);
  double log_det = -chi_energy(data.chi);
  const int nz = static_cast<int>(data.zetas.size());
  if (nz > 0) {
    const auto lv = levels(zeta_sequence(d, h, nz), nz);
    for (int i = 0; i < nz; ++i)
      log_det -= lv[i] * std::log1p(std::norm(data.zetas[i]));
  }
  const int ne = static_cast<int>(data.etas.size());
  if (ne > 0) {
    const auto lv = levels(eta_sequence(d, h, ne), ne);
    for (int i = 0; i < ne; ++i)
      log_det -= lv[i] * std::log1p(std::norm(data.etas[i]));
  }
  return std::exp(log_det);
}

}  // namespace loopfact
