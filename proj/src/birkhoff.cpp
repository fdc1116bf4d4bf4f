#include "loopfact/birkhoff.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "loopfact/errors.hpp"

namespace loopfact {

namespace {

// Square matrix of scalar series, used for truncated series algebra.
struct SMat {
  int n = 0;
  std::vector<Series> e;

  explicit SMat(int n_) : n(n_), e(n_ * n_) {}
  static SMat identity(int n) {
    SMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Series::constant(1.0);
    return m;
  }
  static SMat from(const LaurentMatrix& g) {
    SMat m(g.size());
    m.e = g.entries();
    return m;
  }
  Series& at(int i, int j) { return e[i * n + j]; }
  const Series& at(int i, int j) const { return e[i * n + j]; }
  LaurentMatrix to_laurent() const { return LaurentMatrix::from_entries(n, e); }
};

SMat mul(const SMat& a, const SMat& b, int K) {
  SMat c(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) {
      if (a.at(i, k).empty()) continue;
      for (int j = 0; j < a.n; ++j) {
        if (b.at(k, j).empty()) continue;
        c.at(i, j) = c.at(i, j) + mul_trunc(a.at(i, k), b.at(k, j), K);
      }
    }
  return c;
}

SMat add(const SMat& a, const SMat& b) {
  SMat c(a.n);
  for (size_t k = 0; k < a.e.size(); ++k) c.e[k] = a.e[k] + b.e[k];
  return c;
}

// (I + N)^-1 for N nilpotent.
SMat unipotent_inverse(const SMat& nil, int K) {
  SMat acc = SMat::identity(nil.n);
  SMat term = SMat::identity(nil.n);
  SMat neg(nil.n);
  for (size_t k = 0; k < nil.e.size(); ++k) neg.e[k] = -nil.e[k];
  for (int k = 1; k < nil.n; ++k) {
    term = mul(term, neg, K);
    acc = add(acc, term);
  }
  return acc;
}

std::pair<SMat, SMat> split_smat(SMat p, ConstantTerm constant, int K) {
  const int n = p.n;
  const int cut = constant == ConstantTerm::kPlus ? -1 : 0;
  const int inf = std::numeric_limits<int>::max() / 4;
  SMat minus = SMat::identity(n);
  for (int s = 1; s < n; ++s) {
    SMat nil(n);
    bool any = false;
    for (int i = 0; i + s < n; ++i) {
      nil.at(i, i + s) = p.at(i, i + s).window(-inf, cut);
      any = any || !nil.at(i, i + s).empty();
    }
    if (!any) continue;
    p = mul(unipotent_inverse(nil, K), p, K);
    minus = mul(minus, add(SMat::identity(n), nil), K);
    for (int i = 0; i + s < n; ++i)
      p.at(i, i + s) = p.at(i, i + s).window(cut + 1, inf);
  }
  return {minus, p};
}

Eigen::MatrixXcd antidiagonal(int n) {
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) P(i, n - 1 - i) = 1;
  return P;
}

LaurentMatrix unipotent_inverse(const LaurentMatrix& l) {
  const int n = l.size();
  LaurentMatrix x = l - LaurentMatrix::identity(n);
  LaurentMatrix acc = LaurentMatrix::identity(n);
  LaurentMatrix term = LaurentMatrix::identity(n);
  for (int k = 1; k < n; ++k) {
    term = cd(-1) * (term * x);
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

unsigned prefix_mask(int k) { return (1u << k) - 1u; }

}  // namespace

LDU ldu_minors(const Eigen::MatrixXcd& g, double tol) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n) throw InvalidArgument("ldu_minors needs a square matrix");
  std::vector<cd> sigma(n + 1);
  sigma[0] = 1.0;
  double hadamard = 1.0;
  for (int k = 1; k <= n; ++k) {
    sigma[k] = g.topLeftCorner(k, k).determinant();
    hadamard = 1.0;
    for (int i = 0; i < k; ++i) hadamard *= g.row(i).head(k).norm();
    if (std::abs(sigma[k]) <= tol * hadamard)
      throw VanishingMinorError(k, "leading principal minor " +
                                       std::to_string(k) + " vanishes");
  }
  LDU r;
  r.l = Eigen::MatrixXcd::Identity(n, n);
  r.u = Eigen::MatrixXcd::Identity(n, n);
  r.d.resize(n);
  for (int k = 0; k < n; ++k) r.d(k) = sigma[k + 1] / sigma[k];
  Eigen::MatrixXcd sub(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = j + 1; i < n; ++i) {
      // rows {0..j-1, i}, columns {0..j}
      Eigen::MatrixXcd m(j + 1, j + 1);
      m.topRows(j) = g.topLeftCorner(j, j + 1);
      m.row(j) = g.row(i).head(j + 1);
      r.l(i, j) = m.determinant() / sigma[j + 1];
      // rows {0..j}, columns {0..j-1, i}
      Eigen::MatrixXcd u(j + 1, j + 1);
      u.leftCols(j) = g.topLeftCorner(j + 1, j);
      u.col(j) = g.col(i).head(j + 1);
      r.u(j, i) = u.determinant() / sigma[j + 1];
    }
  return r;
}

LDU pointwise_ldu(const LaurentMatrix& g, cd z, double tol) {
  if (z != cd(0) || g.min_degree() >= 0) return ldu_minors(g.evaluate(z), tol);
  // At z = 0 the entries may have poles while the minors do not; take
  // the limits through the symbolic minors.
  const int n = g.size();
  const auto rows = leading_row_minors(g);
  const auto cols = leading_row_minors(g.transpose());
  auto at_zero = [&](const Series& s) {
    double scale = 0;
    for (const cd& c : s.c) scale += std::abs(c);
    for (int d = s.lo; d < 0; ++d)
      if (std::abs(s.at(d)) > tol * std::max(1.0, scale))
        throw InvalidArgument("minor has a pole at z = 0");
    return std::make_pair(s.at(0), scale);
  };
  auto find = [](const std::map<unsigned, Series>& m, unsigned mask) {
    auto it = m.find(mask);
    return it == m.end() ? Series{} : it->second;
  };
  std::vector<cd> sigma(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    const auto [v, scale] = at_zero(find(rows[k], prefix_mask(k)));
    if (std::abs(v) <= tol * std::max(1.0, scale))
      throw VanishingMinorError(k, "leading principal minor " +
                                       std::to_string(k) + " vanishes at z = 0");
    sigma[k] = v;
  }
  LDU r;
  r.l = Eigen::MatrixXcd::Identity(n, n);
  r.u = Eigen::MatrixXcd::Identity(n, n);
  r.d.resize(n);
  for (int k = 0; k < n; ++k) {
    r.d(k) = sigma[k + 1] / sigma[k];
    for (int j = k + 1; j < n; ++j) {
      const unsigned mask = prefix_mask(k) | (1u << j);
      r.u(k, j) = at_zero(find(rows[k + 1], mask)).first / sigma[k + 1];
      r.l(j, k) = at_zero(find(cols[k + 1], mask)).first / sigma[k + 1];
    }
  }
  return r;
}

LaurentMatrix TriangularFactorization::product() const {
  Eigen::VectorXcd d = m.cwiseProduct(a.cast<cd>());
  return l * (Eigen::MatrixXcd(d.asDiagonal()) * u);
}

std::vector<std::map<unsigned, Series>> leading_row_minors(
    const LaurentMatrix& g) {
  const int n = g.size();
  if (n > 16) throw InvalidArgument("minor expansion limited to n <= 16");
  const auto e = g.entries();
  std::vector<std::map<unsigned, Series>> out(n + 1);
  out[0][0u] = Series::constant(1.0);
  for (int k = 1; k <= n; ++k) {
    // Laplace expansion along row k-1.
    for (const auto& [mask, minor] : out[k - 1]) {
      if (minor.empty()) continue;
      for (int c = 0; c < n; ++c) {
        if (mask & (1u << c)) continue;
        const Series& entry = e[(k - 1) * n + c];
        if (entry.empty()) continue;
        const unsigned nm = mask | (1u << c);
        // position of c within nm, as the last row sits at index k-1
        const int pos = std::popcount(nm & ((1u << c) - 1u));
        const double sign = ((k - 1 + pos) % 2) ? -1.0 : 1.0;
        out[k][nm] = out[k][nm] + cd(sign) * (entry * minor);
      }
    }
  }
  return out;
}

double holomorphic_defect(const LaurentMatrix& u) {
  double r = 0;
  if (u.is_zero()) return 1.0;
  for (int d = u.min_degree(); d < 0; ++d)
    r = std::max(r, u.coefficient(d).cwiseAbs().maxCoeff());
  Eigen::MatrixXcd u0 = u.coefficient(0);
  const int n = u.size();
  for (int i = 0; i < n; ++i) {
    r = std::max(r, std::abs(u0(i, i) - 1.0));
    for (int j = 0; j < i; ++j) r = std::max(r, std::abs(u0(i, j)));
  }
  return r;
}

TriangularFactorization factor_k2(const LaurentMatrix& k,
                                  FactorVariant variant,
                                  const Config& config) {
  if (variant == FactorVariant::kGeneral)
    throw InvalidArgument("factor_k2 handles the k1 and k2 variants only");
  const int n = k.size();
  const double ures = unitarity_residual(k, 64);
  if (ures > 1e3 * config.tol_exact)
    throw NotUnitaryError(ures, "loop is not unitary on the circle");
  const Eigen::MatrixXcd P = antidiagonal(n);
  LaurentMatrix g = k.adjoint();
  if (variant == FactorVariant::kK1) g = P * g * P;

  auto minors = leading_row_minors(g);
  std::vector<Series> sigma(n + 1);
  std::vector<double> sigma0(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) {
    Series s = minors[i][prefix_mask(i)];
    double scale = 0;
    for (auto& c : s.c) scale += std::abs(c);
    if (scale == 0)
      throw AdmissibilityError(i, "fundamental minor " + std::to_string(i) +
                                      " vanishes identically");
    const double tol = config.tol_exact * std::max(1.0, scale);
    for (int d = s.lo; d < 0; ++d)
      if (std::abs(s.at(d)) > tol)
        throw AdmissibilityError(
            i, "fundamental minor " + std::to_string(i) +
                   " has a pole at z = 0 (degree " + std::to_string(d) + ")");
    s = s.window(0, s.hi()).trimmed(0.0);
    const cd s0 = s.at(0);
    if (std::abs(s0.imag()) > tol || s0.real() <= tol)
      throw AdmissibilityError(i, "fundamental minor " + std::to_string(i) +
                                      " is not positive at z = 0");
    if (i < n) {
      for (double rad : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const int angles = rad == 0.0 ? 1 : 64;
        for (int t = 0; t < angles; ++t) {
          const cd z = std::polar(rad, 2.0 * M_PI * t / angles);
          if (std::abs(s.evaluate(z)) <= tol)
            throw AdmissibilityError(
                i, "fundamental minor " + std::to_string(i) +
                       " vanishes in the closed disk near z = " +
                       std::to_string(z.real()) + "+" +
                       std::to_string(z.imag()) + "i");
        }
      }
    }
    sigma[i] = s;
    sigma0[i] = s0.real();
  }

  // Diagonal of the pointwise factorization of g at 0.
  Eigen::VectorXd dg(n);
  for (int i = 1; i <= n; ++i) dg(i - 1) = sigma0[i] / sigma0[i - 1];
  Eigen::VectorXd a(n);
  if (variant == FactorVariant::kK2) {
    a = dg.cwiseInverse();
  } else {
    for (int i = 0; i < n; ++i) a(i) = 1.0 / dg(n - 1 - i);
  }

  const int E = std::max({k.max_degree(), -k.min_degree(), 1});
  int K = 2 * n * E + 16;
  for (int attempt = 0; attempt < 3; ++attempt, K *= 2) {
    // Unipotent upper factor of g: entries M_ij / sigma_i.
    SMat nil(n);
    for (int i = 0; i < n; ++i) {
      if (i + 1 >= n) break;
      Series inv = inverse_power_series(sigma[i + 1], K);
      for (int j = i + 1; j < n; ++j) {
        const unsigned mask = prefix_mask(i) | (1u << j);
        auto it = minors[i + 1].find(mask);
        if (it == minors[i + 1].end() || it->second.empty()) continue;
        nil.at(i, j) = mul_trunc(it->second, inv, K);
      }
    }
    SMat v = unipotent_inverse(nil, K);
    auto [minus, plus] = split_smat(
        v,
        variant == FactorVariant::kK2 ? ConstantTerm::kPlus
                                      : ConstantTerm::kMinus,
        K);
    LaurentMatrix l = minus.to_laurent().trimmed(1e-15);
    if (variant == FactorVariant::kK1) l = P * l * P;

    TriangularFactorization tf;
    tf.l = l;
    tf.m = Eigen::VectorXcd::Ones(n);
    tf.a = a;
    tf.variant = variant;
    Eigen::MatrixXcd ainv = a.cwiseInverse().cast<cd>().asDiagonal();
    tf.u = ainv * (unipotent_inverse(l) * k);
    const double defect = holomorphic_defect(tf.u);
    if (defect <= 1e3 * config.tol_exact) {
      tf.u = tf.u.window(0, tf.u.max_degree());
      return tf;
    }
    if (attempt == 2)
      throw ConvergenceError(n, defect,
                             "constructive factorization left a residual "
                             "holomorphy defect");
  }
  throw ConvergenceError(n, 0, "unreachable");
}

std::pair<LaurentMatrix, LaurentMatrix> unipotent_birkhoff_split(
    const LaurentMatrix& v, ConstantTerm constant, int max_degree) {
  const int n = v.size();
  for (int d = v.min_degree(); !v.is_zero() && d <= v.max_degree(); ++d) {
    Eigen::MatrixXcd c = v.coefficient(d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const cd want = (i == j && d == 0) ? cd(1) : cd(0);
        if (std::abs(c(i, j) - want) > 1e-12)
          throw InvalidArgument("split input is not unit upper triangular");
      }
  }
  auto [minus, plus] = split_smat(SMat::from(v), constant, max_degree);
  return {minus.to_laurent(), plus.to_laurent()};
}

ToeplitzTruncation toeplitz_compression(const LaurentMatrix& g, int N) {
  const int n = g.size();
  const int width = g.is_zero() ? 0 : std::max(g.max_degree(), -g.min_degree());
  if (N <= width)
    throw InvalidArgument("Toeplitz cutoff " + std::to_string(N) +
                          " does not exceed the degree window " +
                          std::to_string(width));
  ToeplitzTruncation t;
  t.symbol = g;
  t.cutoff = N;
  t.matrix = Eigen::MatrixXcd::Zero(n * N, n * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i - j < g.min_degree() || i - j > g.max_degree()) continue;
      t.matrix.block(i * n, j * n, n, n) = g.coefficient(i - j);
    }
  return t;
}

namespace {

// log det(A^* A) for the compression of g from W_N = (degrees 0..N-1) plus
// degree -1 in coordinates 0..j-1, onto the same polarization.
double log_det_polarized(const LaurentMatrix& g, int N, int j) {
  const int n = g.size();
  const int top = N - 1 + std::max(0, g.max_degree());
  // Column/row indexing: degree -1 coordinates first, then degree 0 up.
  const int in_dim = j + n * N;
  const int out_dim = j + n * (top + 1);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(out_dim, in_dim);
  auto in_index = [&](int deg, int c) {
    return deg < 0 ? c : j + deg * n + c;
  };
  auto out_index = [&](int deg, int r) {
    return deg < 0 ? r : j + deg * n + r;
  };
  for (int din = -1; din < N; ++din)
    for (int c = 0; c < n; ++c) {
      if (din < 0 && c >= j) continue;
      const int col = in_index(din, c);
      for (int d = g.min_degree(); d <= g.max_degree(); ++d) {
        const int dout = din + d;
        if (dout < -1 || dout > top) continue;
        Eigen::MatrixXcd gc = g.coefficient(d);
        for (int r = 0; r < n; ++r) {
          if (dout < 0 && r >= j) continue;
          A(out_index(dout, r), col) += gc(r, c);
        }
      }
    }
  Eigen::MatrixXcd G = A.adjoint() * A;
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() == Eigen::Success) {
    double s = 0;
    for (int i = 0; i < G.rows(); ++i)
      s += std::log(std::real(llt.matrixLLT()(i, i)));
    return 2 * s;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(G);
  double s = 0;
  for (int i = 0; i < G.rows(); ++i)
    s += std::log(std::abs(lu.matrixLU()(i, i)));
  return s;
}

void require_unitary(const LaurentMatrix& g) {
  const double r = unitarity_residual(g, 64);
  if (r > 1e-8)
    throw NotUnitaryError(r, "Toeplitz determinants need a unitary symbol");
}

}  // namespace

ToeplitzDet toeplitz_det_sq(const LaurentMatrix& g, int N) {
  if (N < 1) throw InvalidArgument("Toeplitz cutoff must be positive");
  require_unitary(g);
  ToeplitzDet r;
  r.cutoff = N;
  r.log_value = log_det_polarized(g, N, 0);
  r.value = std::exp(r.log_value);
  return r;
}

std::vector<double> log_sigma_sq(const LaurentMatrix& g, int N) {
  if (N < 1) throw InvalidArgument("Toeplitz cutoff must be positive");
  require_unitary(g);
  std::vector<double> out;
  for (int j = 0; j < g.size(); ++j) {
    const double ld = log_det_polarized(g, N, j);
    if (!std::isfinite(ld) || ld < 2 * std::log(1e-300))
      throw DegenerateInputError("|sigma_" + std::to_string(j) +
                                 "| below the representable range");
    out.push_back(ld);
  }
  return out;
}

Eigen::VectorXd diagonal_from_toeplitz(const LaurentMatrix& g, int N) {
  auto ls = log_sigma_sq(g, N);
  const int n = g.size();
  Eigen::VectorXd a(n);
  for (int i = 1; i <= n; ++i) {
    const double cur = ls[i % n];
    const double prev = ls[i - 1];
    a(i - 1) = std::exp(0.5 * (cur - prev));
  }
  return a;
}

SolvedFactorization triangular_factor(const LaurentMatrix& g, LShape shape,
                                      int M, int l_truncation) {
  const int n = g.size();
  if (M < 0) throw InvalidArgument("negative degree bound");
  const int glo = g.is_zero() ? 0 : std::min(0, g.min_degree());
  std::vector<Eigen::MatrixXcd> gc;
  for (int d = glo; d <= std::max(0, g.max_degree()) + M; ++d)
    gc.push_back(g.coefficient(d));
  const int dmax = static_cast<int>(gc.size()) - 1 + glo;
  auto in_range = [&](int d) { return d >= glo && d <= dmax; };

  LaurentMatrix y(n);
  double residual = 0;
  for (int i = 0; i < n; ++i) {
    // Unknown (m, j) is free unless fixed by the shape.
    std::vector<std::pair<int, int>> free;
    auto fixed_value = [&](int m, int j, bool& fixed) -> cd {
      fixed = false;
      if (m == 0) {
        if (shape == LShape::kUpperNegative || j >= i) {
          fixed = true;
          return j == i ? 1.0 : 0.0;
        }
        return 0.0;
      }
      if (shape == LShape::kUpperNegative && j <= i) {
        fixed = true;
        return 0.0;
      }
      return 0.0;
    };
    std::vector<std::vector<cd>> fixed_vals(M + 1, std::vector<cd>(n, 0.0));
    std::vector<std::vector<int>> index(M + 1, std::vector<int>(n, -1));
    for (int m = 0; m <= M; ++m)
      for (int j = 0; j < n; ++j) {
        bool fixed;
        cd v = fixed_value(m, j, fixed);
        if (fixed)
          fixed_vals[m][j] = v;
        else {
          index[m][j] = static_cast<int>(free.size());
          free.push_back({m, j});
        }
      }
    // Equations: degrees glo-M..-1 in every column, degree 0 in columns < i.
    std::vector<std::pair<int, int>> eqs;
    for (int d = glo - M; d <= -1; ++d)
      for (int c = 0; c < n; ++c) eqs.push_back({d, c});
    for (int c = 0; c < i; ++c) eqs.push_back({0, c});
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(eqs.size(), free.size());
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(eqs.size());
    for (size_t e = 0; e < eqs.size(); ++e) {
      const auto [d, c] = eqs[e];
      for (int m = 0; m <= M; ++m) {
        if (!in_range(d + m)) continue;
        const Eigen::MatrixXcd& gm = gc[d + m - glo];
        for (int j = 0; j < n; ++j) {
          if (index[m][j] >= 0)
            A(e, index[m][j]) += gm(j, c);
          else
            b(e) -= fixed_vals[m][j] * gm(j, c);
        }
      }
    }
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(free.size());
    if (!free.empty() && !eqs.empty())
      x = A.colPivHouseholderQr().solve(b);
    if (!eqs.empty())
      residual = std::max(residual, (A * x - b).cwiseAbs().maxCoeff());
    for (int m = 0; m <= M; ++m) {
      Eigen::MatrixXcd row = Eigen::MatrixXcd::Zero(n, n);
      for (int j = 0; j < n; ++j)
        row(i, j) = index[m][j] >= 0 ? x(index[m][j]) : fixed_vals[m][j];
      y.add_to_coefficient(-m, row);
    }
  }

  LaurentMatrix yg = y * g;
  for (int d = yg.min_degree(); !yg.is_zero() && d < 0; ++d)
    residual = std::max(residual, yg.coefficient(d).cwiseAbs().maxCoeff());
  LaurentMatrix gplus = yg.window(0, yg.max_degree());
  Eigen::VectorXcd d0 = gplus.coefficient(0).diagonal();
  for (int i = 0; i < n; ++i)
    if (std::abs(d0(i)) < 1e-300)
      throw VanishingMinorError(i + 1, "triangular factorization has a zero "
                                       "diagonal entry");

  TriangularFactorization tf;
  tf.variant = shape == LShape::kUpperNegative ? FactorVariant::kK2
                                               : FactorVariant::kGeneral;
  tf.a = d0.cwiseAbs();
  tf.m = d0.cwiseQuotient(tf.a.cast<cd>());
  tf.u = Eigen::MatrixXcd(d0.cwiseInverse().asDiagonal()) * gplus;

  // l = (I + X)^-1 y0^-1 with X = y0^-1 (y - y0) of negative degree.
  Eigen::MatrixXcd y0 = y.coefficient(0);
  Eigen::MatrixXcd y0inv = y0.inverse();
  LaurentMatrix X = y0inv * (y - LaurentMatrix::constant(y0));
  LaurentMatrix acc = LaurentMatrix::identity(n);
  LaurentMatrix term = LaurentMatrix::identity(n);
  for (int k = 1; k <= l_truncation; ++k) {
    term = cd(-1) * (term * X);
    if (term.is_zero()) break;
    term = term.window(-l_truncation, 0);
    if (term.is_zero()) break;
    acc += term;
  }
  tf.l = acc * y0inv;
  return {tf, y, residual};
}

}  // namespace loopfact
