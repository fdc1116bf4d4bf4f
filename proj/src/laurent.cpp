#include "loopfact/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/FFT>

#include "loopfact/errors.hpp"

namespace loopfact {

void Series::add_at(int deg, cd v) {
  if (c.empty()) {
    lo = deg;
    c.assign(1, v);
    return;
  }
  if (deg < lo) {
    c.insert(c.begin(), lo - deg, cd(0));
    lo = deg;
  }
  if (deg > hi()) c.resize(deg - lo + 1, cd(0));
  c[deg - lo] += v;
}

double Series::max_abs() const {
  double m = 0;
  for (auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

Series Series::trimmed(double tol) const {
  size_t b = 0, e = c.size();
  while (b < e && std::abs(c[b]) <= tol) ++b;
  while (e > b && std::abs(c[e - 1]) <= tol) --e;
  if (b == e) return {};
  return {lo + static_cast<int>(b),
          std::vector<cd>(c.begin() + b, c.begin() + e)};
}

Series Series::window(int from, int to) const {
  Series s;
  for (int d = std::max(from, lo); d <= std::min(to, hi()); ++d)
    s.add_at(d, at(d));
  return s;
}

cd Series::evaluate(cd z) const {
  cd acc = 0;
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc * std::pow(z, lo);
}

Series operator+(const Series& a, const Series& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Series s;
  s.lo = std::min(a.lo, b.lo);
  s.c.assign(std::max(a.hi(), b.hi()) - s.lo + 1, cd(0));
  for (size_t k = 0; k < a.c.size(); ++k) s.c[a.lo - s.lo + k] += a.c[k];
  for (size_t k = 0; k < b.c.size(); ++k) s.c[b.lo - s.lo + k] += b.c[k];
  return s;
}

Series operator-(const Series& a) {
  Series s = a;
  for (auto& v : s.c) v = -v;
  return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(cd s, const Series& a) {
  Series r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  if (a.empty() || b.empty()) return {};
  return mul_trunc(a, b, a.hi() + b.hi());
}

Series mul_trunc(const Series& a, const Series& b, int max_deg) {
  if (a.empty() || b.empty()) return {};
  const int lo = a.lo + b.lo;
  const int hi = std::min(a.hi() + b.hi(), max_deg);
  if (hi < lo) return {};
  Series s;
  s.lo = lo;
  s.c.assign(hi - lo + 1, cd(0));
  const int na = static_cast<int>(a.c.size());
  const int nb = static_cast<int>(b.c.size());
  for (int i = 0; i < na; ++i) {
    if (a.c[i] == cd(0)) continue;
    const int jmax = std::min(nb - 1, hi - lo - i);
    for (int j = 0; j <= jmax; ++j) s.c[i + j] += a.c[i] * b.c[j];
  }
  return s;
}

Series inverse_power_series(const Series& s, int max_deg) {
  if (s.empty() || s.lo > 0 || s.at(0) == cd(0))
    throw InvalidArgument("series is not invertible at z = 0");
  if (s.lo < 0) throw InvalidArgument("series has negative degrees");
  Series r;
  r.lo = 0;
  r.c.assign(max_deg + 1, cd(0));
  const cd inv0 = 1.0 / s.c[0];
  r.c[0] = inv0;
  for (int k = 1; k <= max_deg; ++k) {
    cd acc = 0;
    const int jmax = std::min(k, s.hi());
    for (int j = 1; j <= jmax; ++j) acc += s.c[j] * r.c[k - j];
    r.c[k] = -acc * inv0;
  }
  return r;
}

LaurentMatrix LaurentMatrix::identity(int n) {
  return constant(Eigen::MatrixXcd::Identity(n, n));
}

LaurentMatrix LaurentMatrix::constant(const Eigen::MatrixXcd& m) {
  return monomial(m, 0);
}

LaurentMatrix LaurentMatrix::monomial(const Eigen::MatrixXcd& m, int deg) {
  LaurentMatrix g(static_cast<int>(m.rows()));
  g.lo_ = deg;
  g.c_.push_back(m);
  g.trim_exact();
  return g;
}

LaurentMatrix LaurentMatrix::from_entries(int n,
                                          const std::vector<Series>& entries) {
  LaurentMatrix g(n);
  int lo = 0, hi = -1;
  bool any = false;
  for (auto& e : entries) {
    if (e.empty()) continue;
    if (!any) {
      lo = e.lo;
      hi = e.hi();
      any = true;
    } else {
      lo = std::min(lo, e.lo);
      hi = std::max(hi, e.hi());
    }
  }
  if (!any) return g;
  g.lo_ = lo;
  g.c_.assign(hi - lo + 1, Eigen::MatrixXcd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Series& e = entries[i * n + j];
      for (size_t k = 0; k < e.c.size(); ++k) g.c_[e.lo - lo + k](i, j) = e.c[k];
    }
  g.trim_exact();
  return g;
}

void LaurentMatrix::trim_exact() {
  size_t b = 0, e = c_.size();
  while (b < e && c_[b].isZero(0)) ++b;
  while (e > b && c_[e - 1].isZero(0)) --e;
  if (b == e) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (b > 0 || e < c_.size()) {
    c_ = std::vector<Eigen::MatrixXcd>(c_.begin() + b, c_.begin() + e);
    lo_ += static_cast<int>(b);
  }
}

Eigen::MatrixXcd LaurentMatrix::coefficient(int deg) const {
  const int k = deg - lo_;
  if (k < 0 || k >= static_cast<int>(c_.size()))
    return Eigen::MatrixXcd::Zero(n_, n_);
  return c_[k];
}

void LaurentMatrix::add_to_coefficient(int deg, const Eigen::MatrixXcd& m) {
  if (c_.empty()) {
    lo_ = deg;
    c_.push_back(m);
  } else {
    if (deg < lo_) {
      c_.insert(c_.begin(), lo_ - deg, Eigen::MatrixXcd::Zero(n_, n_));
      lo_ = deg;
    }
    if (deg > max_degree())
      c_.resize(deg - lo_ + 1, Eigen::MatrixXcd::Zero(n_, n_));
    c_[deg - lo_] += m;
  }
  trim_exact();
}

Series LaurentMatrix::entry(int i, int j) const {
  Series s;
  if (c_.empty()) return s;
  s.lo = lo_;
  s.c.resize(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) s.c[k] = c_[k](i, j);
  return s.trimmed(0.0);
}

std::vector<Series> LaurentMatrix::entries() const {
  std::vector<Series> e(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) e[i * n_ + j] = entry(i, j);
  return e;
}

Eigen::MatrixXcd LaurentMatrix::evaluate(cd z) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n_, n_);
  for (size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
  if (!c_.empty()) acc *= std::pow(z, lo_);
  return acc;
}

LaurentMatrix LaurentMatrix::star() const {
  LaurentMatrix g(n_);
  if (c_.empty()) return g;
  g.lo_ = -max_degree();
  g.c_.reserve(c_.size());
  for (size_t k = c_.size(); k-- > 0;) g.c_.push_back(c_[k].conjugate());
  return g;
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix g = *this;
  for (auto& m : g.c_) m.transposeInPlace();
  return g;
}

LaurentMatrix LaurentMatrix::adjoint() const { return star().transpose(); }

LaurentMatrix LaurentMatrix::trimmed(double tol) const {
  LaurentMatrix g = *this;
  for (auto& m : g.c_)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (std::abs(m(i, j)) <= tol) m(i, j) = 0;
  g.trim_exact();
  return g;
}

LaurentMatrix LaurentMatrix::window(int from, int to) const {
  LaurentMatrix g(n_);
  for (int d = std::max(from, lo_); d <= std::min(to, max_degree()); ++d)
    g.add_to_coefficient(d, coefficient(d));
  return g;
}

double LaurentMatrix::max_abs() const {
  double m = 0;
  for (auto& c : c_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& o) {
  if (n_ == 0) n_ = o.n_;
  if (o.n_ != n_ && !o.is_zero()) throw InvalidArgument("size mismatch");
  for (int d = o.lo_; d <= o.max_degree(); ++d) {
    if (c_.empty()) {
      lo_ = d;
      c_.push_back(Eigen::MatrixXcd::Zero(n_, n_));
    }
    if (d < lo_) {
      c_.insert(c_.begin(), lo_ - d, Eigen::MatrixXcd::Zero(n_, n_));
      lo_ = d;
    }
    if (d > max_degree()) c_.resize(d - lo_ + 1, Eigen::MatrixXcd::Zero(n_, n_));
    c_[d - lo_] += o.c_[d - o.lo_];
  }
  trim_exact();
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& o) {
  return *this += cd(-1) * o;
}

LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) {
  return a += b;
}

LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) {
  return a -= b;
}

LaurentMatrix operator*(cd s, const LaurentMatrix& a) {
  LaurentMatrix g(a.size());
  for (int d = a.min_degree(); !a.is_zero() && d <= a.max_degree(); ++d)
    g.add_to_coefficient(d, s * a.coefficient(d));
  return g;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("size mismatch in product");
  const int n = a.size();
  LaurentMatrix g(n);
  if (a.is_zero() || b.is_zero()) return g;
  const int lo = a.min_degree() + b.min_degree();
  const int hi = a.max_degree() + b.max_degree();
  std::vector<Eigen::MatrixXcd> acc(hi - lo + 1, Eigen::MatrixXcd::Zero(n, n));
  std::vector<Eigen::MatrixXcd> bc;
  for (int j = b.min_degree(); j <= b.max_degree(); ++j)
    bc.push_back(b.coefficient(j));
  for (int i = a.min_degree(); i <= a.max_degree(); ++i) {
    Eigen::MatrixXcd ai = a.coefficient(i);
    if (ai.isZero(0)) continue;
    for (int j = b.min_degree(); j <= b.max_degree(); ++j) {
      const auto& bj = bc[j - b.min_degree()];
      acc[i + j - lo].noalias() += ai * bj;
    }
  }
  for (int d = lo; d <= hi; ++d) g.add_to_coefficient(d, acc[d - lo]);
  return g;
}

LaurentMatrix operator*(const Eigen::MatrixXcd& m, const LaurentMatrix& a) {
  return LaurentMatrix::constant(m) * a;
}

LaurentMatrix operator*(const LaurentMatrix& a, const Eigen::MatrixXcd& m) {
  return a * LaurentMatrix::constant(m);
}

double coeff_distance(const LaurentMatrix& a, const LaurentMatrix& b) {
  return (a - b).max_abs();
}

std::vector<cd> circle_points(int samples) {
  std::vector<cd> z(samples);
  for (int s = 0; s < samples; ++s)
    z[s] = std::polar(1.0, 2.0 * M_PI * s / samples);
  return z;
}

double unitarity_residual(const LaurentMatrix& g, int samples) {
  const int n = g.size();
  double r = 0;
  for (cd z : circle_points(samples)) {
    Eigen::MatrixXcd v = g.evaluate(z);
    r = std::max(r, (v * v.adjoint() - Eigen::MatrixXcd::Identity(n, n))
                        .cwiseAbs()
                        .maxCoeff());
  }
  return r;
}

double star_unitarity_residual(const LaurentMatrix& g) {
  return coeff_distance(g.adjoint() * g, LaurentMatrix::identity(g.size()));
}

LaurentMatrix inverse_unitary(const LaurentMatrix& g, double tol) {
  const double r = unitarity_residual(g, 64);
  if (r > tol)
    throw NotUnitaryError(r, "loop is not unitary on the circle (residual " +
                                 std::to_string(r) + ")");
  return g.adjoint();
}

LaurentMatrix nilpotent_exp(const LaurentMatrix& x) {
  const int n = x.size();
  LaurentMatrix acc = LaurentMatrix::identity(n);
  LaurentMatrix term = LaurentMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    term = (1.0 / k) * (term * x);
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

LaurentMatrix nilpotent_log(const LaurentMatrix& unipotent) {
  const int n = unipotent.size();
  LaurentMatrix x = unipotent - LaurentMatrix::identity(n);
  LaurentMatrix acc(n);
  LaurentMatrix power = x;
  for (int k = 1; k <= n; ++k) {
    if (power.is_zero()) break;
    acc += ((k % 2 ? 1.0 : -1.0) / k) * power;
    power = power * x;
  }
  return acc;
}

std::vector<cd> fourier_coefficients(const std::vector<cd>& values) {
  const int S = static_cast<int>(values.size());
  Eigen::FFT<double> fft;
  std::vector<cd> spec;
  fft.fwd(spec, values);
  std::vector<cd> out(S);
  for (int k = 0; k < S; ++k) {
    const int deg = k < S / 2 ? k : k - S;
    out[deg + S / 2] = spec[k] / static_cast<double>(S);
  }
  return out;
}

LaurentMatrix from_samples(const std::vector<Eigen::MatrixXcd>& values,
                           double tol, double* alias_residual) {
  const int S = static_cast<int>(values.size());
  const int n = static_cast<int>(values.at(0).rows());
  LaurentMatrix g(n);
  std::vector<Eigen::MatrixXcd> coeff(S, Eigen::MatrixXcd::Zero(n, n));
  std::vector<cd> v(S);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s < S; ++s) v[s] = values[s](i, j);
      auto c = fourier_coefficients(v);
      for (int k = 0; k < S; ++k) coeff[k](i, j) = c[k];
    }
  double alias = 0;
  for (int k = 0; k < S; ++k) {
    const int deg = k - S / 2;
    if (std::abs(deg) >= S / 4)
      alias = std::max(alias, coeff[k].cwiseAbs().maxCoeff());
    g.add_to_coefficient(deg, coeff[k]);
  }
  if (alias_residual) *alias_residual = alias;
  return g.trimmed(tol);
}

}  // namespace loopfact
