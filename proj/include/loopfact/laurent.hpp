#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace loopfact {

using cd = std::complex<double>;

/// Scalar Laurent polynomial, or a Laurent series truncated above:
/// c[k] multiplies z^(lo + k).
struct Series {
  int lo = 0;
  std::vector<cd> c;

  static Series constant(cd v) { return {0, {v}}; }
  static Series monomial(cd v, int deg) { return {deg, {v}}; }

  bool empty() const { return c.empty(); }
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
  cd at(int deg) const {
    const int k = deg - lo;
    return (k < 0 || k >= static_cast<int>(c.size())) ? cd(0) : c[k];
  }
  void add_at(int deg, cd v);
  double max_abs() const;
  /// Drops end coefficients with |c| <= tol.
  Series trimmed(double tol = 0.0) const;
  /// Keeps degrees in [from, to].
  Series window(int from, int to) const;
  cd evaluate(cd z) const;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(cd s, const Series& a);
Series operator*(const Series& a, const Series& b);
/// Product keeping degrees <= max_deg.
Series mul_trunc(const Series& a, const Series& b, int max_deg);
/// 1/s as a power series through degree max_deg; s must have no negative
/// degrees and s(0) != 0.
Series inverse_power_series(const Series& s, int max_deg);

/// n x n matrix-valued Laurent polynomial sum_m C_m z^m, with zero
/// end coefficients trimmed.
class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  explicit LaurentMatrix(int n) : n_(n) {}

  static LaurentMatrix identity(int n);
  static LaurentMatrix constant(const Eigen::MatrixXcd& m);
  static LaurentMatrix monomial(const Eigen::MatrixXcd& m, int deg);
  /// Builds from a table of entry series.
  static LaurentMatrix from_entries(int n, const std::vector<Series>& entries);

  int size() const { return n_; }
  bool is_zero() const { return c_.empty(); }
  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  Eigen::MatrixXcd coefficient(int deg) const;
  void add_to_coefficient(int deg, const Eigen::MatrixXcd& m);
  Series entry(int i, int j) const;
  std::vector<Series> entries() const;

  Eigen::MatrixXcd evaluate(cd z) const;
  /// Conjugates every coefficient and sends z^m to z^-m.
  LaurentMatrix star() const;
  LaurentMatrix transpose() const;
  /// star().transpose(); the inverse of a loop unitary on the circle.
  LaurentMatrix adjoint() const;
  LaurentMatrix trimmed(double tol = 0.0) const;
  /// Keeps degrees in [from, to].
  LaurentMatrix window(int from, int to) const;
  double max_abs() const;

  LaurentMatrix& operator+=(const LaurentMatrix& o);
  LaurentMatrix& operator-=(const LaurentMatrix& o);

 private:
  void trim_exact();
  int n_ = 0;
  int lo_ = 0;
  std::vector<Eigen::MatrixXcd> c_;
};

LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b);
LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b);
LaurentMatrix operator*(cd s, const LaurentMatrix& a);
LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix operator*(const Eigen::MatrixXcd& m, const LaurentMatrix& a);
LaurentMatrix operator*(const LaurentMatrix& a, const Eigen::MatrixXcd& m);

/// Largest entry modulus of a - b over all degrees.
double coeff_distance(const LaurentMatrix& a, const LaurentMatrix& b);
/// max over `samples` equispaced points of |g(z) g(z)^* - I|.
double unitarity_residual(const LaurentMatrix& g, int samples = 32);
/// Coefficient-level check: max entry of g^* g - I.
double star_unitarity_residual(const LaurentMatrix& g);
/// Inverse of a loop unitary on the circle; throws NotUnitaryError.
LaurentMatrix inverse_unitary(const LaurentMatrix& g, double tol = 1e-10);

/// exp and log of I + X with X nilpotent (strictly triangular pointwise).
LaurentMatrix nilpotent_exp(const LaurentMatrix& x);
LaurentMatrix nilpotent_log(const LaurentMatrix& unipotent);

/// Points z_s = exp(2 pi i s / S).
std::vector<cd> circle_points(int samples);
/// Fourier coefficients of sampled values; returns degrees in
/// [-S/2, S/2 - 1] via out[deg + S/2].
std::vector<cd> fourier_coefficients(const std::vector<cd>& values);
/// Rebuilds a Laurent polynomial from samples, dropping |c| <= tol.
/// `alias_residual` receives the largest coefficient in the outer quarter
/// of the degree range (an aliasing indicator).
LaurentMatrix from_samples(const std::vector<Eigen::MatrixXcd>& values,
                           double tol, double* alias_residual = nullptr);

}  // namespace loopfact
