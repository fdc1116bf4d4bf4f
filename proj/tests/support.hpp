#pragma once

#include <random>
#include <vector>

#include "loopfact/factor.hpp"

namespace testing_support {

using loopfact::cd;

inline std::vector<cd> random_params(std::mt19937_64& rng, int count,
                                     double max_abs) {
  std::uniform_real_distribution<double> r(0.0, max_abs);
  std::uniform_real_distribution<double> phi(0.0, 6.283185307179586);
  std::vector<cd> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(r(rng), phi(rng)));
  return out;
}

inline std::vector<cd> geometric_params(std::mt19937_64& rng, int count,
                                        double first, double ratio) {
  std::uniform_real_distribution<double> phi(0.0, 6.283185307179586);
  std::vector<cd> out;
  double m = first;
  for (int i = 0; i < count; ++i, m *= ratio) out.push_back(std::polar(m, phi(rng)));
  return out;
}

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(u(rng), u(rng));
  return m;
}

inline double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double d = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const cd x = i < a.size() ? a[i] : cd(0);
    const cd y = i < b.size() ? b[i] : cd(0);
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

inline loopfact::ReducedSequence canonical(int rank, int terms) {
  const auto data = loopfact::build_type_a(rank);
  return loopfact::periodic_sequence(data, loopfact::default_period(data),
                                     terms);
}

/// Trace-free chi modes with |entries| <= scale.
inline std::vector<loopfact::ChiMode> random_chi(std::mt19937_64& rng, int n,
                                                 int modes, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<loopfact::ChiMode> out;
  for (int k = 1; k <= modes; ++k) {
    loopfact::ChiMode m;
    m.k = k;
    cd sum = 0;
    for (int i = 0; i < n; ++i) {
      m.coeffs.push_back(cd(u(rng), u(rng)));
      sum += m.coeffs.back();
    }
    for (auto& c : m.coeffs) c -= sum / double(n);
    out.push_back(m);
  }
  return out;
}

}  // namespace testing_support
