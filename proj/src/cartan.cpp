#include "loopfact/cartan.hpp"

#include <algorithm>
#include <set>

#include "loopfact/errors.hpp"

namespace loopfact {

namespace {

IntMat identity_matrix(int r) {
  IntMat m(r, IntVec(r, 0));
  for (int i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

IntMat multiply(const IntMat& a, const IntMat& b) {
  const int r = static_cast<int>(a.size());
  IntMat c(r, IntVec(r, 0));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// Exact inverse of a small integer matrix by Gauss-Jordan over Q.
std::vector<RatVec> rational_inverse(const IntMat& a) {
  const int r = static_cast<int>(a.size());
  std::vector<RatVec> m(r, RatVec(2 * r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) m[i][j] = a[i][j];
    m[i][r + i] = 1;
  }
  for (int c = 0; c < r; ++c) {
    int piv = c;
    while (piv < r && m[piv][c] == 0) ++piv;
    if (piv == r) throw InvalidArgument("singular matrix");
    std::swap(m[piv], m[c]);
    Rational inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < 2 * r; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<RatVec> inv(r, RatVec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) inv[i][j] = m[i][r + j];
  return inv;
}

}  // namespace

Rational CartanData::root_form(const IntVec& a, const IntVec& b) const {
  long long s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += a[i] * cartan_matrix[i][j] * b[j];
  return Rational(s);
}

Rational CartanData::coweight_form(const RatVec& x, const RatVec& y) const {
  Rational s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += x[i] * coweight_gram[i][j] * y[j];
  return s;
}

Rational CartanData::pair(const IntVec& root, const RatVec& x) const {
  Rational s = 0;
  for (int i = 0; i < rank; ++i) s += root[i] * x[i];
  return s;
}

long long CartanData::pair(const IntVec& root, const IntVec& x) const {
  long long s = 0;
  for (int i = 0; i < rank; ++i) s += root[i] * x[i];
  return s;
}

IntVec CartanData::coroot(const IntVec& root) const {
  // Simply laced: h_alpha = sum c_i h_i.
  IntVec h(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) h[j] += root[i] * simple_coroots[i][j];
  return h;
}

IntVec CartanData::coroot_lattice_point(const IntVec& coefficients) const {
  if (static_cast<int>(coefficients.size()) != rank)
    throw InvalidArgument("coroot coefficients must have length rank");
  IntVec x(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) x[j] += coefficients[i] * simple_coroots[i][j];
  return x;
}

long long height(const IntVec& root) {
  long long h = 0;
  for (auto c : root) h += c;
  return h;
}

bool is_positive_root(const IntVec& root) {
  bool any = false;
  for (auto c : root) {
    if (c < 0) return false;
    if (c > 0) any = true;
  }
  return any;
}

bool is_negative_root(const IntVec& root) {
  bool any = false;
  for (auto c : root) {
    if (c > 0) return false;
    if (c < 0) any = true;
  }
  return any;
}

CartanData build_type_a(int rank) {
  if (rank < 1) throw InvalidArgument("rank must be at least 1");
  CartanData d;
  d.rank = rank;
  d.cartan_matrix = IntMat(rank, IntVec(rank, 0));
  for (int i = 0; i < rank; ++i) {
    d.cartan_matrix[i][i] = 2;
    if (i + 1 < rank) d.cartan_matrix[i][i + 1] = d.cartan_matrix[i + 1][i] = -1;
  }
  d.simple_roots = identity_matrix(rank);
  d.fundamental_coweights = identity_matrix(rank);
  // alpha_j(h_i) = C[i][j], so h_i has coweight coordinates row i of C.
  d.simple_coroots = d.cartan_matrix;
  auto cinv = rational_inverse(d.cartan_matrix);
  // Lambda_i = sum_j (C^-1)_{ji} alpha_j, from Lambda_i(h_k) = delta_ik.
  d.fundamental_weights.assign(rank, RatVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) d.fundamental_weights[i][j] = cinv[j][i];
  d.coweight_gram = cinv;

  // Positive roots by closure of the simple roots under simple reflections.
  std::set<IntVec> seen;
  std::vector<IntVec> frontier;
  for (auto& a : d.simple_roots) {
    seen.insert(a);
    frontier.push_back(a);
  }
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (auto& a : frontier)
      for (int i = 0; i < rank; ++i) {
        // r_i a = a - a(h_i) alpha_i
        long long ahi = 0;
        for (int j = 0; j < rank; ++j) ahi += a[j] * d.cartan_matrix[i][j];
        IntVec b = a;
        b[i] -= ahi;
        if (is_positive_root(b) && seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  d.positive_roots.assign(seen.begin(), seen.end());
  std::stable_sort(d.positive_roots.begin(), d.positive_roots.end(),
                   [](const IntVec& a, const IntVec& b) {
                     return height(a) < height(b);
                   });
  d.highest_root = d.positive_roots.back();
  d.marks = d.highest_root;
  // Comarks: coefficients of h_theta in the coroot basis (simply laced).
  d.comarks = d.highest_root;
  return d;
}

RatVec h_delta(const CartanData& data) {
  return RatVec(data.rank, Rational(1));
}

bool in_coroot_lattice(const CartanData& data, const RatVec& x) {
  // x = C^T n  <=>  n = C^-T x integral.
  const auto& g = data.coweight_gram;  // C^-1, symmetric for type A
  for (int i = 0; i < data.rank; ++i) {
    Rational s = 0;
    for (int j = 0; j < data.rank; ++j) s += g[j][i] * x[j];
    if (denominator(s) != 1) return false;
  }
  return true;
}

bool h_delta_in_coroot_lattice(const CartanData& data) {
  return in_coroot_lattice(data, h_delta(data));
}

FiniteWeylElement FiniteWeylElement::identity(const CartanData& data) {
  FiniteWeylElement w;
  w.m_ = w.minv_ = identity_matrix(data.rank);
  return w;
}

FiniteWeylElement FiniteWeylElement::reflection(const CartanData& data,
                                                const IntVec& root) {
  // r x = x - alpha(x) h_alpha
  const IntVec h = data.coroot(root);
  FiniteWeylElement w = identity(data);
  for (int k = 0; k < data.rank; ++k)
    for (int j = 0; j < data.rank; ++j) w.m_[k][j] -= h[k] * root[j];
  w.minv_ = w.m_;
  return w;
}

FiniteWeylElement FiniteWeylElement::simple_reflection(const CartanData& data,
                                                       int i) {
  if (i < 1 || i > data.rank)
    throw InvalidArgument("simple reflection index out of range");
  return reflection(data, data.simple_roots[i - 1]);
}

FiniteWeylElement FiniteWeylElement::from_word(const CartanData& data,
                                               const std::vector<int>& word) {
  FiniteWeylElement w = identity(data);
  for (int i : word) w = w * simple_reflection(data, i);
  return w;
}

FiniteWeylElement FiniteWeylElement::operator*(
    const FiniteWeylElement& o) const {
  FiniteWeylElement w;
  w.m_ = multiply(m_, o.m_);
  w.minv_ = multiply(o.minv_, minv_);
  return w;
}

FiniteWeylElement FiniteWeylElement::inverse() const {
  FiniteWeylElement w;
  w.m_ = minv_;
  w.minv_ = m_;
  return w;
}

RatVec FiniteWeylElement::act(const RatVec& x) const {
  const int r = static_cast<int>(m_.size());
  RatVec y(r, Rational(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (m_[i][j] != 0) y[i] += m_[i][j] * x[j];
  return y;
}

IntVec FiniteWeylElement::act(const IntVec& x) const {
  const int r = static_cast<int>(m_.size());
  IntVec y(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) y[i] += m_[i][j] * x[j];
  return y;
}

IntVec FiniteWeylElement::act_on_root(const IntVec& root) const {
  const int r = static_cast<int>(m_.size());
  IntVec c(r, 0);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) c[j] += root[i] * minv_[i][j];
  return c;
}

int FiniteWeylElement::length(const CartanData& data) const {
  int n = 0;
  for (auto& a : data.positive_roots)
    if (is_negative_root(act_on_root(a))) ++n;
  return n;
}

std::vector<int> longest_element_word(const CartanData& data) {
  std::vector<int> word;
  FiniteWeylElement w = FiniteWeylElement::identity(data);
  int len = 0;
  for (;;) {
    bool grew = false;
    for (int i = 1; i <= data.rank; ++i) {
      FiniteWeylElement v = w * FiniteWeylElement::simple_reflection(data, i);
      int l = v.length(data);
      if (l > len) {
        word.push_back(i);
        w = v;
        len = l;
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  return word;
}

}  // namespace loopfact
