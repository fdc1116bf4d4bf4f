#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace loopfact {

using Rational = boost::multiprecision::cpp_rational;
using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rational>;

/// Finite root data of type A_r.
///
/// Coordinates: a point x of the real Cartan subalgebra is stored by its
/// values on the simple roots, x_i = alpha_i(x) (fundamental-coweight
/// coordinates). A root is stored by its coefficients in the simple-root
/// basis, so alpha(x) is a dot product.
struct CartanData {
  int rank = 0;
  IntMat cartan_matrix;            // alpha_i(h_j) = cartan_matrix[j][i]
  IntMat simple_roots;             // unit coefficient rows
  IntMat simple_coroots;           // h_i in coweight coordinates
  std::vector<RatVec> fundamental_weights;  // Lambda_i in the root basis
  IntMat fundamental_coweights;    // Theta_i in coweight coordinates
  IntVec highest_root;             // coefficients a_i of theta
  IntVec marks;
  IntVec comarks;
  std::vector<RatVec> coweight_gram;  // form on coweight coordinates
  IntMat positive_roots;           // sorted by height, then lexicographic

  int n() const { return rank + 1; }

  /// Invariant form on roots, normalized so <theta,theta> = 2.
  Rational root_form(const IntVec& a, const IntVec& b) const;
  /// Invariant form on coweight coordinates.
  Rational coweight_form(const RatVec& x, const RatVec& y) const;
  /// alpha(x).
  Rational pair(const IntVec& root, const RatVec& x) const;
  long long pair(const IntVec& root, const IntVec& x) const;
  /// Coroot of a root, in coweight coordinates.
  IntVec coroot(const IntVec& root) const;
  /// Converts integer coroot-lattice coefficients to coweight coordinates.
  IntVec coroot_lattice_point(const IntVec& coefficients) const;
};

CartanData build_type_a(int rank);

long long height(const IntVec& root);
bool is_positive_root(const IntVec& root);
bool is_negative_root(const IntVec& root);

RatVec h_delta(const CartanData& data);
bool in_coroot_lattice(const CartanData& data, const RatVec& x);
bool h_delta_in_coroot_lattice(const CartanData& data);

/// Element of the finite Weyl group as an integer matrix on coweight
/// coordinates, with its inverse.
class FiniteWeylElement {
 public:
  static FiniteWeylElement identity(const CartanData& data);
  static FiniteWeylElement simple_reflection(const CartanData& data, int i);
  /// Reflection in the hyperplane of an arbitrary root.
  static FiniteWeylElement reflection(const CartanData& data,
                                      const IntVec& root);
  /// r_{word[0]} r_{word[1]} ... (1-based simple indices).
  static FiniteWeylElement from_word(const CartanData& data,
                                     const std::vector<int>& word);

  const IntMat& matrix() const { return m_; }
  const IntMat& inverse_matrix() const { return minv_; }

  FiniteWeylElement operator*(const FiniteWeylElement& o) const;
  FiniteWeylElement inverse() const;
  bool operator==(const FiniteWeylElement& o) const { return m_ == o.m_; }

  RatVec act(const RatVec& x) const;
  IntVec act(const IntVec& x) const;
  /// Image of a root: (w alpha)(x) = alpha(w^-1 x).
  IntVec act_on_root(const IntVec& root) const;
  /// Number of positive roots sent negative.
  int length(const CartanData& data) const;

 private:
  IntMat m_;
  IntMat minv_;
};

/// Reduced word for the longest element, greedy on the lowest index.
std::vector<int> longest_element_word(const CartanData& data);

}  // namespace loopfact
