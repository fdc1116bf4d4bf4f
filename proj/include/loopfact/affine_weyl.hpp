#pragma once

#include <string>
#include <vector>

#include "loopfact/cartan.hpp"

namespace loopfact {

/// Affine root k d* + alpha, viewed as the affine function x -> alpha(x) + k.
/// `alpha` is a signed finite root (never zero).
struct AffineRoot {
  long long k = 0;
  IntVec alpha;

  bool positive() const;
  bool operator==(const AffineRoot& o) const {
    return k == o.k && alpha == o.alpha;
  }
  bool operator<(const AffineRoot& o) const {
    return k != o.k ? k < o.k : alpha < o.alpha;
  }
};

/// alpha_0 = d* - theta, alpha_i = alpha_i for i >= 1.
AffineRoot simple_affine_root(const CartanData& data, int i);
/// Level of the coroot h_tau against Lambda_0: k * 2 / <alpha,alpha>.
long long level(const CartanData& data, const AffineRoot& tau);
/// tau(h_sigma) = 2 <alpha,beta> / <beta,beta>.
long long pairing(const CartanData& data, const AffineRoot& tau,
                  const AffineRoot& sigma);
std::string to_string(const AffineRoot& tau);

/// x -> W x + t on coweight coordinates; t lies in the coroot lattice.
class AffineWeylElement {
 public:
  AffineWeylElement() = default;
  AffineWeylElement(FiniteWeylElement w, IntVec t)
      : w_(std::move(w)), t_(std::move(t)) {}

  static AffineWeylElement identity(const CartanData& data);
  static AffineWeylElement translation(const CartanData& data, IntVec t);
  /// r_0 is the reflection in the wall theta = 1, i.e. r_theta followed by
  /// translation by h_theta.
  static AffineWeylElement simple_reflection(const CartanData& data, int i);

  const FiniteWeylElement& finite_part() const { return w_; }
  const IntVec& translation_part() const { return t_; }
  bool is_translation(const CartanData& data) const;

  AffineWeylElement operator*(const AffineWeylElement& o) const;
  AffineWeylElement inverse() const;
  bool operator==(const AffineWeylElement& o) const {
    return w_ == o.w_ && t_ == o.t_;
  }

  RatVec act(const RatVec& x) const;
  /// (w.f)(x) = f(w^-1 x).
  AffineRoot act(const AffineRoot& root) const;
  /// Number of affine hyperplanes separating C_0 and w C_0.
  long long length(const CartanData& data) const;

 private:
  FiniteWeylElement w_;
  IntVec t_;
};

/// Word gamma_j with cached prefixes w_n = r_n ... r_1 and roots
/// tau_n = w_{n-1}^-1 gamma_n. Positions are 0-based; the label of
/// position p is first_label + p (labels run -N..0 on a prepended
/// longest-element word, then 1, 2, ...).
class ReducedSequence {
 public:
  /// Throws NotReducedError carrying the label of the first letter whose
  /// tau is negative.
  ReducedSequence(CartanData data, std::vector<int> gammas,
                  int first_label = 1);

  const CartanData& data() const { return data_; }
  int size() const { return static_cast<int>(gammas_.size()); }
  int first_label() const { return first_label_; }
  int label(int pos) const { return first_label_ + pos; }
  int position(int label) const { return label - first_label_; }
  int gamma(int pos) const { return gammas_.at(pos); }
  const std::vector<int>& gammas() const { return gammas_; }
  const AffineRoot& tau(int pos) const { return taus_.at(pos); }
  /// w_n for n = 0..size().
  const AffineWeylElement& prefix(int n) const { return prefixes_.at(n); }

  bool is_periodic() const { return !period_word_.empty(); }
  int period_length() const { return static_cast<int>(period_word_.size()); }
  /// One period of letters (after any prepended word).
  const std::vector<int>& period_word() const { return period_word_; }
  /// Translation h with w_l^-1 C_0 = C_0 + h (coweight coordinates).
  const IntVec& period_translation() const { return period_translation_; }
  /// Length of a prepended longest-element word (0 if none).
  int w0_length() const { return w0_length_; }

  /// First `count` letters, keeping metadata.
  ReducedSequence truncated(int count) const;
  /// Periodic continuation to `count` letters.
  ReducedSequence extended(int count) const;

  void set_period(std::vector<int> word, IntVec translation);
  void set_w0_length(int n) { w0_length_ = n; }

 private:
  CartanData data_;
  std::vector<int> gammas_;
  int first_label_ = 1;
  std::vector<AffineWeylElement> prefixes_;
  std::vector<AffineRoot> taus_;
  std::vector<int> period_word_;
  IntVec period_translation_;
  int w0_length_ = 0;
};

std::vector<AffineRoot> tau_sequence(const ReducedSequence& seq, int n);

/// Minimal gallery from the barycenter of C_0 to that of C_0 + h along a
/// perturbed straight segment, repeated periodically to `terms` letters.
/// `h` is in coweight coordinates.
ReducedSequence periodic_sequence(const CartanData& data, const IntVec& h,
                                  int terms);

/// Minimal number of letters verify_flips needs for `k_max`.
int flips_required_length(const ReducedSequence& seq, int k_max);
bool verify_flips(const ReducedSequence& seq, int k_max);

ReducedSequence prepend_w0(const ReducedSequence& seq,
                           const std::vector<int>& w0_word);

std::vector<long long> levels(const ReducedSequence& seq, int n);

/// Default period: h_delta when it lies in the coroot lattice, else 2 h_delta.
IntVec default_period(const CartanData& data);

}  // namespace loopfact
