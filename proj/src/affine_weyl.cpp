#include "loopfact/affine_weyl.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "loopfact/errors.hpp"

namespace loopfact {

namespace {

Rational floor_rational(const Rational& q) {
  using boost::multiprecision::cpp_int;
  cpp_int n = numerator(q), d = denominator(q);
  cpp_int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

IntVec negated(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

bool AffineRoot::positive() const {
  if (k > 0) return true;
  if (k < 0) return false;
  return is_positive_root(alpha);
}

AffineRoot simple_affine_root(const CartanData& data, int i) {
  if (i < 0 || i > data.rank)
    throw InvalidArgument("affine simple index out of range");
  if (i == 0) return {1, negated(data.highest_root)};
  return {0, data.simple_roots[i - 1]};
}

long long level(const CartanData& data, const AffineRoot& tau) {
  Rational len = data.root_form(tau.alpha, tau.alpha);
  Rational lv = Rational(tau.k) * 2 / len;
  return static_cast<long long>(numerator(lv) / denominator(lv));
}

long long pairing(const CartanData& data, const AffineRoot& tau,
                  const AffineRoot& sigma) {
  Rational v = 2 * data.root_form(tau.alpha, sigma.alpha) /
               data.root_form(sigma.alpha, sigma.alpha);
  return static_cast<long long>(numerator(v) / denominator(v));
}

std::string to_string(const AffineRoot& tau) {
  std::ostringstream os;
  os << "(" << tau.k << ";";
  for (size_t i = 0; i < tau.alpha.size(); ++i)
    os << (i ? "," : "") << tau.alpha[i];
  os << ")";
  return os.str();
}

AffineWeylElement AffineWeylElement::identity(const CartanData& data) {
  return {FiniteWeylElement::identity(data), IntVec(data.rank, 0)};
}

AffineWeylElement AffineWeylElement::translation(const CartanData& data,
                                                 IntVec t) {
  return {FiniteWeylElement::identity(data), std::move(t)};
}

AffineWeylElement AffineWeylElement::simple_reflection(const CartanData& data,
                                                       int i) {
  if (i < 0 || i > data.rank)
    throw InvalidArgument("affine simple index out of range");
  if (i > 0)
    return {FiniteWeylElement::simple_reflection(data, i),
            IntVec(data.rank, 0)};
  return {FiniteWeylElement::reflection(data, data.highest_root),
          data.coroot(data.highest_root)};
}

bool AffineWeylElement::is_translation(const CartanData& data) const {
  return w_ == FiniteWeylElement::identity(data);
}

AffineWeylElement AffineWeylElement::operator*(
    const AffineWeylElement& o) const {
  IntVec t = w_.act(o.t_);
  for (size_t i = 0; i < t.size(); ++i) t[i] += t_[i];
  return {w_ * o.w_, std::move(t)};
}

AffineWeylElement AffineWeylElement::inverse() const {
  FiniteWeylElement wi = w_.inverse();
  return {wi, negated(wi.act(t_))};
}

RatVec AffineWeylElement::act(const RatVec& x) const {
  RatVec y = w_.act(x);
  for (size_t i = 0; i < y.size(); ++i) y[i] += t_[i];
  return y;
}

AffineRoot AffineWeylElement::act(const AffineRoot& root) const {
  IntVec c = w_.act_on_root(root.alpha);
  long long ct = 0;
  for (size_t i = 0; i < c.size(); ++i) ct += c[i] * t_[i];
  return {root.k - ct, std::move(c)};
}

long long AffineWeylElement::length(const CartanData& data) const {
  RatVec p(data.rank, Rational(1, data.rank + 1));
  RatVec q = act(p);
  long long n = 0;
  for (auto& a : data.positive_roots) {
    Rational f = floor_rational(data.pair(a, q));
    n += static_cast<long long>(abs(numerator(f)));
  }
  return n;
}

ReducedSequence::ReducedSequence(CartanData data, std::vector<int> gammas,
                                 int first_label)
    : data_(std::move(data)),
      gammas_(std::move(gammas)),
      first_label_(first_label) {
  prefixes_.reserve(gammas_.size() + 1);
  taus_.reserve(gammas_.size());
  prefixes_.push_back(AffineWeylElement::identity(data_));
  for (size_t p = 0; p < gammas_.size(); ++p) {
    const int g = gammas_[p];
    if (g < 0 || g > data_.rank)
      throw InvalidArgument("sequence index out of range at label " +
                            std::to_string(label(static_cast<int>(p))));
    const AffineWeylElement& w = prefixes_.back();
    AffineRoot tau = w.inverse().act(simple_affine_root(data_, g));
    if (!tau.positive())
      throw NotReducedError(label(static_cast<int>(p)),
                            "sequence not reduced at label " +
                                std::to_string(label(static_cast<int>(p))));
    taus_.push_back(std::move(tau));
    prefixes_.push_back(AffineWeylElement::simple_reflection(data_, g) * w);
  }
}

void ReducedSequence::set_period(std::vector<int> word, IntVec translation) {
  period_word_ = std::move(word);
  period_translation_ = std::move(translation);
}

ReducedSequence ReducedSequence::truncated(int count) const {
  if (count < 0 || count > size())
    throw InvalidArgument("truncation beyond sequence length");
  ReducedSequence s = *this;
  s.gammas_.resize(count);
  s.taus_.resize(count);
  s.prefixes_.resize(count + 1);
  return s;
}

ReducedSequence ReducedSequence::extended(int count) const {
  if (count <= size()) return truncated(count);
  if (!is_periodic())
    throw InvalidArgument("only periodic sequences can be extended");
  std::vector<int> g = gammas_;
  while (static_cast<int>(g.size()) < count) {
    const int s = static_cast<int>(g.size()) - w0_length_;
    g.push_back(period_word_[s % period_word_.size()]);
  }
  ReducedSequence out(data_, std::move(g), first_label_);
  out.set_period(period_word_, period_translation_);
  out.set_w0_length(w0_length_);
  return out;
}

std::vector<AffineRoot> tau_sequence(const ReducedSequence& seq, int n) {
  if (n > seq.size())
    throw SequenceTooShort(n, "sequence has " + std::to_string(seq.size()) +
                                  " letters, " + std::to_string(n) +
                                  " requested");
  std::vector<AffineRoot> out;
  for (int p = 0; p < n; ++p) out.push_back(seq.tau(p));
  return out;
}

ReducedSequence periodic_sequence(const CartanData& data, const IntVec& h,
                                  int terms) {
  const int r = data.rank;
  if (static_cast<int>(h.size()) != r)
    throw InvalidArgument("period point must have rank coordinates");
  RatVec hr(h.begin(), h.end());
  for (int i = 0; i < r; ++i)
    if (h[i] <= 0) throw InvalidArgument("period point is not strictly dominant");
  if (!in_coroot_lattice(data, hr))
    throw InvalidArgument("period point is not in the coroot lattice");
  if (terms < 0) throw InvalidArgument("negative term count");

  // Segment p -> p + h + eps, eps_i = i/Q increasing in i and far inside
  // the endpoint alcove.
  const long long Q = 1000LL * (r + 1) * (r + 1) * (r + 1);
  RatVec p(r, Rational(1, r + 1));
  RatVec v(r);
  for (int i = 0; i < r; ++i) v[i] = hr[i] + Rational(i + 1, Q);

  std::vector<int> word;
  AffineWeylElement w = AffineWeylElement::identity(data);
  Rational t_cur = 0;
  const IntVec& theta = data.highest_root;
  for (;;) {
    RatVec wp = w.act(p);
    RatVec wv = w.finite_part().act(v);
    std::optional<Rational> best;
    int best_i = -1;
    for (int i = 0; i <= r; ++i) {
      Rational f0, slope;
      if (i == 0) {
        f0 = 1 - data.pair(theta, wp);
        slope = -data.pair(theta, wv);
      } else {
        f0 = wp[i - 1];
        slope = wv[i - 1];
      }
      if (slope >= 0) continue;
      Rational t = -f0 / slope;
      if (t < t_cur) continue;
      if (!best || t < *best) {
        best = t;
        best_i = i;
      }
    }
    if (!best || *best >= 1) break;
    word.push_back(best_i);
    w = AffineWeylElement::simple_reflection(data, best_i) * w;
    t_cur = *best;
  }
  // w^-1 C_0 = C_0 + h  <=>  w = translation by -h.
  if (!(w == AffineWeylElement::translation(data, negated(h))))
    throw ConvergenceError(static_cast<int>(word.size()), 0.0,
                           "alcove walk did not end at the translate");
  const int l = static_cast<int>(word.size());
  std::vector<int> g;
  g.reserve(terms);
  for (int i = 0; i < terms; ++i) g.push_back(word[i % l]);
  ReducedSequence seq(data, std::move(g), 1);
  seq.set_period(word, h);
  return seq;
}

int flips_required_length(const ReducedSequence& seq, int k_max) {
  if (!seq.is_periodic())
    throw InvalidArgument("flip check needs an affine-periodic sequence");
  long long m = seq.period_translation()[0];
  for (auto x : seq.period_translation()) m = std::min(m, x);
  long long sweeps = (k_max + m - 1) / m;
  return static_cast<int>(seq.period_length() * sweeps);
}

bool verify_flips(const ReducedSequence& seq, int k_max) {
  const int need = flips_required_length(seq, k_max);
  if (seq.size() - seq.w0_length() < need)
    throw SequenceTooShort(need + seq.w0_length(),
                           "sequence too short for the requested level");
  const CartanData& d = seq.data();
  std::set<AffineRoot> got;
  for (int p = seq.w0_length(); p < seq.w0_length() + need; ++p) {
    const AffineRoot& t = seq.tau(p);
    if (!is_negative_root(t.alpha)) return false;
    if (t.k > k_max) continue;
    if (!got.insert(t).second) return false;
  }
  std::set<AffineRoot> want;
  for (auto& a : d.positive_roots)
    for (long long k = 1; k <= k_max; ++k) want.insert({k, negated(a)});
  return got == want;
}

ReducedSequence prepend_w0(const ReducedSequence& seq,
                           const std::vector<int>& w0_word) {
  const CartanData& d = seq.data();
  if (seq.w0_length() != 0 || seq.first_label() != 1)
    throw InvalidArgument("sequence already carries a prefix");
  for (int i : w0_word)
    if (i < 1 || i > d.rank)
      throw InvalidArgument("longest-element word uses a non-finite index");
  const int expected = static_cast<int>(d.positive_roots.size());
  if (static_cast<int>(w0_word.size()) != expected)
    throw InvalidArgument("word has length " + std::to_string(w0_word.size()) +
                          ", the longest element has length " +
                          std::to_string(expected));
  FiniteWeylElement w0 = FiniteWeylElement::from_word(d, w0_word);
  if (w0.length(d) != expected)
    throw InvalidArgument("word is not a reduced word for the longest element");
  std::vector<int> g = w0_word;
  g.insert(g.end(), seq.gammas().begin(), seq.gammas().end());
  const int n0 = static_cast<int>(w0_word.size());
  ReducedSequence out(d, std::move(g), 1 - n0);
  if (seq.is_periodic())
    out.set_period(seq.period_word(), seq.period_translation());
  out.set_w0_length(n0);
  return out;
}

std::vector<long long> levels(const ReducedSequence& seq, int n) {
  std::vector<long long> out;
  for (auto& t : tau_sequence(seq, n)) out.push_back(level(seq.data(), t));
  return out;
}

IntVec default_period(const CartanData& data) {
  const long long c = h_delta_in_coroot_lattice(data) ? 1 : 2;
  return IntVec(data.rank, c);
}

}  // namespace loopfact
