// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "loopfact/errors.hpp"
#include "loopfact/factor.hpp"

using namespace loopfact;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  double residual = 0;
  double tolerance = 0;
  std::string note;
};

ReducedSequence canonical(int rank, int terms, long long mult = 1) {
  const auto d = build_type_a(rank);
  IntVec h = default_period(d);
  for (auto& x : h) x *= mult;
  return periodic_sequence(d, h, terms);
}

std::vector<cd> random_params(std::mt19937_64& rng, int count, double max_abs) {
  std::uniform_real_distribution<double> r(0.0, max_abs);
  std::uniform_real_distribution<double> phi(0.0, 2 * M_PI);
  std::vector<cd> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(r(rng), phi(rng)));
  return out;
}

std::vector<cd> geometric(std::mt19937_64& rng, int count, double first,
                          double ratio) {
  std::uniform_real_distribution<double> phi(0.0, 2 * M_PI);
  std::vector<cd> out;
  for (int i = 0; i < count; ++i, first *= ratio)
    out.push_back(std::polar(first, phi(rng)));
  return out;
}

double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double d = 0;
  for (size_t i = 0; i < std::max(a.size(), b.size()); ++i)
    d = std::max(d, std::abs((i < a.size() ? a[i] : 0.0) -
                             (i < b.size() ? b[i] : 0.0)));
  return d;
}

std::vector<cd> xstar(const ReducedSequence& s, const std::vector<cd>& z) {
  return xstar_from_l2(synthesize({s, z}).factorization.l, s,
                       static_cast<int>(z.size()));
}

Outcome criterion1() {
  Outcome o;
  const auto s2 = canonical(1, 12);
  for (int p = 0; p < 12; ++p)
    o.ok = o.ok && s2.tau(p) == AffineRoot{p + 1, {-1}};
  std::vector<long long> want2;
  for (int p = 1; p <= 12; ++p) want2.push_back(p);
  o.ok = o.ok && levels(s2, 12) == want2;
  const auto s3 = canonical(2, 12);
  const std::vector<AffineRoot> roots = {
      {1, {-1, -1}}, {1, {0, -1}}, {2, {-1, -1}}, {1, {-1, 0}},
      {3, {-1, -1}}, {2, {0, -1}}, {4, {-1, -1}}, {2, {-1, 0}}};
  o.ok = o.ok && tau_sequence(s3, 8) == roots;
  o.ok = o.ok && levels(s3, 12) == std::vector<long long>{1, 1, 2, 1, 3, 2,
                                                          4, 2, 5, 3, 6, 3};
  o.note = "exact";
  return o;
}

Outcome criterion2() {
  Outcome o;
  int cases = 0;
  for (int r = 1; r <= 3; ++r)
    for (long long mult : {1, 2}) {
      const auto base = canonical(r, 1, mult);
      const int l = base.period_length();
      const auto s = base.extended(6 * l);
      const auto& wl = s.prefix(l);
      o.ok = o.ok && wl.is_translation(s.data());
      for (int t = 0; t <= 5 * l; ++t, ++cases)
        o.ok = o.ok && s.prefix(t + l) == s.prefix(t) * wl;
      o.ok = o.ok && verify_flips(base.extended(flips_required_length(base, 6)), 6);
    }
  o.note = "exact, " + std::to_string(cases) + " prefix identities";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto d2 = build_type_a(2);
  o.ok = canonical(1, 2).period_length() == 2 &&
         canonical(2, 4).period_length() == 4 &&
         AffineWeylElement::translation(d2, IntVec{1, 1}).length(d2) == 4;
  o.note = "exact";
  return o;
}

Outcome criterion4() {
  Outcome o;
  o.tolerance = 1e-9;
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const int rank = 2 + trial % 2;
    const auto s = canonical(rank, 12);
    const auto z = random_params(rng, count(rng), 0.5);
    const auto k = synthesize({s, z}).loop;
    const auto a = factor_k2(k, FactorVariant::kK2).a;
    const auto want = a2_product({s, z});
    o.residual = std::max(
        o.residual, ((a - want).array() / want.array()).abs().maxCoeff());
  }
  o.ok = o.residual <= o.tolerance;
  return o;
}

Outcome criterion5() {
  Outcome o;
  o.tolerance = 1e-8;
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<int> count(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const int rank = 2 + trial % 2;
    const auto s = canonical(rank, 12);
    const auto z = random_params(rng, count(rng), 0.5);
    const auto back =
        peel(synthesize({s, z}).loop, s, static_cast<int>(z.size()));
    o.residual = std::max(o.residual, max_diff(back, z));
  }
  o.ok = o.residual <= o.tolerance;
  return o;
}

Outcome criterion6() {
  Outcome o;
  o.tolerance = 1e-9;
  std::mt19937_64 rng(1006);
  double lin[4] = {0, 0, 0, 0}, shift[4] = {0, 0, 0, 0};
  for (int rank = 1; rank <= 3; ++rank) {
    const auto s = canonical(rank, 8);
    const auto& d = s.data();
    const int l = s.period_length();
    const auto long_seq = s.extended(l + 6);
    std::uniform_int_distribution<int> pick(0, 6);
    for (int trial = 0; trial < 20; ++trial) {
      // Linearity in zeta_j with the tail held fixed.
      const int j = pick(rng);
      auto z = random_params(rng, 8, 0.5);
      double slope = 1;
      for (int q = j + 1; q < 8; ++q)
        slope *= std::pow(a_of(z[q]),
                          -static_cast<double>(pairing(d, s.tau(j), s.tau(q))));
      auto at = [&](cd t) {
        auto w = z;
        w[j] = t;
        return xstar(s, w)[j];
      };
      const cd base = at(0);
      for (cd t : {cd(0.1), cd(0.3), cd(0, 0.3)})
        lin[rank] = std::max(lin[rank], std::abs(at(t) - base - t * slope));

      // Shift by one period.
      auto y = random_params(rng, l + 6, 0.5);
      for (int p = 0; p < l; ++p) y[p] = 0;
      const std::vector<cd> tail(y.begin() + l, y.end());
      const auto xl = xstar(long_seq, y);
      const auto xs = xstar(s, tail);
      for (int t = 0; t < 6; ++t)
        shift[rank] = std::max(shift[rank], std::abs(xl[l + t] - xs[t]));
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "linearity by rank %.2e %.2e %.2e, shift by rank %.2e %.2e %.2e",
                lin[1], lin[2], lin[3], shift[1], shift[2], shift[3]);
  o.note = buf;
  for (int r = 1; r <= 3; ++r)
    o.residual = std::max({o.residual, lin[r], shift[r]});
  o.ok = o.residual <= o.tolerance;
  return o;
}

Outcome criterion7() {
  Outcome o;
  o.tolerance = 1e-5;
  const auto s1 = canonical(1, 8);
  const double single =
      std::abs(toeplitz_det_sq(synthesize({s1, {0.5}}).loop, 64).value / 0.8 - 1);
  bool ok = single <= 1e-6;
  std::mt19937_64 rng(1007);
  double multi = 0;
  for (int rank : {1, 2}) {
    for (int trial = 0; trial < 3; ++trial) {
      SmoothFactorizationData data;
      data.rank = rank;
      data.zetas = geometric(rng, 6, 0.5, 0.5);
      const auto k = synthesize({canonical(rank, 6), data.zetas}).loop;
      multi = std::max(
          multi, std::abs(toeplitz_det_sq(k, 96).value / det_formula(data) - 1));
    }
  }
  o.residual = std::max(single, multi);
  char buf[128];
  std::snprintf(buf, sizeof buf, "single factor %.2e (tol 1e-6), multi %.2e",
                single, multi);
  o.note = buf;
  o.ok = ok && multi <= o.tolerance;
  return o;
}

Outcome criterion8() {
  Outcome o;
  o.tolerance = 1e-7;
  std::mt19937_64 rng(1008);
  std::uniform_int_distribution<int> three(0, 3), two(0, 2);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  double recon = 0, diag = 0;
  for (int rank : {1, 2}) {
    const int n = rank + 1;
    for (int trial = 0; trial < 4; ++trial) {
      SmoothFactorizationData data;
      data.rank = rank;
      data.etas = random_params(rng, three(rng), 0.4);
      data.zetas = random_params(rng, three(rng), 0.4);
      const int modes = two(rng);
      for (int k = 1; k <= modes; ++k) {
        ChiMode m;
        m.k = k;
        cd sum = 0;
        for (int i = 0; i < n; ++i) {
          m.coeffs.push_back(cd(u(rng), u(rng)));
          sum += m.coeffs.back();
        }
        for (auto& c : m.coeffs) c -= sum / double(n);
        data.chi.push_back(m);
      }
      const auto dec = decompose_g(compose_g(data), {});
      recon = std::max(recon, dec.reconstruction_residual);
      diag = std::max(diag, dec.diagonal_residual);
    }
  }
  o.residual = recon;
  char buf[128];
  std::snprintf(buf, sizeof buf, "diagonal %.2e (tol 1e-6)", diag);
  o.note = buf;
  o.ok = recon <= 1e-7 && diag <= 1e-6;
  return o;
}

Outcome criterion9() {
  Outcome o;
  o.tolerance = 1e-12;
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {4, 6})
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::MatrixXcd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cd(u(rng), u(rng));
      g += 2.0 * n * Eigen::MatrixXcd::Identity(n, n);
      // Elimination without pivoting.
      Eigen::MatrixXcd up = g, lo = Eigen::MatrixXcd::Identity(n, n);
      for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
          lo(i, k) = up(i, k) / up(k, k);
          up.row(i) -= lo(i, k) * up.row(k);
        }
      const Eigen::VectorXcd d = up.diagonal();
      const Eigen::MatrixXcd un = d.cwiseInverse().asDiagonal() * up;
      const auto r = ldu_minors(g);
      o.residual = std::max({o.residual, (r.l - lo).cwiseAbs().maxCoeff(),
                             (r.u - un).cwiseAbs().maxCoeff(),
                             ((r.d - d).array() / d.array()).abs().maxCoeff()});
    }
  o.ok = o.residual <= o.tolerance;
  return o;
}

template <class E>
bool raises(const std::function<void()>& f,
            const std::function<bool(const E&)>& check) {
  try {
    f();
  } catch (const E& e) {
    return check(e);
  } catch (...) {
    return false;
  }
  return false;
}

Outcome criterion10() {
  Outcome o;
  Eigen::MatrixXcd m(3, 3);
  m << 1, 2, 0, 2, 4, 1, 0, 1, 1;
  const bool minor = raises<VanishingMinorError>(
      [&] { ldu_minors(m); },
      [](const VanishingMinorError& e) { return e.minor_index() == 2; });

  // Unitary SU(2) loop whose first minor of k^-1 vanishes at z = 1/2.
  LaurentMatrix g(2);
  const double r = std::sqrt(2.0) / 3;
  Eigen::MatrixXcd c(2, 2);
  c << 1.0 / 3, 0, 0, 1.0 / 3;
  g.add_to_coefficient(0, c);
  c << -2.0 / 3, 0, r, 0;
  g.add_to_coefficient(1, c);
  c << 0, 0, r, 0;
  g.add_to_coefficient(2, c);
  c << 0, -r, 0, -2.0 / 3;
  g.add_to_coefficient(-1, c);
  c << 0, -r, 0, 0;
  g.add_to_coefficient(-2, c);
  const bool admissible = raises<AdmissibilityError>(
      [&] { factor_k2(g.adjoint(), FactorVariant::kK2); },
      [](const AdmissibilityError& e) { return e.representation() == 1; });
  const bool peeled = raises<AdmissibilityError>(
      [&] { peel(g.adjoint(), canonical(1, 8)); },
      [](const AdmissibilityError&) { return true; });

  const bool corrupted = raises<NotReducedError>(
      [] { ReducedSequence(build_type_a(2), {0, 1, 1, 2}); },
      [](const NotReducedError& e) { return e.index() == 3; });
  const bool unitary = raises<NotUnitaryError>(
      [] {
        LaurentMatrix b = LaurentMatrix::identity(2);
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(2, 2);
        e(0, 1) = 1e-3;
        b.add_to_coefficient(1, e);
        factor_k2(b, FactorVariant::kK2);
      },
      [](const NotUnitaryError&) { return true; });
  const bool short_seq = raises<SequenceTooShort>(
      [] { synthesize({ReducedSequence(build_type_a(1), {0, 1}), {0.1, 0.1, 0.1}}); },
      [](const SequenceTooShort& e) { return e.required_length() == 3; });

  o.ok = minor && admissible && peeled && corrupted && unitary && short_seq;
  o.note = std::string("minor ") + (minor ? "ok" : "bad") + ", admissibility " +
           (admissible && peeled ? "ok" : "bad") + ", corrupted sequence " +
           (corrupted ? "ok" : "bad") + ", non-unitary " +
           (unitary ? "ok" : "bad") + ", short sequence " +
           (short_seq ? "ok" : "bad");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "tau-sequence golden values", 1, criterion1},
      {2, "affine periodicity and flips", 5, criterion2},
      {3, "period lengths", 1, criterion3},
      {4, "product formula", 30, criterion4},
      {5, "round-trip peeling", 60, criterion5},
      {6, "linearity and shift-periodicity of x*", 30, criterion6},
      {7, "Toeplitz determinant closed form", 120, criterion7},
      {8, "smooth decomposition round trip", 60, criterion8},
      {9, "LDU minors vs elimination", 5, criterion9},
      {10, "degenerate inputs", 5, criterion10},
  };
  bool all = true;
  for (const auto& e : entries) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.residual = INFINITY;
      o.note = std::string("unexpected error: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs <= e.budget_s;
    const bool pass = o.ok && in_time;
    all = all && pass;
    std::printf("criterion %2d %s  %-40s residual %.3e tol %.1e  %.2fs/%gs%s%s\n",
                e.id, pass ? "PASS" : "FAIL", e.name, o.residual, o.tolerance,
                secs, e.budget_s, o.note.empty() ? "" : "  ",
                o.note.c_str());
    if (!in_time) std::printf("             over the time budget\n");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
