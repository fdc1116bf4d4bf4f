#include "loopfact/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "loopfact/errors.hpp"
#include "loopfact/factor.hpp"
#include "loopfact/json_io.hpp"
#include "loopfact/report.hpp"

namespace loopfact {

namespace {

struct Options {
  int rank = 0;
  std::string period;
  int terms = -1;
  int toeplitz_n = 64;
  int samples = 256;
  double tol = 1e-10;
  std::string checks = "unitarity,roundtrip,diagonal,determinant";
  std::string out_path;
  std::string format = "json";
  std::string variant;
  bool timing = false;
  std::string input;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Coroot coefficients c with sum c_i h_i = x, for x in coweight coordinates.
IntVec coroot_coefficients(const CartanData& data, const IntVec& x) {
  IntVec c(data.rank);
  for (int i = 0; i < data.rank; ++i) {
    Rational s = 0;
    for (int j = 0; j < data.rank; ++j) s += data.coweight_gram[j][i] * x[j];
    if (denominator(s) != 1)
      throw InvalidArgument("period point is not in the coroot lattice");
    c[i] = static_cast<long long>(numerator(s));
  }
  return c;
}

// "hdelta", "2hdelta", or comma separated coroot coefficients; empty
// selects the default period.
IntVec parse_period(const CartanData& data, const std::string& text) {
  if (text.empty())
    return coroot_coefficients(data, default_period(data));
  if (text == "hdelta" || text == "2hdelta") {
    const long long m = text == "hdelta" ? 1 : 2;
    return coroot_coefficients(data, IntVec(data.rank, m));
  }
  IntVec c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      c.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("bad period entry '" + item + "'");
    }
  }
  if (static_cast<int>(c.size()) != data.rank)
    throw InvalidArgument("period needs " + std::to_string(data.rank) +
                          " coroot coefficients");
  return c;
}

Config make_config(const Options& o) {
  Config c;
  c.toeplitz_n = o.toeplitz_n;
  c.samples = o.samples;
  c.tol_exact = o.tol;
  return c;
}

void emit(const Options& o, std::ostream& out, const json& j,
          const std::string& table) {
  const std::string text = o.format == "table" ? table : j.dump(2) + "\n";
  if (o.out_path.empty())
    out << text;
  else
    write_text_file(o.out_path, text);
}

std::string complex_text(cd z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         format_double(std::abs(z.imag())) + "i";
}

std::string vector_text(const Eigen::VectorXd& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i)
    s += (i ? " " : "") + format_double(v(i));
  return s;
}

int cmd_alcove_walk(const Options& o, std::ostream& out) {
  if (o.rank < 1) throw InvalidArgument("--rank must be at least 1");
  const CartanData data = build_type_a(o.rank);
  const IntVec coroot = parse_period(data, o.period);
  const IntVec h = data.coroot_lattice_point(coroot);
  ReducedSequence seq = periodic_sequence(data, h, std::max(o.terms, 1));
  if (o.terms < 0) seq = periodic_sequence(data, h, seq.period_length());
  const int shown = std::min(seq.size(), 20);

  json j;
  j["rank"] = o.rank;
  j["period_point"] = coroot;
  j["period_length"] = seq.period_length();
  j["terms"] = seq.size();
  json taus = json::array();
  for (int p = 0; p < shown; ++p) {
    json t;
    t["label"] = seq.label(p);
    t["gamma"] = seq.gamma(p);
    t["k"] = seq.tau(p).k;
    t["alpha"] = seq.tau(p).alpha;
    t["level"] = level(data, seq.tau(p));
    taus.push_back(t);
  }
  j["taus"] = taus;
  const std::string text = sequence_to_text(seq, coroot);

  std::ostringstream table;
  table << "period_length " << seq.period_length() << '\n';
  for (int p = 0; p < shown; ++p)
    table << "tau_" << seq.label(p) << " = " << to_string(seq.tau(p)) << '\n';

  if (o.out_path.empty()) {
    if (o.format == "table")
      out << table.str() << text;
    else {
      j["gammas"] = seq.gammas();
      out << j.dump(2) << '\n';
    }
  } else {
    write_text_file(o.out_path, text);
    out << (o.format == "table" ? table.str() : j.dump(2) + "\n");
  }
  return 0;
}

int cmd_synthesize(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const SmoothFactorizationData p = params_from_json(read_json_file(o.input));
  const Config config = make_config(o);
  const CartanData data = build_type_a(p.rank);
  const IntVec h = resolve_period(data, p.period);
  const int nz = static_cast<int>(p.zetas.size());
  const int ne = static_cast<int>(p.etas.size());
  const LaurentMatrix g = compose_g(p, config);

  TriangularFactorization tf;
  if (ne == 0 && p.chi.empty()) {
    tf = synthesize({zeta_sequence(data, h, nz), p.zetas}).factorization;
  } else {
    tf = triangular_factor(g, LShape::kGeneral, config.toeplitz_n,
                           config.toeplitz_n)
             .factorization;
  }
  const Eigen::VectorXd a2 = a2_product({zeta_sequence(data, h, nz), p.zetas});
  const Eigen::VectorXd a1 = a2_product({eta_sequence(data, h, ne), p.etas});

  json j;
  j["loop"] = loop_to_json(g);
  j["factorization"] = factorization_to_json(tf);
  j["a2_product"] = real_list(a2);
  j["a1_product"] = real_list(a1);
  j["residual"] = coeff_distance(tf.product(), g);
  if (o.timing) j["runtime_ms"] = elapsed_ms(start);

  std::ostringstream t;
  t << "n " << g.size() << "\ndegrees " << g.min_degree() << ".."
    << g.max_degree() << "\na " << vector_text(tf.a) << "\na2_product "
    << vector_text(a2) << "\na1_product " << vector_text(a1) << "\nresidual "
    << format_double(j["residual"].get<double>()) << '\n';
  emit(o, out, j, t.str());
  return 0;
}

FactorVariant parse_variant(const std::string& v, FactorVariant fallback) {
  if (v.empty()) return fallback;
  if (v == "k1") return FactorVariant::kK1;
  if (v == "k2") return FactorVariant::kK2;
  if (v == "general") return FactorVariant::kGeneral;
  throw InvalidArgument("--variant must be k1, k2 or general");
}

int cmd_factor(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const LaurentMatrix g = loop_from_json(read_json_file(o.input));
  const Config config = make_config(o);
  const FactorVariant variant = parse_variant(o.variant, FactorVariant::kK2);
  TriangularFactorization tf;
  if (variant == FactorVariant::kGeneral)
    tf = triangular_factor(g, LShape::kGeneral, config.toeplitz_n,
                           config.toeplitz_n)
             .factorization;
  else
    tf = factor_k2(g, variant, config);
  json j;
  j["factorization"] = factorization_to_json(tf);
  j["residual"] = coeff_distance(tf.product(), g);
  j["holomorphic_defect"] = holomorphic_defect(tf.u);
  if (o.timing) j["runtime_ms"] = elapsed_ms(start);

  std::ostringstream t;
  t << "a " << vector_text(tf.a) << "\nm";
  for (int i = 0; i < tf.m.size(); ++i) t << ' ' << complex_text(tf.m(i));
  t << "\nresidual " << format_double(j["residual"].get<double>())
    << "\nholomorphic_defect "
    << format_double(j["holomorphic_defect"].get<double>()) << '\n';
  emit(o, out, j, t.str());
  return 0;
}

int cmd_peel(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const LaurentMatrix g = loop_from_json(read_json_file(o.input));
  if (g.size() < 2) throw InvalidArgument("loop must be at least 2 x 2");
  const Config config = make_config(o);
  const CartanData data = build_type_a(g.size() - 1);
  const IntVec coroot = parse_period(data, o.period);
  const IntVec h = data.coroot_lattice_point(coroot);
  const FactorVariant variant = parse_variant(o.variant, FactorVariant::kK2);
  if (variant == FactorVariant::kGeneral)
    throw InvalidArgument("peel needs --variant k1 or k2");
  const bool k1 = variant == FactorVariant::kK1;
  const int count = std::max(o.terms, 1);
  const ReducedSequence seq =
      k1 ? eta_sequence(data, h, count) : zeta_sequence(data, h, count);
  const std::vector<cd> params = peel(g, seq, o.terms, config);
  const ReducedSequence full = k1 ? eta_sequence(data, h, params.size())
                                  : zeta_sequence(data, h, params.size());
  const double residual =
      coeff_distance(synthesize({full, params}).loop, g);

  json j;
  j["rank"] = data.rank;
  j["period_point"] = coroot;
  j[k1 ? "etas" : "zetas"] = complex_list(params);
  j["residual"] = residual;
  if (o.timing) j["runtime_ms"] = elapsed_ms(start);

  std::ostringstream t;
  for (size_t i = 0; i < params.size(); ++i)
    t << (k1 ? "eta_" : "zeta_") << full.label(i) << " = "
      << complex_text(params[i]) << '\n';
  t << "residual " << format_double(residual) << '\n';
  emit(o, out, j, t.str());
  return 0;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const LaurentMatrix g = loop_from_json(read_json_file(o.input));
  if (g.size() < 2) throw InvalidArgument("loop must be at least 2 x 2");
  const CartanData data = build_type_a(g.size() - 1);
  const IntVec coroot = parse_period(data, o.period);
  const Decomposition d = decompose_g(g, coroot, make_config(o));
  json j;
  j["params"] = params_to_json(d.params);
  j["factorization"] = factorization_to_json(d.factorization);
  j["reconstruction_residual"] = d.reconstruction_residual;
  j["diagonal_residual"] = d.diagonal_residual;
  if (o.timing) j["runtime_ms"] = elapsed_ms(start);

  std::ostringstream t;
  t << "etas";
  for (const cd& z : d.params.etas) t << "  " << complex_text(z);
  t << "\nzetas";
  for (const cd& z : d.params.zetas) t << "  " << complex_text(z);
  t << '\n';
  for (const ChiMode& m : d.params.chi) {
    t << "chi_" << m.k;
    for (const cd& c : m.coeffs) t << "  " << complex_text(c);
    t << '\n';
  }
  t << "a " << vector_text(d.factorization.a) << "\nreconstruction_residual "
    << format_double(d.reconstruction_residual) << "\ndiagonal_residual "
    << format_double(d.diagonal_residual) << '\n';
  emit(o, out, j, t.str());
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const json input = read_json_file(o.input);
  const Config config = make_config(o);
  const bool is_params = input.is_object() && input.contains("rank");
  LaurentMatrix g;
  SmoothFactorizationData params;
  if (is_params) {
    params = params_from_json(input);
    g = compose_g(params, config);
  } else {
    g = loop_from_json(input);
  }

  std::vector<std::string> wanted;
  {
    std::stringstream ss(o.checks);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) wanted.push_back(item);
  }
  static const std::vector<std::string> known = {"unitarity", "roundtrip",
                                                 "diagonal", "determinant"};
  for (const auto& w : wanted)
    if (std::find(known.begin(), known.end(), w) == known.end())
      throw InvalidArgument("unknown check '" + w + "'");

  // Decomposition shared by the loop-file checks, computed on demand.
  std::optional<Decomposition> dec;
  auto decomposition = [&]() -> const Decomposition& {
    if (!dec) {
      IntVec period = params.period;
      if (!is_params) {
        if (g.size() < 2) throw InvalidArgument("loop must be at least 2 x 2");
        period = parse_period(build_type_a(g.size() - 1), o.period);
      }
      dec = decompose_g(g, period, config);
    }
    return *dec;
  };

  const std::map<std::string, std::function<double()>> runners = {
      {"unitarity", [&] { return unitarity_residual(g, 256); }},
      {"roundtrip",
       [&] { return decomposition().reconstruction_residual; }},
      {"diagonal",
       [&] {
         if (!is_params) return decomposition().diagonal_residual;
         const CartanData data = build_type_a(params.rank);
         const IntVec h = resolve_period(data, params.period);
         const auto tf = triangular_factor(g, LShape::kGeneral,
                                           config.toeplitz_n,
                                           config.toeplitz_n)
                             .factorization;
         const Eigen::VectorXd want =
             a2_product({eta_sequence(data, h, params.etas.size()),
                         params.etas})
                 .cwiseProduct(diagonal_from_toeplitz(
                     exp_chi(params.chi, data.n(), config.samples),
                     config.toeplitz_n))
                 .cwiseProduct(a2_product(
                     {zeta_sequence(data, h, params.zetas.size()),
                      params.zetas}));
         return (tf.a - want).cwiseAbs().maxCoeff();
       }},
      {"determinant",
       [&] {
         const SmoothFactorizationData& p =
             is_params ? params : decomposition().params;
         const double want = det_formula(p);
         const double got = toeplitz_det_sq(g, 96).value;
         return std::abs(got - want) / want;
       }},
  };
  const std::map<std::string, double> tolerance = {
      {"unitarity", config.tol_exact},
      {"roundtrip", 1e-7},
      {"diagonal", 1e-6},
      {"determinant", 1e-5}};

  VerificationReport report;
  for (const auto& name : wanted) {
    CheckResult c;
    c.name = name;
    c.tolerance = tolerance.at(name);
    const auto start = Clock::now();
    try {
      c.residual = runners.at(name)();
      c.passed = c.residual <= c.tolerance;
    } catch (const Error& e) {
      c.residual = INFINITY;
      c.passed = false;
      c.detail = e.what();
    }
    if (o.timing) c.runtime_ms = elapsed_ms(start);
    report.checks.push_back(c);
  }
  emit(o, out, report.to_json(), report.to_table());
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Triangular and root-subgroup factorization of loops in SU(n)"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--toeplitz-n", o.toeplitz_n,
                    "Degree truncation for Toeplitz and solver steps")
        ->check(CLI::PositiveNumber);
    sub->add_option("--samples", o.samples, "Circle samples")
        ->check(CLI::Range(16, 1 << 16));
    sub->add_option("--tol", o.tol, "Exact-arithmetic tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out_path, "Write output to this file");
    sub->add_option("--format", o.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--timing", o.timing, "Include runtimes in milliseconds");
  };

  auto* walk = app.add_subcommand("alcove-walk", "Generate a periodic sequence");
  walk->add_option("--rank", o.rank, "Rank of SU(rank+1)")->required();
  walk->add_option("--period", o.period,
                   "hdelta, 2hdelta or comma separated coroot coefficients");
  walk->add_option("--terms", o.terms, "Number of letters")
      ->check(CLI::NonNegativeNumber);
  common(walk);

  auto* syn = app.add_subcommand("synthesize", "Build a loop from parameters");
  syn->add_option("params", o.input, "Parameter file")->required();
  common(syn);

  auto* fac = app.add_subcommand("factor", "Triangular factorization");
  fac->add_option("loop", o.input, "Loop file")->required();
  fac->add_option("--variant", o.variant, "k1, k2 or general");
  common(fac);

  auto* pl = app.add_subcommand("peel", "Recover root-subgroup parameters");
  pl->add_option("loop", o.input, "Loop file")->required();
  pl->add_option("--period", o.period, "Period point");
  pl->add_option("--terms", o.terms, "Number of factors (default: automatic)")
      ->check(CLI::NonNegativeNumber);
  pl->add_option("--variant", o.variant, "k1 or k2");
  common(pl);

  auto* dec = app.add_subcommand("decompose", "Split g = k1^* exp(chi) k2");
  dec->add_option("loop", o.input, "Loop file")->required();
  dec->add_option("--period", o.period, "Period point");
  common(dec);

  auto* ver = app.add_subcommand("verify", "Run invariant checks");
  ver->add_option("file", o.input, "Loop or parameter file")->required();
  ver->add_option("--checks", o.checks,
                  "Comma separated subset of unitarity,roundtrip,diagonal,"
                  "determinant");
  ver->add_option("--period", o.period, "Period point (loop files)");
  common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (walk->parsed()) return cmd_alcove_walk(o, out);
    if (syn->parsed()) return cmd_synthesize(o, out);
    if (fac->parsed()) return cmd_factor(o, out);
    if (pl->parsed()) return cmd_peel(o, out);
    if (dec->parsed()) return cmd_decompose(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotReducedError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SequenceTooShort& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace loopfact
