#include "loopfact/json_io.hpp"

#include <fstream>
#include <sstream>

#include "loopfact/errors.hpp"

namespace loopfact {

namespace {

cd complex_from(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw InvalidArgument(std::string(what) +
                          " entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<cd> complex_vector(const json& j, const char* what) {
  std::vector<cd> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw InvalidArgument(std::string(what) + " must be a list");
  for (const auto& e : j) out.push_back(complex_from(e, what));
  return out;
}

Eigen::MatrixXd real_matrix(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InvalidArgument(std::string(what) + " must have " +
                          std::to_string(n) + " rows");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
      throw InvalidArgument(std::string(what) + " row has the wrong length");
    for (int c = 0; c < n; ++c) {
      if (!j[r][c].is_number())
        throw InvalidArgument(std::string(what) + " entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json complex_list(const std::vector<cd>& v) {
  json out = json::array();
  for (const cd& z : v) out.push_back(json::array({z.real(), z.imag()}));
  return out;
}

json real_list(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json loop_to_json(const LaurentMatrix& g) {
  json out;
  out["n"] = g.size();
  json terms = json::array();
  if (!g.is_zero())
    for (int d = g.min_degree(); d <= g.max_degree(); ++d) {
      const Eigen::MatrixXcd c = g.coefficient(d);
      if (c.cwiseAbs().maxCoeff() == 0) continue;
      json t;
      t["deg"] = d;
      t["re"] = matrix_rows(c.real());
      t["im"] = matrix_rows(c.imag());
      terms.push_back(t);
    }
  out["terms"] = terms;
  return out;
}

LaurentMatrix loop_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw InvalidArgument("loop file needs an integer \"n\"");
  const int n = j["n"].get<int>();
  if (n < 1) throw InvalidArgument("loop size must be positive");
  if (!j.contains("terms") || !j["terms"].is_array())
    throw InvalidArgument("loop file needs a \"terms\" list");
  LaurentMatrix g(n);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("deg") || !t["deg"].is_number_integer())
      throw InvalidArgument("each term needs an integer \"deg\"");
    const Eigen::MatrixXd re = real_matrix(t.value("re", json()), n, "re");
    const Eigen::MatrixXd im =
        t.contains("im") ? real_matrix(t["im"], n, "im")
                         : Eigen::MatrixXd::Zero(n, n).eval();
    Eigen::MatrixXcd c(n, n);
    c.real() = re;
    c.imag() = im;
    g.add_to_coefficient(t["deg"].get<int>(), c);
  }
  return g;
}

json factorization_to_json(const TriangularFactorization& tf) {
  json out;
  switch (tf.variant) {
    case FactorVariant::kK1: out["variant"] = "k1"; break;
    case FactorVariant::kK2: out["variant"] = "k2"; break;
    case FactorVariant::kGeneral: out["variant"] = "general"; break;
  }
  out["l"] = loop_to_json(tf.l);
  out["m"] = complex_list(std::vector<cd>(tf.m.data(), tf.m.data() + tf.m.size()));
  out["a"] = real_list(tf.a);
  out["u"] = loop_to_json(tf.u);
  return out;
}

json params_to_json(const SmoothFactorizationData& data) {
  json out;
  out["rank"] = data.rank;
  out["period_point"] = data.period;
  out["etas"] = complex_list(data.etas);
  json chi = json::array();
  for (const ChiMode& m : data.chi) {
    json e;
    e["k"] = m.k;
    e["coeffs"] = complex_list(m.coeffs);
    chi.push_back(e);
  }
  out["chi"] = chi;
  out["zetas"] = complex_list(data.zetas);
  return out;
}

SmoothFactorizationData params_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j["rank"].is_number_integer())
    throw InvalidArgument("parameter file needs an integer \"rank\"");
  SmoothFactorizationData d;
  d.rank = j["rank"].get<int>();
  if (d.rank < 1) throw InvalidArgument("rank must be at least 1");
  if (j.contains("period_point") && !j["period_point"].is_null()) {
    const auto& p = j["period_point"];
    if (!p.is_array()) throw InvalidArgument("period_point must be a list");
    for (const auto& e : p) {
      if (!e.is_number_integer())
        throw InvalidArgument("period_point entries must be integers");
      d.period.push_back(e.get<long long>());
    }
    if (!d.period.empty() && static_cast<int>(d.period.size()) != d.rank)
      throw InvalidArgument("period_point needs rank entries");
  }
  d.etas = complex_vector(j.value("etas", json()), "etas");
  d.zetas = complex_vector(j.value("zetas", json()), "zetas");
  if (j.contains("chi") && !j["chi"].is_null()) {
    if (!j["chi"].is_array()) throw InvalidArgument("chi must be a list");
    for (const auto& e : j["chi"]) {
      if (!e.is_object() || !e.contains("k") || !e["k"].is_number_integer())
        throw InvalidArgument("each chi mode needs an integer \"k\"");
      ChiMode m;
      m.k = e["k"].get<int>();
      m.coeffs = complex_vector(e.value("coeffs", json()), "chi coeffs");
      if (static_cast<int>(m.coeffs.size()) != d.rank + 1)
        throw InvalidArgument("chi coeffs need rank + 1 entries");
      d.chi.push_back(m);
    }
  }
  return d;
}

std::string sequence_to_text(const ReducedSequence& seq,
                             const IntVec& period_coroot) {
  std::ostringstream os;
  os << "rank " << seq.data().rank << "\nperiod";
  for (long long c : period_coroot) os << ' ' << c;
  os << "\nperiod_length " << seq.period_length() << '\n';
  for (int p = 0; p < seq.size(); ++p)
    os << seq.label(p) << ':' << seq.gamma(p) << '\n';
  return os.str();
}

ReducedSequence sequence_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int rank = 0;
  IntVec period;
  std::vector<int> gammas;
  int first = 1;
  bool have_first = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    const auto colon = line.find(':');
    if (colon != std::string::npos) {
      int label = 0, gamma = 0;
      char sep = 0;
      if (!(ls >> label >> sep >> gamma) || sep != ':')
        throw InvalidArgument("bad sequence line: " + line);
      if (!have_first) {
        first = label;
        have_first = true;
      } else if (label != first + static_cast<int>(gammas.size())) {
        throw InvalidArgument("sequence labels are not consecutive at " +
                              std::to_string(label));
      }
      gammas.push_back(gamma);
      continue;
    }
    std::string key;
    ls >> key;
    if (key == "rank") {
      ls >> rank;
    } else if (key == "period") {
      long long c;
      while (ls >> c) period.push_back(c);
    } else if (key != "period_length") {
      throw InvalidArgument("unknown sequence header: " + key);
    }
  }
  if (rank < 1) throw InvalidArgument("sequence file has no valid rank");
  const CartanData data = build_type_a(rank);
  for (int g : gammas)
    if (g < 0 || g > rank)
      throw InvalidArgument("letter " + std::to_string(g) + " out of range");
  if (first == 1) {
    ReducedSequence seq(data, gammas, first);
    if (!period.empty()) {
      const IntVec h = resolve_period(data, period);
      const ReducedSequence ref =
          periodic_sequence(data, h, std::max<int>(1, gammas.size()));
      if (ref.gammas() == gammas) return ref;
    }
    return seq;
  }
  return ReducedSequence(data, gammas, first);
}

json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("write failed for " + path);
}

}  // namespace loopfact
