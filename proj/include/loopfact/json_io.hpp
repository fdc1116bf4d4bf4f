#pragma once

#include <string>

#include "loopfact/factor.hpp"
#include "json.hpp"

namespace loopfact {

using json = nlohmann::ordered_json;

/// {"n": n, "terms": [{"deg": d, "re": [[..]], "im": [[..]]}]}, rows first.
json loop_to_json(const LaurentMatrix& g);
LaurentMatrix loop_from_json(const json& j);

json factorization_to_json(const TriangularFactorization& tf);

/// {"rank", "period_point" (coroot coefficients), "etas", "chi", "zetas"}.
json params_to_json(const SmoothFactorizationData& data);
SmoothFactorizationData params_from_json(const json& j);

json complex_list(const std::vector<cd>& v);
json real_list(const Eigen::VectorXd& v);

/// Header lines "rank r", "period x1 .. xr" (coroot coefficients),
/// "period_length l", then one "label:gamma" line per letter.
std::string sequence_to_text(const ReducedSequence& seq,
                             const IntVec& period_coroot);
ReducedSequence sequence_from_text(const std::string& text);

/// Throws InvalidArgument when the file cannot be read or parsed.
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace loopfact
