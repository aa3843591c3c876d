#pragma once

#include <string>

#include <json.hpp>

#include "multcode/code.hpp"
#include "multcode/sysenc.hpp"

namespace multcode {

using nlohmann::json;

/// {"q": int, "m": int, "terms": [{"exp": [int...], "c": int}...]},
/// terms sorted graded-lex, coefficients in [0, q).
json poly_to_json(const MVPoly<PrimeField>& poly);
MVPoly<PrimeField> poly_from_json(const json& j);

/// {"q","m","s","d": ints, "symbols": [[int...]...]} — outer array in
/// point-lex order, inner arrays in graded-lex jet order.
json codeword_to_json(const Codeword& word);
Codeword codeword_from_json(const json& j);

/// {"pairs": [{"point":[int...],"exp":[int...]}...]} in selection order.
/// The code parameters travel separately (the codeword file carries them).
json interp_set_to_json(const InterpolatingSet& set);
InterpolatingSet interp_set_from_json(const json& j, const CodeParams& params);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace multcode
