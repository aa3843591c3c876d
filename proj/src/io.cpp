#include "multcode/io.hpp"

#include <fstream>

namespace multcode {

namespace {

uint32_t get_u32(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw FormatError(std::string("missing or invalid field '") + key + "'");
    }
    return j[key].get<uint32_t>();
}

Fp elem_from_json(const json& v, const PrimeField& field, const char* what) {
    if (!v.is_number_unsigned() || v.get<uint64_t>() >= field.size()) {
        throw FormatError(std::string(what) + ": entries must be integers in [0, q)");
    }
    return field.element_at(v.get<uint64_t>());
}

MultiIndex exp_from_json(const json& v, uint32_t m, const char* what) {
    if (!v.is_array() || v.size() != m) {
        throw FormatError(std::string(what) + ": exponent vector must have length m");
    }
    std::vector<uint32_t> exps;
    exps.reserve(m);
    for (const auto& e : v) {
        if (!e.is_number_unsigned()) throw FormatError(std::string(what) + ": exponents must be nonnegative");
        exps.push_back(e.get<uint32_t>());
    }
    return MultiIndex(std::move(exps));
}

}  // namespace

json poly_to_json(const MVPoly<PrimeField>& poly) {
    json terms = json::array();
    for (const auto& [i, c] : poly.terms()) {  // map iteration = graded-lex
        terms.push_back(json{{"exp", i.exps()}, {"c", c.value()}});
    }
    return json{{"q", poly.field().modulus()}, {"m", poly.arity()}, {"terms", std::move(terms)}};
}

MVPoly<PrimeField> poly_from_json(const json& j) {
    const uint32_t q = get_u32(j, "q");
    const uint32_t m = get_u32(j, "m");
    if (m < 1) throw FormatError("polynomial file: m must be >= 1");
    PrimeField field(q);
    MVPoly<PrimeField> poly(field, m);
    if (!j.contains("terms") || !j["terms"].is_array()) throw FormatError("polynomial file: missing terms");
    std::optional<MultiIndex> prev;
    for (const auto& t : j["terms"]) {
        MultiIndex i = exp_from_json(t.contains("exp") ? t["exp"] : json(), m, "polynomial term");
        if (!t.contains("c")) throw FormatError("polynomial term: missing coefficient");
        Fp c = elem_from_json(t["c"], field, "polynomial coefficient");
        if (c.is_zero()) throw FormatError("polynomial file: explicit zero coefficient");
        if (prev && !(*prev < i)) {
            throw FormatError("polynomial file: terms must be strictly graded-lex sorted");
        }
        prev = i;
        poly.add_term(std::move(i), c);
    }
    return poly;
}

json codeword_to_json(const Codeword& word) {
    json symbols = json::array();
    for (const auto& sym : word.symbols) {
        json row = json::array();
        for (const auto& v : sym) row.push_back(v.value());
        symbols.push_back(std::move(row));
    }
    return json{{"q", word.params.q()}, {"m", word.params.m()}, {"s", word.params.s()},
                {"d", word.params.d()}, {"symbols", std::move(symbols)}};
}

Codeword codeword_from_json(const json& j) {
    CodeParams params(get_u32(j, "q"), get_u32(j, "m"), get_u32(j, "s"), get_u32(j, "d"));
    if (!j.contains("symbols") || !j["symbols"].is_array() || j["symbols"].size() != params.length()) {
        throw FormatError("codeword file: symbols must be an array of length q^m");
    }
    Codeword word{params, {}};
    word.symbols.reserve(params.length());
    for (const auto& row : j["symbols"]) {
        if (!row.is_array() || row.size() != params.symbol_len()) {
            throw FormatError("codeword file: each symbol must have binom(m+s-1, m) entries");
        }
        Symbol sym;
        sym.reserve(params.symbol_len());
        for (const auto& v : row) sym.push_back(elem_from_json(v, params.field(), "codeword symbol"));
        word.symbols.push_back(std::move(sym));
    }
    return word;
}

json interp_set_to_json(const InterpolatingSet& set) {
    json pairs = json::array();
    for (const auto& [point, i] : set.pairs) {
        json pt = json::array();
        for (const auto& v : point) pt.push_back(v.value());
        pairs.push_back(json{{"point", std::move(pt)}, {"exp", i.exps()}});
    }
    return json{{"pairs", std::move(pairs)}};
}

InterpolatingSet interp_set_from_json(const json& j, const CodeParams& params) {
    if (!j.contains("pairs") || !j["pairs"].is_array()) throw FormatError("set file: missing pairs");
    InterpolatingSet set{params, {}};
    for (const auto& p : j["pairs"]) {
        if (!p.contains("point") || !p["point"].is_array() || p["point"].size() != params.m()) {
            throw FormatError("set file: each pair needs a length-m point");
        }
        std::vector<Fp> point;
        point.reserve(params.m());
        for (const auto& v : p["point"]) point.push_back(elem_from_json(v, params.field(), "set point"));
        MultiIndex i = exp_from_json(p.contains("exp") ? p["exp"] : json(), params.m(), "set pair");
        if (i.weight() >= params.s()) throw FormatError("set file: pair derivative order must be < s");
        set.pairs.emplace_back(std::move(point), std::move(i));
    }
    return set;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw FormatError("failed writing '" + path + "'");
}

}  // namespace multcode
