#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

#include "multcode/channel.hpp"
#include "multcode/globaldec.hpp"
#include "multcode/io.hpp"
#include "multcode/localdec.hpp"
#include "multcode/sysenc.hpp"
#include "multcode/unidec.hpp"

namespace {

using namespace multcode;

constexpr int kExitOk = 0;
constexpr int kExitDecodeFailure = 1;
constexpr int kExitUsage = 2;

std::vector<Fp> parse_point(const std::string& text, const CodeParams& params) {
    std::vector<Fp> pt;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        unsigned long v = std::stoul(item, &pos);
        if (pos != item.size() || v >= params.q()) throw FormatError("point coordinate out of range");
        pt.push_back(params.field().element_at(v));
    }
    if (pt.size() != params.m()) throw FormatError("point must have m coordinates");
    return pt;
}

/// Uniformly random polynomial of degree <= d.
MVPoly<PrimeField> random_poly(Rng& rng, const CodeParams& params) {
    MVPoly<PrimeField> poly(params.field(), params.m());
    for (const auto& e : indices_up_to_degree(params.m(), params.d())) {
        const Fp c = params.field().element_at(rng.below(params.q()));
        if (!c.is_zero()) poly.add_term(e, c);
    }
    return poly;
}

struct TrialReport {
    uint64_t trials = 0, successes = 0, failures = 0, wrong_answers = 0;
    double total_queries = 0, total_ms = 0;

    json to_json() const {
        return json{{"trials", trials},
                    {"successes", successes},
                    {"failures", failures},
                    {"wrong_answers", wrong_answers},
                    {"mean_queries", trials ? total_queries / trials : 0.0},
                    {"mean_ms", trials ? total_ms / trials : 0.0}};
    }
};

struct BenchArgs {
    std::string mode;
    uint32_t q = 0, m = 0, s = 0, d = 0, c = 0;
    std::string rate = "0";
    std::string delta0;
    uint64_t trials = 10, seed = 0;
};

TrialReport run_bench(const BenchArgs& args) {
    TrialReport report;
    report.trials = args.trials;

    const bool is_scheme = args.mode == "scheme";
    std::optional<SchemeParams> scheme;
    std::optional<CodeParams> params;
    if (is_scheme) {
        if (args.c == 0) throw FormatError("bench --mode scheme requires --c");
        scheme.emplace(args.q, args.m, args.s, args.c);
        params.emplace(scheme->code);
    } else {
        params.emplace(args.q, args.m, args.s, args.d);
    }
    const Rational rate = parse_ratio(args.rate);
    const Rational delta0 = args.delta0.empty() ? Rational(0) : parse_ratio(args.delta0);

    // the scheme's one-time encode is shared across trials; queries are the
    // object under test
    std::vector<std::vector<Fp>> scheme_message;
    std::optional<Codeword> scheme_codeword;
    if (is_scheme) {
        Rng rng(args.seed);
        const auto ls = indices_below_weight(args.m, args.c);
        scheme_message.resize(params->length());
        for (auto& sym : scheme_message) {
            sym.clear();
            for (size_t k = 0; k < ls.size(); ++k) {
                sym.push_back(params->field().element_at(rng.below(args.q)));
            }
        }
        scheme_codeword = scheme_encode(*scheme, scheme_message);
    }

    PointIndexer indexer(params->q(), params->m());
    for (uint64_t trial = 0; trial < args.trials; ++trial) {
        const uint64_t trial_seed = args.seed ^ trial;
        Rng rng(trial_seed);
        const uint64_t channel_seed = rng.next();
        const uint64_t algo_seed = rng.next();

        Codeword clean = [&] {
            if (is_scheme) return *scheme_codeword;
            return encode(*params, random_poly(rng, *params));
        }();
        ChannelSpec chan{rate, channel_seed, ChannelSpec::Mode::ExactCount};
        Codeword corrupted = corrupt(clean, chan).word;

        const auto t0 = std::chrono::steady_clock::now();
        bool success = false, wrong = false;
        double queries = 0;

        if (args.mode == "unique") {
            if (params->m() != 1) throw FormatError("bench --mode unique requires m = 1");
            auto word = to_univariate(corrupted);
            auto dec = unique_decode_uv(word);
            queries = static_cast<double>(params->length());
            if (dec) {
                auto reenc = encode(*params, to_mvpoly(dec->poly));
                success = count_differing(reenc, clean) == 0;
                wrong = !success;
            }
        } else if (args.mode == "global") {
            auto dec = global_unique_decode(corrupted, delta0);
            queries = static_cast<double>(params->length());
            if (dec) {
                success = count_differing(encode(*params, *dec), clean) == 0;
                wrong = !success;
            }
        } else if (args.mode == "local" || args.mode == "line" || args.mode == "mline" || is_scheme) {
            const auto point = indexer.point_at(rng.below(params->length()), params->field());
            const uint64_t point_idx = indexer.index_of(point);
            SymbolOracle oracle = [&corrupted, &indexer](const std::vector<Fp>& pt) {
                return corrupted.symbols[indexer.index_of(pt)];
            };
            if (args.mode == "local") {
                const LocalConfig cfg = LocalConfig::for_delta0(*params, delta0, algo_seed);
                auto res = correct_at(oracle, point, cfg);
                queries = static_cast<double>(res.queries);
                if (res.symbol) {
                    success = *res.symbol == clean.symbols[point_idx];
                    wrong = !success;
                }
            } else if (args.mode == "line") {
                const LocalConfig cfg = LocalConfig::for_delta0(*params, delta0, algo_seed);
                auto res = recover_low_order_jet(oracle, point, cfg);
                queries = static_cast<double>(res.queries);
                if (res.values) {
                    Symbol expect(clean.symbols[point_idx].begin(),
                                  clean.symbols[point_idx].begin() + res.values->size());
                    success = *res.values == expect;
                    wrong = !success;
                }
            } else if (args.mode == "mline") {
                const LocalConfig cfg = LocalConfig::for_delta0(*params, delta0, algo_seed);
                auto res = m_line_correct(oracle, point, cfg);
                queries = static_cast<double>(res.queries);
                if (res.values) {
                    Symbol expect(clean.symbols[point_idx].begin(),
                                  clean.symbols[point_idx].begin() + res.values->size());
                    success = *res.values == expect;
                    wrong = !success;
                }
            } else {  // scheme
                auto res = scheme_query(*scheme, oracle, point, algo_seed);
                queries = static_cast<double>(res.queries);
                if (res.values) {
                    success = *res.values == scheme_message[point_idx];
                    wrong = !success;
                }
            }
        } else {
            throw FormatError("bench: unknown mode '" + args.mode + "'");
        }

        const auto t1 = std::chrono::steady_clock::now();
        report.total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.total_queries += queries;
        if (success) {
            ++report.successes;
        } else if (wrong) {
            ++report.wrong_answers;
        } else {
            ++report.failures;
        }
    }
    return report;
}

int run(int argc, char** argv) {
    CLI::App app{"multiplicity-code encoder and decoders"};
    app.require_subcommand(1);

    // params
    auto* sc_params = app.add_subcommand("params", "print exact rate and distance");
    uint32_t q = 0, m = 0, s = 0, d = 0;
    sc_params->add_option("--q", q)->required();
    sc_params->add_option("--m", m)->required();
    sc_params->add_option("--s", s)->required();
    sc_params->add_option("--d", d)->required();

    // encode
    auto* sc_encode = app.add_subcommand("encode", "encode a polynomial file");
    std::string in_path, out_path;
    uint32_t enc_s = 0, enc_d = 0;
    sc_encode->add_option("--s", enc_s)->required();
    sc_encode->add_option("--d", enc_d)->required();
    sc_encode->add_option("--in", in_path)->required();
    sc_encode->add_option("--out", out_path)->required();

    // corrupt
    auto* sc_corrupt = app.add_subcommand("corrupt", "apply a seeded corruption channel");
    std::string cor_in, cor_out, cor_rate = "0";
    uint64_t cor_seed = 0;
    bool bernoulli = false;
    sc_corrupt->add_option("--in", cor_in)->required();
    sc_corrupt->add_option("--out", cor_out)->required();
    sc_corrupt->add_option("--rate", cor_rate)->required();
    sc_corrupt->add_option("--seed", cor_seed)->required();
    sc_corrupt->add_flag("--bernoulli", bernoulli, "per-symbol Bernoulli instead of exact count");

    // decode
    auto* sc_decode = app.add_subcommand("decode", "unique or global decoding");
    std::string dec_mode, dec_in, dec_out, dec_delta0;
    sc_decode->add_option("--mode", dec_mode)->required()->check(CLI::IsMember({"unique", "global"}));
    sc_decode->add_option("--in", dec_in)->required();
    sc_decode->add_option("--out", dec_out)->required();
    sc_decode->add_option("--delta0", dec_delta0, "error budget a/b (global mode)");

    // local-correct
    auto* sc_local = app.add_subcommand("local-correct", "locally correct one symbol");
    std::string lc_in, lc_point, lc_delta0;
    uint64_t lc_seed = 0;
    sc_local->add_option("--in", lc_in)->required();
    sc_local->add_option("--point", lc_point)->required();
    sc_local->add_option("--delta0", lc_delta0)->required();
    sc_local->add_option("--seed", lc_seed)->required();

    // local-decode
    auto* sc_ldec = app.add_subcommand("local-decode", "locally decode one message symbol");
    std::string ld_in, ld_set, ld_delta0;
    uint64_t ld_index = 0, ld_seed = 0;
    sc_ldec->add_option("--in", ld_in)->required();
    sc_ldec->add_option("--set", ld_set)->required();
    sc_ldec->add_option("--index", ld_index)->required();
    sc_ldec->add_option("--delta0", ld_delta0)->required();
    sc_ldec->add_option("--seed", ld_seed)->required();

    // interp-set
    auto* sc_set = app.add_subcommand("interp-set", "build and store an interpolating set");
    uint32_t is_q = 0, is_m = 0, is_s = 0, is_d = 0;
    std::string is_out;
    sc_set->add_option("--q", is_q)->required();
    sc_set->add_option("--m", is_m)->required();
    sc_set->add_option("--s", is_s)->required();
    sc_set->add_option("--d", is_d)->required();
    sc_set->add_option("--out", is_out)->required();

    // bench
    auto* sc_bench = app.add_subcommand("bench", "seeded Monte-Carlo trial sweeps");
    BenchArgs bench;
    sc_bench->add_option("--mode", bench.mode)
        ->required()
        ->check(CLI::IsMember({"unique", "global", "local", "line", "mline", "scheme"}));
    sc_bench->add_option("--q", bench.q)->required();
    sc_bench->add_option("--m", bench.m)->required();
    sc_bench->add_option("--s", bench.s)->required();
    sc_bench->add_option("--d", bench.d);
    sc_bench->add_option("--c", bench.c, "message jet order (scheme mode)");
    sc_bench->add_option("--rate", bench.rate)->required();
    sc_bench->add_option("--trials", bench.trials)->required();
    sc_bench->add_option("--seed", bench.seed)->required();
    sc_bench->add_option("--delta0", bench.delta0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;  // help/version exit 0, usage errors exit 2
    }

    if (sc_params->parsed()) {
        CodeParams params(q, m, s, d);
        const uint64_t sq = static_cast<uint64_t>(s) * q;
        mpz_class sym_den = binomial_z(s + m - 1, m);
        for (uint32_t j = 0; j < m; ++j) sym_den *= q;
        std::cout << "rate = " << binomial_z(d + m, m).get_str() << "/" << sym_den.get_str() << "\n";
        std::cout << "distance = " << (sq - d) << "/" << sq << "\n";
        std::cout << "rate_lower_bound = " << ratio_str(rate_lower_bound(params)) << "\n";
        return kExitOk;
    }
    if (sc_encode->parsed()) {
        auto poly = poly_from_json(read_json_file(in_path));
        CodeParams params(poly.field().modulus(), static_cast<uint32_t>(poly.arity()), enc_s, enc_d);
        write_json_file(out_path, codeword_to_json(encode(params, poly)));
        return kExitOk;
    }
    if (sc_corrupt->parsed()) {
        auto word = codeword_from_json(read_json_file(cor_in));
        ChannelSpec spec{parse_ratio(cor_rate), cor_seed,
                         bernoulli ? ChannelSpec::Mode::Bernoulli : ChannelSpec::Mode::ExactCount};
        write_json_file(cor_out, codeword_to_json(corrupt(word, spec).word));
        return kExitOk;
    }
    if (sc_decode->parsed()) {
        auto word = codeword_from_json(read_json_file(dec_in));
        std::optional<MVPoly<PrimeField>> result;
        if (dec_mode == "unique") {
            if (word.params.m() != 1) throw FormatError("decode --mode unique requires m = 1");
            auto dec = unique_decode_uv(to_univariate(word));
            if (dec) result = to_mvpoly(dec->poly);
        } else {
            if (dec_delta0.empty()) throw FormatError("decode --mode global requires --delta0");
            result = global_unique_decode(word, parse_ratio(dec_delta0));
        }
        if (!result) {
            write_json_file(dec_out, json{{"failed", true}, {"mode", dec_mode}});
            std::cerr << "decode: no codeword within the decoding radius\n";
            return kExitDecodeFailure;
        }
        write_json_file(dec_out, poly_to_json(*result));
        return kExitOk;
    }
    if (sc_local->parsed()) {
        auto word = codeword_from_json(read_json_file(lc_in));
        const auto point = parse_point(lc_point, word.params);
        const LocalConfig cfg = LocalConfig::for_delta0(word.params, parse_ratio(lc_delta0), lc_seed);
        auto res = correct_at(oracle_for(word), point, cfg);
        if (!res.symbol) {
            std::cout << json{{"failed", true}, {"queries", res.queries}}.dump() << "\n";
            return kExitDecodeFailure;
        }
        json sym = json::array();
        for (const auto& v : *res.symbol) sym.push_back(v.value());
        std::cout << json{{"symbol", std::move(sym)}, {"queries", res.queries}}.dump() << "\n";
        return kExitOk;
    }
    if (sc_ldec->parsed()) {
        auto word = codeword_from_json(read_json_file(ld_in));
        auto set = interp_set_from_json(read_json_file(ld_set), word.params);
        const LocalConfig cfg = LocalConfig::for_delta0(word.params, parse_ratio(ld_delta0), ld_seed);
        auto res = local_decode_message(oracle_for(word), set, ld_index, cfg);
        if (!res.value) {
            std::cout << json{{"failed", true}, {"queries", res.queries}}.dump() << "\n";
            return kExitDecodeFailure;
        }
        std::cout << json{{"value", res.value->value()}, {"queries", res.queries}}.dump() << "\n";
        return kExitOk;
    }
    if (sc_set->parsed()) {
        CodeParams params(is_q, is_m, is_s, is_d);
        write_json_file(is_out, interp_set_to_json(build_interpolating_set(params)));
        return kExitOk;
    }
    if (sc_bench->parsed()) {
        std::cout << run_bench(bench).to_json().dump(2) << "\n";
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const multcode::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
