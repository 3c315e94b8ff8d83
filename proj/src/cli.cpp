#include "zakspace/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "zakspace/kq.hpp"
#include "zakspace/transform.hpp"

namespace zakspace::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Outcome {
    Json doc;
    std::ostringstream csv;
    std::ostringstream text;
    int exit_code = kExitOk;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double rounded(double x) { return std::strtod(format_real(x).c_str(), nullptr); }

Int pair_count(const Factorization& f) {
    return f.distinct_primes() == 0 ? 1 : Int{1} << (f.distinct_primes() - 1);
}

std::string factor_string(const Factorization& f) {
    if (f.factors.empty()) return "1";
    std::string out;
    for (const auto& pp : f.factors) {
        if (!out.empty()) out += '*';
        out += std::to_string(pp.prime);
        if (pp.exponent > 1) out += '^' + std::to_string(pp.exponent);
    }
    return out;
}

Json pair_json(const Bipartition& b) {
    return Json{{"m_a", b.m_a}, {"m_atilde", b.m_atilde}, {"subset_mask", b.subset_mask}, {"label", b.label()}};
}

std::vector<Bipartition> select_pairs(const RunConfig& cfg) {
    if (cfg.m_a) return {make_bipartition(cfg.m, *cfg.m_a)};
    return enumerate_bipartitions(factorize(cfg.m));
}

void require_matrix_size(const RunConfig& cfg) {
    if (cfg.m > cfg.max_m) {
        throw ValidationError("M = " + std::to_string(cfg.m) + " exceeds the dense-matrix cap " +
                              std::to_string(cfg.max_m) + "; raise it with --max-m");
    }
}

std::string heatmap_path_for(const RunConfig& cfg, const Bipartition& b, bool single) {
    if (single) return cfg.heatmap_path;
    const auto dot = cfg.heatmap_path.find_last_of('.');
    const auto slash = cfg.heatmap_path.find_last_of('/');
    const std::string suffix = ".ma" + std::to_string(b.m_a);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return cfg.heatmap_path + suffix;
    return cfg.heatmap_path.substr(0, dot) + suffix + cfg.heatmap_path.substr(dot);
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot open '" + path + "' for writing");
    file << bytes;
}

// --- factor / pairs -------------------------------------------------------

void run_factor(const RunConfig& cfg, Outcome& o) {
    const Factorization f = factorize(cfg.m);
    const RadicalRescale rr = radical_rescale(f);
    Json factors = Json::array();
    for (const auto& pp : f.factors) factors.push_back(Json{{"prime", pp.prime}, {"exponent", pp.exponent}});
    o.doc["factorization"] = Json{{"factors", factors},
                                  {"n_distinct", f.distinct_primes()},
                                  {"pair_count", pair_count(f)},
                                  {"radical", Json{{"m_bar", rr.m_bar}, {"c_multiplier", rr.c_multiplier}}}};

    o.csv << "m,factors,n_distinct,pair_count,m_bar,c_multiplier\n"
          << cfg.m << ',' << factor_string(f) << ',' << f.distinct_primes() << ',' << pair_count(f) << ','
          << rr.m_bar << ',' << rr.c_multiplier << '\n';

    o.text << "M = " << cfg.m << " = " << factor_string(f) << '\n'
           << "distinct primes N = " << f.distinct_primes() << '\n'
           << "conjugate pairs 2^(N-1) = " << pair_count(f) << '\n'
           << "radical rescale: M = " << rr.m_bar << " * " << rr.c_multiplier << '\n';
}

void run_pairs(const std::vector<Bipartition>& pairs, Outcome& o) {
    o.csv << "m_a,m_atilde,subset_mask\n";
    for (const auto& b : pairs) {
        o.csv << b.m_a << ',' << b.m_atilde << ',' << b.subset_mask << '\n';
        o.text << "pair " << b.label() << (b.m_a == 1 ? "  fourier" : "") << '\n';
    }
}

// --- mub-check ------------------------------------------------------------

Json overlap_json(const OverlapReport& r, Int m) {
    return Json{{"m_a", r.bipartition.m_a},
                {"m_atilde", r.bipartition.m_atilde},
                {"expected_modulus", rounded(1.0 / std::sqrt(static_cast<double>(m)))},
                {"modulus_min", rounded(r.modulus_min)},
                {"modulus_max", rounded(r.modulus_max)},
                {"mub_flat", r.mub_flat},
                {"unitarity_deviation", rounded(r.unitarity_deviation)},
                {"oracle_max_abs_diff", rounded(r.oracle_max_abs_diff)},
                {"passes", r.passes()}};
}

OverlapReport overlap_report(const RunConfig& cfg, const Bipartition& b) {
    const PhaseSpaceConfig space(cfg.m);
    ComplexMatrix closed = build_overlap_matrix(space, b, OverlapMethod::ClosedForm);
    if (cfg.perturb != 0.0) closed(0, 0) += cfg.perturb;
    return analyze_overlap(b, closed, build_overlap_matrix(space, b, OverlapMethod::BruteForce), cfg.tolerance);
}

void run_mub_check(const RunConfig& cfg, const std::vector<Bipartition>& pairs, Outcome& o, Json& reports) {
    o.csv << "m_a,m_atilde,modulus_min,modulus_max,mub_flat,unitarity_deviation,oracle_max_abs_diff,passes\n";
    for (const auto& b : pairs) {
        const OverlapReport r = overlap_report(cfg, b);
        reports.push_back(overlap_json(r, cfg.m));
        o.csv << b.m_a << ',' << b.m_atilde << ',' << format_real(r.modulus_min) << ','
              << format_real(r.modulus_max) << ',' << (r.mub_flat ? "true" : "false") << ','
              << format_real(r.unitarity_deviation) << ',' << format_real(r.oracle_max_abs_diff) << ','
              << (r.passes() ? "true" : "false") << '\n';
        o.text << "pair " << b.label() << ": |overlap| in [" << format_real(r.modulus_min) << ", "
               << format_real(r.modulus_max) << "], flat=" << (r.mub_flat ? "yes" : "no")
               << ", unitarity dev " << format_real(r.unitarity_deviation) << ", oracle diff "
               << format_real(r.oracle_max_abs_diff) << (r.passes() ? "" : "  FAIL") << '\n';
        if (!r.passes()) o.exit_code = kExitViolation;
    }
}

// --- localize -------------------------------------------------------------

Json localization_json(const LocalizationReport& r) {
    return Json{{"m_a", r.bipartition.m_a},
                {"m_atilde", r.bipartition.m_atilde},
                {"source_side", to_string(r.source_side)},
                {"support_size", r.support_size},
                {"support_amplitude", rounded(r.support_amplitude)},
                {"support_amplitude_min", rounded(r.support_amplitude_min)},
                {"support_probability", rounded(r.support_probability)},
                {"max_off_support", rounded(r.max_off_support)},
                {"expected_support", r.expected_support},
                {"expected_amplitude", rounded(r.expected_amplitude)},
                {"index_set_matches", r.index_set_matches},
                {"conforms", r.conforms()}};
}

void run_localize(const RunConfig& cfg, const std::vector<Bipartition>& pairs, Outcome& o, Json& reports,
                  std::ostream& err) {
    const PhaseSpaceConfig space(cfg.m);
    if (cfg.command == "localize" && cfg.m_a && pairs.front().m_a >= pairs.front().m_atilde) {
        throw ValidationError("localize needs M_a < M/M_a; pair " + pairs.front().label() + " is not eligible");
    }
    Json skipped = Json::array();
    o.csv << "m_a,m_atilde,support_size,support_amplitude,support_probability,expected_support,"
             "expected_amplitude,index_set_matches,conforms\n";
    for (const auto& b : pairs) {
        if (b.m_a >= b.m_atilde) {
            err << "notice: skipping pair " << b.label() << " (localization needs M_a < M_atilde)\n";
            skipped.push_back(pair_json(b));
            continue;
        }
        const Localization loc = localize(space, b, delocalized_state(space, b, Side::A), cfg.tolerance);
        const LocalizationReport& r = loc.report;
        Json entry = localization_json(r);
        if (!cfg.heatmap_path.empty()) {
            const std::string path = heatmap_path_for(cfg, b, pairs.size() == 1);
            write_file(path, localization_heatmap(b, loc.state));
            entry["heatmap"] = path;
        }
        reports.push_back(std::move(entry));
        o.csv << b.m_a << ',' << b.m_atilde << ',' << r.support_size << ',' << format_real(r.support_amplitude)
              << ',' << format_real(r.support_probability) << ',' << r.expected_support << ','
              << format_real(r.expected_amplitude) << ',' << (r.index_set_matches ? "true" : "false") << ','
              << (r.conforms() ? "true" : "false") << '\n';
        o.text << "pair " << b.label() << ": support " << r.support_size << " (expected " << r.expected_support
               << "), amplitude " << format_real(r.support_amplitude) << " (expected "
               << format_real(r.expected_amplitude) << "), probability " << format_real(r.support_probability)
               << (r.conforms() ? "" : "  FAIL") << '\n';
        if (!r.conforms()) o.exit_code = kExitViolation;
    }
    if (!skipped.empty()) o.doc["skipped"] = skipped;
}

// --------------------------------------------------------------------------

Outcome execute(const RunConfig& cfg, std::ostream& err) {
    Outcome o;
    o.doc["command"] = cfg.command;
    o.doc["m"] = cfg.m;
    factorize(cfg.m);  // validates M before anything else

    if (cfg.command == "factor") {
        run_factor(cfg, o);
        o.doc["pairs"] = Json::array();
        for (const auto& b : enumerate_bipartitions(factorize(cfg.m))) o.doc["pairs"].push_back(pair_json(b));
        o.doc["reports"] = Json::array();
        return o;
    }

    const std::vector<Bipartition> pairs = select_pairs(cfg);
    Json pair_list = Json::array();
    for (const auto& b : pairs) pair_list.push_back(pair_json(b));
    o.doc["pairs"] = pair_list;
    Json reports = Json::array();

    if (cfg.command == "pairs") {
        run_pairs(pairs, o);
    } else if (cfg.command == "mub-check") {
        require_matrix_size(cfg);
        o.doc["tolerance"] = cfg.tolerance;
        run_mub_check(cfg, pairs, o, reports);
    } else if (cfg.command == "localize") {
        require_matrix_size(cfg);
        o.doc["tolerance"] = cfg.tolerance;
        run_localize(cfg, pairs, o, reports, err);
    } else {  // report
        require_matrix_size(cfg);
        o.doc["tolerance"] = cfg.tolerance;
        run_factor(cfg, o);
        Json mub = Json::array();
        Json loc = Json::array();
        Outcome mub_part;
        Outcome loc_part;
        run_mub_check(cfg, pairs, mub_part, mub);
        run_localize(cfg, pairs, loc_part, loc, err);
        for (const auto& b : pairs) {
            Json entry{{"pair", pair_json(b)}, {"overlap", nullptr}, {"localization", nullptr}};
            for (const auto& r : mub) {
                if (r["m_a"] == b.m_a) entry["overlap"] = r;
            }
            for (const auto& r : loc) {
                if (r["m_a"] == b.m_a) entry["localization"] = r;
            }
            reports.push_back(std::move(entry));
        }
        if (loc_part.doc.contains("skipped")) o.doc["skipped"] = loc_part.doc["skipped"];
        o.csv << '\n' << mub_part.csv.str() << '\n' << loc_part.csv.str();
        o.text << mub_part.text.str() << loc_part.text.str();
        o.exit_code = std::max(mub_part.exit_code, loc_part.exit_code);
    }
    o.doc["reports"] = reports;
    return o;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string encode_pgm(std::size_t width, std::size_t height, const std::vector<std::uint8_t>& pixels) {
    if (pixels.size() != width * height) throw std::invalid_argument("pgm: pixel count does not match geometry");
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(pixels.begin(), pixels.end());
    return out;
}

std::string localization_heatmap(const Bipartition& b, const StateVector& state) {
    const auto rows = static_cast<std::size_t>(b.m_a);       // f-bar
    const auto cols = static_cast<std::size_t>(b.m_atilde);  // g-bar
    if (state.dim() != rows * cols) throw std::invalid_argument("heatmap: state does not match the pair");
    double peak = 0.0;
    for (const auto& a : state.amplitudes()) peak = std::max(peak, std::abs(a));
    std::vector<std::uint8_t> pixels(state.dim(), 0);
    if (peak > 0.0) {
        for (std::size_t i = 0; i < state.dim(); ++i) {
            pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * std::abs(state[i]) / peak));
        }
    }
    return encode_pgm(cols, rows, pixels);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "text";
    Int m_a = 0;

    if (const char* env = std::getenv("ZAKSPACE_TOL"); env && *env) {
        char* end = nullptr;
        cfg.tolerance = std::strtod(env, &end);
        if (*end != '\0' || !(cfg.tolerance > 0.0)) {
            err << "error: ZAKSPACE_TOL must be a positive real, got '" << env << "'\n";
            return kExitInvalid;
        }
    }

    CLI::App app{"Conjugate Zak-transform bases from the factorization of M", "zakspace"};
    app.add_option("command", cfg.command, "factor | pairs | mub-check | localize | report")
        ->required()
        ->check(CLI::IsMember({"factor", "pairs", "mub-check", "localize", "report"}));
    app.add_option("M", cfg.m, "dimension of the space")->required();
    auto* ma_opt = app.add_option("--ma", m_a, "select the single pair with this M_a");
    app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--heatmap", cfg.heatmap_path, "PGM heatmap path (localize, report)");
    app.add_option("--tol", cfg.tolerance, "tolerance for conformance checks (default $ZAKSPACE_TOL or 1e-10)")
        ->check(CLI::PositiveNumber);
    auto* max_opt = app.add_option("--max-m", cfg.max_m, "cap on M for dense-matrix commands");
    app.add_option("-o,--output", cfg.output_path, "write the result here instead of stdout");
    app.add_option("--perturb", cfg.perturb, "add this value to one overlap entry")->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (*ma_opt) cfg.m_a = m_a;
    cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
    if (*max_opt && cfg.max_m > kDefaultMaxM) {
        err << "warning: --max-m " << cfg.max_m << " lifts the default cap of " << kDefaultMaxM
            << "; dense matrices need O(M^2) memory\n";
    }

    Outcome outcome;
    try {
        outcome = execute(cfg, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    std::string rendered;
    switch (cfg.format) {
        case Format::Json: rendered = outcome.doc.dump(2) + "\n"; break;
        case Format::Csv: rendered = outcome.csv.str(); break;
        case Format::Text: rendered = outcome.text.str(); break;
    }
    if (cfg.output_path.empty()) {
        out << rendered;
    } else {
        try {
            write_file(cfg.output_path, rendered);
        } catch (const ValidationError& e) {
            err << "error: " << e.what() << '\n';
            return kExitInvalid;
        }
    }
    return outcome.exit_code;
}

}  // namespace zakspace::cli
