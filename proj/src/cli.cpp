#include "completeness/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "completeness/classifier.hpp"
#include "completeness/plot.hpp"
#include "completeness/sequence.hpp"
#include "completeness/tiler.hpp"
#include "completeness/verifier.hpp"

namespace completeness::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t default_prefix(std::size_t fallback) {
    if (const char* env = std::getenv(kPrefixEnv); env != nullptr && *env != '\0') {
        try {
            const long v = std::stol(env);
            if (v >= 2) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string(kPrefixEnv) + " must be an integer >= 2");
    }
    return fallback;
}

Rational positive(const std::string& text, const char* name) {
    const Rational r = Rational::parse(text);
    if (r.sign() <= 0) throw UsageError(std::string(name) + " must be positive");
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << content;
}

// Loads certificates, keeping rectangles only from those that verify against their own region.
CertifiedCells verified_cells(const std::vector<std::string>& paths, std::ostream& err) {
    CertifiedCells cells;
    for (const auto& path : paths) {
        const auto cert = verify::load_certificate(path);
        const auto report = verify::verify(cert, cert.region);
        if (!report.overall()) {
            err << "certificate " << path << " does not verify; ignored\n";
            continue;
        }
        for (const auto& r : cert.rects) cells.rects.push_back(r.rect);
    }
    return cells;
}

std::string join(const std::vector<BigInt>& values) {
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ' ';
        out += v.get_str();
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Completeness of the sequences floor(t * alpha^n)", "completeness"};
    app.require_subcommand(1);

    std::string t_text;
    std::string alpha_text;

    // sequence
    auto* seq_cmd = app.add_subcommand("sequence", "Print s_1..s_N");
    std::size_t seq_n = 0;
    seq_cmd->add_option("--t", t_text, "t as p/q or decimal")->required();
    seq_cmd->add_option("--alpha", alpha_text, "alpha as p/q or decimal")->required();
    seq_cmd->add_option("--n", seq_n, "number of terms");

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "Completeness verdict with witness");
    bool cls_json = false;
    std::vector<std::string> cls_certs;
    cls_cmd->add_option("--t", t_text)->required();
    cls_cmd->add_option("--alpha", alpha_text)->required();
    cls_cmd->add_flag("--json", cls_json, "emit JSON");
    cls_cmd->add_option("--cert", cls_certs, "certificate files to consult (verified first)");

    // witness
    auto* wit_cmd = app.add_subcommand("witness", "Non-completeness witnesses");
    wit_cmd->require_subcommand(1);
    auto* wit_cor = wit_cmd->add_subcommand("corollary", "Gap witness (m, r) for alpha >= golden ratio");
    std::size_t wit_n = kDefaultPrefixLength;
    wit_cor->add_option("--t", t_text)->required();
    wit_cor->add_option("--alpha", alpha_text)->required();
    wit_cor->add_option("--n", wit_n, "terms to search");
    auto* wit_folk = wit_cmd->add_subcommand("folkman", "Chain of non-representable values");
    std::string folk_m;
    std::size_t folk_r = 0;
    std::size_t folk_k = 4;
    wit_folk->add_option("--t", t_text)->required();
    wit_folk->add_option("--alpha", alpha_text)->required();
    wit_folk->add_option("--m", folk_m)->required();
    wit_folk->add_option("--r", folk_r)->required();
    wit_folk->add_option("--k", folk_k);
    auto* wit_gt2 = wit_cmd->add_subcommand("gt2", "Growth witness for alpha > 2");
    wit_gt2->add_option("--t", t_text)->required();
    wit_gt2->add_option("--alpha", alpha_text)->required();
    auto* wit_dy = wit_cmd->add_subcommand("dyadic", "Witness for alpha = 2, t < 1 not a power of 1/2");
    wit_dy->add_option("--t", t_text)->required();

    // tile
    auto* tile_cmd = app.add_subcommand("tile", "Certify a region by rectangle subdivision");
    std::string region_text;
    std::string out_path;
    int max_depth = 12;
    std::size_t tile_prefix = 0;
    unsigned jobs = 1;
    tile_cmd->add_option("--region", region_text, "e.g. \"t=[1,3] alpha=[13/10,7/5]\"")->required();
    tile_cmd->add_option("--max-depth", max_depth);
    tile_cmd->add_option("--prefix", tile_prefix, "terms per corner");
    tile_cmd->add_option("--out", out_path)->required();
    tile_cmd->add_option("--jobs", jobs);

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "Check a certificate file");
    std::string cert_path;
    std::string report_path;
    ver_cmd->add_option("--cert", cert_path)->required();
    ver_cmd->add_option("--region", region_text)->required();
    ver_cmd->add_option("--report", report_path, "also write the JSON report here");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "SVG map of verdicts");
    unsigned res = 100;
    std::string plot_cert;
    plot_cmd->add_option("--region", region_text)->required();
    plot_cmd->add_option("--res", res, "cells per axis");
    plot_cmd->add_option("--cert", plot_cert, "certificate to overlay and consult");
    plot_cmd->add_option("--out", out_path)->required();
    plot_cmd->add_option("--jobs", jobs);

    // epsilon
    auto* eps_cmd = app.add_subcommand("epsilon", "Square on which the first r+1 terms stay fixed");
    std::size_t eps_r = 0;
    std::uint64_t eps_x = 0;
    unsigned eps_precision = 32;
    eps_cmd->add_option("--t", t_text)->required();
    eps_cmd->add_option("--alpha", alpha_text)->required();
    eps_cmd->add_option("--r", eps_r)->required();
    eps_cmd->add_option("--x", eps_x)->required();
    eps_cmd->add_option("--precision", eps_precision);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (seq_cmd->parsed()) {
            const auto n = seq_n != 0 ? seq_n : default_prefix(kDefaultPrefixLength);
            const auto seq = prefix(positive(t_text, "--t"), positive(alpha_text, "--alpha"), n);
            out << join(seq.terms) << "\n";
            return kOk;
        }

        if (cls_cmd->parsed()) {
            const CertifiedCells cells = verified_cells(cls_certs, err);
            const auto c = classify(positive(t_text, "--t"), positive(alpha_text, "--alpha"),
                                    cls_certs.empty() ? nullptr : &cells);
            if (cls_json) {
                out << classification_to_json(c) << "\n";
            } else {
                out << to_string(c.verdict) << " (" << to_string(c.provenance) << ")\n";
            }
            return kOk;
        }

        if (wit_cmd->parsed()) {
            if (wit_cor->parsed()) {
                const auto w = corollary_witness(positive(t_text, "--t"), positive(alpha_text, "--alpha"), wit_n);
                if (!w) {
                    out << "none within " << wit_n << " terms\n";
                    return kVerifyFailed;
                }
                out << "m=" << w->m.get_str() << " r=" << w->r << "\n";
            } else if (wit_folk->parsed()) {
                const auto chain = folkman_chain(positive(t_text, "--t"), positive(alpha_text, "--alpha"),
                                                 BigInt(folk_m), folk_r, folk_k);
                out << join(chain) << "\n";
            } else if (wit_gt2->parsed()) {
                const auto w = alpha_gt2_witness(positive(t_text, "--t"), positive(alpha_text, "--alpha"));
                out << "n=" << w.n << " value=" << w.value.get_str() << "\n";
            } else if (wit_dy->parsed()) {
                const auto w = dyadic_deviation_witness(positive(t_text, "--t"));
                out << "m=" << w.m.get_str() << " r=" << w.r << "\n";
            }
            return kOk;
        }

        if (tile_cmd->parsed()) {
            const Region region = Region::parse(region_text);
            TileOptions options;
            options.max_depth = max_depth;
            options.prefix_length = tile_prefix != 0 ? tile_prefix : default_prefix(kDefaultTilePrefix);
            options.jobs = jobs == 0 ? 1 : jobs;
            const Certificate cert = tile(region, options);
            write_file(out_path, certificate_to_json(cert));
            out << "rects=" << cert.rects.size() << " uncovered=" << cert.uncovered.size()
                << (cert.total() ? " total" : " partial") << "\n";
            return cert.total() ? kOk : kVerifyFailed;
        }

        if (ver_cmd->parsed()) {
            const Region region = Region::parse(region_text);
            verify::CertificateFile cert;
            try {
                cert = verify::load_certificate(cert_path);
            } catch (const ParseError& e) {
                err << e.what() << "\n";
                return kBadCertificate;
            }
            verify::VerifyReport report;
            try {
                report = verify::verify(cert, region);
            } catch (const PreconditionError& e) {
                err << e.what() << "\n";
                return kBadCertificate;
            }
            const std::string json = verify::report_to_json(report);
            out << json;
            if (!report_path.empty()) write_file(report_path, json);
            return report.overall() ? kOk : kVerifyFailed;
        }

        if (plot_cmd->parsed()) {
            const Region region = Region::parse(region_text);
            PlotSpec spec;
            spec.box = region.box;
            spec.resolution = res;
            CertifiedCells cells;
            if (!plot_cert.empty()) {
                cells = verified_cells({plot_cert}, err);
                spec.overlay = cells.rects;
                spec.cells = &cells;
            }
            const auto grid = classify_grid(spec, jobs == 0 ? 1 : jobs);
            write_file(out_path, render_plot(spec, grid));
            return kOk;
        }

        if (eps_cmd->parsed()) {
            const auto eps = epsilon_box(positive(t_text, "--t"), positive(alpha_text, "--alpha"), eps_r, eps_x,
                                         eps_precision);
            if (!eps) {
                out << "no positive epsilon at precision " << eps_precision << "\n";
                return kVerifyFailed;
            }
            out << eps->str() << "\n";
            return kOk;
        }
    } catch (const verify::CertificateParseError& e) {
        err << e.what() << "\n";
        return kBadCertificate;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}

}  // namespace completeness::cli
