// folijet: batch front end for the normal-form, tangency-curve, realization
// and verification pipelines. JSON in, JSON or CSV out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "folijet/io.hpp"
#include "folijet/realization.hpp"
#include "folijet/verify.hpp"

using folijet::io::Json;

namespace {

struct Options {
    std::string input;
    int k0 = 0;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::optional<double> tol_rel;
    std::optional<double> tol_abs;
};

struct Loaded {
    Json doc;
    folijet::io::RunInput in;
    std::string hash;
};

Loaded load(const Options& o) {
    Loaded l;
    l.doc = folijet::io::load_json_file(o.input);
    l.in = folijet::io::parse_input(l.doc, o.k0, o.tol_rel, o.tol_abs);
    l.hash = folijet::io::config_hash(l.doc, l.in.data.k0, l.in.data.tol);
    return l;
}

void require_invariants(const folijet::io::RunInput& in) {
    if (!in.has_invariants)
        throw folijet::InputError("input error at /: s and z jets through k0 are required for this command");
    in.data.validate(true);
}

std::string csv_header(const std::string& command, const std::string& hash, const folijet::ToleranceConfig& tol) {
    std::ostringstream os;
    os << "# folijet " << folijet::kVersion << " command=" << command << " config_hash=" << hash
       << " tol_rel=" << tol.rel << " tol_abs=" << tol.abs << '\n';
    return os.str();
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw folijet::InputError("cannot write output file " + o.out);
    f << text;
}

void emit_json(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

int cmd_normal_form(const Options& o) {
    const Loaded l = load(o);
    require_invariants(l.in);
    const folijet::NormalFormTable table = folijet::compute_normal_form(l.in.data);
    if (o.format == "csv") {
        emit(o, csv_header("normal-form", l.hash, l.in.data.tol) + folijet::io::to_csv(table));
    } else {
        Json j = folijet::io::envelope("normal-form", l.hash, l.in.data.tol);
        j["k0"] = l.in.data.k0;
        j["result"] = folijet::io::to_json(table);
        emit_json(o, j);
    }
    return 0;
}

int cmd_tangency(const Options& o) {
    const Loaded l = load(o);
    require_invariants(l.in);
    const folijet::TangencyCurveJets curve = folijet::compute_tangency(l.in.data);
    if (o.format == "csv") {
        emit(o, csv_header("tangency", l.hash, l.in.data.tol) + folijet::io::to_csv(curve));
    } else {
        Json j = folijet::io::envelope("tangency", l.hash, l.in.data.tol);
        j["k0"] = l.in.data.k0;
        j["result"] = folijet::io::to_json(curve);
        emit_json(o, j);
    }
    return 0;
}

int cmd_realize(const Options& o) {
    const Loaded l = load(o);
    const folijet::FoliationPairData& fp = l.in.data;
    fp.validate(false);
    folijet::TangencyCurveJets curve;
    std::string source = "input";
    if (l.in.curve) {
        curve = *l.in.curve;
    } else if (l.in.has_invariants) {
        // Without a curve, realize the curve of the given invariants.
        curve = folijet::compute_tangency(fp);
        source = "forward";
    } else {
        throw folijet::InputError("input error at /: realize needs /curve or complete s and z jets");
    }
    folijet::RealizationOptions ropt;
    ropt.auto_shift_quadratics = l.in.auto_shift_quadratics;
    const folijet::RealizationResult res = folijet::realize(fp, curve, fp.k0, ropt);
    if (o.format == "csv") {
        emit(o, csv_header("realize", l.hash, fp.tol) + folijet::io::to_csv(res));
        return 0;
    }
    Json j = folijet::io::envelope("realize", l.hash, fp.tol);
    j["k0"] = fp.k0;
    j["curve_source"] = source;
    Json r = folijet::io::to_json(res);
    if (source == "forward") {
        double err = 0.0;
        for (std::size_t i = 0; i < fp.singular.size(); ++i)
            for (int k = 1; k <= fp.k0; ++k)
                err = std::max(err, std::abs(res.data.singular[i].s[k] - fp.singular[i].s[k]) /
                                        std::max(1.0, std::abs(fp.singular[i].s[k])));
        for (std::size_t jj = 0; jj < fp.tangency.size(); ++jj)
            for (int k = 1; k <= fp.k0; ++k)
                err = std::max(err, std::abs(res.data.tangency[jj].z[k] - fp.tangency[jj].z[k]) /
                                        std::max(1.0, std::abs(fp.tangency[jj].z[k])));
        r["round_trip_error"] = err;
    }
    j["result"] = r;
    emit_json(o, j);
    return 0;
}

int cmd_check(const Options& o) {
    const Loaded l = load(o);
    const folijet::FoliationPairData& fp = l.in.data;
    fp.validate(false);
    std::optional<std::vector<folijet::Complex>> quads;
    if (l.in.curve) {
        quads.emplace();
        for (const auto& b : l.in.curve->p) quads->push_back(b.c(1));
        for (const auto& b : l.in.curve->q) quads->push_back(b.c(1));
    }
    const folijet::GenericityCertificate cert = folijet::check_genericity(fp, fp.k0, 1e-9, quads);
    if (o.format == "csv") {
        emit(o, csv_header("check", l.hash, fp.tol) + folijet::io::to_csv(cert));
    } else {
        Json j = folijet::io::envelope("check", l.hash, fp.tol);
        j["result"] = folijet::io::to_json(cert);
        emit_json(o, j);
    }
    return 0;
}

Json criterion_json(const folijet::verify::CriterionResult& r) {
    return {{"id", r.id},           {"name", r.name},   {"measured", r.measured}, {"tolerance", r.tolerance},
            {"pass", r.pass},       {"cases", r.cases}, {"detail", r.detail}};
}

int cmd_verify(const Options& o) {
    folijet::ToleranceConfig tol;
    if (o.tol_rel) tol.rel = *o.tol_rel;
    if (o.tol_abs) tol.abs = *o.tol_abs;
    std::vector<folijet::verify::CriterionResult> config_checks;
    std::string hash;
    if (!o.input.empty()) {
        const Loaded l = load(o);
        require_invariants(l.in);
        tol = l.in.data.tol;
        hash = l.hash;
        config_checks = folijet::verify::check_config(l.in.data);
    } else {
        hash = folijet::io::config_hash(Json{{"seed", o.seed}}, 0, tol);
    }
    const auto results = folijet::verify::run_all(o.seed);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    for (const auto& r : config_checks) all = all && r.pass;

    if (o.format == "csv") {
        std::ostringstream os;
        os << csv_header("verify", hash, tol) << "group,id,name,measured,tolerance,pass\n";
        auto row = [&](const char* group, const folijet::verify::CriterionResult& r) {
            char buf[64];
            os << group << ',' << r.id << ",\"" << r.name << "\",";
            std::snprintf(buf, sizeof buf, "%.6e,%.1e,", r.measured, r.tolerance);
            os << buf << (r.pass ? 1 : 0) << '\n';
        };
        for (const auto& r : results) row("suite", r);
        for (const auto& r : config_checks) row("config", r);
        emit(o, os.str());
    } else {
        Json j = folijet::io::envelope("verify", hash, tol);
        j["seed"] = o.seed;
        Json suite = Json::array(), cfg = Json::array();
        for (const auto& r : results) suite.push_back(criterion_json(r));
        for (const auto& r : config_checks) cfg.push_back(criterion_json(r));
        j["criteria"] = suite;
        j["config_checks"] = cfg;
        j["all_pass"] = all;
        emit_json(o, j);
    }
    return all ? 0 : static_cast<int>(folijet::ErrorKind::verification);
}

void add_common(CLI::App* sub, Options& o, bool input_required) {
    auto* in = sub->add_option("--input", o.input, "input JSON file");
    if (input_required) in->required();
    in->check(CLI::ExistingFile);
    sub->add_option("--k0", o.k0, "jet order, overrides the input")->check(CLI::Range(1, folijet::kMaxOrder));
    sub->add_option("--out", o.out, "output file (stdout when omitted)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "seed for randomized verification");
    sub->add_option("--tol-rel", o.tol_rel, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-abs", o.tol_abs, "absolute tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"folijet: normal forms, tangency curves and realization for foliation pairs"};
    app.set_version_flag("--version", std::string(folijet::kVersion));
    app.require_subcommand(1);
    Options o;
    auto* nf = app.add_subcommand("normal-form", "canonical normal-form coefficients");
    auto* tg = app.add_subcommand("tangency", "jets of the tangency-curve branches");
    auto* rz = app.add_subcommand("realize", "recover s and z jets from curve jets");
    auto* ck = app.add_subcommand("check", "genericity certificate");
    auto* vf = app.add_subcommand("verify", "oracle property suite");
    add_common(nf, o, true);
    add_common(tg, o, true);
    add_common(rz, o, true);
    add_common(ck, o, true);
    add_common(vf, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(folijet::ErrorKind::input);
    }

    try {
        if (nf->parsed()) return cmd_normal_form(o);
        if (tg->parsed()) return cmd_tangency(o);
        if (rz->parsed()) return cmd_realize(o);
        if (ck->parsed()) return cmd_check(o);
        return cmd_verify(o);
    } catch (const folijet::Error& e) {
        std::cerr << "folijet: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::invalid_argument& e) {
        std::cerr << "folijet: invalid input: " << e.what() << '\n';
        return static_cast<int>(folijet::ErrorKind::input);
    } catch (const std::exception& e) {
        std::cerr << "folijet: internal failure: " << e.what() << '\n';
        return static_cast<int>(folijet::ErrorKind::verification);
    }
}
