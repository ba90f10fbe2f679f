#include "folijet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace folijet::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError("input error at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required member \"") + key + "\"");
    return *it;
}

const Json* optional_member(const Json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

// Mirrors additionalProperties: false in docs/input.schema.json.
void known_members(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) fail(path, "unknown member \"" + it.key() + "\"");
    }
}

const Json& array_at(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

int parse_int(const Json& j, const std::string& path, int lo, int hi) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const long long v = j.get<long long>();
    if (v < lo || v > hi) fail(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

double parse_positive(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) fail(path, "expected a positive finite number");
    return v;
}

std::vector<Complex> parse_cvec(const Json& j, const std::string& path) {
    array_at(j, path);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], path + "/" + std::to_string(i)));
    return out;
}

// [c_1, c_2, ...] as a jet with a zero constant term, padded to `order`.
XJet<Complex> parse_tail_jet(const Json& j, const std::string& path, int order) {
    const std::vector<Complex> c = parse_cvec(j, path);
    XJet<Complex> out = XJet<Complex>::zero(std::max<int>(order, static_cast<int>(c.size())));
    for (std::size_t r = 0; r < c.size(); ++r) out[static_cast<int>(r) + 1] = c[r];
    return out;
}

std::vector<std::vector<std::vector<Complex>>> parse_background_family(const Json& j, const std::string& path,
                                                                       std::size_t count) {
    array_at(j, path);
    if (j.size() != count) fail(path, "expected " + std::to_string(count) + " entries, one per point");
    std::vector<std::vector<std::vector<Complex>>> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::string pi = path + "/" + std::to_string(i);
        array_at(j[i], pi);
        for (std::size_t r = 0; r < j[i].size(); ++r) out[i].push_back(parse_cvec(j[i][r], pi + "/" + std::to_string(r)));
    }
    return out;
}

TangencyModel build_tangency(const Json& t, int found, int idx, Complex q, const XJet<Complex>& z, int inv_order,
                             const ToleranceConfig& tol, const std::string& path) {
    switch (found) {
    case 0:
        return TangencyModel::from_tau(idx, q, parse_complex(t["tau"], path + "/tau"), z, inv_order);
    case 1:
        return TangencyModel::from_involution(idx, q, parse_tail_jet(t["involution"], path + "/involution", 1), z, tol);
    case 2: {
        const XJet<Complex> h = parse_tail_jet(t["involution_conjugator"], path + "/involution_conjugator", 1);
        return TangencyModel::from_conjugator(idx, q, h, z, inv_order, tol);
    }
    case 3: {
        // [g_2, g_3, ...]
        const std::vector<Complex> c = parse_cvec(t["g"], path + "/g");
        if (c.empty()) fail(path + "/g", "expected at least the quadratic coefficient");
        XJet<Complex> g = XJet<Complex>::zero(static_cast<int>(c.size()) + 1);
        for (std::size_t r = 0; r < c.size(); ++r) g[static_cast<int>(r) + 2] = c[r];
        return TangencyModel::from_g(idx, q, g, z, tol);
    }
    default:
        fail(path, "missing involution data: give one of tau, involution, involution_conjugator, g");
    }
}

TangencyModel parse_tangency(const Json& t, std::size_t j, Complex q, int k0, int inv_order, const ToleranceConfig& tol,
                             const std::string& path, bool& has_z) {
    known_members(t, {"z", "tau", "involution", "involution_conjugator", "g"}, path);
    XJet<Complex> z = XJet<Complex>::zero(k0);
    has_z = false;
    if (const Json* zj = optional_member(t, "z")) {
        z = parse_tail_jet(*zj, path + "/z", k0);
        has_z = static_cast<int>(zj->size()) >= k0;
    }
    const char* kinds[] = {"tau", "involution", "involution_conjugator", "g"};
    int found = -1;
    for (int i = 0; i < 4; ++i) {
        if (!optional_member(t, kinds[i])) continue;
        if (found >= 0) fail(path, std::string("give only one of tau, involution, involution_conjugator, g"));
        found = i;
    }
    const int idx = static_cast<int>(j);
    try {
        return build_tangency(t, found, idx, q, z, inv_order, tol, path);
    } catch (const InputError& e) {
        if (std::string(e.what()).rfind("input error at ", 0) == 0) throw;
        fail(path, e.what());
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void csv_row(std::ostringstream& os, const std::string& prefix, Complex c) {
    os << prefix << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << '\n';
}

Json branches_json(const std::vector<BranchJet>& branches) {
    Json arr = Json::array();
    for (const BranchJet& b : branches) {
        std::vector<Complex> c(b.coeffs.coeffs().begin() + 1, b.coeffs.coeffs().end());
        arr.push_back({{"anchor", to_json(b.anchor)}, {"coeffs", to_json(c)}});
    }
    return arr;
}

Json local_jets(const std::vector<std::vector<LaurentJet>>& a, const std::vector<std::vector<LaurentJet>>& b) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Json ja = Json::array(), jb = Json::array();
        for (std::size_t k = 1; k < a[i].size(); ++k) ja.push_back(to_json(a[i][k]));
        for (std::size_t k = 1; k < b[i].size(); ++k) jb.push_back(to_json(b[i][k]));
        arr.push_back({{"index", i + 1}, {"a", ja}, {"b", jb}});
    }
    return arr;
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected a complex number [re, im]");
    const Complex c(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(path, "complex number is not finite");
    return c;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read input file " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("input error at /: malformed JSON (" + std::string(e.what()) + ")");
    }
}

TangencyCurveJets parse_curve(const Json& j, const MarkedPoints& pts, const std::string& path) {
    TangencyCurveJets curve;
    curve.order = 0;
    int order = -1;
    auto side = [&](const char* key, const std::vector<Complex>& anchors, std::vector<BranchJet>& out) {
        const std::string sp = path + "/" + key;
        const Json& arr = array_at(member(j, key, path), sp);
        if (arr.size() != anchors.size()) fail(sp, "expected one branch per marked point");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string bp = sp + "/" + std::to_string(i);
            known_members(arr[i], {"anchor", "coeffs"}, bp);
            BranchJet b;
            b.anchor = anchors[i];
            if (const Json* a = optional_member(arr[i], "anchor")) {
                b.anchor = parse_complex(*a, bp + "/anchor");
                if (std::abs(b.anchor - anchors[i]) > 1e-12 * (1.0 + std::abs(anchors[i])))
                    fail(bp + "/anchor", "anchor does not match the marked point");
            }
            const Json& cj = member(arr[i], "coeffs", bp);
            b.coeffs = parse_tail_jet(cj, bp + "/coeffs", 0);
            if (order >= 0 && b.order() != order) fail(bp + "/coeffs", "all branches need the same number of coefficients");
            order = b.order();
            if (order < 1) fail(bp + "/coeffs", "expected at least one coefficient");
            out.push_back(b);
        }
    };
    known_members(j, {"order", "p", "q"}, path);
    side("p", pts.p, curve.p);
    side("q", pts.q, curve.q);
    curve.order = order;
    return curve;
}

RunInput parse_input(const Json& doc, int k0_override, std::optional<double> tol_rel, std::optional<double> tol_abs) {
    RunInput in;
    FoliationPairData& fp = in.data;
    known_members(doc, {"k0", "tolerances", "points", "singular", "tangency", "background", "curve", "options"}, "");

    fp.k0 = k0_override > 0 ? k0_override : parse_int(member(doc, "k0", ""), "/k0", 1, kMaxOrder);
    if (fp.k0 > kMaxOrder) fail("/k0", "k0 above " + std::to_string(kMaxOrder) + " is not supported");
    if (const Json* t = optional_member(doc, "tolerances")) {
        known_members(*t, {"rel", "abs"}, "/tolerances");
        if (const Json* r = optional_member(*t, "rel")) fp.tol.rel = parse_positive(*r, "/tolerances/rel");
        if (const Json* a = optional_member(*t, "abs")) fp.tol.abs = parse_positive(*a, "/tolerances/abs");
    }
    if (tol_rel) fp.tol.rel = *tol_rel;
    if (tol_abs) fp.tol.abs = *tol_abs;

    const Json& pts = member(doc, "points", "");
    known_members(pts, {"p", "q"}, "/points");
    fp.points.p = parse_cvec(member(pts, "p", "/points"), "/points/p");
    if (const Json* q = optional_member(pts, "q")) fp.points.q = parse_cvec(*q, "/points/q");
    if (fp.points.p.empty()) fail("/points/p", "at least one singular point is required");
    fp.points.validate();
    const std::size_t np = fp.points.p.size(), nq = fp.points.q.size();

    int inv_order = default_involution_order(fp.k0);
    bool auto_shift = false;
    if (const Json* o = optional_member(doc, "options")) {
        known_members(*o, {"involution_order", "auto_shift_quadratics"}, "/options");
        if (const Json* io = optional_member(*o, "involution_order"))
            inv_order = parse_int(*io, "/options/involution_order", 2, 400);
        if (const Json* as = optional_member(*o, "auto_shift_quadratics")) {
            if (!as->is_boolean()) fail("/options/auto_shift_quadratics", "expected a boolean");
            auto_shift = as->get<bool>();
        }
    }
    in.auto_shift_quadratics = auto_shift;

    bool complete = true;
    const Json& sing = array_at(member(doc, "singular", ""), "/singular");
    if (sing.size() != np) fail("/singular", "expected one entry per point in /points/p");
    for (std::size_t i = 0; i < np; ++i) {
        const std::string sp = "/singular/" + std::to_string(i);
        known_members(sing[i], {"lambda", "s"}, sp);
        const Complex lambda = parse_complex(member(sing[i], "lambda", sp), sp + "/lambda");
        XJet<Complex> s = XJet<Complex>::zero(fp.k0);
        if (const Json* sj = optional_member(sing[i], "s")) {
            s = parse_tail_jet(*sj, sp + "/s", fp.k0);
            complete = complete && static_cast<int>(sj->size()) >= fp.k0;
        } else {
            complete = false;
        }
        fp.singular.push_back(SingularModel::make(static_cast<int>(i), fp.points.p[i], lambda, s));
    }

    const Json empty = Json::array();
    const Json* tan = optional_member(doc, "tangency");
    const Json& tarr = array_at(tan ? *tan : empty, "/tangency");
    if (tarr.size() != nq) fail("/tangency", "expected one entry per point in /points/q");
    for (std::size_t j = 0; j < nq; ++j) {
        bool has_z = false;
        fp.tangency.push_back(parse_tangency(tarr[j], j, fp.points.q[j], fp.k0, inv_order, fp.tol,
                                             "/tangency/" + std::to_string(j), has_z));
        complete = complete && has_z;
    }
    in.has_invariants = complete;

    fp.background = BackgroundData::standard(np, nq);
    if (const Json* bg = optional_member(doc, "background")) {
        known_members(*bg, {"eps", "sig"}, "/background");
        if (const Json* e = optional_member(*bg, "eps")) fp.background.eps = parse_background_family(*e, "/background/eps", np);
        if (const Json* s = optional_member(*bg, "sig")) fp.background.sig = parse_background_family(*s, "/background/sig", nq);
        try {
            fp.background.validate(np, nq, fp.tol);
        } catch (const Error& err) {
            fail("/background", err.what());
        }
    }

    if (const Json* c = optional_member(doc, "curve")) in.curve = parse_curve(*c, fp.points, "/curve");
    return in;
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const std::vector<Complex>& v) {
    Json arr = Json::array();
    for (const Complex& c : v) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const LaurentJet& jet) {
    Json j;
    j["center"] = to_json(jet.center());
    j["min_exp"] = jet.min_exp();
    j["max_exp"] = jet.is_exact() ? Json(nullptr) : Json(jet.max_exp());
    j["coeffs"] = to_json(jet.stored());
    return j;
}

Json to_json(const PoleSum& f) {
    Json poles = Json::array();
    for (const PoleTerm& t : f.terms()) poles.push_back({{"pole", to_json(t.pole)}, {"coeffs", to_json(t.coeffs)}});
    return {{"poly", to_json(f.poly())}, {"poles", poles}};
}

Json to_json(const NormalFormTable& table) {
    Json an = Json::array(), bn = Json::array();
    for (int k = 1; k <= table.order; ++k) {
        an.push_back(to_json(table.a_n[static_cast<std::size_t>(k)]));
        bn.push_back(to_json(table.b_n[static_cast<std::size_t>(k)]));
    }
    Json j;
    j["order"] = table.order;
    j["a_n"] = an;
    j["b_n"] = bn;
    j["local"] = {{"p", local_jets(table.a_p, table.b_p)}, {"q", local_jets(table.a_q, table.b_q)}};
    j["cancellation"] = table.cancellation;
    j["depth"] = {{"p", table.depth_p}, {"q", table.depth_q}};
    return j;
}

Json to_json(const TangencyCurveJets& curve) {
    return {{"order", curve.order}, {"p", branches_json(curve.p)}, {"q", branches_json(curve.q)}};
}

Json to_json(const GenericityCertificate& cert) {
    Json entries = Json::array();
    for (const CertificateEntry& e : cert.entries)
        entries.push_back({{"name", e.name}, {"value", to_json(e.value)}, {"normalized", e.normalized}, {"ok", e.ok}});
    Json j;
    j["verdict"] = cert.verdict;
    j["offending"] = cert.offending.empty() ? Json(nullptr) : Json(cert.offending);
    j["k0"] = cert.k0;
    j["threshold"] = cert.threshold;
    j["entries"] = entries;
    j["det_A"] = to_json(cert.det_A);
    j["det_Atilde"] = to_json(cert.det_Atilde);
    Json cond = Json::array();
    for (double c : cert.condition) cond.push_back(std::isfinite(c) ? Json(c) : Json(nullptr));
    j["condition"] = cond;
    j["lambda_route"] = cert.lambda_route;
    j["rank_route"] = cert.rank_route;
    j["routes_agree"] = cert.routes_agree;
    j["quadratics_admissible"] = cert.quadratics_admissible ? Json(*cert.quadratics_admissible) : Json(nullptr);
    return j;
}

Json to_json(const RealizationResult& res) {
    Json s = Json::array(), z = Json::array();
    for (const SingularModel& sm : res.data.singular)
        s.push_back(to_json(std::vector<Complex>(sm.s.coeffs().begin() + 1, sm.s.coeffs().end())));
    for (const TangencyModel& tm : res.data.tangency)
        z.push_back(to_json(std::vector<Complex>(tm.z.coeffs().begin() + 1, tm.z.coeffs().end())));
    Json j;
    j["s"] = s;
    j["z"] = z;
    j["quadratic_shift"] = to_json(res.quadratic_shift);
    j["residual"] = res.residual;
    j["certificate"] = to_json(res.certificate);
    j["recomputed"] = to_json(res.recomputed);
    return j;
}

std::string to_csv(const NormalFormTable& table) {
    std::ostringstream os;
    os << "family,k,kind,pole,exp,re,im\n";
    auto sums = [&](const char* fam, const std::vector<PoleSum>& v) {
        for (int k = 1; k <= table.order; ++k) {
            const PoleSum& f = v[static_cast<std::size_t>(k)];
            for (std::size_t d = 0; d < f.poly().size(); ++d)
                csv_row(os, std::string(fam) + ',' + std::to_string(k) + ",poly,," + std::to_string(d), f.poly()[d]);
            for (std::size_t t = 0; t < f.terms().size(); ++t)
                for (std::size_t m = 0; m < f.terms()[t].coeffs.size(); ++m)
                    csv_row(os, std::string(fam) + ',' + std::to_string(k) + ",pole," + std::to_string(t + 1) + ",-" +
                                    std::to_string(m + 1),
                            f.terms()[t].coeffs[m]);
        }
    };
    sums("a_n", table.a_n);
    sums("b_n", table.b_n);
    auto locals = [&](const char* fam, const std::vector<std::vector<LaurentJet>>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t k = 1; k < v[i].size(); ++k) {
                const LaurentJet& jet = v[i][k];
                for (std::size_t e = 0; e < jet.stored().size(); ++e)
                    csv_row(os, std::string(fam) + ',' + std::to_string(k) + ",local," + std::to_string(i + 1) + ',' +
                                    std::to_string(jet.min_exp() + static_cast<int>(e)),
                            jet.stored()[e]);
            }
    };
    locals("a_p", table.a_p);
    locals("b_p", table.b_p);
    locals("a_q", table.a_q);
    locals("b_q", table.b_q);
    return os.str();
}

std::string to_csv(const TangencyCurveJets& curve) {
    std::ostringstream os;
    os << "branch,index,r,re,im\n";
    auto side = [&](const char* name, const std::vector<BranchJet>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (int r = 1; r <= v[i].order(); ++r)
                csv_row(os, std::string(name) + ',' + std::to_string(i + 1) + ',' + std::to_string(r), v[i].c(r));
    };
    side("p", curve.p);
    side("q", curve.q);
    return os.str();
}

std::string to_csv(const GenericityCertificate& cert) {
    std::ostringstream os;
    os << "name,re,im,normalized,ok\n";
    for (const CertificateEntry& e : cert.entries)
        os << '"' << e.name << "\"," << fmt(e.value.real()) << ',' << fmt(e.value.imag()) << ',' << fmt(e.normalized)
           << ',' << (e.ok ? 1 : 0) << '\n';
    return os.str();
}

std::string to_csv(const RealizationResult& res) {
    std::ostringstream os;
    os << "invariant,index,r,re,im\n";
    for (std::size_t i = 0; i < res.data.singular.size(); ++i)
        for (int r = 1; r <= res.data.singular[i].s.order(); ++r)
            csv_row(os, "s," + std::to_string(i + 1) + ',' + std::to_string(r), res.data.singular[i].s[r]);
    for (std::size_t j = 0; j < res.data.tangency.size(); ++j)
        for (int r = 1; r <= res.data.tangency[j].z.order(); ++r)
            csv_row(os, "z," + std::to_string(j + 1) + ',' + std::to_string(r), res.data.tangency[j].z[r]);
    return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const Json& doc, int k0, const ToleranceConfig& tol) {
    nlohmann::json canonical;  // std::map ordering gives a key-sorted dump
    canonical["input"] = nlohmann::json::parse(doc.dump());
    canonical["k0"] = k0;
    canonical["tol_rel"] = tol.rel;
    canonical["tol_abs"] = tol.abs;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical.dump())));
    return buf;
}

Json envelope(const std::string& command, const std::string& hash, const ToleranceConfig& tol) {
    Json j;
    j["tool"] = "folijet";
    j["version"] = kVersion;
    j["command"] = command;
    j["config_hash"] = hash;
    j["tolerances"] = {{"rel", tol.rel}, {"abs", tol.abs}};
    return j;
}

}  // namespace folijet::io
