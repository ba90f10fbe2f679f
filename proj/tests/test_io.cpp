#include <doctest.h>

#include "folijet/io.hpp"

using folijet::Complex;
using folijet::io::Json;

namespace {

Json minimal() {
    return Json::parse(R"({
      "k0": 2,
      "points": {"p": [[0, 0]], "q": [[1, 0]]},
      "singular": [{"lambda": [0.3, 0.2], "s": [[0.5, 0], [0.1, -0.2]]}],
      "tangency": [{"z": [[1, 0], [0.2, 0.1]], "tau": [0.4, -0.1]}]
    })");
}

std::string error_of(const Json& doc) {
    try {
        folijet::io::parse_input(doc);
    } catch (const folijet::InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal document parses") {
    const folijet::io::RunInput in = folijet::io::parse_input(minimal());
    CHECK(in.has_invariants);
    CHECK(in.data.k0 == 2);
    CHECK(in.data.singular[0].lambda == Complex(0.3, 0.2));
    CHECK(in.data.singular[0].s[1] == Complex(0.5, 0.0));
    CHECK(in.data.tangency[0].z[2] == Complex(0.2, 0.1));
    CHECK(in.data.tangency[0].tau == Complex(0.4, -0.1));
    CHECK_FALSE(in.curve.has_value());
    CHECK(in.data.background.is_standard());
}

TEST_CASE("overrides replace document values") {
    const folijet::io::RunInput in = folijet::io::parse_input(minimal(), 1, 1e-6, 1e-10);
    CHECK(in.data.k0 == 1);
    CHECK(in.data.tol.rel == 1e-6);
    CHECK(in.data.tol.abs == 1e-10);
}

TEST_CASE("errors name the JSON path") {
    Json d = minimal();
    d.erase("k0");
    CHECK(error_of(d).find("input error at /: missing required member \"k0\"") == 0);

    d = minimal();
    d["singular"][0]["lambda"] = "half";
    CHECK(error_of(d).find("input error at /singular/0/lambda") == 0);

    d = minimal();
    d["tangency"][0].erase("tau");
    d["tangency"][0]["involution"] = Json::parse("[[-1, 0], [0.3, 0], [5, 0]]");
    CHECK(error_of(d).find("input error at /tangency/0") == 0);

    d = minimal();
    d["tangency"][0]["g"] = Json::parse("[[1, 0]]");
    CHECK(error_of(d).find("give only one of") != std::string::npos);

    d = minimal();
    d["k0"] = 99;
    CHECK(error_of(d).find("input error at /k0") == 0);

    d = minimal();
    d["singular"].push_back(d["singular"][0]);
    CHECK(error_of(d).find("input error at /singular") == 0);
}

TEST_CASE("complex numbers round trip as pairs") {
    const Json j = folijet::io::to_json(Complex(1.5, -2.0));
    CHECK(j.dump() == "[1.5,-2.0]");
    CHECK(folijet::io::parse_complex(j, "/x") == Complex(1.5, -2.0));
    CHECK(folijet::io::parse_complex(Json(3.0), "/x") == Complex(3.0, 0.0));
    CHECK_THROWS_AS(folijet::io::parse_complex(Json::parse("[1, 2, 3]"), "/x"), folijet::InputError);
}

TEST_CASE("Laurent jets serialize with their exponent range") {
    const folijet::LaurentJet j(Complex(1.0), -1, {2.0, 3.0}, 4);
    const Json o = folijet::io::to_json(j);
    CHECK(o["min_exp"] == -1);
    CHECK(o["max_exp"] == 4);
    CHECK(o["coeffs"].size() == 2u);
    const Json exact = folijet::io::to_json(folijet::LaurentJet::constant(0.0, 1.0));
    CHECK(exact["max_exp"].is_null());
}

TEST_CASE("curve section parses and rejects wrong anchors") {
    Json d = minimal();
    d["curve"] = Json::parse(R"({"p": [{"anchor": [0, 0], "coeffs": [[1, 0], [2, 0]]}],
                                 "q": [{"coeffs": [[0.5, 0], [0, 1]]}]})");
    const folijet::io::RunInput in = folijet::io::parse_input(d);
    REQUIRE(in.curve.has_value());
    CHECK(in.curve->p[0].c(2) == Complex(2.0));
    CHECK(in.curve->q[0].anchor == Complex(1.0));
    d["curve"]["p"][0]["anchor"] = Json::parse("[5, 0]");
    CHECK(error_of(d).find("input error at /curve/p/0/anchor") == 0);
}

TEST_CASE("config hash is stable and sensitive") {
    const folijet::ToleranceConfig tol;
    const std::string h1 = folijet::io::config_hash(minimal(), 2, tol);
    CHECK(h1.size() == 16u);
    CHECK(h1 == folijet::io::config_hash(minimal(), 2, tol));
    CHECK(h1 != folijet::io::config_hash(minimal(), 3, tol));
    // FNV-1a reference value of the empty string.
    CHECK(folijet::io::fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(folijet::io::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("envelope carries version and tolerances") {
    folijet::ToleranceConfig tol;
    tol.rel = 1e-7;
    const Json e = folijet::io::envelope("tangency", "0123456789abcdef", tol);
    CHECK(e["tool"] == "folijet");
    CHECK(e["version"] == folijet::kVersion);
    CHECK(e["command"] == "tangency");
    CHECK(e["tolerances"]["rel"] == 1e-7);
}

TEST_CASE("unknown members are rejected") {
    Json d = minimal();
    d["extra"] = 1;
    CHECK(error_of(d).find("input error at /: unknown member \"extra\"") == 0);
    d = minimal();
    d["tangency"][0]["Tau"] = 1;
    CHECK(error_of(d).find("input error at /tangency/0: unknown member \"Tau\"") == 0);
    d = minimal();
    d["tolerances"] = 5;
    CHECK(error_of(d).find("input error at /tolerances: expected an object") == 0);
}
