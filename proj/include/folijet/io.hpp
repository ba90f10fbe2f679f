#pragma once

// JSON and CSV serialization for the command-line front end. Complex numbers
// are [re, im] pairs; Laurent jets are {center, min_exp, max_exp, coeffs}
// with max_exp null for exact jets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "folijet/normal_forms.hpp"
#include "folijet/realization.hpp"
#include "folijet/tangency.hpp"

namespace folijet::io {

using Json = nlohmann::ordered_json;

// Everything a command can take from one input document.
struct RunInput {
    FoliationPairData data;
    bool has_invariants = false;           // every s and z jet was supplied
    std::optional<TangencyCurveJets> curve;
    bool auto_shift_quadratics = false;
};

// Throws InputError("input error at <json path>: ...") on the first
// violation. k0_override > 0 replaces the document's k0; tol_override
// entries replace the document's tolerances.
RunInput parse_input(const Json& doc, int k0_override = 0, std::optional<double> tol_rel = std::nullopt,
                     std::optional<double> tol_abs = std::nullopt);
Json load_json_file(const std::string& path);

Complex parse_complex(const Json& j, const std::string& path);
Json to_json(Complex c);
Json to_json(const std::vector<Complex>& v);
Json to_json(const LaurentJet& jet);
Json to_json(const PoleSum& f);
Json to_json(const NormalFormTable& table);
Json to_json(const TangencyCurveJets& curve);
Json to_json(const GenericityCertificate& cert);
Json to_json(const RealizationResult& res);
TangencyCurveJets parse_curve(const Json& j, const MarkedPoints& pts, const std::string& path);

// Coefficient tables, one row per coefficient.
std::string to_csv(const NormalFormTable& table);
std::string to_csv(const TangencyCurveJets& curve);
std::string to_csv(const GenericityCertificate& cert);
std::string to_csv(const RealizationResult& res);

std::uint64_t fnv1a(const std::string& bytes);
// 16 hex digits of FNV-1a over the canonical dump of the input document
// together with the command-line overrides.
std::string config_hash(const Json& doc, int k0, const ToleranceConfig& tol);

// Header fields shared by every output document.
Json envelope(const std::string& command, const std::string& hash, const ToleranceConfig& tol);

}  // namespace folijet::io
