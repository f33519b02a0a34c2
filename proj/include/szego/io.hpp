#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "szego/flow.hpp"
#include "szego/inverse.hpp"
#include "szego/rational.hpp"
#include "szego/spectral_data.hpp"
#include "szego/types.hpp"

namespace szego {

using OrderedJson = nlohmann::ordered_json;

// Serializes with all floating-point numbers rendered as decimal with 17
// significant digits (lossless double round trip, byte-deterministic output).
// Non-finite values become null.
std::string emit_json(const OrderedJson& j, int indent = 2);

// Parse with InputError reporting line and column on malformed text.
OrderedJson parse_json_text(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Symbol schema: {"poly": [[re,im],...], "poles": [{"z":[re,im],
// "coeffs":[[re,im],...]}]}.
OrderedJson symbol_to_json(const RationalFunction& u);
RationalFunction symbol_from_json(const OrderedJson& j);

// Spectral data schema: {"levels":[{"lambda":l, "phi":p, "omega":[re,im],
// "b":{"poles":[...], "residues":[...]}}]}.
OrderedJson spectral_to_json(const SpectralData& sd);
SpectralData spectral_from_json(const OrderedJson& j);

OrderedJson report_to_json(const IdentityReport& report);

// True when the document carries spectral data (has a "levels" key).
bool is_spectral_json(const OrderedJson& j);

RationalFunction read_symbol_file(const std::string& path);
SpectralData read_spectral_file(const std::string& path);
void write_symbol_file(const std::string& path, const RationalFunction& u);
void write_spectral_file(const std::string& path, const SpectralData& sd);

// CSV with header t,l2,h1,residual and 17-significant-digit values.
std::string growth_to_csv(const GrowthSeries& series);
void write_growth_csv(const std::string& path, const GrowthSeries& series);

}  // namespace szego
