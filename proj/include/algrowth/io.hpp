#pragma once

// File formats: presentations, sigma sets, A-infinity tables with optional
// levels and twisted complexes (all JSON, rationals as "p/q" strings), and
// TSV writers for tables and profiles.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "algrowth/ainf.hpp"
#include "algrowth/bounds.hpp"
#include "algrowth/filt.hpp"
#include "algrowth/fpcat.hpp"
#include "algrowth/growth.hpp"
#include "algrowth/twisted.hpp"

namespace algrowth::io {

using Json = nlohmann::ordered_json;

/// ParseError carries "source:line:column: message".
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

Presentation presentation_from_json(const Json& j);
Json presentation_to_json(const Presentation& p);

/// Either a bare list of expressions or an object with a "sigma" list.
SigmaSpec sigma_from_json(const Json& j);

struct AInfDocument {
  std::shared_ptr<AInfCategory> category;
  std::optional<FiltrationAssignment> filtration;  ///< present iff every basis entry has a level
  std::vector<TwistedComplex> twisted;
  std::vector<Vec> sigma;  ///< cocycles in the base, by basis id
  std::optional<std::string> sigma_object;
  std::optional<Rational> threshold;
};

AInfDocument ainf_from_json(const Json& j);
/// Inverse of ainf_from_json, used for replay files.
Json ainf_to_json(const AInfDocument& doc);

/// TSV "x\ti" with header, or JSON {"pair": ..., "grid": [...], "values": [...]}.
FilteredGrowthProfile profile_from_text(const std::string& text, const std::string& source);

std::string growth_table_tsv(const GrowthTable& table);
std::string classification_line(const GrowthClassification& c);
std::string profile_tsv(const FilteredGrowthProfile& p);

}  // namespace algrowth::io
