#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxsusy/backgrounds.hpp"
#include "maxsusy/kaluza.hpp"

namespace maxsusy::io {

using json = nlohmann::ordered_json;

extern const char* const kEngineVersion;
extern const char* const kConventionsHash;

using Params = std::map<std::string, std::string>;

// Catalog kinds: flat, cw, cw-max, cw-perturbed, ads4xs7, ads7xs4.
Background catalog_background(const std::string& kind, const Params& params);
json catalog_listing();

// Background files: {"type": "catalog", "kind", "params"} or
// {"type": "custom", "chart", "denominators", "periodic", "metric",
//  "frame_metric", "flux", "flux_basis", "params"}.
Background background_from_json(const json& doc);
json background_to_json(const Background& bg);

IIAData iia_from_json(const json& doc);
json iia_to_json(const IIAData& iia);

json error_json(const std::exception& e);

struct VerifyOptions {
  int samples = 3;
  std::uint64_t seed = 0;
  bool killing = false;
  bool holonomy = false;
  int holonomy_samples = 2;
  int holonomy_cap = 6;
  bool timings = false;
  unsigned threads = 0;
};

struct VerifyResult {
  json report;
  bool ok = false;
};

VerifyResult verify(const Background& bg, const VerifyOptions& opt);

// One block of equal eigenvalues: `size` entries taking values
// start, start + step, ..., up to stop inclusive.
struct GridBlock {
  int size = 0;
  Rational start, stop, step;
};

// Parses "size:start:stop:step", e.g. "3:-2:-1/2:1/8".
GridBlock parse_block(const std::string& text);

// One JSON object per grid point, in grid order (last block fastest).
std::vector<json> scan_cw(const std::vector<GridBlock>& blocks, const Rational& mu, int samples,
                          std::uint64_t seed, unsigned threads = 0);

Rational parse_rational(const std::string& text);

}  // namespace maxsusy::io
