#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "normtorus/pipeline.hpp"

#ifndef NORMTORUS_SAMPLES_DIR
#define NORMTORUS_SAMPLES_DIR "samples"
#endif

namespace fixtures {

using namespace normtorus;

inline std::string samples_dir() { return NORMTORUS_SAMPLES_DIR; }

inline std::string sample_path(const std::string& rel) { return samples_dir() + "/" + rel; }

inline JobConfig load(const std::string& rel) { return parse_config(read_json_file(sample_path(rel))); }

inline JobConfig from_text(const std::string& text) { return parse_config(Json::parse(text)); }

/// Sorted .json files of a samples subdirectory (relative paths).
inline std::vector<std::string> list(const std::string& subdir) {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(sample_path(subdir)))
    if (entry.path().extension() == ".json") out.push_back(subdir + "/" + entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline GammaTable gamma_of(const std::string& json_text, std::size_t part = 0) {
  const Job job = prepare_job(from_text(json_text));
  return compute_gamma(job.parts.at(part));
}

// Klein four: K <-> <a>, K1 <-> <b>, K2 <-> <ab>.
inline const char* kKlein = R"json({"group": {"cyclic_product": [2, 2]}, "K": ["a"],
  "factors": [{"label": "K1", "generators": ["b"]}, {"label": "K2", "generators": ["a*b"]}]})json";

inline const char* kKleinDuplicate = R"json({"group": {"cyclic_product": [2, 2]}, "K": ["a"],
  "factors": [{"label": "K1", "generators": ["b"]}, {"label": "K2", "generators": ["b"]}]})json";

inline const char* kKleinSingle = R"json({"group": {"cyclic_product": [2, 2]}, "K": ["a"],
  "factors": [{"label": "K1", "generators": ["b"]}]})json";

inline const char* kZ4 = R"json({"group": {"cyclic_product": [4]}, "generator_names": ["s"], "K": [],
  "factors": [{"label": "K1", "generators": ["s^2"]}]})json";

inline const char* kZ4Squared = R"json({"group": {"cyclic_product": [4, 4]}, "K": ["a"],
  "factors": [{"label": "K1", "generators": ["a*b^3"]}, {"label": "K2", "generators": ["b"]}]})json";

inline const char* kS3 = R"json({"group": {"permutations": {"degree": 3, "generators": ["(1 2 3)", "(1 2)"]}},
  "generator_names": ["r", "s"], "K": ["r"],
  "factors": [{"label": "K1", "generators": ["s"]}, {"label": "K2", "generators": ["r*s"]}]})json";

}  // namespace fixtures
