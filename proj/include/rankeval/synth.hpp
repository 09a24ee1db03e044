#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "rankeval/corpus.hpp"

namespace rankeval {

struct SynthParams {
  std::uint64_t seed = 42;
  Window window{2001, 2003};
  int universities = 40;
  int udas = 4;
  int sds_per_uda = 3;
  int categories_per_sds = 2;
  int life_science_udas = 1;      // the first UDAs are life science
  double staff_mean = 4.0;        // mean headcount per (university, sds)
  double pubs_per_researcher = 3.0;
  double inactive_sds_share = 0.1;  // SDSs where most staff never publish
  double gradient = 0.6;          // correlation of latitude with latent quality, in [-1, 1]
  double peer_noise = 0.5;        // spread of peer grades around latent quality, >= 0
  double citation_sigma = 1.0;    // log-scale spread of the citation distribution, > 0
  int max_authors = 30;

  // Throws ValidationError on out-of-range parameters.
  void validate() const;
};

struct SyntheticCorpus {
  Corpus corpus;
  std::map<std::string, double> latent_quality;  // university_id -> quality
};

// Same parameters and seed give an identical corpus. Sampling uses only the
// raw 64-bit engine output, never the standard distribution objects.
SyntheticCorpus generate_synthetic(const SynthParams& params);

// write_corpus plus latent_quality.csv (university_id,quality).
void write_synthetic(const SyntheticCorpus& synthetic, const std::filesystem::path& dir);

}  // namespace rankeval
