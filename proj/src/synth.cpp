#include "rankeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"

namespace rankeval {

namespace {

// Samplers built directly on the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [lo, hi].
  int between(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda > 60.0) {
      return std::max(0, static_cast<int>(std::lround(lambda + std::sqrt(lambda) * normal())));
    }
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = uniform();
    while (p > limit) {
      ++k;
      p *= uniform();
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

std::string padded(const char* prefix, int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*d", prefix, width, value);
  return buf;
}

struct Researcher {
  std::string id;
  std::string university;
  std::string sds;
  double years = 0.0;
  bool active = true;
};

}  // namespace

void SynthParams::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ValidationError("synth: " + what);
  };
  require(window.length() >= 1, "window must span at least one year");
  require(universities >= 1 && universities <= 100000, "universities must be in [1, 100000]");
  require(udas >= 1 && udas <= 99, "udas must be in [1, 99]");
  require(sds_per_uda >= 1 && sds_per_uda <= 99, "sds_per_uda must be in [1, 99]");
  require(categories_per_sds >= 1 && categories_per_sds <= 9, "categories_per_sds must be in [1, 9]");
  require(life_science_udas >= 0 && life_science_udas <= udas, "life_science_udas must be in [0, udas]");
  require(staff_mean > 0.0 && staff_mean <= 1000.0, "staff_mean must be in (0, 1000]");
  require(pubs_per_researcher >= 0.0 && pubs_per_researcher <= 100.0,
          "pubs_per_researcher must be in [0, 100]");
  require(inactive_sds_share >= 0.0 && inactive_sds_share <= 1.0,
          "inactive_sds_share must be in [0, 1]");
  require(gradient >= -1.0 && gradient <= 1.0, "gradient must be in [-1, 1]");
  require(peer_noise >= 0.0 && std::isfinite(peer_noise), "peer_noise must be >= 0");
  require(citation_sigma > 0.0 && citation_sigma <= 5.0, "citation_sigma must be in (0, 5]");
  require(max_authors >= 1 && max_authors <= 1000, "max_authors must be in [1, 1000]");
}

SyntheticCorpus generate_synthetic(const SynthParams& params) {
  params.validate();
  Rng rng(params.seed);
  SyntheticCorpus out;
  Corpus& corpus = out.corpus;
  corpus.window = params.window;
  const int years = params.window.length();

  // Universities, latent quality and location/economy indicators.
  std::vector<std::string> universities;
  IndicatorTable lat{"LAT", Direction::higher_is_better, {}};
  IndicatorTable expenditure{"EXP", Direction::higher_is_better, {}};
  IndicatorTable gdp{"GDP", Direction::higher_is_better, {}};
  IndicatorTable ni{"NI", Direction::higher_is_better, {}};
  const double g = params.gradient;
  const double g_rest = std::sqrt(std::max(0.0, 1.0 - g * g));
  for (int u = 1; u <= params.universities; ++u) {
    const auto id = padded("UNI", u, 3);
    universities.push_back(id);
    const double q = rng.normal();
    out.latent_quality.emplace(id, q);
    lat.values.emplace(id, 41.5 + 2.5 * (g * q + g_rest * rng.normal()));
    expenditure.values.emplace(id, 100.0 * std::exp(0.3 * (0.3 * q + 0.95 * rng.normal())));
    gdp.values.emplace(id, 20000.0 * std::exp(0.2 * (0.35 * q + 0.94 * rng.normal())));
    ni.values.emplace(id, 1.0 + 0.3 * (0.75 * q + 0.66 * rng.normal()));
  }
  for (auto* ind : {&lat, &expenditure, &gdp, &ni}) corpus.indicators.emplace(ind->name, *ind);

  // Taxonomy: UDAs pair up into macro units; each SDS owns a few categories.
  std::vector<std::string> sds_list;
  std::map<std::string, std::vector<std::string>> sds_categories;
  std::map<std::string, double> category_base;
  for (int a = 1; a <= params.udas; ++a) {
    const auto uda = padded("UDA", a, 2);
    const bool life = a <= params.life_science_udas;
    corpus.taxonomy.uda_to_macro.emplace(uda, padded("MACRO", (a + 1) / 2, 2));
    for (int s = 1; s <= params.sds_per_uda; ++s) {
      const auto sds = uda + "-S" + std::to_string(s);
      sds_list.push_back(sds);
      corpus.taxonomy.sds_to_uda.emplace(sds, uda);
      if (life) corpus.taxonomy.life_science_sds.insert(sds);
      for (int c = 1; c <= params.categories_per_sds; ++c) {
        const auto cat = "CAT-" + sds + "-" + std::to_string(c);
        sds_categories[sds].push_back(cat);
        category_base.emplace(cat, 1.5 * std::exp(0.8 * rng.normal()));
        if (life) corpus.taxonomy.life_science_categories.insert(cat);
      }
    }
  }

  // Roster.
  std::vector<Researcher> researchers;
  std::map<std::string, std::vector<std::size_t>> by_university;
  std::set<std::string> inactive_sds;
  for (const auto& sds : sds_list) {
    if (rng.bernoulli(params.inactive_sds_share)) inactive_sds.insert(sds);
  }
  int next_researcher = 1;
  for (const auto& uni : universities) {
    for (const auto& sds : sds_list) {
      const int headcount = rng.poisson(params.staff_mean);
      const double p_active = inactive_sds.contains(sds) ? 0.25 : 0.9;
      for (int h = 0; h < headcount; ++h) {
        Researcher r;
        r.id = padded("R", next_researcher++, 6);
        r.university = uni;
        r.sds = sds;
        r.years = (years == 1 || rng.bernoulli(0.85)) ? years : rng.between(1, years - 1);
        r.active = rng.bernoulli(p_active);
        by_university[uni].push_back(researchers.size());
        researchers.push_back(r);
        corpus.staff.push_back({r.id, r.university, r.sds, r.years});
      }
    }
  }

  // Publications: each active researcher leads a Poisson number of papers.
  int next_pub = 1;
  for (const auto& lead : researchers) {
    if (!lead.active) continue;
    const double q = out.latent_quality.at(lead.university);
    const double rate =
        params.pubs_per_researcher * std::exp(0.25 * q) * lead.years / static_cast<double>(years);
    const int count = rng.poisson(rate);
    for (int p = 0; p < count; ++p) {
      PublicationRecord pub;
      pub.pub_id = padded("P", next_pub++, 7);
      pub.year = params.window.first_year + rng.between(0, years - 1);
      const double kind = rng.uniform();
      pub.doc_type = kind < 0.8 ? DocType::article : kind < 0.9 ? DocType::review : DocType::proceedings;

      const auto& cats = sds_categories.at(lead.sds);
      const auto& primary = cats[static_cast<std::size_t>(rng.between(0, static_cast<int>(cats.size()) - 1))];
      double base = category_base.at(primary);
      if (cats.size() > 1 && rng.bernoulli(0.2)) {
        std::string second = primary;
        while (second == primary) {
          second = cats[static_cast<std::size_t>(rng.between(0, static_cast<int>(cats.size()) - 1))];
        }
        pub.categories = {{primary, 0.5}, {second, 0.5}};
        base = 0.5 * (base + category_base.at(second));
      } else {
        pub.categories = {{primary, 1.0}};
      }
      const double mu = std::log(base) + 0.4 * q;
      pub.citations = std::max<std::int64_t>(
          0, static_cast<std::int64_t>(std::floor(std::exp(mu + params.citation_sigma * rng.normal()) - 0.5)));

      const int n = std::min(params.max_authors, 1 + rng.poisson(3.0));
      pub.total_author_count = n;
      const bool life = corpus.taxonomy.life_science_sds.contains(lead.sds);
      int lead_pos = 1;
      if (n > 1) {
        const double r = rng.uniform();
        lead_pos = (life && r < 0.5) ? 1 : (life && r < 0.8) ? n : rng.between(1, n);
      }
      std::set<std::string> on_byline{lead.id};
      for (int pos = 1; pos <= n; ++pos) {
        AuthorSlot slot;
        slot.position = pos;
        const Researcher* who = nullptr;
        if (pos == lead_pos) {
          who = &lead;
        } else if (rng.bernoulli(0.6)) {
          const auto& uni = rng.bernoulli(0.7)
                                ? lead.university
                                : universities[static_cast<std::size_t>(
                                      rng.between(0, params.universities - 1))];
          const auto& pool = by_university[uni];
          if (!pool.empty()) {
            const auto& cand = researchers[pool[static_cast<std::size_t>(
                rng.between(0, static_cast<int>(pool.size()) - 1))]];
            if (on_byline.insert(cand.id).second) who = &cand;
          }
        }
        if (who != nullptr) {
          slot.is_domestic_academic = true;
          slot.university_id = who->university;
          slot.sds_id = who->sds;
          slot.researcher_id = who->id;
          pub.authors.push_back(std::move(slot));
        } else if (rng.bernoulli(0.5)) {
          pub.authors.push_back(std::move(slot));  // listed external co-author
        }
      }
      corpus.publications.push_back(std::move(pub));
    }
  }

  // Peer review: one output per four researchers in each (university, UDA);
  // each output's grade follows latent quality plus noise.
  std::map<std::pair<std::string, std::string>, int> uda_staff;
  for (const auto& r : researchers) ++uda_staff[{r.university, corpus.taxonomy.sds_to_uda.at(r.sds)}];
  for (const auto& [key, headcount] : uda_staff) {
    PeerOutcome o;
    o.university_id = key.first;
    o.uda_id = key.second;
    o.total = std::max(1, static_cast<int>(std::lround(headcount / 4.0)));
    const double q = out.latent_quality.at(key.first);
    for (std::int64_t k = 0; k < o.total; ++k) {
      const double score = q + params.peer_noise * rng.normal();
      if (score > 0.5) {
        ++o.excellent;
      } else if (score > -0.3) {
        ++o.good;
      } else if (score > -1.0) {
        ++o.acceptable;
      } else {
        ++o.limited;
      }
    }
    corpus.peer_outcomes.push_back(o);
  }

  corpus = validate_corpus(std::move(corpus));
  return out;
}

void write_synthetic(const SyntheticCorpus& synthetic, const std::filesystem::path& dir) {
  write_corpus(synthetic.corpus, dir);
  std::ofstream out(dir / "latent_quality.csv", std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir / "latent_quality.csv").string());
  csv::write_row(out, {"university_id", "quality"});
  for (const auto& [uni, q] : synthetic.latent_quality) {
    csv::write_row(out, {uni, csv::format_real(q)});
  }
}

}  // namespace rankeval
