#include "rankeval/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"
#include "rankeval/peer_rating.hpp"
#include "rankeval/pipeline.hpp"

namespace rankeval::cli {

namespace {

std::string safe_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "ranking" : out;
}

std::vector<std::filesystem::path> write_score_outputs(const ScoreRun& run,
                                                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const std::pair<const ScoreTable*, const char*> tables[] = {
      {&run.sds, "scores_sds.csv"},
      {&run.uda, "scores_uda.csv"},
      {&run.university, "scores_university.csv"},
      {&run.macro, "scores_macro.csv"},
  };
  for (const auto& [table, name] : tables) {
    written.push_back(dir / name);
    write_score_table_csv(*table, written.back());
  }
  written.push_back(dir / "eligibility.csv");
  write_eligibility_csv(run.eligibility, written.back());
  return written;
}

void log_warnings(const ScoreRun& run, std::ostream& log) {
  for (const auto* table : {&run.uda, &run.university, &run.macro}) {
    for (const auto& w : table->warnings) log << "warning: " << to_string(table->level) << ": " << w << '\n';
  }
  if (run.raw_fallback_publications > 0) {
    log << "warning: " << run.raw_fallback_publications
        << " publication(s) used raw citations (zero median and mean in a category cell)\n";
  }
}

}  // namespace

std::vector<std::filesystem::path> cmd_score(const RunConfig& config, bool emit_shares,
                                             std::ostream& log) {
  const auto corpus = load_corpus(CorpusPaths::in_directory(config.input_dir), config.window);
  log << "loaded " << corpus.publications.size() << " publications, " << corpus.staff.size()
      << " staff entries; rejected " << corpus.rejected_outside_window << " outside "
      << config.window.to_string() << ", " << corpus.rejected_no_domestic
      << " without domestic authors\n";
  const auto run = run_scoring(corpus);
  std::size_t ineligible = 0;
  for (const auto& [sds, e] : run.eligibility) ineligible += e.eligible ? 0 : 1;
  log << ineligible << " of " << run.eligibility.size() << " SDS ineligible\n";
  log_warnings(run, log);
  auto written = write_score_outputs(run, config.out_dir);
  if (emit_shares) {
    written.push_back(config.out_dir / "shares.csv");
    write_shares_csv(run.shares, written.back());
  }
  return written;
}

std::vector<std::filesystem::path> cmd_vtr(const RunConfig& config,
                                           const std::filesystem::path& outcomes_path,
                                           std::ostream& log) {
  const auto outcomes = read_peer_outcomes(outcomes_path, true);
  std::filesystem::create_directories(config.out_dir);
  const auto rated = rate_outcomes(outcomes);
  const auto pooled = rate_outcomes(pool_by_university(outcomes));
  std::vector<std::filesystem::path> written{config.out_dir / "vtr.csv",
                                             config.out_dir / "vtr_university.csv"};
  write_rated_csv(rated, written[0]);
  write_rated_csv(pooled, written[1]);
  log << "rated " << rated.size() << " (university, UDA) outcomes\n";
  return written;
}

std::vector<std::filesystem::path> cmd_rank(const RunConfig& config, const RankRequest& request,
                                            std::ostream& log) {
  std::vector<RankingList> lists;
  switch (request.source) {
    case RankSource::scores: {
      const auto table = read_score_table_csv(request.input);
      lists.push_back(ranking_from_scores(table, request.unit,
                                          request.label.empty() ? "P" : request.label));
      break;
    }
    case RankSource::indicator: {
      const auto indicators = read_indicators(request.input);
      if (!request.indicator.empty() && !indicators.contains(request.indicator)) {
        throw ValidationError(request.input.string() + ": no indicator " + request.indicator);
      }
      for (const auto& [name, ind] : indicators) {
        if (!request.indicator.empty() && name != request.indicator) continue;
        const auto label = request.label.empty() || request.indicator.empty() ? name : request.label;
        lists.push_back(build_ranking(label, ind.values, ind.direction));
      }
      break;
    }
    case RankSource::vtr: {
      std::map<std::string, double> scores;
      for (const auto& r : read_rated_csv(request.input)) {
        if (r.uda_id == request.unit) scores.emplace(r.university_id, r.rating);
      }
      lists.push_back(build_ranking(request.label.empty() ? "VTR" : request.label, scores,
                                    Direction::higher_is_better,
                                    request.unit == kWholeUniversityUnit ? "university" : "uda"));
      break;
    }
  }
  std::filesystem::create_directories(config.out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& list : lists) {
    written.push_back(config.out_dir / ("rank_" + safe_label(list.label) + ".csv"));
    write_ranking_csv(list, written.back());
    log << "ranking " << list.label << ": " << list.size() << " entities\n";
  }
  return written;
}

std::vector<std::filesystem::path> cmd_compare(const RunConfig& config,
                                               const std::vector<std::filesystem::path>& rankings,
                                               std::ostream& log) {
  if (rankings.size() < 2) throw ValidationError("compare needs at least 2 ranking files");
  std::vector<RankingList> lists;
  for (const auto& path : rankings) lists.push_back(read_ranking_csv(path));
  const auto set = compare_all(lists, config.percentages);
  for (const auto& p : set.pairs) {
    log << p.other_label << " vs " << p.reference_label << ": n=" << p.correlation.n
        << " dropped=" << p.dropped_reference.size() + p.dropped_other.size() << " rho="
        << (p.correlation.defined ? csv::format_fixed(p.correlation.rho, 4) : "n/a") << '\n';
  }
  return write_comparison(set, config.format, config.out_dir);
}

std::vector<std::filesystem::path> cmd_synth(const RunConfig& config, SynthParams params,
                                             std::ostream& log) {
  params.seed = config.seed;
  params.window = config.window;
  const auto synthetic = generate_synthetic(params);
  write_synthetic(synthetic, config.out_dir);
  log << "synthesized " << synthetic.corpus.publications.size() << " publications, "
      << synthetic.corpus.staff.size() << " staff entries, " << params.universities
      << " universities (seed " << params.seed << ")\n";
  return {config.out_dir};
}

std::vector<std::filesystem::path> cmd_report(const RunConfig& config, std::ostream& log) {
  const auto corpus = load_corpus(CorpusPaths::in_directory(config.input_dir), config.window);
  const auto run = run_scoring(corpus);
  log_warnings(run, log);
  auto written = write_score_outputs(run, config.out_dir);

  std::vector<RankingList> lists;
  lists.push_back(ranking_from_scores(run.university, kWholeUniversityUnit, "P"));
  if (!corpus.peer_outcomes.empty()) {
    std::map<std::string, double> vtr;
    for (const auto& r : rate_outcomes(pool_by_university(corpus.peer_outcomes))) {
      vtr.emplace(r.university_id, r.rating);
    }
    lists.push_back(build_ranking("VTR", vtr, Direction::higher_is_better));
  }
  for (const auto& [name, ind] : corpus.indicators) {
    lists.push_back(build_ranking(name, ind.values, ind.direction));
  }
  if (lists.size() < 2) {
    throw ValidationError("report needs peer outcomes or indicators to compare against P");
  }
  for (const auto& list : lists) {
    written.push_back(config.out_dir / ("rank_" + safe_label(list.label) + ".csv"));
    write_ranking_csv(list, written.back());
  }
  const auto set = compare_all(lists, config.percentages);
  auto report = write_comparison(set, config.format, config.out_dir);
  written.insert(written.end(), report.begin(), report.end());
  log << "compared " << lists.size() << " rankings\n";
  return written;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bibliometric productivity, peer-review ratings and ranking comparison"};
  app.set_config("--config", "", "INI/TOML file with option values ([subcommand] sections)");
  app.require_subcommand(1);
  app.name("rankeval");

  RunConfig config;
  std::string window_text = config.window.to_string();
  std::string format_text;
  bool emit_shares = false;
  std::filesystem::path outcomes_path;
  RankRequest rank_request;
  std::string source_text = "scores";
  std::vector<std::string> ranking_files;
  SynthParams synth;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--window", window_text, "Observation window, e.g. 2001-2003")
        ->capture_default_str();
    sub->add_option("--out-dir", config.out_dir, "Output directory")->capture_default_str();
    if (with_format) {
      sub->add_option("--format", format_text, "Output format: csv, json or markdown");
    }
  };

  auto* score = app.add_subcommand("score", "Compute productivity tables from a corpus");
  score->add_option("--input", config.input_dir, "Corpus directory")->required();
  score->add_flag("--emit-shares", emit_shares, "Also write per-publication credit shares");
  add_common(score, false);

  auto* vtr = app.add_subcommand("vtr", "Rate peer-review outcomes per university and UDA");
  vtr->add_option("--outcomes", outcomes_path, "peer_outcomes.csv")->required();
  add_common(vtr, false);

  auto* rank = app.add_subcommand("rank", "Build ranking lists from scores, indicators or ratings");
  rank->add_option("--source", source_text, "scores, indicator or vtr")
      ->check(CLI::IsMember({"scores", "indicator", "vtr"}))
      ->capture_default_str();
  rank->add_option("--input", rank_request.input, "Score table, indicators.csv or vtr csv")
      ->required();
  rank->add_option("--unit", rank_request.unit, "Score unit_id or VTR uda_id")
      ->capture_default_str();
  rank->add_option("--indicator", rank_request.indicator, "Indicator name (default: all)");
  rank->add_option("--label", rank_request.label, "Ranking label");
  add_common(rank, false);

  auto* compare = app.add_subcommand("compare", "Compare ranking lists");
  compare->add_option("rankings", ranking_files, "Ranking CSV files; the first is the reference")
      ->required();
  compare->add_option("--percentages", config.percentages, "Top-k percentages")
      ->delimiter(',');
  add_common(compare, true);

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--universities", synth.universities)->capture_default_str();
  synth_cmd->add_option("--udas", synth.udas)->capture_default_str();
  synth_cmd->add_option("--sds-per-uda", synth.sds_per_uda)->capture_default_str();
  synth_cmd->add_option("--categories-per-sds", synth.categories_per_sds)->capture_default_str();
  synth_cmd->add_option("--life-science-udas", synth.life_science_udas)->capture_default_str();
  synth_cmd->add_option("--staff-mean", synth.staff_mean)->capture_default_str();
  synth_cmd->add_option("--pubs-per-researcher", synth.pubs_per_researcher)->capture_default_str();
  synth_cmd->add_option("--inactive-sds-share", synth.inactive_sds_share)->capture_default_str();
  synth_cmd->add_option("--gradient", synth.gradient, "Latitude/quality correlation")
      ->capture_default_str();
  synth_cmd->add_option("--peer-noise", synth.peer_noise)->capture_default_str();
  synth_cmd->add_option("--citation-sigma", synth.citation_sigma)->capture_default_str();
  add_common(synth_cmd, false);

  auto* report = app.add_subcommand("report", "Score, rate, rank and compare in one run");
  report->add_option("--input", config.input_dir, "Corpus directory")->required();
  report->add_option("--percentages", config.percentages, "Top-k percentages")->delimiter(',');
  add_common(report, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << "rankeval\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputInvalid;
  }

  try {
    config.window = Window::parse(window_text);
    if (!format_text.empty()) {
      auto format = parse_output_format(format_text);
      if (!format) throw ValidationError("unknown format '" + format_text + "'");
      config.format = *format;
    } else if (report->parsed()) {
      config.format = OutputFormat::markdown;
    }
    for (double p : config.percentages) (void)topk_size(p, 1);

    if (score->parsed()) {
      cmd_score(config, emit_shares, out);
    } else if (vtr->parsed()) {
      cmd_vtr(config, outcomes_path, out);
    } else if (rank->parsed()) {
      rank_request.source = source_text == "scores"      ? RankSource::scores
                            : source_text == "indicator" ? RankSource::indicator
                                                         : RankSource::vtr;
      cmd_rank(config, rank_request, out);
    } else if (compare->parsed()) {
      std::vector<std::filesystem::path> paths(ranking_files.begin(), ranking_files.end());
      cmd_compare(config, paths, out);
    } else if (synth_cmd->parsed()) {
      cmd_synth(config, synth, out);
    } else if (report->parsed()) {
      cmd_report(config, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kOk;
}

}  // namespace rankeval::cli
