// Copyright 2026 The ToneLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tonelab: command-line front end for tone distances, transcription, model
// training, tone clustering and cross-dialect analysis.
//
// Exit codes: 0 success, 1 runtime/numeric failure, 2 usage or input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tonelab/learn/model_io.hpp"
#include "tonelab/tonelab.hpp"

namespace {

using namespace tonelab;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  body(os);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void add_f0_options(CLI::App* app, pitch::F0Config& cfg) {
  app->add_option("--fmin", cfg.fmin, "Lowest F0 searched, Hz")->capture_default_str();
  app->add_option("--fmax", cfg.fmax, "Highest F0 searched, Hz")->capture_default_str();
  app->add_option("--frame-ms", cfg.frame_ms, "Analysis frame length, ms")->capture_default_str();
  app->add_option("--hop-ms", cfg.hop_ms, "Frame hop, ms")->capture_default_str();
  app->add_option("--yin-threshold", cfg.voicing_threshold, "Voicing threshold on the normalized difference")
      ->capture_default_str();
}

struct ManifestRow {
  std::string path;
  std::optional<std::string> transcription;
  std::size_t line = 0;
};

/// TSV with a header naming a `path` column and optionally `transcription`.
/// Relative audio paths resolve against the manifest's directory.
std::vector<ManifestRow> read_manifest(const std::string& file, bool need_labels) {
  std::ifstream is(file);
  if (!is) throw IoError("cannot open manifest " + file);
  const auto base = std::filesystem::path(file).parent_path();
  std::string line;
  if (!std::getline(is, line)) throw ParseError(file + ": empty manifest");
  const auto header = tonelab::detail::split(tonelab::detail::trim(line), '\t');
  std::optional<std::size_t> path_col, label_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "path") path_col = c;
    if (header[c] == "transcription") label_col = c;
  }
  if (!path_col) throw ParseError(file + ": missing column 'path'");
  if (need_labels && !label_col) throw ParseError(file + ": missing column 'transcription'");
  std::vector<ManifestRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (tonelab::detail::trim(line).empty()) continue;
    const auto cells = tonelab::detail::split(tonelab::detail::trim(line), '\t');
    if (cells.size() <= *path_col || (label_col && cells.size() <= *label_col)) {
      throw ParseError(file + ": line " + std::to_string(line_no) + ": too few columns");
    }
    ManifestRow row;
    std::filesystem::path p(std::string(tonelab::detail::trim(cells[*path_col])));
    row.path = (p.is_relative() ? base / p : p).string();
    if (label_col) row.transcription = std::string(tonelab::detail::trim(cells[*label_col]));
    row.line = line_no;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(file + ": no rows");
  return rows;
}

Json triple_json(const learn::PitchTriple& z) { return Json::array({z[0], z[1], z[2]}); }

// ---------------------------------------------------------------------------
// dist

struct DistArgs {
  std::vector<std::string> tokens;
  std::string list;
  std::string matrix;
  std::string out;
};

int run_dist(const DistArgs& a) {
  if (!a.matrix.empty()) {
    emit(a.matrix, [](std::ostream& os) { core::write_csv(os, core::tone_database()); });
  }
  if (!a.list.empty()) {
    std::ifstream is(a.list);
    if (!is) throw IoError("cannot open token list " + a.list);
    std::vector<core::Transcription> ts;
    std::string line, errors;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      const auto tok = tonelab::detail::trim(line);
      if (tok.empty()) continue;
      try {
        ts.push_back(core::parse_transcription(tok));
      } catch (const ParseError& e) {
        errors += "  line " + std::to_string(line_no) + ": " + e.what() + "\n";
      }
    }
    if (!errors.empty()) throw ParseError(a.list + ": invalid tokens\n" + errors);
    const auto m = core::build_distance_matrix(ts);
    emit(a.out, [&](std::ostream& os) { core::write_csv(os, m); });
  }
  if (!a.tokens.empty()) {
    if (a.tokens.size() != 2) throw InputError("dist: expected exactly two transcription tokens");
    const auto l1 = core::parse_transcription(a.tokens[0]);
    const auto l2 = core::parse_transcription(a.tokens[1]);
    std::cout << tonelab::detail::fixed(core::tone_distance(l1, l2), 6) << '\n';
  }
  if (a.tokens.empty() && a.list.empty() && a.matrix.empty()) {
    throw InputError("dist: give two tokens, --list FILE, or --matrix FILE");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// variance

int run_variance(const std::vector<std::string>& tokens) {
  if (tokens.size() != 2) throw InputError("variance: expected exactly two transcription tokens");
  const auto l1 = core::parse_transcription(tokens[0]);
  const auto l2 = core::parse_transcription(tokens[1]);
  std::cout << tonelab::detail::fixed(core::variance_metric(l1, l2), 4) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// transcribe

struct TranscribeArgs {
  std::string wav;
  std::string method = "f0";
  std::string model;
  double beta = learn::kDefaultBeta;
  bool json = false;
  std::string f0_csv;
  pitch::F0Config f0;
};

int run_transcribe(const TranscribeArgs& a) {
  const auto clip = pitch::read_wav(a.wav);
  const auto track = pitch::extract_f0(clip, a.f0);
  if (!a.f0_csv.empty()) emit(a.f0_csv, [&](std::ostream& os) { pitch::write_track_csv(os, track); });

  learn::PitchTriple z{};
  if (a.method == "f0") {
    z = pitch::f0_baseline_triple(track);
  } else {
    if (a.model.empty()) throw InputError("transcribe: --method model requires --model");
    const auto model = learn::load_model(a.model);
    z = learn::embed(model, pitch::contour_feature(track, model.feature_size));
  }
  const auto t = learn::decode_transcription(z, a.beta);
  if (a.json) {
    Json j;
    j["transcription"] = t.str();
    j["method"] = a.method;
    j["triple"] = triple_json(z);
    j["linearity_margin"] = learn::linearity_margin(z);
    j["beta"] = a.beta;
    j["voiced_frames"] = track.voiced_count();
    std::cout << dump(j);
  } else {
    std::cout << t.str() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string manifest;
  std::string out;
  learn::TrainConfig cfg;
  double beta = learn::kDefaultBeta;
  std::size_t k = pitch::kDefaultFeatureSize;
  pitch::F0Config f0;
};

int run_train(const TrainArgs& a) {
  const auto rows = read_manifest(a.manifest, true);
  std::vector<learn::TrainingExample> data(rows.size(), {{}, core::Transcription{3, 3}});
  tonelab::detail::parallel_for(rows.size(), [&](std::size_t i) {
    const auto& r = rows[i];
    core::Transcription label{3, 3};
    try {
      label = core::parse_transcription(*r.transcription);
    } catch (const ParseError& e) {
      throw ParseError(a.manifest + ": line " + std::to_string(r.line) + ": " + e.what());
    }
    try {
      data[i] = {pitch::contour_feature(pitch::extract_f0(pitch::read_wav(r.path), a.f0), a.k), label};
    } catch (const NumericError& e) {
      throw NumericError(r.path + ": " + e.what());
    }
  });
  const auto result = learn::train_tone_model(data, a.cfg);

  std::size_t correct = 0;
  for (const auto& [x, y] : data) correct += learn::decode_transcription(learn::embed(result.model, x), a.beta) == y;
  learn::save_model(a.out, result.model);

  Json j;
  j["examples"] = data.size();
  j["epochs"] = a.cfg.epochs;
  j["best_epoch"] = result.best_epoch;
  j["initial_loss"] = result.loss_history.front();
  j["final_loss"] = learn::training_loss(result.model, data);
  j["train_accuracy"] = static_cast<double>(correct) / static_cast<double>(data.size());
  j["model"] = a.out;
  std::cout << dump(j);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cluster-tones

struct ClusterTonesArgs {
  std::string manifest;
  std::string model;
  std::string out;
  std::string assignments;
  dialect::ToneClusteringConfig cfg;
  pitch::F0Config f0;
};

int run_cluster_tones(const ClusterTonesArgs& a) {
  const auto rows = read_manifest(a.manifest, false);
  const auto model = learn::load_model(a.model);
  std::vector<pitch::AudioClip> clips(rows.size());
  tonelab::detail::parallel_for(rows.size(), [&](std::size_t i) { clips[i] = pitch::read_wav(rows[i].path); });
  const auto result = dialect::tone_clustering_pipeline(clips, model, a.cfg, a.f0);

  Json j;
  j["n_clips"] = clips.size();
  j["n_categories"] = result.category_count();
  j["eps"] = a.cfg.eps;
  j["min_samples"] = a.cfg.min_samples;
  j["beta"] = a.cfg.beta;
  Json cats = Json::array();
  for (const auto& c : result.categories) {
    Json cj;
    cj["cluster"] = c.cluster;
    cj["representative"] = c.representative.str();
    cj["size"] = c.members.size();
    cj["members"] = c.members;
    cats.push_back(cj);
  }
  j["categories"] = cats;
  j["noise"] = result.noise;
  emit(a.out, [&](std::ostream& os) { os << dump(j); });

  if (!a.assignments.empty()) {
    emit(a.assignments, [&](std::ostream& os) {
      os << "item,path,label,decoded,z1,z2,z3\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& z = result.embeddings[i];
        os << i << ',' << rows[i].path << ',' << result.assignment.labels[i] << ',' << result.decoded[i].str();
        for (double v : z) os << ',' << tonelab::detail::fixed(v, 6);
        os << '\n';
      }
    });
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dialect-cluster

struct DialectClusterArgs {
  std::string corpus;
  std::string gold;
  std::string metric = "tone2vec";
  std::string linkage = "all";
  std::string out;
  std::string assignments;
  std::string dendrogram;
};

int run_dialect_cluster(const DialectClusterArgs& a) {
  auto corpus = dialect::load_corpus(a.corpus);
  if (!a.gold.empty()) dialect::load_gold(corpus, a.gold);
  const auto metric = dialect::parse_metric(a.metric);
  std::vector<cluster::Linkage> linkages;
  if (a.linkage == "all") {
    linkages.assign(cluster::kAllLinkages.begin(), cluster::kAllLinkages.end());
  } else {
    linkages.push_back(cluster::parse_linkage(a.linkage));
  }
  const auto report = dialect::dialect_cluster_pipeline(corpus, metric, linkages);

  Json warnings = Json::array();
  for (const auto& w : report.warnings) {
    warnings.push_back({{"first", w.first}, {"second", w.second}, {"skipped_words", w.skipped}});
  }
  Json results = Json::array();
  for (const auto& lr : report.linkages) {
    Json r;
    r["metric"] = dialect::metric_name(metric);
    r["linkage"] = cluster::linkage_code(lr.linkage);
    r["k"] = report.k;
    r["accuracy"] = lr.accuracy ? Json(*lr.accuracy) : Json(nullptr);
    r["coverage_warnings"] = warnings;
    results.push_back(r);
  }
  const Json summary = results.size() == 1 ? results.front() : results;
  emit(a.out, [&](std::ostream& os) { os << dump(summary); });

  if (!a.assignments.empty()) {
    emit(a.assignments, [&](std::ostream& os) {
      os << "item,linkage,label\n";
      for (const auto& lr : report.linkages) {
        for (std::size_t i = 0; i < report.regions.size(); ++i) {
          os << report.regions[i] << ',' << cluster::linkage_code(lr.linkage) << ',' << lr.assignment.labels[i]
             << '\n';
        }
      }
    });
  }
  if (!a.dendrogram.empty()) {
    emit(a.dendrogram, [&](std::ostream& os) {
      os << "linkage,step,first,second,height,size\n";
      for (const auto& lr : report.linkages) {
        std::ostringstream table;
        cluster::write_dendrogram_csv(table, lr.dendrogram);
        std::istringstream rows(table.str());
        std::string line;
        std::getline(rows, line);  // header
        while (std::getline(rows, line)) os << cluster::linkage_code(lr.linkage) << ',' << line << '\n';
      }
    });
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dialect-mds

struct DialectMdsArgs {
  std::string corpus;
  std::string metric = "tone2vec";
  std::size_t dims = 1;
  std::string out;
};

int run_dialect_mds(const DialectMdsArgs& a) {
  const auto corpus = dialect::load_corpus(a.corpus);
  const auto r = dialect::dialect_variance_map(corpus, dialect::parse_metric(a.metric), a.dims);
  emit(a.out, [&](std::ostream& os) { cluster::write_mds_csv(os, r); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tonelab: pitch-based tone representations, transcription and dialect analysis"};
  app.require_subcommand(1);
  app.allow_extras(false);

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Area between simulated pitch curves of transcriptions");
  dist_cmd->add_option("tokens", dist.tokens, "Two transcription tokens, e.g. 41 312");
  dist_cmd->add_option("--list", dist.list, "File of tokens (one per line); writes their distance matrix CSV");
  dist_cmd->add_option("--matrix", dist.matrix, "Write the full 150 x 150 distance database CSV to this path");
  dist_cmd->add_option("-o,--out", dist.out, "Output path for --list (default stdout)");

  std::vector<std::string> variance_tokens;
  auto* var_cmd = app.add_subcommand("variance", "Relative-pitch Variance between two transcriptions");
  var_cmd->add_option("tokens", variance_tokens, "Two transcription tokens")->required()->expected(2);

  TranscribeArgs tr;
  auto* tr_cmd = app.add_subcommand("transcribe", "Transcribe a single-syllable WAV");
  tr_cmd->add_option("wav", tr.wav, "Input WAV (PCM16 or float32)")->required();
  tr_cmd->add_option("--method", tr.method, "f0 (quadratic-fit baseline) or model")
      ->check(CLI::IsMember({"f0", "model"}))
      ->capture_default_str();
  tr_cmd->add_option("--model", tr.model, "Model JSON for --method model");
  tr_cmd->add_option("--beta", tr.beta, "Linearity threshold")->check(CLI::PositiveNumber)->capture_default_str();
  tr_cmd->add_flag("--json", tr.json, "Print JSON with the pitch triple and linearity margin");
  tr_cmd->add_option("--f0-csv", tr.f0_csv, "Also export the F0 track as CSV");
  add_f0_options(tr_cmd, tr.f0);

  TrainArgs train;
  std::uint64_t seed = 0;
  auto* train_cmd = app.add_subcommand("train", "Train the linear contour-to-transcription model");
  train_cmd->add_option("--manifest", train.manifest, "TSV with columns path, transcription")->required();
  train_cmd->add_option("-o,--out", train.out, "Model JSON output path")->required();
  train_cmd->add_option("--lr", train.cfg.lr, "Learning rate")->check(CLI::NonNegativeNumber)->capture_default_str();
  train_cmd->add_option("--epochs", train.cfg.epochs, "Full-batch iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--seed", seed, "Initialization seed")->required();
  train_cmd->add_option("--l2", train.cfg.l2, "L2 penalty on weights")->check(CLI::NonNegativeNumber)->capture_default_str();
  train_cmd->add_option("--beta", train.beta, "Linearity threshold for reported accuracy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("-K,--feature-size", train.k, "Contour feature length")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  add_f0_options(train_cmd, train.f0);

  ClusterTonesArgs ct;
  auto* ct_cmd = app.add_subcommand("cluster-tones", "Discover tone categories in a set of syllable recordings");
  ct_cmd->add_option("--manifest", ct.manifest, "TSV with a path column")->required();
  ct_cmd->add_option("--model", ct.model, "Model JSON")->required();
  ct_cmd->add_option("--eps", ct.cfg.eps, "DBSCAN radius")->check(CLI::PositiveNumber)->capture_default_str();
  ct_cmd->add_option("--min-samples", ct.cfg.min_samples, "DBSCAN core threshold")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  ct_cmd->add_option("--beta", ct.cfg.beta, "Linearity threshold")->check(CLI::PositiveNumber)->capture_default_str();
  ct_cmd->add_option("-o,--out", ct.out, "JSON report path (default stdout)");
  ct_cmd->add_option("--assignments", ct.assignments, "Per-clip CSV of cluster labels and embeddings");
  add_f0_options(ct_cmd, ct.f0);

  DialectClusterArgs dc;
  auto* dc_cmd = app.add_subcommand("dialect-cluster", "Two-way clustering of dialect regions");
  dc_cmd->add_option("--corpus", dc.corpus, "Corpus TSV (region, word_id, transcription)")->required();
  dc_cmd->add_option("--gold", dc.gold, "Gold labels TSV (region, gold_label)");
  dc_cmd->add_option("--metric", dc.metric, "tone2vec or categorical")
      ->check(CLI::IsMember({"tone2vec", "categorical"}))
      ->capture_default_str();
  dc_cmd->add_option("--linkage", dc.linkage, "sl, cl, ga, wa, uc, wc, mv or all")
      ->check(CLI::IsMember({"sl", "cl", "ga", "wa", "uc", "wc", "mv", "all"}))
      ->capture_default_str();
  dc_cmd->add_option("-o,--out", dc.out, "JSON summary path (default stdout)");
  dc_cmd->add_option("--assignments", dc.assignments, "CSV of region cluster labels");
  dc_cmd->add_option("--dendrogram", dc.dendrogram, "CSV merge tables");

  DialectMdsArgs dm;
  auto* dm_cmd = app.add_subcommand("dialect-mds", "Classical MDS of region distances (variance map)");
  dm_cmd->add_option("--corpus", dm.corpus, "Corpus TSV")->required();
  dm_cmd->add_option("--metric", dm.metric, "tone2vec or categorical")
      ->check(CLI::IsMember({"tone2vec", "categorical"}))
      ->capture_default_str();
  dm_cmd->add_option("--dims", dm.dims, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  dm_cmd->add_option("-o,--out", dm.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*dist_cmd) return run_dist(dist);
    if (*var_cmd) return run_variance(variance_tokens);
    if (*tr_cmd) return run_transcribe(tr);
    if (*train_cmd) {
      train.cfg.seed = seed;
      return run_train(train);
    }
    if (*ct_cmd) return run_cluster_tones(ct);
    if (*dc_cmd) return run_dialect_cluster(dc);
    if (*dm_cmd) return run_dialect_mds(dm);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
