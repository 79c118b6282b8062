// Copyright 2026 The learnfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// learnfuzz command-line driver.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "learnfuzz.hpp"
#include "toml_lite.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

using namespace learnfuzz;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
}

// Regular files under `in` (or `in` itself), sorted by path.
std::vector<fs::path> list_inputs(const fs::path& in, bool recursive = false) {
  std::vector<fs::path> out;
  if (fs::is_regular_file(in)) return {in};
  if (!fs::is_directory(in)) throw Error(Errc::io, in.string() + " does not exist");
  auto add = [&](const fs::directory_entry& e) {
    if (e.is_regular_file() && e.path().filename() != "manifest.json") {
      out.push_back(e.path());
    }
  };
  if (recursive) {
    for (const auto& e : fs::recursive_directory_iterator(in)) add(e);
  } else {
    for (const auto& e : fs::directory_iterator(in)) add(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<int> parse_int_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

// --- extract / synth -------------------------------------------------------

struct ExtractOptions {
  std::string in, out;
  std::size_t min_len = 0;
  std::size_t max_len = 0;
};

int run_extract(const ExtractOptions& o) {
  std::vector<corpus::ObjectRecord> all;
  for (const auto& path : list_inputs(o.in, true)) {
    auto objs = corpus::extract_objects(read_file(path), path.string());
    all.insert(all.end(), objs.begin(), objs.end());
  }
  const std::size_t found = all.size();
  if (o.min_len > 0 || o.max_len > 0) {
    all = corpus::filter_by_length(std::move(all), o.min_len,
                                   o.max_len > 0 ? o.max_len : SIZE_MAX);
  }
  write_file(o.out, corpus::write_object_file(all));
  std::printf("extracted %zu objects, kept %zu -> %s\n", found, all.size(), o.out.c_str());
  return 0;
}

struct SynthOptions {
  std::size_t n = 5000;
  std::uint64_t seed = 7;
  std::string out;
};

int run_synth(const SynthOptions& o) {
  const auto objs = corpus::synthetic_corpus(o.n, o.seed);
  write_file(o.out, corpus::write_object_file(objs));
  std::printf("wrote %zu synthetic objects -> %s\n", objs.size(), o.out.c_str());
  return 0;
}

// --- train -----------------------------------------------------------------

struct TrainOptions {
  std::string corpus, out;
  std::size_t d = 64;
  int epochs = 0;
  std::string checkpoint_epochs;
  std::uint64_t seed = 42;
  bool tiny = false;
  bool paper_scale = false;
  double lr = 0.0;
  double clip = 5.0;
  std::size_t batch = 1;
  int layers = 0;
  int hidden = 0;
};

int run_train(const TrainOptions& o) {
  const auto objs = corpus::read_object_file(read_file(o.corpus), o.corpus);
  const auto set = corpus::build_windows(objs, o.d);
  charlm::TrainConfig cfg = o.tiny ? charlm::TrainConfig::tiny() : charlm::TrainConfig{};
  cfg.window_size = o.d;
  cfg.rng_seed = o.seed;
  cfg.gradient_clip = o.clip;
  cfg.batch_size = o.batch;
  if (o.lr > 0) cfg.learning_rate = o.lr;
  if (o.layers > 0) cfg.num_layers = o.layers;
  if (o.hidden > 0) cfg.hidden_size = o.hidden;
  cfg.epochs = o.epochs > 0 ? o.epochs : (o.paper_scale ? 50 : 25);
  if (!o.checkpoint_epochs.empty()) {
    cfg.checkpoint_epochs = parse_int_list(o.checkpoint_epochs);
  } else {
    const int step = o.paper_scale ? 10 : 5;
    for (int e = step; e <= cfg.epochs; e += step) cfg.checkpoint_epochs.insert(e);
    cfg.checkpoint_epochs.insert(cfg.epochs);
  }
  std::printf("%zu objects, %zu characters, %zu windows of %zu\n", objs.size(),
              set.text.size(), set.windows.size(), o.d);
  const auto cks = charlm::train(set, cfg, [&](const charlm::EpochReport& r) {
    std::printf("epoch %d loss %.6f lr %g\n", r.epoch, r.training_loss, r.learning_rate);
    std::fflush(stdout);
  });
  fs::create_directories(o.out);
  for (const auto& ck : cks) {
    const fs::path path = fs::path(o.out) / ("epoch" + std::to_string(ck.epoch) + ".bin");
    charlm::save_checkpoint(ck, path.string());
    std::printf("checkpoint %s\n", path.c_str());
  }
  return 0;
}

// --- generate --------------------------------------------------------------

struct GenerateOptions {
  std::string ckpt, mode = "sample", out;
  std::size_t n = 1000;
  std::uint64_t seed = 7;
  double tfuzz = 0.9;
  double pt = 0.9;
  std::size_t maxlen = 1500;
  bool unique = false;
};

int run_generate(const GenerateOptions& o) {
  const auto mode = sampler::parse_mode(o.mode);
  if (!mode) throw Error(Errc::invalid_config, "unknown mode " + o.mode);
  const auto ck = charlm::load_checkpoint(o.ckpt);
  sampler::GenConfig cfg;
  cfg.mode = *mode;
  cfg.t_fuzz = o.tfuzz;
  cfg.p_t = o.pt;
  cfg.max_len = o.maxlen;
  cfg.validate();

  ordered_json manifest;
  manifest["checkpoint"] = o.ckpt;
  manifest["epoch"] = ck.epoch;
  manifest["mode"] = o.mode;
  manifest["seed"] = o.seed;
  manifest["t_fuzz"] = o.tfuzz;
  manifest["p_t"] = o.pt;
  manifest["max_len"] = o.maxlen;
  manifest["objects"] = ordered_json::array();
  manifest["failures"] = ordered_json::array();

  fs::create_directories(o.out);
  std::set<std::string> seen;
  std::size_t written = 0;
  std::size_t attempt = 0;
  const std::size_t max_attempts = o.unique ? 100 * o.n : o.n;
  while (written < o.n && attempt < max_attempts) {
    cfg.rng_seed = sampler::object_seed(o.seed, attempt++);
    sampler::GeneratedObject obj;
    try {
      obj = sampler::generate(ck.params, cfg);
    } catch (const Error& e) {
      if (e.code() != Errc::non_termination) throw;
      manifest["failures"].push_back({{"seed", cfg.rng_seed}, {"error", e.what()}});
      if (!o.unique) ++written;
      continue;
    }
    if (o.unique && !seen.insert(obj.text).second) continue;
    char name[32];
    std::snprintf(name, sizeof name, "obj_%05zu.txt", written);
    write_file(fs::path(o.out) / name, obj.text);
    manifest["objects"].push_back({{"file", name},
                                   {"seed", cfg.rng_seed},
                                   {"restarts", obj.restarts},
                                   {"fuzzed_positions", obj.fuzzed_positions}});
    ++written;
  }
  write_file(fs::path(o.out) / "manifest.json", manifest.dump(2) + "\n");
  std::printf("generated %zu objects (%zu failures) -> %s\n",
              manifest["objects"].size(), manifest["failures"].size(), o.out.c_str());
  return 0;
}

// --- fuzz / hosts / assemble ----------------------------------------------

struct FuzzOptions {
  std::string in, out;
  int variants = 10;
  double fuzz_factor = 100;
  std::uint64_t seed = 3;
};

int run_fuzz(const FuzzOptions& o) {
  const auto files = list_inputs(o.in);
  std::vector<std::string> data;
  for (const auto& f : files) data.push_back(read_file(f));
  mutator::FuzzConfig cfg;
  cfg.fuzz_factor = o.fuzz_factor;
  cfg.variants = o.variants;
  cfg.rng_seed = o.seed;
  const auto variants = mutator::make_variants(data, cfg);
  fs::create_directories(o.out);
  for (std::size_t s = 0; s < files.size(); ++s) {
    for (int v = 0; v < o.variants; ++v) {
      const auto name = files[s].stem().string() + "_v" + std::to_string(v) +
                        files[s].extension().string();
      write_file(fs::path(o.out) / name, variants[s * static_cast<std::size_t>(o.variants) +
                                                  static_cast<std::size_t>(v)]);
    }
  }
  std::printf("wrote %zu variants -> %s\n", variants.size(), o.out.c_str());
  return 0;
}

int run_hosts(const std::string& out) {
  for (const auto& h : assembler::make_hosts()) {
    write_file(fs::path(out) / (h.name + ".pdf"), h.bytes);
  }
  std::printf("wrote host1.pdf host2.pdf host3.pdf -> %s\n", out.c_str());
  return 0;
}

struct AssembleOptions {
  std::string host, objects, out;
};

int run_assemble(const AssembleOptions& o) {
  const fs::path host_path(o.host);
  const auto host = assembler::HostFile::from_bytes(read_file(host_path), host_path.stem().string());
  fs::create_directories(o.out);
  std::size_t written = 0, unusable = 0;
  for (const auto& f : list_inputs(o.objects)) {
    std::string pdf;
    try {
      pdf = assembler::append_object(host, read_file(f));
    } catch (const Error& e) {
      if (e.code() != Errc::object_body_unusable) throw;
      std::fprintf(stderr, "%s: %s\n", f.c_str(), e.what());
      ++unusable;
      continue;
    }
    write_file(fs::path(o.out) / (host.name + "_" + f.stem().string() + ".pdf"), pdf);
    ++written;
  }
  std::printf("assembled %zu files (%zu unusable) -> %s\n", written, unusable, o.out.c_str());
  return 0;
}

// --- check -----------------------------------------------------------------

struct CheckOptions {
  std::string in, coverage_out;
  bool strict = true;
};

int run_check(const CheckOptions& o) {
  const std::string bytes = read_file(o.in);
  std::vector<std::string> log;
  pdf::CoverageSet coverage;
  if (bytes.starts_with("%PDF")) {
    const auto res = pdf::try_parse_host(bytes);
    coverage = res.coverage;
    if (!res.host) {
      log.push_back("PARSE-ERROR: host-malformed: " + res.error + " at offset " +
                    std::to_string(res.error_offset));
    } else {
      for (const auto& body : res.host->bodies) {
        for (const auto& obj : body.objects) {
          if (!obj.outcome.pass) {
            log.push_back("PARSE-ERROR: " + std::string(pdf::to_string(obj.outcome.error)) +
                          ": object " + std::to_string(obj.object_id) + " at offset " +
                          std::to_string(obj.offset + obj.outcome.offset) + ": " +
                          obj.outcome.message);
          } else if (!obj.header_matches) {
            log.push_back("PARSE-ERROR: header-mismatch: object " +
                          std::to_string(obj.object_id));
          }
        }
      }
    }
  } else {
    const auto r = pdf::parse_object(bytes, pdf::ParseOptions{.strict = o.strict});
    coverage = r.coverage;
    if (!r.pass) {
      log.push_back("PARSE-ERROR: " + std::string(pdf::to_string(r.error)) + " at offset " +
                    std::to_string(r.offset) + ": " + r.message);
    }
  }
  for (const auto& line : log) std::printf("%s\n", line.c_str());
  std::printf("%s\n", log.empty() ? "PASS" : "FAIL");
  std::printf("coverage %zu\n", coverage.size());
  if (!o.coverage_out.empty()) {
    ordered_json points = ordered_json::array();
    for (const auto& p : coverage.points()) {
      points.push_back({{"unit", pdf::kUnitNames[static_cast<std::size_t>(p.unit)]},
                        {"id", p.id}});
    }
    write_file(o.coverage_out, points.dump(2) + "\n");
  }
  return log.empty() ? 0 : 1;
}

// --- campaign --------------------------------------------------------------

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

int run_campaign_cmd(const std::string& config_path, const std::string& out) {
  const fs::path base = fs::path(config_path).parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  nlohmann::json root;
  try {
    root = toml_lite::parse(read_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_config, e.what());
  }
  if (!root.contains("campaign") || !root["campaign"].is_array() || root["campaign"].empty()) {
    throw Error(Errc::invalid_config, "config needs at least one [[campaign]] table");
  }

  std::vector<campaign::CampaignResult> results;
  try {
    // Top-level keys are defaults for every [[campaign]].
    nlohmann::json defaults = root;
    defaults.erase("campaign");
    for (auto entry : root["campaign"]) {
      for (const auto& [k, v] : defaults.items()) {
        if (!entry.contains(k)) entry[k] = v;
      }
      campaign::CampaignConfig cfg;
      cfg.name = get_or<std::string>(entry, "name", "campaign" + std::to_string(results.size()));
      cfg.n_objects = get_or<std::size_t>(entry, "n_objects", 500);
      cfg.rng_seed = get_or<std::uint64_t>(entry, "seed", 1);
      cfg.hosts = get_or<std::vector<int>>(entry, "hosts", {1, 2, 3});
      const auto kind = get_or<std::string>(entry, "generator", "baseline");
      if (kind == "baseline") {
        campaign::BaselineGenerator g;
        if (entry.contains("corpus")) {
          const auto path = resolve(entry["corpus"].get<std::string>());
          g.corpus = corpus::read_object_file(read_file(path), path.string());
        } else {
          g.corpus = corpus::synthetic_corpus(get_or<std::size_t>(entry, "synthetic_objects", 5000),
                                              get_or<std::uint64_t>(entry, "synthetic_seed", 7));
        }
        cfg.generator = std::move(g);
      } else if (kind == "model") {
        if (!entry.contains("checkpoint")) throw Error(Errc::invalid_config, cfg.name + ": checkpoint missing");
        const auto ck = charlm::load_checkpoint(resolve(entry["checkpoint"].get<std::string>()).string());
        campaign::ModelGenerator g;
        const auto mode = sampler::parse_mode(get_or<std::string>(entry, "mode", "sample"));
        if (!mode) throw Error(Errc::invalid_config, cfg.name + ": unknown mode");
        g.gen.mode = *mode;
        g.gen.t_fuzz = get_or<double>(entry, "tfuzz", 0.9);
        g.gen.p_t = get_or<double>(entry, "pt", 0.9);
        g.gen.max_len = get_or<std::size_t>(entry, "maxlen", 1500);
        g.epoch = ck.epoch;
        g.params = std::make_shared<const charlm::ModelParams>(ck.params);
        cfg.generator = std::move(g);
      } else {
        throw Error(Errc::invalid_config, cfg.name + ": generator must be baseline or model");
      }
      if (entry.contains("post_mutation")) {
        const auto& pm = entry["post_mutation"];
        mutator::FuzzConfig f;
        f.fuzz_factor = get_or<double>(pm, "fuzz_factor", 100.0);
        f.variants = get_or<int>(pm, "variants", 10);
        f.rng_seed = get_or<std::uint64_t>(pm, "seed", 3);
        cfg.post_mutation = f;
      }
      std::printf("running %s ...\n", cfg.name.c_str());
      std::fflush(stdout);
      results.push_back(campaign::run_campaign(cfg));
      const auto& r = results.back();
      std::printf("  %zu tests, pass rate %.4f, coverage %zu, crashes %zu\n", r.records.size(),
                  r.pass_rate, r.coverage.size(), r.crashes.size());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_config, e.what());
  }
  const auto rep = campaign::write_report(results, out);
  std::printf("\n%s", rep.table.c_str());
  std::size_t crashes = 0;
  for (const auto& r : results) crashes += r.crashes.size();
  return crashes > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learnfuzz: learn a generative model of PDF objects and fuzz with it"};
  app.require_subcommand(1);

  ExtractOptions ex;
  auto* extract = app.add_subcommand("extract", "Extract stream-free objects from PDF files");
  extract->add_option("--in", ex.in, "Input file or directory")->required();
  extract->add_option("--out", ex.out, "Output objects file")->required();
  extract->add_option("--min-len", ex.min_len, "Drop bodies shorter than this");
  extract->add_option("--max-len", ex.max_len, "Drop bodies longer than this (0: no limit)");

  SynthOptions sy;
  auto* synth = app.add_subcommand("synth", "Write the seeded synthetic training corpus");
  synth->add_option("--n", sy.n, "Number of objects");
  synth->add_option("--seed", sy.seed, "Seed");
  synth->add_option("--out", sy.out, "Output objects file")->required();

  TrainOptions tr;
  auto* train = app.add_subcommand("train", "Train the character model");
  train->add_option("--corpus", tr.corpus, "Objects file")->required();
  train->add_option("--out", tr.out, "Checkpoint directory")->required();
  train->add_option("--d", tr.d, "Training window size");
  train->add_option("--epochs", tr.epochs, "Epochs (default 25, 50 with --paper-scale)");
  train->add_option("--checkpoint-epochs", tr.checkpoint_epochs, "Comma-separated epochs");
  train->add_option("--seed", tr.seed, "Seed");
  train->add_flag("--tiny", tr.tiny, "1 layer of 32 units");
  train->add_flag("--paper-scale", tr.paper_scale, "50 epochs, checkpoints every 10");
  train->add_option("--lr", tr.lr, "Learning rate");
  train->add_option("--clip", tr.clip, "Per-tensor gradient norm clip");
  train->add_option("--batch", tr.batch, "Windows per update");
  train->add_option("--layers", tr.layers, "LSTM layers");
  train->add_option("--hidden", tr.hidden, "Units per layer");

  GenerateOptions ge;
  auto* generate = app.add_subcommand("generate", "Generate objects from a checkpoint");
  generate->add_option("--ckpt", ge.ckpt, "Checkpoint file")->required();
  generate->add_option("--mode", ge.mode, "nosample|sample|samplespace|samplefuzz");
  generate->add_option("--n", ge.n, "Number of objects");
  generate->add_option("--seed", ge.seed, "Seed");
  generate->add_option("--tfuzz", ge.tfuzz, "SampleFuzz coin threshold");
  generate->add_option("--pt", ge.pt, "SampleFuzz probability threshold");
  generate->add_option("--maxlen", ge.maxlen, "Restart after this many characters");
  generate->add_flag("--unique", ge.unique, "Drop duplicates and keep drawing");
  generate->add_option("--out", ge.out, "Output directory")->required();

  FuzzOptions fu;
  auto* fuzz = app.add_subcommand("fuzz", "Random byte fuzzing of files");
  fuzz->add_option("--in", fu.in, "Input file or directory")->required();
  fuzz->add_option("--variants", fu.variants, "Variants per input");
  fuzz->add_option("--fuzz-factor", fu.fuzz_factor, "Length / fuzz factor bytes change on average");
  fuzz->add_option("--seed", fu.seed, "Seed");
  fuzz->add_option("--out", fu.out, "Output directory")->required();

  std::string hosts_out;
  auto* hosts = app.add_subcommand("hosts", "Write the three bundled host PDFs");
  hosts->add_option("--out", hosts_out, "Output directory")->required();

  AssembleOptions as;
  auto* assemble = app.add_subcommand("assemble", "Append objects to a host PDF");
  assemble->add_option("--host", as.host, "Host PDF")->required();
  assemble->add_option("--objects", as.objects, "Object file or directory")->required();
  assemble->add_option("--out", as.out, "Output directory")->required();

  CheckOptions ch;
  auto* check = app.add_subcommand("check", "Run the reference parser on a PDF or object");
  check->add_option("--in", ch.in, "PDF file or object text")->required();
  check->add_flag("--strict,!--no-strict", ch.strict, "Require the id/generation header");
  check->add_option("--coverage-out", ch.coverage_out, "Write covered points as JSON");

  std::string config_path, campaign_out;
  auto* camp = app.add_subcommand("campaign", "Run campaigns from a TOML file");
  camp->add_option("--config", config_path, "Campaign file")->required();
  camp->add_option("--out", campaign_out, "Report directory")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*extract) return run_extract(ex);
    if (*synth) return run_synth(sy);
    if (*train) return run_train(tr);
    if (*generate) return run_generate(ge);
    if (*fuzz) return run_fuzz(fu);
    if (*hosts) return run_hosts(hosts_out);
    if (*assemble) return run_assemble(as);
    if (*check) return run_check(ch);
    if (*camp) return run_campaign_cmd(config_path, campaign_out);
  } catch (const learnfuzz::Error& e) {
    std::fprintf(stderr, "learnfuzz: %s\n", e.what());
    return 1;
  }
  return 0;
}
