/*
 * Copyright 2026 The CyberSentinel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// sentinel: command-line front end for the CyberSentinel daemon and harness.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sentinel/agent/agent.hpp"
#include "sentinel/agent/config.hpp"
#include "sentinel/core/errors.hpp"
#include "sentinel/etd/artifact.hpp"
#include "sentinel/etd/features.hpp"
#include "sentinel/harness/bench.hpp"
#include "sentinel/harness/eval.hpp"
#include "sentinel/harness/generators.hpp"
#include "sentinel/retrain/retrain.hpp"
#include "sentinel/retrain/store.hpp"
#include "sentinel/ssh/brute_force.hpp"
#include "sentinel/ssh/parser.hpp"

namespace {

using namespace sentinel;
using ojson = nlohmann::ordered_json;

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

void emit(const ojson& j) { std::cout << j.dump() << '\n'; }

int fail(const std::string& msg, int code = 1) {
  emit({{"error", msg}});
  return code;
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return lines;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out << text;
}

harness::Scenario scenario_from(const std::string& path,
                                std::optional<std::uint64_t> seed) {
  harness::Scenario s = path.empty() ? harness::Scenario{}
                                     : harness::load_scenario(path);
  if (seed) s.seed = *seed;
  return s;
}

// Detection or label file: {"keys": [...]}, {"labels"|"detections": [...]},
// or NDJSON events keyed by IP (URL for phishing alerts).
struct KeyedInput {
  std::optional<std::set<std::string>> keys;
  std::optional<std::vector<bool>> flags;
};

KeyedInput read_keyed(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  KeyedInput out;
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object() && !doc.contains("event_type")) {
    if (doc.contains("keys")) {
      out.keys = doc["keys"].get<std::set<std::string>>();
      return out;
    }
    for (const char* k : {"labels", "detections"}) {
      if (doc.contains(k)) {
        std::vector<bool> v;
        for (const auto& x : doc[k]) v.push_back(x.is_boolean() ? x.get<bool>() : x.get<int>() != 0);
        out.flags = std::move(v);
        return out;
      }
    }
    throw ParseError(p.string() + ": expected keys, labels or detections");
  }
  std::set<std::string> keys;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty()) continue;
    SecurityEvent e = deserialize_event(line);
    std::visit(
        [&](const auto& payload) {
          using T = std::decay_t<decltype(payload)>;
          if constexpr (std::is_same_v<T, PhishingAlert>) keys.insert(payload.url);
          else keys.insert(to_string(payload.ip));
        },
        e.payload);
  }
  out.keys = std::move(keys);
  return out;
}

ojson artifact_summary(const etd::EtdModelArtifact& a) {
  return {{"version", a.version},
          {"trained_at", format_iso8601(a.trained_at)},
          {"training_rows", a.training_rows},
          {"features", a.feature_names},
          {"tau", a.gaussian.tau},
          {"iforest_threshold", a.forest.threshold}};
}

retrain::RetrainConfig retrain_config_from(const std::string& config_path) {
  if (config_path.empty()) return {};
  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open " + config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return agent::parse_config(ss.str()).retrain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CyberSentinel security monitoring agent"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run the monitoring daemon");
  std::string run_config;
  run->add_option("--config", run_config, "Config file (or CYBERSENTINEL_CONFIG)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate synthetic data");
  std::string gen_kind, gen_scenario, gen_log_out, gen_labels_out, gen_csv_out,
      gen_feed_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("kind", gen_kind, "ssh, etd or urls")
      ->required()
      ->check(CLI::IsMember({"ssh", "etd", "urls"}));
  gen->add_option("--scenario", gen_scenario, "Scenario JSON file");
  gen->add_option("--seed", gen_seed, "Override the scenario seed");
  gen->add_option("--log-out", gen_log_out, "ssh: write raw log lines here");
  gen->add_option("--labels-out", gen_labels_out, "Write ground truth here");
  gen->add_option("--csv-out", gen_csv_out, "etd: write the dataset CSV here");
  gen->add_option("--feed-out", gen_feed_out, "urls: write an NDJSON URL feed here");

  // bench
  auto* bench = app.add_subcommand("bench", "Throughput and latency benchmark");
  std::string bench_target;
  harness::BenchOptions bench_opts;
  bench->add_option("target", bench_target, "ssh_parse, phish_eval or etd_score")->required();
  bench->add_option("-n", bench_opts.n, "Measured items");
  bench->add_option("--seed", bench_opts.seed);
  bench->add_option("--blacklist-size", bench_opts.blacklist_size);
  bench->add_option("--workers", bench_opts.workers);

  // eval
  auto* eval = app.add_subcommand("eval", "Precision/recall/F1 of detections");
  std::string eval_det, eval_labels;
  eval->add_option("--detections", eval_det)->required();
  eval->add_option("--labels", eval_labels)->required();

  // parse
  auto* parse = app.add_subcommand("parse", "Parse an auth log and run brute-force detection");
  std::string parse_file;
  int parse_year = 0;
  ssh::BruteForceConfig parse_bf;
  parse->add_option("logfile", parse_file)->required();
  parse->add_option("--year", parse_year, "Year for syslog timestamps");
  parse->add_option("--threshold", parse_bf.threshold);
  parse->add_option("--window", parse_bf.window_secs);
  parse->add_option("--poll", parse_bf.poll_secs);

  // score-url
  auto* score = app.add_subcommand("score-url", "Score one URL for phishing");
  std::string score_url, score_config, score_blacklist;
  score->add_option("url", score_url)->required();
  score->add_option("--config", score_config);
  score->add_option("--blacklist", score_blacklist);

  // train
  auto* train = app.add_subcommand("train", "Train an ETD model from a CSV");
  std::string train_data, train_config, train_dir = "models";
  train->add_option("--data", train_data)->required();
  train->add_option("--config", train_config);
  train->add_option("--model-dir", train_dir);

  // retrain
  auto* rt = app.add_subcommand("retrain", "Run one retrain-and-validate cycle");
  std::string rt_data, rt_log, rt_config, rt_dir = "models", rt_now;
  int rt_year = 0;
  rt->add_option("--data", rt_data, "CSV with a leading timestamp column");
  rt->add_option("--log", rt_log, "Auth log to extract rows from");
  rt->add_option("--year", rt_year, "Year for syslog timestamps in --log");
  rt->add_option("--config", rt_config);
  rt->add_option("--model-dir", rt_dir);
  rt->add_option("--now", rt_now, "ISO-8601 instant (default: latest row)");

  // validate
  auto* val = app.add_subcommand("validate", "Verify a model artifact");
  std::string val_model;
  val->add_option("--model", val_model)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (run_config.empty()) {
        if (const char* env = std::getenv("CYBERSENTINEL_CONFIG")) run_config = env;
      }
      if (run_config.empty()) return fail("no config: pass --config or set CYBERSENTINEL_CONFIG");
      agent::AgentConfig cfg;
      try {
        cfg = agent::load_config(run_config);
        agent::validate(cfg);
      } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
      }
      std::signal(SIGTERM, on_signal);
      std::signal(SIGINT, on_signal);
      try {
        return agent::run_agent(cfg, g_stop);
      } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
      } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << '\n';
        return 2;
      }
    }

    if (*gen) {
      harness::Scenario s = scenario_from(gen_scenario, gen_seed);
      if (gen_kind == "ssh") {
        auto logs = harness::gen_ssh_logs(s);
        std::vector<std::string> ips;
        for (auto ip : logs.brute_force_ips) ips.push_back(to_string(ip));
        ojson labels = {{"keys", ips}};
        if (!gen_log_out.empty()) {
          std::string text;
          for (const auto& l : logs.lines) text += l + '\n';
          write_text(gen_log_out, text);
        }
        if (!gen_labels_out.empty()) write_text(gen_labels_out, labels.dump() + '\n');
        emit({{"kind", "ssh"}, {"seed", s.seed}, {"lines", logs.lines}, {"labels", labels}});
      } else if (gen_kind == "etd") {
        auto stream = harness::gen_etd_stream(s);
        ojson labels = {{"labels", stream.labels}};
        if (!gen_csv_out.empty()) {
          std::ofstream out(gen_csv_out, std::ios::trunc);
          if (!out) throw IoError("cannot write " + gen_csv_out);
          etd::write_dataset_csv(out, stream.rows, stream.timestamps);
        }
        if (!gen_labels_out.empty()) write_text(gen_labels_out, labels.dump() + '\n');
        std::size_t anomalies = std::count(stream.labels.begin(), stream.labels.end(), true);
        emit({{"kind", "etd"}, {"seed", s.seed}, {"rows", stream.rows.size()},
              {"anomalies", anomalies}, {"labels", stream.labels}});
      } else {
        auto urls = harness::gen_urls(s);
        ojson arr = ojson::array();
        std::string feed;
        std::vector<std::string> phishing;
        for (const auto& u : urls) {
          arr.push_back({{"url", u.url}, {"phishing", u.phishing}});
          feed += ojson({{"url", u.url}}).dump() + '\n';
          if (u.phishing) phishing.push_back(u.url);
        }
        if (!gen_feed_out.empty()) write_text(gen_feed_out, feed);
        if (!gen_labels_out.empty()) {
          write_text(gen_labels_out, ojson({{"keys", phishing}}).dump() + '\n');
        }
        emit({{"kind", "urls"}, {"seed", s.seed}, {"urls", arr}});
      }
      return 0;
    }

    if (*bench) {
      auto target = harness::parse_bench_target(bench_target);
      auto report = harness::run_bench(target, bench_opts);
      ojson j = ojson::parse(report.to_json());
      j["target"] = std::string(harness::to_string(target));
      j["workers"] = bench_opts.workers;
      emit(j);
      return 0;
    }

    if (*eval) {
      KeyedInput det = read_keyed(eval_det);
      KeyedInput lab = read_keyed(eval_labels);
      harness::EvalReport r;
      if (det.flags && lab.flags) r = harness::evaluate(*det.flags, *lab.flags);
      else if (det.keys && lab.keys) r = harness::evaluate(*det.keys, *lab.keys);
      else return fail("detections and labels must use the same keying");
      emit(ojson::parse(r.to_json()));
      return 0;
    }

    if (*parse) {
      auto lines = read_lines(parse_file);
      parse_bf.validate();
      int year = parse_year != 0 ? parse_year : current_year();
      auto result = ssh::scan_batch(lines, parse_bf, year);
      ojson events = ojson::array();
      for (const auto& e : result.events) events.push_back(ojson::parse(serialize_event(e)));
      emit({{"lines", lines.size()},
            {"records", result.records.size()},
            {"skipped", result.skipped},
            {"ipv6_skipped", result.ipv6_skipped},
            {"out_of_order", result.out_of_order},
            {"events", events}});
      return 0;
    }

    if (*score) {
      phishing::PhishConfig pc;
      std::optional<std::filesystem::path> bl_path;
      if (!score_config.empty()) {
        std::ifstream in(score_config);
        if (!in) throw IoError("cannot open " + score_config);
        std::stringstream ss;
        ss << in.rdbuf();
        auto cfg = agent::parse_config(ss.str());
        pc = cfg.phish;
        bl_path = cfg.blacklist_path;
      }
      if (!score_blacklist.empty()) bl_path = score_blacklist;  // overrides config
      phishing::Blacklist bl;
      if (bl_path) bl = phishing::Blacklist::Load(*bl_path);
      phishing::PhishDetector det(pc, std::move(bl));
      auto ev = det.evaluate(score_url, Timestamp::Now());
      if (!ev.ok()) return fail(ev.error);
      emit({{"url", ev.verdict->url},
            {"score", ev.verdict->score},
            {"detection_method", std::string(to_string(ev.verdict->method))},
            {"flagged", ev.alert.has_value()},
            {"triggered", ev.verdict->triggered}});
      return 0;
    }

    if (*train) {
      auto rc = retrain_config_from(train_config);
      etd::TrainConfig tc = rc.train;
      tc.quantile = rc.quantile;
      tc.window_days = rc.window_days;
      auto ds = etd::read_dataset_csv(std::filesystem::path(train_data));
      auto a = etd::train_artifact(ds.rows, tc, Timestamp::Now());
      auto path = retrain::persist_artifact(a, train_dir);
      retrain::set_current(train_dir, a.version);
      ojson j = artifact_summary(a);
      j["path"] = path.string();
      emit(j);
      return 0;
    }

    if (*rt) {
      if (rt_data.empty() == rt_log.empty()) return fail("pass exactly one of --data or --log");
      auto rc = retrain_config_from(rt_config);
      std::vector<retrain::TimedRow> rows;
      if (!rt_data.empty()) {
        auto ds = etd::read_dataset_csv(std::filesystem::path(rt_data));
        if (ds.timestamps.empty()) return fail(rt_data + ": retrain needs a leading timestamp column");
        for (std::size_t i = 0; i < ds.rows.size(); ++i) rows.push_back({ds.timestamps[i], ds.rows[i]});
      } else {
        int year = rt_year != 0 ? rt_year : current_year();
        auto scan = ssh::scan_batch(read_lines(rt_log), ssh::BruteForceConfig{}, year);
        etd::GeoTable geo;
        auto feats = etd::extract_features(scan.records, geo, 3600);
        for (std::size_t i = 0; i < feats.size(); ++i) rows.push_back({scan.records[i].timestamp, feats[i]});
      }
      if (rows.empty()) return fail("retrain aborted: no rows");
      Timestamp now = rt_now.empty()
                          ? std::max_element(rows.begin(), rows.end(),
                                             [](const auto& a, const auto& b) {
                                               return a.timestamp < b.timestamp;
                                             })->timestamp
                          : parse_iso8601(rt_now);
      auto window = retrain::select_window(rows, now, rc.window_days);
      Timestamp trained_at = Timestamp::Now();
      std::optional<etd::EtdModelArtifact> current;
      try {
        current = retrain::load_current(rt_dir);
      } catch (const Error&) {
      }
      if (current && current->trained_at >= trained_at) trained_at = current->trained_at + 1;
      auto outcome = retrain::retrain(window, rc, trained_at);
      const auto& rep = outcome.report;
      if (rep.accepted) {
        retrain::persist_artifact(outcome.candidate, rt_dir);
        retrain::set_current(rt_dir, outcome.candidate.version);
      }
      emit({{"accepted", rep.accepted},
            {"candidate_version", rep.candidate_version},
            {"training_rows", rep.training_rows},
            {"holdout_rows", rep.holdout_rows},
            {"holdout_flagged", rep.holdout_flagged},
            {"holdout_flag_rate", rep.holdout_flag_rate},
            {"max_flag_rate", rep.max_flag_rate},
            {"current", retrain::read_current(rt_dir).value_or("")}});
      return 0;
    }

    if (*val) {
      try {
        auto a = retrain::load_artifact(val_model);
        ojson j = artifact_summary(a);
        j["valid"] = true;
        emit(j);
        return 0;
      } catch (const CorruptArtifactError& e) {
        emit({{"valid", false}, {"error", e.what()}});
        return 1;
      }
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 0;
}
