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

#include "sentinel/agent/agent.hpp"

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "sentinel/core/errors.hpp"
#include "sentinel/retrain/retrain.hpp"
#include "sentinel/retrain/store.hpp"
#include "sentinel/ssh/parser.hpp"

namespace sentinel::agent {
namespace {

using ojson = nlohmann::ordered_json;
using namespace std::chrono_literals;

constexpr std::size_t kMaxHistory = 2'000'000;

std::ostream& or_default(std::ostream* s, std::ostream& fallback) {
  return s != nullptr ? *s : fallback;
}

}  // namespace

Agent::Agent(AgentConfig cfg, AgentDeps deps)
    : cfg_(std::move(cfg)),
      deps_(std::move(deps)),
      log_(or_default(deps_.log_stream, std::cerr)),
      executor_(deps_.executor != nullptr ? deps_.executor : &shell_),
      year_(cfg_.ssh_year),
      dead_letters_(std::make_unique<DeadLetterLog>(cfg_.dead_letter_path)),
      events_(cfg_.queue_capacity,
              [this](SecurityEvent&& e) {
                dead_letters_->record("queue_overflow", "", serialize_event(e));
              }),
      records_(cfg_.queue_capacity),
      geo_(cfg_.centroid),
      extractor_(&geo_, cfg_.features) {
  std::ostream& out = or_default(deps_.stdout_stream, std::cout);
  for (const auto& sc : cfg_.sinks) {
    sinks_.push_back(make_sink(sc, out));
    sink_ptrs_.push_back(sinks_.back().get());
  }
  for (const auto& spec : cfg_.ssh_sources) {
    auto task = std::make_unique<SshTask>(SshTask{
        spec, ssh::make_line_source(spec), ssh::BruteForceDetector(cfg_.ssh)});
    ssh_tasks_.push_back(std::move(task));
  }
  phishing::Blacklist bl;
  if (cfg_.blacklist_path) bl = phishing::Blacklist::Load(*cfg_.blacklist_path);
  phish_ = std::make_unique<phishing::PhishDetector>(cfg_.phish, std::move(bl));
  if (cfg_.url_feed) url_feed_ = std::make_unique<ssh::FileTailer>(*cfg_.url_feed);
  if (cfg_.geo_path) geo_ = etd::GeoTable::Load(*cfg_.geo_path, cfg_.centroid);
  if (cfg_.etd_enabled) {
    trigger_.emplace(retrain::Schedule::Parse(cfg_.retrain.schedule), now());
  }
}

Agent::~Agent() { stop(); }

Timestamp Agent::now() const {
  return deps_.clock ? deps_.clock() : Timestamp::Now();
}

void Agent::hook(std::string_view task) {
  if (deps_.before_iteration) deps_.before_iteration(task);
}

void Agent::sleep_for(std::stop_token stop, std::chrono::milliseconds d) {
  std::mutex mu;
  std::condition_variable_any cv;
  std::unique_lock lock(mu);
  cv.wait_for(lock, stop, d, [] { return false; });
}

void Agent::load_initial_model() {
  if (!cfg_.etd_enabled) return;
  try {
    if (auto current = retrain::load_current(cfg_.model_dir)) {
      log_.info("model_loaded", {{"version", current->version},
                                 {"dir", cfg_.model_dir.string()}});
      registry_.swap(
          std::make_shared<const etd::EtdModelArtifact>(std::move(*current)));
      return;
    }
  } catch (const std::exception& e) {
    log_.error("model_load_failed", {{"error", e.what()}});
  }
  if (!std::filesystem::exists(cfg_.data_path)) {
    log_.warn("no_model", {{"data_path", cfg_.data_path.string()}});
    return;
  }
  try {
    etd::Dataset ds = etd::read_dataset_csv(cfg_.data_path);
    etd::TrainConfig tc = cfg_.retrain.train;
    tc.quantile = cfg_.retrain.quantile;
    tc.window_days = cfg_.retrain.window_days;
    auto a = etd::train_artifact(ds.rows, tc, now());
    retrain::persist_artifact(a, cfg_.model_dir);
    retrain::set_current(cfg_.model_dir, a.version);
    log_.info("model_trained", {{"version", a.version},
                                {"rows", a.training_rows}});
    registry_.swap(std::make_shared<const etd::EtdModelArtifact>(std::move(a)));
  } catch (const std::exception& e) {
    log_.error("initial_training_failed", {{"error", e.what()}});
  }
}

void Agent::start() {
  if (running_.exchange(true)) return;
  load_initial_model();
  producers_stop_ = std::stop_source();
  dispatcher_stop_ = std::stop_source();
  for (auto& task : ssh_tasks_) {
    SshTask* t = task.get();
    launch("ssh:" + t->name, [this, t](std::stop_token s) { run_ssh(*t, s); },
           producers_stop_.get_token(), producers_);
  }
  if (url_feed_) {
    launch("url_feed", [this](std::stop_token s) { run_url_feed(s); },
           producers_stop_.get_token(), producers_);
  }
  if (cfg_.etd_enabled) {
    launch("etd", [this](std::stop_token s) { run_etd(s); },
           producers_stop_.get_token(), producers_);
    launch("retrain", [this](std::stop_token s) { run_retrain(s); },
           producers_stop_.get_token(), producers_);
  }
  launch("dispatcher", [this](std::stop_token s) { run_dispatcher(s); },
         dispatcher_stop_.get_token(), dispatcher_);
  log_.info("agent_started", {{"ssh_sources", cfg_.ssh_sources.size()},
                              {"sinks", sinks_.size()}});
}

void Agent::stop() {
  if (!running_.exchange(false)) return;
  producers_stop_.request_stop();
  producers_.clear();  // joins
  dispatcher_stop_.request_stop();
  dispatcher_.clear();
  log_.info("agent_stopped", {{"events_dispatched", dispatched_.load()},
                              {"dead_letters", dead_letters_->count()}});
}

void Agent::launch(std::string name, std::function<void(std::stop_token)> body,
                   std::stop_token stop, std::vector<std::jthread>& into) {
  into.emplace_back([this, name = std::move(name), body = std::move(body),
                     stop](std::stop_token) { supervise(name, body, stop); });
}

void Agent::supervise(const std::string& name,
                      const std::function<void(std::stop_token)>& body,
                      std::stop_token stop) {
  auto backoff = cfg_.restart_initial;
  while (true) {
    try {
      body(stop);
      return;
    } catch (const std::exception& e) {
      {
        std::lock_guard lock(restarts_mu_);
        ++restarts_[name];
      }
      log_.error("task_failed", {{"task", name},
                                 {"error", e.what()},
                                 {"restart_in_ms", backoff.count()}});
    }
    if (stop.stop_requested()) {
      // Still give the task a chance to flush its state.
      try {
        body(stop);
      } catch (const std::exception& e) {
        log_.error("task_failed", {{"task", name}, {"error", e.what()}});
      }
      return;
    }
    sleep_for(stop, backoff);
    backoff = std::min(backoff * 2, cfg_.restart_max);
  }
}

void Agent::emit(SecurityEvent e) {
  ++emitted_;
  events_.push(std::move(e));
}

void Agent::run_ssh(SshTask& task, std::stop_token stop) {
  auto step = [&] {
    hook("ssh");
    std::vector<std::string> lines = task.source->poll();
    ssh::Health h = task.source->health();
    if (h != task.last_health) {
      if (h == ssh::Health::kDegraded) {
        log_.warn("source_degraded", {{"source", task.name},
                                      {"reason", task.source->health_message()}});
      } else {
        log_.info("source_recovered", {{"source", task.name}});
      }
      task.last_health = h;
    }
    int year = year_ != 0 ? year_ : current_year();
    Timestamp fallback = now();
    for (const auto& line : lines) {
      ssh::LineParse p = ssh::parse_ssh_line_detailed(line, year, fallback);
      if (p.kind == ssh::LineKind::kIpv6) {
        log_.warn("ipv6_skipped", {{"line", line}});
        continue;
      }
      if (!p.record) continue;
      for (auto& e : task.detector.ingest(*p.record)) emit(std::move(e));
      if (cfg_.etd_enabled) records_.push(*p.record);
    }
  };
  while (!stop.stop_requested()) {
    step();
    sleep_for(stop, cfg_.poll_interval);
  }
  step();
  for (auto& e : task.detector.flush()) emit(std::move(e));
}

void Agent::run_url_feed(std::stop_token stop) {
  auto step = [&] {
    hook("url_feed");
    for (const auto& line : url_feed_->poll()) {
      if (line.empty()) continue;
      std::string url;
      try {
        auto j = nlohmann::json::parse(line);
        url = j.at("url").get<std::string>();
      } catch (const std::exception& e) {
        log_.warn("url_feed_invalid", {{"line", line}, {"error", e.what()}});
        continue;
      }
      auto ev = phish_->evaluate(url, now());
      if (!ev.ok()) {
        log_.warn("url_invalid", {{"url", url}, {"error", ev.error}});
        continue;
      }
      if (ev.alert) emit(std::move(*ev.alert));
    }
  };
  while (!stop.stop_requested()) {
    step();
    sleep_for(stop, cfg_.poll_interval);
  }
  step();
}

void Agent::score_record(const ssh::SshAuthRecord& rec) {
  auto model = registry_.snapshot();
  if (model) extractor_.set_geo_impute(model->geo_impute);
  EtdFeatureRow row = extractor_.next(rec);
  {
    std::lock_guard lock(history_mu_);
    history_.push_back({rec.timestamp, row});
    Timestamp horizon = rec.timestamp - std::int64_t{cfg_.retrain.window_days} * 86400;
    while (!history_.empty() &&
           (history_.front().timestamp < horizon || history_.size() > kMaxHistory)) {
      history_.pop_front();
    }
  }
  if (!model) {
    if (!warned_no_model_) {
      log_.warn("etd_no_model", {});
      warned_no_model_ = true;
    }
    return;
  }
  etd::ScoreResult r = etd::score_event(*model, row);
  if (r.anomalous) emit(etd::make_threat_event(*model, row, r, rec.timestamp));
}

void Agent::run_etd(std::stop_token stop) {
  while (!stop.stop_requested()) {
    hook("etd");
    auto rec = records_.pop(stop, 100ms);
    if (!rec) continue;
    score_record(*rec);
  }
  while (auto rec = records_.try_pop()) score_record(*rec);
}

bool Agent::retrain_now() {
  std::lock_guard guard(retrain_mu_);
  std::vector<retrain::TimedRow> rows;
  {
    std::lock_guard lock(history_mu_);
    rows.assign(history_.begin(), history_.end());
  }
  Timestamp t = now();
  try {
    auto window = retrain::select_window(rows, t, cfg_.retrain.window_days);
    Timestamp trained_at = t;
    if (auto cur = registry_.snapshot(); cur && cur->trained_at >= trained_at) {
      trained_at = cur->trained_at + 1;
    }
    auto outcome = retrain::retrain(window, cfg_.retrain, trained_at);
    const auto& rep = outcome.report;
    ojson fields = {{"candidate_version", rep.candidate_version},
                    {"training_rows", rep.training_rows},
                    {"holdout_rows", rep.holdout_rows},
                    {"holdout_flag_rate", rep.holdout_flag_rate},
                    {"max_flag_rate", rep.max_flag_rate}};
    if (!rep.accepted) {
      ++retrains_rejected_;
      log_.warn("retrain_rejected", std::move(fields));
      return false;
    }
    retrain::persist_artifact(outcome.candidate, cfg_.model_dir);
    retrain::set_current(cfg_.model_dir, outcome.candidate.version);
    registry_.swap(std::make_shared<const etd::EtdModelArtifact>(
        std::move(outcome.candidate)));
    ++retrains_accepted_;
    log_.info("retrain_accepted", std::move(fields));
    return true;
  } catch (const Error& e) {
    ++retrains_rejected_;
    log_.warn("retrain_aborted", {{"error", e.what()}, {"rows", rows.size()}});
    return false;
  }
}

void Agent::run_retrain(std::stop_token stop) {
  while (!stop.stop_requested()) {
    hook("retrain");
    if (trigger_ && trigger_->poll(now())) retrain_now();
    sleep_for(stop, std::min<std::chrono::milliseconds>(cfg_.poll_interval, 1000ms));
  }
}

void Agent::handle(const SecurityEvent& e) {
  dispatch_alert(e, sink_ptrs_, *dead_letters_);
  ++dispatched_;
  if (auto action = mitigate(e, cfg_.mitigation, *executor_)) {
    log_.info("mitigation", ojson::parse(action->to_json()));
    std::lock_guard lock(actions_mu_);
    actions_.push_back(std::move(*action));
  }
}

void Agent::run_dispatcher(std::stop_token stop) {
  while (!stop.stop_requested()) {
    hook("dispatcher");
    auto e = events_.pop(stop, 100ms);
    if (!e) continue;
    handle(*e);
  }
  while (auto e = events_.try_pop()) handle(*e);
}

AgentStats Agent::stats() const {
  AgentStats s;
  s.events_emitted = emitted_;
  s.events_dispatched = dispatched_;
  s.dead_letters = dead_letters_->count();
  s.queue_overflow = events_.overflowed();
  s.retrains_accepted = retrains_accepted_;
  s.retrains_rejected = retrains_rejected_;
  std::lock_guard lock(restarts_mu_);
  s.restarts = restarts_;
  return s;
}

std::vector<MitigationAction> Agent::actions() const {
  std::lock_guard lock(actions_mu_);
  return actions_;
}

std::size_t Agent::history_size() const {
  std::lock_guard lock(history_mu_);
  return history_.size();
}

int run_agent(const AgentConfig& cfg, const std::atomic<bool>& stop_flag,
              AgentDeps deps) {
  Agent agent(cfg, std::move(deps));
  agent.start();
  while (!stop_flag.load()) std::this_thread::sleep_for(100ms);
  agent.stop();
  return 0;
}

}  // namespace sentinel::agent
