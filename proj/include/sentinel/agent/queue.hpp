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

#ifndef SENTINEL_AGENT_QUEUE_HPP_
#define SENTINEL_AGENT_QUEUE_HPP_

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <stop_token>
#include <vector>

namespace sentinel::agent {

// Multi-producer queue with a fixed capacity. On overflow the oldest item
// is handed to the spill callback and the overflow counter increments.
template <class T>
class BoundedQueue {
 public:
  using Spill = std::function<void(T&&)>;

  explicit BoundedQueue(std::size_t capacity, Spill spill = {})
      : capacity_(capacity), spill_(std::move(spill)) {}

  void push(T item) {
    std::optional<T> evicted;
    {
      std::lock_guard lock(mu_);
      if (items_.size() >= capacity_ && !items_.empty()) {
        evicted.emplace(std::move(items_.front()));
        items_.pop_front();
        ++overflowed_;
      }
      items_.push_back(std::move(item));
    }
    cv_.notify_one();
    if (evicted && spill_) spill_(std::move(*evicted));
  }

  // Waits up to `timeout` or until stop is requested.
  std::optional<T> pop(std::stop_token stop,
                       std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, stop, timeout, [&] { return !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    return item;
  }

  std::optional<T> try_pop() {
    std::lock_guard lock(mu_);
    if (items_.empty()) return std::nullopt;
    T item = std::move(items_.front());
    items_.pop_front();
    return item;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return items_.size();
  }
  std::size_t overflowed() const {
    std::lock_guard lock(mu_);
    return overflowed_;
  }
  std::size_t capacity() const { return capacity_; }

 private:
  const std::size_t capacity_;
  Spill spill_;
  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  std::deque<T> items_;
  std::size_t overflowed_ = 0;
};

}  // namespace sentinel::agent

#endif  // SENTINEL_AGENT_QUEUE_HPP_
