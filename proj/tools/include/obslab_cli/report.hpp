#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "obslab/graph.hpp"

namespace obslab::cli {

inline constexpr const char* kReportSchema = "obslab.run/1";

struct InstanceResult {
  nlohmann::ordered_json fields;
  bool ok = true;
  std::string detail;
  std::optional<Graph> counterexample;
};

struct SuiteResult {
  std::vector<InstanceResult> instances;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  int failed() const;
};

// OBSLAB_THREADS when set (must be a positive integer), else the hardware
// concurrency.
int worker_count();

// Runs fn(0..count-1) on the worker pool; results come back in index order.
template <class F>
auto parallel_map(std::size_t count, F fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// One JSON line per instance, then a summary line. Only the summary's
// "timing" member depends on the run.
void write_report(std::ostream& out, const std::string& command, const std::vector<std::string>& argv,
                  std::optional<std::uint64_t> seed, const SuiteResult& result, double elapsed_ms);

}  // namespace obslab::cli
