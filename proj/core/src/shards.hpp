#pragma once

// Deterministic sharded execution: shard s always sees the same seed and
// results are merged in shard order, whatever the worker count.

#include <algorithm>
#include <cstdint>
#include <future>
#include <thread>
#include <vector>

namespace anchorvote::detail {

template <class Result, class Fn>
std::vector<Result> run_shards(std::uint64_t shards, Fn&& fn) {
  std::vector<Result> out(shards);
  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t s = first; s < shards; s += stride) out[s] = fn(s);
  };
  const std::uint64_t workers =
      std::min<std::uint64_t>(shards, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::uint64_t w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, work, w, workers));
    for (auto& j : jobs) j.get();
  }
  return out;
}

}  // namespace anchorvote::detail
