//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace biocorpus {

/// Runs body(i) for i in [0, n) on up to `workers` threads (0 = hardware
/// concurrency). If any call throws, the exception of the lowest failing i
/// is rethrown after all threads finish.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)> &body);

/// Streams records through fn in chunks so memory stays bounded. Records
/// are numbered from 0 in read order; fn sees (record, number) and may
/// return nullopt to drop a record. Results are written in read order, so
/// output does not depend on the worker count. Returns records read.
template <typename Record, typename Result>
std::size_t run_ordered(const std::function<bool(Record &)> &read,
                        const std::function<std::optional<Result>(const Record &, std::uint64_t)> &fn,
                        const std::function<void(const Result &)> &write, int workers,
                        std::size_t chunk_size = 2048) {
  std::size_t total = 0;
  std::vector<Record> chunk;
  std::vector<std::optional<Result>> results;
  bool more = true;
  while (more) {
    chunk.clear();
    Record r;
    while (chunk.size() < chunk_size && (more = read(r)))
      chunk.push_back(std::move(r));
    if (chunk.empty())
      break;
    results.assign(chunk.size(), std::nullopt);
    const std::size_t base = total;
    parallel_for(chunk.size(), workers,
                 [&](std::size_t i) { results[i] = fn(chunk[i], static_cast<std::uint64_t>(base + i)); });
    for (const auto &res : results)
      if (res)
        write(*res);
    total += chunk.size();
  }
  return total;
}

}  // namespace biocorpus
