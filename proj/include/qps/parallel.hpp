// parallel.hpp — worker pool helpers and deterministic reductions
//
// Field evaluation is data-parallel over grid points; every point is a pure
// function of its coordinates, so the stored values are independent of the
// evaluation order. Reductions use a fixed pairwise order so results are
// bit-identical run to run at any worker count.

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace qps {

// Number of workers: hardware concurrency, capped by the QPS_WORKERS
// environment variable when set (minimum 1).
unsigned worker_count();

// Runs fn(i) for i in [begin, end) across worker_count() threads.
// fn must not touch shared mutable state except its own output slots.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

// Pairwise (cascade) summation in index order; deterministic for a given
// input, independent of threading anywhere else.
double pairwise_sum(std::span<const double> values);

} // namespace qps
