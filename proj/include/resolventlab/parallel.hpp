#pragma once

#include <cstddef>
#include <functional>

namespace rlab {

/// Serial is the reference path; Parallel fans the same body out over OpenMP threads.
enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). Exceptions thrown by the body are captured per index and
/// the one with the lowest index is rethrown after the loop, so both paths fail identically.
void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body);

/// Thread count used by Execution::Parallel (<= 0 restores the OpenMP default).
void set_thread_count(int threads);
int thread_count();

}  // namespace rlab
