#pragma once
#include <cstddef>
#include <functional>

namespace iaw {

// IAW_THREADS overrides the hardware count; set_thread_count overrides both.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n) on up to thread_count() threads. The first
// exception thrown by any body is rethrown after all threads finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace iaw
