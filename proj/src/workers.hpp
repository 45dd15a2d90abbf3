#pragma once

#include <cstddef>
#include <functional>

namespace davlab::detail {

/// Runs fn(0..count-1) on threads with deep stacks (the searches recurse once
/// per sequence term) and rethrows the first worker exception.
void run_workers(unsigned count, const std::function<void(unsigned)>& fn);

/// Worker count from an explicit option, else DAVLAB_THREADS, else 1.
unsigned resolve_threads(unsigned requested);

} // namespace davlab::detail
