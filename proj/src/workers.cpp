#include "workers.hpp"

#include "davlab/errors.hpp"

#include <pthread.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <vector>

namespace davlab::detail {

namespace {

constexpr std::size_t kStackBytes = std::size_t{256} << 20;

struct Task {
  const std::function<void(unsigned)>* fn;
  unsigned id;
  std::exception_ptr error;
};

void* trampoline(void* arg) {
  auto* task = static_cast<Task*>(arg);
  try {
    (*task->fn)(task->id);
  } catch (...) {
    task->error = std::current_exception();
  }
  return nullptr;
}

} // namespace

void run_workers(unsigned count, const std::function<void(unsigned)>& fn) {
  std::vector<Task> tasks(count);
  std::vector<pthread_t> threads(count);
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStackBytes);
  unsigned started = 0;
  for (unsigned i = 0; i < count; ++i) {
    tasks[i] = Task{&fn, i, nullptr};
    if (int rc = pthread_create(&threads[i], &attr, trampoline, &tasks[i]); rc != 0) {
      pthread_attr_destroy(&attr);
      for (unsigned j = 0; j < started; ++j) pthread_join(threads[j], nullptr);
      throw Error(std::string("cannot start search worker: ") + std::strerror(rc));
    }
    ++started;
  }
  pthread_attr_destroy(&attr);
  for (unsigned i = 0; i < count; ++i) pthread_join(threads[i], nullptr);
  for (auto& t : tasks)
    if (t.error) std::rethrow_exception(t.error);
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DAVLAB_THREADS")) {
    unsigned n = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec == std::errc{} && ptr == end && n > 0) return n;
  }
  return 1;
}

} // namespace davlab::detail
