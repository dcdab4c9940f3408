#include "specfaith/util/large_stack.hpp"

#include <pthread.h>

#include <cstring>
#include <stdexcept>
#include <string>

namespace specfaith {

namespace {

struct Job {
  const std::function<void()>* task;
  std::exception_ptr error;
};

void* trampoline(void* raw) {
  auto* job = static_cast<Job*>(raw);
  try {
    (*job->task)();
  } catch (...) {
    job->error = std::current_exception();
  }
  return nullptr;
}

}  // namespace

void run_on_large_stack(const std::function<void()>& task, std::size_t stack_bytes) {
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  if (int rc = pthread_attr_setstacksize(&attr, stack_bytes); rc != 0) {
    pthread_attr_destroy(&attr);
    throw std::runtime_error("pthread_attr_setstacksize: " + std::string(std::strerror(rc)));
  }
  Job job{&task, nullptr};
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    // Fall back to the calling thread rather than failing the evaluation.
    task();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace specfaith
