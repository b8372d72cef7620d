#include "lamnorm/stack.hpp"

#include <pthread.h>

#include <exception>
#include <stdexcept>

namespace lamnorm {

namespace {

struct Call {
  const std::function<int()>* fn;
  int result = 1;
  std::exception_ptr error;
};

void* trampoline(void* p) {
  auto* call = static_cast<Call*>(p);
  try {
    call->result = (*call->fn)();
  } catch (...) {
    call->error = std::current_exception();
  }
  return nullptr;
}

} // namespace

int run_on_big_stack(const std::function<int()>& fn, std::size_t stack_bytes) {
  pthread_attr_t attr;
  if (pthread_attr_init(&attr) != 0)
    throw std::runtime_error("pthread_attr_init failed");
  pthread_attr_setstacksize(&attr, stack_bytes);
  Call call{&fn};
  pthread_t thread;
  if (pthread_create(&thread, &attr, trampoline, &call) != 0) {
    pthread_attr_destroy(&attr);
    throw std::runtime_error("pthread_create failed");
  }
  pthread_join(thread, nullptr);
  pthread_attr_destroy(&attr);
  if (call.error) std::rethrow_exception(call.error);
  return call.result;
}

} // namespace lamnorm
