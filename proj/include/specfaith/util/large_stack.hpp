#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

namespace specfaith {

/// Default stack for evaluation threads: deep spec recursion runs on the
/// native stack.
inline constexpr std::size_t kEvalStackBytes = std::size_t{512} << 20;

/// Runs `task` on a fresh thread with a `stack_bytes` stack and waits for it.
/// Exceptions thrown by `task` are rethrown in the caller.
void run_on_large_stack(const std::function<void()>& task,
                        std::size_t stack_bytes = kEvalStackBytes);

template <typename F>
auto with_large_stack(F&& f, std::size_t stack_bytes = kEvalStackBytes)
    -> std::invoke_result_t<F&> {
  using R = std::invoke_result_t<F&>;
  if constexpr (std::is_void_v<R>) {
    run_on_large_stack([&] { f(); }, stack_bytes);
  } else {
    std::optional<R> out;
    run_on_large_stack([&] { out.emplace(f()); }, stack_bytes);
    return std::move(*out);
  }
}

}  // namespace specfaith
