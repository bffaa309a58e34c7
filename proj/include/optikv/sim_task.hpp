/*
 * Copyright 2026 The OptiKV Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OPTIKV_SIM_TASK_HPP_
#define OPTIKV_SIM_TASK_HPP_

#include <coroutine>
#include <exception>
#include <memory>
#include <optional>

#include "optikv/sim.hpp"

namespace optikv {

/// Detached coroutine driven by simulator events. The frame starts eagerly,
/// lives while suspended on an awaitable, and frees itself on completion.
struct Task {
  struct promise_type {
    Task get_return_object() noexcept { return {}; }
    std::suspend_never initial_suspend() noexcept { return {}; }
    std::suspend_never final_suspend() noexcept { return {}; }
    void return_void() noexcept {}
    void unhandled_exception() { std::terminate(); }
  };
};

/// Single-shot value channel between an event handler (producer) and one
/// awaiting coroutine. Everything runs on the simulator thread.
template <typename T>
class SimFuture {
 public:
  SimFuture() : st_(std::make_shared<State>()) {}

  void set(T value) const {
    if (st_->value.has_value()) return;  // late completions are no-ops
    st_->value = std::move(value);
    if (st_->waiter) {
      auto h = st_->waiter;
      st_->waiter = nullptr;
      h.resume();
    }
  }

  bool ready() const { return st_->value.has_value(); }

  auto operator co_await() const {
    struct Awaiter {
      std::shared_ptr<State> st;
      bool await_ready() const noexcept { return st->value.has_value(); }
      void await_suspend(std::coroutine_handle<> h) noexcept { st->waiter = h; }
      T await_resume() { return std::move(*st->value); }
    };
    return Awaiter{st_};
  }

 private:
  struct State {
    std::optional<T> value;
    std::coroutine_handle<> waiter;
  };
  std::shared_ptr<State> st_;
};

/// co_await sleep_for(sim, us) suspends the coroutine for simulated time.
inline auto sleep_for(Simulator& sim, SimTime delta_us) {
  struct Awaiter {
    Simulator& sim;
    SimTime delta;
    bool await_ready() const noexcept { return delta <= 0; }
    void await_suspend(std::coroutine_handle<> h) {
      sim.in(delta, [h]() { h.resume(); });
    }
    void await_resume() const noexcept {}
  };
  return Awaiter{sim, delta_us};
}

}  // namespace optikv

#endif  // OPTIKV_SIM_TASK_HPP_
