#ifndef SALAB_TOOLS_COMMANDS_H_
#define SALAB_TOOLS_COMMANDS_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <spdlog/spdlog.h>

#include "config.h"

namespace salab::cli {

struct Context {
  int jobs = 1;
  std::shared_ptr<spdlog::logger> log;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

int run_command(const std::string& name, const Config& cfg, Context& ctx);

int cmd_validate(const Config& cfg, Context& ctx);
int cmd_report(const Config& cfg, Context& ctx);

// Writes text to the path in cfg["out"], or stdout for "-".
void emit(const Config& cfg, const std::string& text);
std::string read_file(const std::string& path);
std::string format_double(double x);

// Runs fn(i) for i in [0, count) on up to `jobs` threads and returns the
// results in index order. After joining, the exception of the lowest
// failing index is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, int jobs, Fn&& fn) {
  std::vector<T> out(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace salab::cli

#endif  // SALAB_TOOLS_COMMANDS_H_
