#include "framecomplex/budget.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace framecomplex {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
    case Verdict::kHypothesisViolation:
      return "hypothesis-violation";
  }
  return "unknown";
}

std::string_view to_string(Tristate t) {
  switch (t) {
    case Tristate::kFalse:
      return "false";
    case Tristate::kTrue:
      return "true";
    case Tristate::kUnknown:
      return "unknown";
  }
  return "unknown";
}

void Budget::check_deadline() const {
  if (deadline && std::chrono::steady_clock::now() > *deadline) {
    throw BudgetExceeded("wall-clock budget exhausted");
  }
}

void Budget::require_elements(std::uint64_t count, std::string_view what) const {
  if (count > element_limit) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(count) +
                         " exceeds element budget " + std::to_string(element_limit));
  }
}

namespace {

std::optional<long long> budget_ms_from_env() {
  const char* raw = std::getenv("FRAMECOMPLEX_BUDGET_MS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  long long ms = std::strtoll(raw, &end, 10);
  if (end == raw || ms <= 0) return std::nullopt;
  return ms;
}

}  // namespace

Budget Budget::from_environment() {
  Budget b;
  return b.restarted_from_environment();
}

Budget Budget::restarted_from_environment() const {
  Budget b = *this;
  if (auto ms = budget_ms_from_env()) {
    b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*ms);
  }
  return b;
}

Executor::Executor(unsigned workers) : workers_(std::max(1U, workers)) {}

std::size_t Executor::for_chunks(
    std::size_t count,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) const {
  if (count == 0) return 0;
  const std::size_t chunks = std::min<std::size_t>(workers_, count);
  if (chunks == 1) {
    body(0, count, 0);
    return 1;
  }
  std::vector<std::thread> threads;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  threads.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    threads.emplace_back([&, begin, end, c] {
      try {
        body(begin, end, c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return chunks;
}

}  // namespace framecomplex
