#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistlab {

// Thrown when a free-group operation would produce a word longer than the
// global guard.  Callers distinguish this from ordinary argument errors:
// overflow means "result too large to represent under the current budget",
// not "input malformed".
class word_growth_overflow : public std::runtime_error {
 public:
  explicit word_growth_overflow(std::size_t attempted, std::size_t limit)
      : std::runtime_error("word growth overflow: attempted length " +
                           std::to_string(attempted) + " exceeds limit " +
                           std::to_string(limit)),
        attempted_(attempted),
        limit_(limit) {}

  std::size_t attempted() const noexcept { return attempted_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t attempted_;
  std::size_t limit_;
};

namespace detail {
inline std::atomic<std::size_t>& word_length_limit_slot() {
  static std::atomic<std::size_t> limit{1000000};
  return limit;
}
}  // namespace detail

inline std::size_t max_word_length() {
  return detail::word_length_limit_slot().load(std::memory_order_relaxed);
}

// Sets the global word-length guard.  0 is rejected; the guard exists to turn
// runaway growth into a clean error, not to disable computation.
inline void set_max_word_length(std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("word length limit must be positive");
  detail::word_length_limit_slot().store(limit, std::memory_order_relaxed);
}

inline void check_word_length(std::size_t attempted) {
  const std::size_t limit = max_word_length();
  if (attempted > limit) throw word_growth_overflow(attempted, limit);
}

// RAII override, used by tests that deliberately provoke overflow.
class scoped_word_length_limit {
 public:
  explicit scoped_word_length_limit(std::size_t limit) : previous_(max_word_length()) {
    set_max_word_length(limit);
  }
  ~scoped_word_length_limit() { set_max_word_length(previous_); }
  scoped_word_length_limit(const scoped_word_length_limit&) = delete;
  scoped_word_length_limit& operator=(const scoped_word_length_limit&) = delete;

 private:
  std::size_t previous_;
};

}  // namespace twistlab
