// Data-parallel kernels used by the exhaustive checks.
//
// Each kernel exists twice: an OpenMP version in `parallel` and a plain loop in
// `serial`. The serial versions are the reference the tests compare against;
// the benchmark target times one against the other.

#ifndef PADYN_KERNELS_HPP_
#define PADYN_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <vector>

namespace padyn::kernels {

namespace detail {

// Collects the first exception thrown inside an OpenMP region so it can be
// rethrown on the calling thread.
class ExceptionSlot {
 public:
  template <typename F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(padyn_exception_slot)
      {
        if (!ptr_) {
          ptr_ = std::current_exception();
        }
      }
    }
  }
  void rethrow() const {
    if (ptr_) {
      std::rethrow_exception(ptr_);
    }
  }

 private:
  std::exception_ptr ptr_;
};

}  // namespace detail

namespace serial {

// table[i * order + j] = mul(i, j)
template <typename Mul>
std::vector<int> build_table(int order, Mul&& mul) {
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      table[static_cast<std::size_t>(i) * order + j] = mul(i, j);
    }
  }
  return table;
}

inline bool associative(std::span<int const> table, int order) {
  auto at = [&](int i, int j) { return table[static_cast<std::size_t>(i) * order + j]; };
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      int const ab = at(a, b);
      for (int c = 0; c < order; ++c) {
        if (at(ab, c) != at(a, at(b, c))) {
          return false;
        }
      }
    }
  }
  return true;
}

// out[s * gens + g] = step(s, g)
template <typename Step>
std::vector<int> build_transitions(std::size_t states, std::size_t gens, Step&& step) {
  std::vector<int> out(states * gens);
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t g = 0; g < gens; ++g) {
      out[s * gens + g] = step(s, g);
    }
  }
  return out;
}

// Number of indices in [0, count) for which pred(i) is false.
template <typename Pred>
std::uint64_t count_failures(std::uint64_t count, Pred&& pred) {
  std::uint64_t bad = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!pred(i)) {
      ++bad;
    }
  }
  return bad;
}

}  // namespace serial

namespace parallel {

template <typename Mul>
std::vector<int> build_table(int order, Mul&& mul) {
  std::vector<int>        table(static_cast<std::size_t>(order) * order);
  detail::ExceptionSlot   slot;
  std::int64_t const      total = static_cast<std::int64_t>(order) * order;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < total; ++k) {
    slot.run([&] { table[k] = mul(static_cast<int>(k / order), static_cast<int>(k % order)); });
  }
  slot.rethrow();
  return table;
}

inline bool associative(std::span<int const> table, int order) {
  auto at = [&](int i, int j) { return table[static_cast<std::size_t>(i) * order + j]; };
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order && ok; ++b) {
      int const ab = at(a, b);
      for (int c = 0; c < order; ++c) {
        if (at(ab, c) != at(a, at(b, c))) {
          ok = false;
          break;
        }
      }
    }
  }
  return ok;
}

template <typename Step>
std::vector<int> build_transitions(std::size_t states, std::size_t gens, Step&& step) {
  std::vector<int>      out(states * gens);
  detail::ExceptionSlot slot;
  auto const            total = static_cast<std::int64_t>(states * gens);
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t k = 0; k < total; ++k) {
    slot.run([&] {
      out[k] = step(static_cast<std::size_t>(k) / gens, static_cast<std::size_t>(k) % gens);
    });
  }
  slot.rethrow();
  return out;
}

template <typename Pred>
std::uint64_t count_failures(std::uint64_t count, Pred&& pred) {
  std::uint64_t         bad = 0;
  detail::ExceptionSlot slot;
  auto const            total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 4096) reduction(+ : bad)
  for (std::int64_t i = 0; i < total; ++i) {
    slot.run([&] {
      if (!pred(static_cast<std::uint64_t>(i))) {
        ++bad;
      }
    });
  }
  slot.rethrow();
  return bad;
}

}  // namespace parallel

}  // namespace padyn::kernels

#endif  // PADYN_KERNELS_HPP_
