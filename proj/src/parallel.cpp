#include "mdnewton/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mdnewton/counting.hpp"

namespace mdn {

namespace {

// Set on pool workers and on the caller while it takes part in a loop, so
// that nested parallel_for calls run inline instead of deadlocking.
thread_local bool in_parallel = false;

class Pool {
 public:
  ~Pool() { resize(0); }

  std::size_t size() const { return workers_.size() + 1; }

  void resize(std::size_t threads) {
    {
      std::lock_guard lk(mu_);
      stop_ = true;
      ++generation_;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
    workers_.clear();
    stop_ = false;
    for (std::size_t i = 1; i < threads; ++i)
      workers_.emplace_back([this, g = generation_] { loop(g); });
  }

  void run(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn) {
    if (workers_.empty() || end - begin <= 1) {
      for (std::size_t i = begin; i < end; ++i) fn(i);
      return;
    }
    std::unique_lock lk(mu_);
    fn_ = &fn;
    next_.store(begin);
    end_ = end;
    pending_ = workers_.size();
    error_ = nullptr;
    merged_ = Tally{};
    ++generation_;
    lk.unlock();
    cv_.notify_all();

    in_parallel = true;
    work();
    in_parallel = false;

    lk.lock();
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    tally() += merged_;
    fn_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void work() {
    try {
      for (;;) {
        std::size_t i = next_.fetch_add(1);
        if (i >= end_) break;
        (*fn_)(i);
      }
    } catch (...) {
      std::lock_guard lk(mu_);
      if (!error_) error_ = std::current_exception();
      next_.store(end_);
    }
  }

  void loop(std::uint64_t seen) {
    in_parallel = true;
    for (;;) {
      {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return generation_ != seen; });
        seen = generation_;
        if (stop_) return;
      }
      Tally before = tally();
      work();
      Tally delta = tally() - before;
      std::lock_guard lk(mu_);
      merged_ += delta;
      if (--pending_ == 0) done_cv_.notify_all();
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_, done_cv_;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  const std::function<void(std::size_t)>* fn_ = nullptr;
  std::atomic<std::size_t> next_{0};
  std::size_t end_ = 0;
  std::size_t pending_ = 0;
  std::exception_ptr error_;
  Tally merged_;
};

Pool& pool() {
  static Pool p;
  return p;
}

std::mutex g_run_mu;

}  // namespace

std::size_t default_thread_count() {
  if (const char* s = std::getenv("MDNEWTON_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

void set_thread_count(std::size_t n) {
  std::lock_guard lk(g_run_mu);
  pool().resize(n == 0 ? 1 : n);
}

std::size_t thread_count() { return pool().size(); }

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& fn) {
  if (begin >= end) return;
  if (in_parallel || pool().size() == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::lock_guard lk(g_run_mu);
  pool().run(begin, end, fn);
}

}  // namespace mdn
