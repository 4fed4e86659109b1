#pragma once

// Caller-blocking fork-join runtime. A pool lives for one public call: tasks
// never outlive it, and a thread waiting on a group executes queued tasks
// itself, so nested fork-join cannot deadlock.

#include <atomic>
#include <cstddef>
#include <deque>
#include <functional>
#include <utility>
#include <vector>

#if !defined(__wasi__) && !defined(__EMSCRIPTEN__)
#define OLAP_HAS_THREADS 1
#include <condition_variable>
#include <mutex>
#include <thread>
#else
#define OLAP_HAS_THREADS 0
#endif

namespace olap::detail {

#if OLAP_HAS_THREADS

class ForkJoinPool {
 public:
  explicit ForkJoinPool(std::size_t workers) : workers_(workers == 0 ? 1 : workers) {
    for (std::size_t i = 1; i < workers_; ++i) {
      threads_.emplace_back([this] { worker_loop(); });
    }
  }

  ForkJoinPool(const ForkJoinPool&) = delete;
  ForkJoinPool& operator=(const ForkJoinPool&) = delete;

  ~ForkJoinPool() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  std::size_t workers() const { return workers_; }
  std::size_t tasks_spawned() const { return spawned_.load(std::memory_order_relaxed); }

  class TaskGroup {
   public:
    explicit TaskGroup(ForkJoinPool& pool) : pool_(pool) {}
    TaskGroup(const TaskGroup&) = delete;
    TaskGroup& operator=(const TaskGroup&) = delete;
    ~TaskGroup() { wait(); }

    void run(std::function<void()> fn) {
      if (pool_.workers_ == 1) {
        fn();
        return;
      }
      pending_.fetch_add(1, std::memory_order_acq_rel);
      pool_.spawned_.fetch_add(1, std::memory_order_relaxed);
      // The group may be destroyed as soon as pending_ reaches zero, so the
      // wake-up goes through a copied pool pointer.
      ForkJoinPool* pool = &pool_;
      pool_.push([this, pool, fn = std::move(fn)] {
        fn();
        if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
          std::lock_guard<std::mutex> lock(pool->mu_);
          pool->cv_.notify_all();
        }
      });
    }

    void wait() {
      while (pending_.load(std::memory_order_acquire) != 0) {
        if (!pool_.try_run_one()) {
          std::unique_lock<std::mutex> lock(pool_.mu_);
          pool_.cv_.wait(lock, [this] {
            return pending_.load(std::memory_order_acquire) == 0 || !pool_.queue_.empty();
          });
        }
      }
    }

   private:
    ForkJoinPool& pool_;
    std::atomic<std::size_t> pending_{0};
  };

 private:
  void push(std::function<void()> task) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      queue_.push_back(std::move(task));
    }
    cv_.notify_one();
  }

  bool try_run_one() {
    std::function<void()> task;
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (queue_.empty()) return false;
      task = std::move(queue_.back());
      queue_.pop_back();
    }
    task();
    return true;
  }

  void worker_loop() {
    for (;;) {
      std::function<void()> task;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
        if (queue_.empty()) return;
        task = std::move(queue_.front());
        queue_.pop_front();
      }
      task();
    }
  }

  std::size_t workers_;
  std::atomic<std::size_t> spawned_{0};
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> queue_;
  std::vector<std::thread> threads_;
  bool stopping_ = false;
};

#else

// No threads on this platform: every group runs its tasks inline, which the
// determinism contract makes observably identical.
class ForkJoinPool {
 public:
  explicit ForkJoinPool(std::size_t) {}
  std::size_t workers() const { return 1; }
  std::size_t tasks_spawned() const { return 0; }

  class TaskGroup {
   public:
    explicit TaskGroup(ForkJoinPool&) {}
    void run(const std::function<void()>& fn) { fn(); }
    void wait() {}
  };
};

#endif

}  // namespace olap::detail
