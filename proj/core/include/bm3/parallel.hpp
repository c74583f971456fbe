#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace bm3 {

// Small fixed-size worker pool. Work is always split into chunks whose
// boundaries depend only on the problem size, never on the worker count,
// and order-sensitive combines run in chunk order; together with
// per-entity RNG streams this makes results bit-identical for any number
// of workers.
class ThreadPool {
 public:
  explicit ThreadPool(int workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int workers() const { return static_cast<int>(threads_.size()) + 1; }

  // fn(begin, end, chunk_index) over [0, n) split into worker-independent
  // chunks. Runs inline when the pool is null, empty, or we are already on
  // a pool thread (no nested parallelism).
  void parallel_for(std::int64_t n,
                    const std::function<void(std::int64_t, std::int64_t,
                                             int)>& fn);

  // k independent tasks indexed 0..k-1.
  void parallel_tasks(int k, const std::function<void(int)>& fn);

  static int chunk_count(std::int64_t n);

  // Convenience: run fn via pool when non-null, else inline.
  static void for_each(ThreadPool* pool, std::int64_t n,
                       const std::function<void(std::int64_t, std::int64_t,
                                                int)>& fn);
  static void tasks(ThreadPool* pool, int k,
                    const std::function<void(int)>& fn);

 private:
  void worker_loop();
  void run_batch(int njobs, const std::function<void(int)>& job);

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_job_, cv_done_;
  const std::function<void(int)>* job_ = nullptr;
  int next_index_ = 0;
  int total_ = 0;
  int remaining_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
};

}  // namespace bm3
