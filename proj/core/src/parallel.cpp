#include "bm3/parallel.hpp"

#include <algorithm>

namespace bm3 {

namespace {
thread_local bool tl_inside_pool = false;
}

ThreadPool::ThreadPool(int workers) {
  int extra = std::max(0, workers - 1);
  threads_.reserve(extra);
  for (int i = 0; i < extra; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lk(mu_);
    stop_ = true;
  }
  cv_job_.notify_all();
  for (auto& t : threads_) t.join();
}

void ThreadPool::worker_loop() {
  tl_inside_pool = true;
  for (;;) {
    const std::function<void(int)>* job = nullptr;
    int idx = -1;
    {
      std::unique_lock<std::mutex> lk(mu_);
      cv_job_.wait(lk,
                   [&] { return stop_ || (job_ != nullptr && next_index_ < total_); });
      if (stop_) return;
      job = job_;
      idx = next_index_++;
    }
    for (;;) {
      try {
        (*job)(idx);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu_);
        if (!first_error_) first_error_ = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lk(mu_);
        --remaining_;
        if (remaining_ == 0) cv_done_.notify_all();
        if (next_index_ >= total_) break;
        idx = next_index_++;
      }
    }
  }
}

void ThreadPool::run_batch(int njobs, const std::function<void(int)>& job) {
  if (njobs <= 0) return;
  if (threads_.empty() || tl_inside_pool || njobs == 1) {
    for (int i = 0; i < njobs; ++i) job(i);
    return;
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    job_ = &job;
    next_index_ = 0;
    total_ = njobs;
    remaining_ = njobs;
    first_error_ = nullptr;
  }
  cv_job_.notify_all();
  // The calling thread participates.
  for (;;) {
    int idx = -1;
    {
      std::lock_guard<std::mutex> lk(mu_);
      if (next_index_ >= total_) break;
      idx = next_index_++;
    }
    try {
      job(idx);
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu_);
      if (!first_error_) first_error_ = std::current_exception();
    }
    {
      std::lock_guard<std::mutex> lk(mu_);
      --remaining_;
      if (remaining_ == 0) cv_done_.notify_all();
    }
  }
  std::exception_ptr err;
  {
    std::unique_lock<std::mutex> lk(mu_);
    cv_done_.wait(lk, [&] { return remaining_ == 0; });
    job_ = nullptr;
    err = first_error_;
    first_error_ = nullptr;
  }
  if (err) std::rethrow_exception(err);
}

int ThreadPool::chunk_count(std::int64_t n) {
  // Fixed fan-out independent of worker count.
  return static_cast<int>(std::min<std::int64_t>(n, 64));
}

void ThreadPool::parallel_for(
    std::int64_t n,
    const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  if (n <= 0) return;
  int chunks = chunk_count(n);
  auto job = [&](int ci) {
    std::int64_t begin = n * ci / chunks;
    std::int64_t end = n * (ci + 1) / chunks;
    if (begin < end) fn(begin, end, ci);
  };
  run_batch(chunks, job);
}

void ThreadPool::parallel_tasks(int k, const std::function<void(int)>& fn) {
  run_batch(k, fn);
}

void ThreadPool::for_each(
    ThreadPool* pool, std::int64_t n,
    const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  if (pool != nullptr) {
    pool->parallel_for(n, fn);
    return;
  }
  if (n <= 0) return;
  int chunks = chunk_count(n);
  for (int ci = 0; ci < chunks; ++ci) {
    std::int64_t begin = n * ci / chunks;
    std::int64_t end = n * (ci + 1) / chunks;
    if (begin < end) fn(begin, end, ci);
  }
}

void ThreadPool::tasks(ThreadPool* pool, int k,
                       const std::function<void(int)>& fn) {
  if (pool != nullptr) {
    pool->parallel_tasks(k, fn);
    return;
  }
  for (int i = 0; i < k; ++i) fn(i);
}

}  // namespace bm3
