#include "fdlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

namespace fdlab::fft {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (size, direction) under a lock and kept for
// the life of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  const std::size_t n = in.size();
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_plan plan = PlanCache::instance().get(n, sign);
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_FORWARD);
}

void inverse(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& c : out) c *= scale;
}

}  // namespace fdlab::fft
