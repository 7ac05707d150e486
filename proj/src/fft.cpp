#include "jhol/fft.hpp"

#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace jhol {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning may scribble on the arrays, so plan on scratch buffers.
    auto* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
  if (in.size() != out.size()) throw InputError("fft: size mismatch");
  if (in.empty()) return;
  if (in.data() == out.data()) throw InputError("fft: in-place transform not supported");
  fftw_plan p = cache().get(static_cast<int>(in.size()), sign);
  // Out-of-place complex transforms leave the input untouched.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_FORWARD); }

void fft_backward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_BACKWARD); }

}  // namespace jhol
