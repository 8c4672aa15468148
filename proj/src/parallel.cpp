#include "mlspectra/parallel.hpp"

#include <cstdlib>
#include <string>

namespace mlspectra {

int thread_budget() {
  if (const char* env = std::getenv("ML_SPECTRA_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace mlspectra
