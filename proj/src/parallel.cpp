#include "taub/parallel.hpp"

#include <cstdlib>
#include <string>

namespace taub {

std::size_t thread_count() {
    if (const char* env = std::getenv("TAU_BOOTSTRAP_THREADS")) {
        try {
            const long requested = std::stol(env);
            if (requested >= 1) return static_cast<std::size_t>(requested);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace taub
