#include "gsplab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gsplab {

std::size_t default_thread_count() {
    if (const char* env = std::getenv("GSP_LAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace gsplab
