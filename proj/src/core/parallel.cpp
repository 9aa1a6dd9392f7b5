#include "phasic/core/parallel.hpp"

#include <cstdlib>
#include <string>

namespace phasic {

int default_workers() {
    if (const char* env = std::getenv("PHASIC_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace phasic
