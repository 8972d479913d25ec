#include "resona/parallel.hpp"

#include <cstdlib>
#include <string>

namespace resona {

int default_threads()
{
    if (const char* env = std::getenv("RESONA_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

int resolve_threads(int requested)
{
    return requested > 0 ? requested : default_threads();
}

}  // namespace resona
