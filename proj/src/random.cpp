#include "keysec/random.hpp"

#include <cmath>

namespace keysec {

std::vector<double> random_simplex(Rng& rng, std::size_t size) {
    std::vector<double> v(size);
    double sum = 0.0;
    for (auto& x : v) {
        // Exp(1) sample; next_unit() < 1 keeps the log finite.
        x = -std::log(1.0 - rng.next_unit());
        sum += x;
    }
    for (auto& x : v) x /= sum;
    return v;
}

} // namespace keysec
