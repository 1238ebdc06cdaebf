#pragma once

#include <lspectra/forms.hpp>

#include <cmath>
#include <complex>
#include <random>

namespace support {

using namespace lspectra;

// q(x) = u x^2 / 2^{k+1} on Z/2^k, u odd
inline LinkingForm cyclic_form(int k, long u) {
    return LinkingForm::from_function({1L << k}, [&](const std::vector<long>& x) {
        return Dyadic(Int(u) * x[0] * x[0], static_cast<unsigned>(k + 1));
    });
}

// (x^2 + xy + y^2) / 2^k or xy / 2^k on (Z/2^k)^2
inline LinkingForm plane_form(int k, bool odd) {
    long f = 1L << k;
    return LinkingForm::from_function({f, f}, [&](const std::vector<long>& x) {
        Int v = Int(x[0]) * x[1];
        if (odd) v += Int(x[0]) * x[0] + Int(x[1]) * x[1];
        return Dyadic(v, static_cast<unsigned>(k));
    });
}

inline LinkingForm random_block(std::mt19937_64& rng, int max_log) {
    std::uniform_int_distribution<int> kind(0, 2);
    int choice = kind(rng);
    if (choice == 0 || max_log < 2) {
        int k = std::uniform_int_distribution<int>(1, max_log)(rng);
        long u = 2 * std::uniform_int_distribution<long>(0, 7)(rng) + 1;
        return cyclic_form(k, u);
    }
    int k = std::uniform_int_distribution<int>(1, max_log / 2)(rng);
    return plane_form(k, choice == 2);
}

// Orthogonal sum of random blocks with |G| <= 2^max_log.
inline LinkingForm random_form(std::mt19937_64& rng, int max_log) {
    LinkingForm L;
    int used = 0;
    do {
        LinkingForm B = random_block(rng, max_log - used);
        L = orthogonal_sum(L, B);
        used = L.log2_order();
    } while (used < max_log && std::uniform_int_distribution<int>(0, 1)(rng));
    return L;
}

// Floating-point Gauss sum, converted to an eighth root of unity.
inline int beta_numeric(const LinkingForm& L) {
    std::complex<double> s = 0;
    for (auto& v : L.values()) {
        double t = v.num.get_d() / std::ldexp(1.0, static_cast<int>(v.exp));
        s += std::polar(1.0, 2 * M_PI * t);
    }
    double ang = std::arg(s) / (2 * M_PI) * 8;
    return static_cast<int>(std::lround(ang) % 8 + 8) % 8;
}

}  // namespace support
