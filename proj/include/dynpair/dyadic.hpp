#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace dynpair {

// Nonnegative dyadic rational stored as a normalized sum of powers of two
// (distinct exponents, descending). Exact for arbitrarily small scales, so
// tree-metric distances at large member indices never lose precision.
class Dyadic {
public:
    Dyadic() = default;

    static Dyadic power_of_two(int64_t exponent) {
        Dyadic d;
        d.exponents_ = {exponent};
        return d;
    }

    bool is_zero() const { return exponents_.empty(); }

    Dyadic& operator+=(const Dyadic& other) {
        for (int64_t e : other.exponents_) add_power(e);
        return *this;
    }
    friend Dyadic operator+(Dyadic a, const Dyadic& b) {
        a += b;
        return a;
    }

    // Value / 2^k.
    Dyadic shifted_down(int64_t k) const {
        Dyadic d;
        d.exponents_.reserve(exponents_.size());
        for (int64_t e : exponents_) d.exponents_.push_back(e - k);
        return d;
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        // Compare descending exponent lists lexicographically.
        size_t n = std::min(a.exponents_.size(), b.exponents_.size());
        for (size_t i = 0; i < n; ++i) {
            if (a.exponents_[i] != b.exponents_[i]) return a.exponents_[i] < b.exponents_[i];
        }
        return a.exponents_.size() < b.exponents_.size();
    }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return a == b || a < b; }

    double to_double() const {
        double v = 0.0;
        for (int64_t e : exponents_) v += std::ldexp(1.0, static_cast<int>(std::max<int64_t>(e, -1070)));
        return v;
    }

    // "0", "2^-3", or "2^-3 + 2^-5".
    std::string to_string() const {
        if (exponents_.empty()) return "0";
        std::string out;
        for (size_t i = 0; i < exponents_.size(); ++i) {
            if (i) out += " + ";
            out += "2^" + std::to_string(exponents_[i]);
        }
        return out;
    }

private:
    void add_power(int64_t e) {
        // Binary carry: 2^e + 2^e = 2^(e+1).
        while (true) {
            auto it = std::lower_bound(exponents_.begin(), exponents_.end(), e,
                                       [](int64_t lhs, int64_t rhs) { return lhs > rhs; });
            if (it == exponents_.end() || *it != e) {
                exponents_.insert(it, e);
                return;
            }
            exponents_.erase(it);
            e += 1;
        }
    }

    std::vector<int64_t> exponents_;  // strictly descending
};

}  // namespace dynpair
