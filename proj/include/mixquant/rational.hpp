#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "mixquant/errors.hpp"

namespace mixquant {

// Exact rational arithmetic on 64-bit integers, 128-bit intermediates.
// Values in this library stay tiny (quantization errors of small mixtures),
// so overflow indicates a caller bug and throws.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
        if (den_ == 0) throw InvalidArg("Rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(Rational a, Rational b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }
    friend Rational operator*(Rational a, Rational b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw InvalidArg("Rational division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    friend bool operator==(Rational a, Rational b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(Rational a, Rational b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(Rational a, Rational b) { return a == b || a < b; }
    friend bool operator>(Rational a, Rational b) { return b < a; }

  private:
    using i128 = __int128;

    static Rational from128(i128 num, i128 den) {
        if (den < 0) { num = -num; den = -den; }
        const i128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        constexpr i128 lim = INT64_MAX;
        if (num > lim || num < -lim || den > lim)
            throw InvalidArg("Rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { const i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace mixquant
