// Small numeric helpers shared across modules.
#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace idealdens {

/// Euler-Mascheroni constant to 20 digits.
inline constexpr long double euler_gamma = 0.57721566490153286061L;

/// Neumaier compensated summation in extended precision.
class CompensatedSum {
  public:
    void add(long double x) {
        const long double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    long double value() const { return sum_ + comp_; }

  private:
    long double sum_ = 0;
    long double comp_ = 0;
};

/// Reals in CSV and JSON output: 12 significant digits.
inline std::string format_real(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", v);
    return buf;
}

}  // namespace idealdens
