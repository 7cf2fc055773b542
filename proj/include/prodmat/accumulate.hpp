#pragma once

#include <cmath>

namespace prodmat {

// Neumaier compensated accumulator.  The alternating polynomial sums and the
// Monte Carlo means both lose digits to cancellation with plain summation.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace prodmat
