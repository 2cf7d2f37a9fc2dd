#pragma once

#include <cmath>

namespace linebet {

/// Compensated (Neumaier) summation. Deterministic for a fixed sequence of
/// addends, which the exact-reproducibility contracts rely on: every code
/// path that totals bet winnings must add the same values in the same order
/// through this class.
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace linebet
