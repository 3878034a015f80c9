#pragma once

// The five random-variable families of the mode-energy decomposition:
//
//   Gauss      - continuous scaled mode energy, exponential with rate beta
//   Dark       - its fractional part, truncated exponential on [0,1)
//   Planck     - its integer part, geometric ("Planck-Bose") with parameter b
//   Binary(s)  - the s-th dyadic component of the integer part, two-point on
//                {0, 2^s}, fermionic occupation
//   Multiplet(m) - the m-th Poisson component, values on {0, m, 2m, ...}

#include <cstdint>
#include <stdexcept>
#include <string>

namespace planckian {

class VariableFamily {
 public:
  enum class Kind { Gauss, Dark, Planck, Binary, Multiplet };

  static VariableFamily gauss() { return VariableFamily(Kind::Gauss, 0); }
  static VariableFamily dark() { return VariableFamily(Kind::Dark, 0); }
  static VariableFamily planck() { return VariableFamily(Kind::Planck, 0); }

  static VariableFamily binary(int s) {
    if (s < 0) throw std::domain_error("binary component index must be >= 0");
    return VariableFamily(Kind::Binary, s);
  }

  static VariableFamily multiplet(int m) {
    if (m < 1) throw std::domain_error("multiplet order must be >= 1");
    return VariableFamily(Kind::Multiplet, m);
  }

  Kind kind() const { return kind_; }

  int binary_index() const {
    if (kind_ != Kind::Binary) {
      throw std::logic_error("binary_index on a non-binary family");
    }
    return index_;
  }

  int multiplet_order() const {
    if (kind_ != Kind::Multiplet) {
      throw std::logic_error("multiplet_order on a non-multiplet family");
    }
    return index_;
  }

  bool is_discrete() const {
    return kind_ != Kind::Gauss && kind_ != Kind::Dark;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Gauss:
        return "gauss";
      case Kind::Dark:
        return "dark";
      case Kind::Planck:
        return "planck";
      case Kind::Binary:
        return "binary(" + std::to_string(index_) + ")";
      case Kind::Multiplet:
        return "multiplet(" + std::to_string(index_) + ")";
    }
    return "?";
  }

  friend bool operator==(const VariableFamily& a, const VariableFamily& b) {
    return a.kind_ == b.kind_ && a.index_ == b.index_;
  }

 private:
  VariableFamily(Kind kind, int index) : kind_(kind), index_(index) {}

  Kind kind_;
  int index_;
};

// Mean and variance in units of the energy quantum, entropy in units of k.
struct MomentSummary {
  double mean;
  double variance;
  double entropy_over_k;
};

}  // namespace planckian
