#pragma once

// The decomposition algebra: integer/fraction split of the mode energy,
// dyadic expansion of excitation levels, the sigma-algebra of binary
// occupation events, and the three characteristic-function factorizations
// with numeric residual verification.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "planckian/distributions.hpp"
#include "planckian/mode_params.hpp"
#include "planckian/numerics.hpp"

namespace planckian::decomposition {

struct SplitResult {
  std::uint64_t integer_part;
  double fraction;  // in [0, 1); exactly y - integer_part
};

// y = [y] + {y}. The fraction is always in [0, 1); integers split to
// fraction zero, never one.
inline SplitResult split_integer_fraction(double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw std::domain_error("split_integer_fraction: finite y >= 0 required");
  }
  if (y >= 9007199254740992.0) {  // 2^53: no fractional bits left
    throw std::domain_error("split_integer_fraction: y too large");
  }
  const double n = std::floor(y);
  return {static_cast<std::uint64_t>(n), y - n};
}

struct DyadicExpansion {
  std::uint64_t n;
  std::vector<int> bits;  // ascending positions s with sum 2^s = n
};

inline DyadicExpansion dyadic_expansion(std::uint64_t n) {
  DyadicExpansion e{n, {}};
  for (int s = 0; s < 64; ++s) {
    if (n >> s & 1u) e.bits.push_back(s);
  }
  return e;
}

inline std::uint64_t reconstruct(const DyadicExpansion& e) {
  std::uint64_t n = 0;
  for (int s : e.bits) n |= std::uint64_t{1} << s;
  return n;
}

// State of one binary component inside an event atom. Unconstrained is only
// meaningful under an EmptyBeyond tail, where it exempts the component from
// the implied emptiness (the paper-style "A_0 + A_3, all others empty" shape
// needs a free slot at 3 inside the A_0 atom).
enum class ComponentState { Occupied, Empty, Unconstrained };

// Free: components without a constraint are unrestricted.
// EmptyBeyond: every component without a constraint is empty; together with
// the occupied set this pins the event to a single excitation level.
enum class TailPolicy { Free, EmptyBeyond };

// A finite Boolean constraint over the binary components A_s, or a union of
// such atoms. Contradictory constraints are representable and carry
// probability zero; structural misuse (nested unions) throws.
class BinaryEvent {
 public:
  static BinaryEvent atom(
      const std::vector<std::pair<int, ComponentState>>& constraints,
      TailPolicy tail) {
    BinaryEvent e;
    e.tail_ = tail;
    for (const auto& [s, state] : constraints) {
      if (s < 0) throw std::domain_error("BinaryEvent: index must be >= 0");
      auto it = e.constraints_.find(s);
      if (it == e.constraints_.end()) {
        e.constraints_.emplace(s, state);
      } else if (it->second != state) {
        e.impossible_ = true;  // A_s and not-A_s in one atom
      }
    }
    return e;
  }

  // The event B_n: exactly the bits of n occupied, everything else empty.
  static BinaryEvent excitation_level(std::uint64_t n) {
    BinaryEvent e;
    e.tail_ = TailPolicy::EmptyBeyond;
    for (int s : dyadic_expansion(n).bits) {
      e.constraints_.emplace(s, ComponentState::Occupied);
    }
    return e;
  }

  static BinaryEvent union_of(std::vector<BinaryEvent> atoms) {
    for (const auto& a : atoms) {
      if (a.is_union()) {
        throw std::invalid_argument("BinaryEvent: unions cannot nest");
      }
    }
    BinaryEvent e;
    e.atoms_ = std::move(atoms);
    return e;
  }

  bool is_union() const { return !atoms_.empty(); }
  bool impossible() const { return impossible_; }
  TailPolicy tail() const { return tail_; }
  const std::map<int, ComponentState>& constraints() const {
    return constraints_;
  }
  const std::vector<BinaryEvent>& atoms() const { return atoms_; }

  // Conjunction of two atoms; contradictions yield an impossible atom.
  static BinaryEvent intersect(const BinaryEvent& a, const BinaryEvent& b) {
    if (a.is_union() || b.is_union()) {
      throw std::invalid_argument("BinaryEvent: intersect expects atoms");
    }
    BinaryEvent e;
    e.tail_ = (a.tail_ == TailPolicy::EmptyBeyond ||
               b.tail_ == TailPolicy::EmptyBeyond)
                  ? TailPolicy::EmptyBeyond
                  : TailPolicy::Free;
    e.impossible_ = a.impossible_ || b.impossible_;
    auto implied = [](const BinaryEvent& ev) {
      return ev.tail_ == TailPolicy::EmptyBeyond ? ComponentState::Empty
                                                 : ComponentState::Unconstrained;
    };
    auto state_in = [&](const BinaryEvent& ev, int s) {
      auto it = ev.constraints_.find(s);
      return it == ev.constraints_.end() ? implied(ev) : it->second;
    };
    std::vector<int> indices;
    for (const auto& [s, st] : a.constraints_) indices.push_back(s);
    for (const auto& [s, st] : b.constraints_) indices.push_back(s);
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (int s : indices) {
      const ComponentState sa = state_in(a, s);
      const ComponentState sb = state_in(b, s);
      ComponentState merged;
      if (sa == ComponentState::Unconstrained) {
        merged = sb;
      } else if (sb == ComponentState::Unconstrained || sa == sb) {
        merged = sa;
      } else {
        e.impossible_ = true;
        merged = sa;
      }
      e.constraints_.emplace(s, merged);
    }
    return e;
  }

 private:
  BinaryEvent() = default;

  std::map<int, ComponentState> constraints_;
  TailPolicy tail_ = TailPolicy::Free;
  bool impossible_ = false;
  std::vector<BinaryEvent> atoms_;  // non-empty -> union of these atoms
};

namespace detail {

// log P(A_s) and log P(not A_s) at x = 2^s beta.
inline double log_occupied(int s, double beta) {
  const double x = std::ldexp(beta, s);
  return -x - std::log1p(std::exp(-x));
}

inline double log_empty(int s, double beta) {
  return -std::log1p(std::exp(-std::ldexp(beta, s)));
}

// Sum over all s >= 0 of log P(not A_s); converges to log(1 - b). Evaluated
// numerically with the shared truncation rule.
inline double log_all_empty(double beta) {
  double sum = 0.0;
  for (int s = 0; s < 1100; ++s) {
    const double term = log_empty(s, beta);
    sum += term;
    if (std::abs(term) < kSeriesTailCutoff * std::abs(sum)) break;
  }
  return sum;
}

inline double atom_log_probability(const BinaryEvent& e, const ModeParams& p) {
  if (e.impossible()) return -std::numeric_limits<double>::infinity();
  const double beta = p.beta();
  double logp = 0.0;
  if (e.tail() == TailPolicy::Free) {
    for (const auto& [s, state] : e.constraints()) {
      switch (state) {
        case ComponentState::Occupied:
          logp += log_occupied(s, beta);
          break;
        case ComponentState::Empty:
          logp += log_empty(s, beta);
          break;
        case ComponentState::Unconstrained:
          break;
      }
    }
    return logp;
  }
  // EmptyBeyond: start from the all-empty product and swap in the explicit
  // occupied / unconstrained components.
  logp = log_all_empty(beta);
  for (const auto& [s, state] : e.constraints()) {
    switch (state) {
      case ComponentState::Occupied:
        logp += log_occupied(s, beta) - log_empty(s, beta);
        break;
      case ComponentState::Empty:
        break;  // already implied
      case ComponentState::Unconstrained:
        logp -= log_empty(s, beta);
        break;
    }
  }
  return logp;
}

}  // namespace detail

// log probability of an event atom; -inf for contradictory atoms. Unions are
// only supported by the linear-scale event_probability.
inline double event_log_probability(const BinaryEvent& e, const ModeParams& p) {
  if (e.is_union()) {
    throw std::invalid_argument(
        "event_log_probability: defined for atoms only");
  }
  return detail::atom_log_probability(e, p);
}

// Probability of an event: product of the per-component probabilities for an
// atom (the components are independent), inclusion-exclusion over the atom
// list for a union.
inline double event_probability(const BinaryEvent& e, const ModeParams& p) {
  if (!e.is_union()) return std::exp(detail::atom_log_probability(e, p));
  const auto& atoms = e.atoms();
  const std::size_t n = atoms.size();
  if (n > 24) {
    throw std::invalid_argument(
        "event_probability: union too large for inclusion-exclusion");
  }
  double total = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    BinaryEvent meet = atoms[static_cast<std::size_t>(std::countr_zero(mask))];
    std::uint32_t rest = mask & (mask - 1);
    while (rest != 0) {
      meet = BinaryEvent::intersect(
          meet, atoms[static_cast<std::size_t>(std::countr_zero(rest))]);
      rest &= rest - 1;
    }
    const double prob = std::exp(detail::atom_log_probability(meet, p));
    total += (std::popcount(mask) % 2 == 1) ? prob : -prob;
  }
  return total;
}

// P(xi = n) assembled from the binary components: the event B_n built from
// the dyadic expansion of n, with the infinite all-empty tail product.
// Agrees with the closed-form Planck-Bose pmf to ~1e-12 relative.
inline double planck_pmf_via_binaries(std::uint64_t n, const ModeParams& p,
                                      int s_max) {
  if (s_max < 0 || s_max > 62) {
    throw std::domain_error("planck_pmf_via_binaries: s_max in [0,62]");
  }
  if (n >= (std::uint64_t{1} << (s_max + 1))) {
    throw std::domain_error(
        "planck_pmf_via_binaries: n not representable within s_max bits");
  }
  return event_probability(BinaryEvent::excitation_level(n), p);
}

enum class FactorizationKind {
  GaussEqualsDarkTimesPlanck,   // phi_eta = phi_xi phi_zeta (exact, 2 factors)
  PlanckEqualsBinaryProduct,    // phi_xi = prod_s phi_{u_s}, s <= truncation
  PlanckEqualsMultipletProduct  // phi_xi = prod_m phi_{x_m}, m <= truncation
};

// Partial sum of the Poisson exponent series,
// sum_{m=1..M} (b^m / m)(e^{i m t} - 1) -> log phi_xi(t).
inline std::complex<double> poisson_logcf_partial(double t,
                                                  const ModeParams& p, int M) {
  if (M < 1) throw std::domain_error("poisson_logcf_partial: M >= 1 required");
  std::complex<double> sum = 0.0;
  for (int m = 1; m <= M; ++m) {
    const double lambda = std::exp(-p.beta() * m) / m;
    sum += lambda * (std::polar(1.0, m * t) - 1.0);
  }
  return sum;
}

// Max over the grid of |LHS characteristic function - truncated product of
// the factor characteristic functions|.
inline double cf_factorization_residual(FactorizationKind kind,
                                        std::span<const double> t_grid,
                                        const ModeParams& p, int truncation) {
  if (truncation < 0) {
    throw std::domain_error("cf_factorization_residual: truncation >= 0");
  }
  using distributions::characteristic_function;
  double worst = 0.0;
  for (double t : t_grid) {
    std::complex<double> lhs;
    std::complex<double> rhs;
    switch (kind) {
      case FactorizationKind::GaussEqualsDarkTimesPlanck:
        lhs = characteristic_function(VariableFamily::gauss(), t, p);
        rhs = characteristic_function(VariableFamily::dark(), t, p) *
              characteristic_function(VariableFamily::planck(), t, p);
        break;
      case FactorizationKind::PlanckEqualsBinaryProduct: {
        lhs = characteristic_function(VariableFamily::planck(), t, p);
        rhs = 1.0;
        for (int s = 0; s <= truncation; ++s) {
          rhs *= characteristic_function(VariableFamily::binary(s), t, p);
        }
        break;
      }
      case FactorizationKind::PlanckEqualsMultipletProduct:
        lhs = characteristic_function(VariableFamily::planck(), t, p);
        rhs = std::exp(poisson_logcf_partial(t, p, std::max(truncation, 1)));
        break;
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace planckian::decomposition
