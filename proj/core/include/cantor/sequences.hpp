#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

class BasicSequence;
class ConstructionSpec;

namespace family {

/// q_n = b.
struct Constant {
  Natural base;
};
/// q_n = a*n + c, with a >= 0 and a + c >= 2.
struct Affine {
  Natural slope;
  Integer offset;
};
/// q_n = floor(n^alpha) + c, alpha a non-negative rational, c >= 1.
struct PowerFloor {
  Rational exponent;
  Natural offset;
};
/// q_n = 2^(2^n).
struct DoublyExponential {};
/// q_n = r^n.
struct Geometric {
  Natural ratio;
};
/// The 2-divergent but not strongly 2-divergent sequence (natural log):
///   n = 0 mod 4: max(2, floor(n^(1/4)))
///   n = 1 mod 4: max(2, floor(n^(1/4) log^2 n))
///   n = 2 mod 4: max(2, floor(n^(3/4)))
///   n = 3 mod 4: max(2, floor(n^(3/4) log^2 n))
struct Altomare {};
/// Explicit head q_1..q_m, then q_n = tail(n) for n > m (global index).
struct List {
  std::vector<Natural> head;
  std::shared_ptr<const BasicSequence> tail;
};
/// q_n = b_i on stage i of a construction schedule.
struct Construction {
  std::shared_ptr<const ConstructionSpec> spec;
};

}  // namespace family

using Family = std::variant<family::Constant, family::Affine, family::PowerFloor,
                            family::DoublyExponential, family::Geometric, family::Altomare,
                            family::List, family::Construction>;

/// A basic sequence Q = {q_n}, every q_n >= 2. Immutable; copies share state.
///
/// Descriptor mini-language (print(parse(s)) == s for canonical s):
///   const:<b>  affine:<a>,<c>  powfloor:<alpha>,<c>  dexp  geom:<r>  altomare
///   construction  scaled:<l>,<b>,<w>/<l>,<b>,<w>/...
///   list:<q1>,<q2>,...;tail=<descriptor>
class BasicSequence {
 public:
  explicit BasicSequence(Family family);

  static BasicSequence parse(std::string_view descriptor);

  static BasicSequence constant(Natural base);
  static BasicSequence affine(Natural slope, Integer offset);
  static BasicSequence power_floor(Rational exponent, Natural offset);
  static BasicSequence doubly_exponential();
  static BasicSequence geometric(Natural ratio);
  static BasicSequence altomare();
  static BasicSequence list(std::vector<Natural> head, BasicSequence tail);
  static BasicSequence construction(std::shared_ptr<const ConstructionSpec> spec);

  std::string descriptor() const;
  const Family& family() const noexcept { return *family_; }

  /// q_n for n >= 1.
  Natural q(std::uint64_t n) const;
  Natural q(const Natural& n) const;
  /// q_n when it fits in 64 bits.
  std::optional<std::uint64_t> q_u64(std::uint64_t n) const;

  /// Analytic divergence verdicts are available for this family.
  bool closed_form() const;
  /// Smallest index from which q_n is provably non-decreasing, if any.
  std::optional<Natural> monotone_from() const;

 private:
  std::shared_ptr<const Family> family_;
};

Natural q_at(const BasicSequence& seq, const Natural& n);

/// ceil(n/k) - 1, i.e. max{i : i < n/k}.
std::uint64_t rho(std::uint64_t n, std::uint64_t k);

/// Q_n^(k) = sum_{j=1}^n 1/(q_j ... q_{j+k-1}), exactly.
Rational q_partial(const BasicSequence& seq, std::uint64_t n, std::uint64_t k);
/// Q_{n,p}^(k) = sum_{j=0}^{rho(n,k)} 1/(q_{jk+p} ... q_{jk+p+k-1}), exactly.
Rational q_partial_strided(const BasicSequence& seq, std::uint64_t n, std::uint64_t k,
                           std::uint64_t p);

/// High-precision float variants. `checkpoints` must be sorted ascending;
/// returns the partial sum at each checkpoint.
std::vector<Real> q_partial_real(const BasicSequence& seq, std::uint64_t k,
                                 const std::vector<std::uint64_t>& checkpoints);
std::vector<Real> q_partial_strided_real(const BasicSequence& seq, std::uint64_t k,
                                         std::uint64_t p,
                                         const std::vector<std::uint64_t>& checkpoints);
Real q_partial_real(const BasicSequence& seq, std::uint64_t n, std::uint64_t k);
Real q_partial_strided_real(const BasicSequence& seq, std::uint64_t n, std::uint64_t k,
                            std::uint64_t p);

struct TailIndex {
  std::uint64_t index = 0;
  /// True when the family is provably non-decreasing from `index` on, so the
  /// property holds for every n >= index, not just up to the horizon.
  bool analytic = false;
};

/// Least m <= horizon with q_n > k for all n in [m, horizon].
std::optional<TailIndex> tail_index(const BasicSequence& seq, const Natural& k,
                                    std::uint64_t horizon);

/// Radices q_first..q_{first+count-1} when all fit in 64 bits.
std::optional<std::vector<std::uint64_t>> radices_u64(const BasicSequence& seq,
                                                      std::uint64_t first, std::uint64_t count);

}  // namespace cantor
