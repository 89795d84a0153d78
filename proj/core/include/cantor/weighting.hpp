#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cantor/digits.hpp"
#include "cantor/numeric.hpp"

namespace cantor {

/// lambda_b^(k)(B) = b^(-k).
Rational uniform_weight(std::uint64_t base, const Block& block);

/// A weighting mu: either lambda_b or a finite table (blocks outside the
/// table weigh 0).
class Weighting {
 public:
  enum class Kind { uniform, table };
  using Table = std::map<std::vector<Digit>, Rational>;

  static Weighting uniform(std::uint64_t base);
  static Weighting table(Table entries);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t base() const noexcept { return base_; }
  const Table& entries() const noexcept { return table_; }

  Rational weight(const std::vector<Digit>& block) const;
  Rational weight(const Block& block) const;

  struct Consistency {
    bool ok = true;
    /// Σ_j mu^(1)(j); at most 1.
    Rational first_order_mass;
    std::vector<std::string> problems;
  };
  /// Table: mu^(m)(B) = Σ_j mu^(m+1)(B j) wherever order m+1 is tabulated, and
  /// Σ_j mu^(1)(j) <= 1, every weight in [0,1]. Uniform weightings are consistent.
  Consistency check_consistency() const;

 private:
  Kind kind_ = Kind::uniform;
  std::uint64_t base_ = 2;
  Table table_;
};

}  // namespace cantor
