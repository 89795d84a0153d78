#include "cantor/weighting.hpp"

#include <set>

#include "cantor/error.hpp"

namespace cantor {

namespace {

std::string block_text(const std::vector<Digit>& block) {
  std::string out = "(";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(block[i]);
  }
  return out + ")";
}

}  // namespace

Rational uniform_weight(std::uint64_t base, const Block& block) {
  if (base < 2) throw Error(ErrorKind::domain, "base must be >= 2");
  return Rational(Natural(1), pow(Natural(base), block.length()));
}

Weighting Weighting::uniform(std::uint64_t base) {
  if (base < 2) throw Error(ErrorKind::domain, "base must be >= 2");
  Weighting w;
  w.kind_ = Kind::uniform;
  w.base_ = base;
  return w;
}

Weighting Weighting::table(Table entries) {
  for (const auto& [block, value] : entries) {
    if (block.empty()) throw Error(ErrorKind::domain, "weighting table holds an empty block");
  }
  Weighting w;
  w.kind_ = Kind::table;
  w.table_ = std::move(entries);
  return w;
}

Rational Weighting::weight(const std::vector<Digit>& block) const {
  if (block.empty()) throw Error(ErrorKind::domain, "blocks are non-empty");
  if (kind_ == Kind::uniform) {
    for (Digit d : block) {
      if (d >= base_) return Rational(0);
    }
    return Rational(Natural(1), pow(Natural(base_), block.size()));
  }
  auto it = table_.find(block);
  return it == table_.end() ? Rational(0) : it->second;
}

Rational Weighting::weight(const Block& block) const {
  if (block.entries().is_wide()) return Rational(0);
  const auto narrow = block.entries().narrow();
  return weight(std::vector<Digit>(narrow.begin(), narrow.end()));
}

Weighting::Consistency Weighting::check_consistency() const {
  Consistency result;
  if (kind_ == Kind::uniform) {
    result.first_order_mass = 1;
    return result;
  }
  std::set<std::size_t> orders;
  for (const auto& [block, value] : table_) {
    orders.insert(block.size());
    if (value < 0 || value > 1) {
      result.ok = false;
      result.problems.push_back("weight of " + block_text(block) + " is outside [0,1]");
    }
    if (block.size() == 1) result.first_order_mass += value;
  }
  if (result.first_order_mass > 1) {
    result.ok = false;
    result.problems.push_back("order-1 weights sum above 1");
  }
  // Sum the extensions of each order-m block by one digit.
  std::map<std::vector<Digit>, Rational> extension_sums;
  for (const auto& [block, value] : table_) {
    if (block.size() < 2) continue;
    extension_sums[std::vector<Digit>(block.begin(), block.end() - 1)] += value;
  }
  for (const auto& [block, value] : table_) {
    if (!orders.count(block.size() + 1)) continue;
    auto it = extension_sums.find(block);
    const Rational sum = it == extension_sums.end() ? Rational(0) : it->second;
    if (sum != value) {
      result.ok = false;
      result.problems.push_back("weight of " + block_text(block) + " is " + to_string(value) +
                                " but its extensions sum to " + to_string(sum));
    }
  }
  for (const auto& [prefix, sum] : extension_sums) {
    if (!table_.count(prefix) && sum != 0) {
      result.ok = false;
      result.problems.push_back("extensions of untabulated " + block_text(prefix) + " carry weight");
    }
  }
  return result;
}

}  // namespace cantor
