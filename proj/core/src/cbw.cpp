#include "cantor/cbw.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

namespace {

struct DigitClass {
  Digit lo;
  Digit hi;
  Digit value_for_score;  // representative digit: 0, 1 or "other"
};

std::vector<DigitClass> digit_classes(std::uint64_t base) {
  std::vector<DigitClass> classes{{0, 0, 0}, {1, 1, 1}};
  if (base > 2) classes.push_back({2, base - 1, 2});
  return classes;
}

int f(Digit d) { return d == 0 ? 1 : (d == 1 ? -2 : 0); }

}  // namespace

int CbwOrdering::contribution(std::uint64_t r, Digit d) const {
  return (r % 2 == 0) ? f(d) : -f(d);
}

CbwOrdering::CbwOrdering(std::uint64_t base, std::uint64_t width) : base_(base), width_(width) {
  if (base < 2) throw Error(ErrorKind::domain, "C_{b,w} needs b >= 2");
  if (width == 0 || width % 2 == 0) throw Error(ErrorKind::domain, "C_{b,w} needs an odd width w");
  if (width > 100'000) throw Error(ErrorKind::too_large, "C_{b,w} width too large");
  offset_ = static_cast<std::int64_t>(2 * width);
  const std::size_t size = 4 * width + 1;
  const auto classes = digit_classes(base);

  base_powers_.resize(width + 1);
  base_powers_[0] = 1;
  for (std::uint64_t i = 1; i <= width; ++i) base_powers_[i] = base_powers_[i - 1] * base;
  block_count_ = base_powers_[width];
  even_slots_ = (block_count_ + 1) / 2;

  auto at = [&](const std::vector<Natural>& row, std::int64_t g) -> Natural {
    const std::int64_t i = g + offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(size)) return Natural(0);
    return row[static_cast<std::size_t>(i)];
  };

  suffix_.assign(width + 1, std::vector<Natural>(size, Natural(0)));
  suffix_[width][index(0)] = 1;
  for (std::uint64_t r = width; r-- > 0;) {
    for (std::size_t i = 0; i < size; ++i) {
      const std::int64_t g = static_cast<std::int64_t>(i) - offset_;
      Natural sum = 0;
      for (const auto& cls : classes) {
        sum += (cls.hi - cls.lo + 1) * at(suffix_[r + 1], g - contribution(r, cls.value_for_score));
      }
      suffix_[r][i] = std::move(sum);
    }
  }
  greater_.assign(width + 1, std::vector<Natural>(size, Natural(0)));
  for (std::uint64_t r = 0; r <= width; ++r) {
    for (std::size_t i = size - 1; i-- > 0;) greater_[r][i] = greater_[r][i + 1] + suffix_[r][i + 1];
  }

  // Threshold level g* and how many blocks of that level the even slots take.
  Natural above = 0;
  for (std::int64_t g = offset_; g >= -offset_; --g) {
    const Natural& level = suffix_[0][index(g)];
    if (above + level >= even_slots_) {
      threshold_score_ = g;
      threshold_take_ = even_slots_ - above;
      break;
    }
    above += level;
  }

  // Threshold block: the threshold_take_-th block of level g* in lex order.
  threshold_block_.assign(width, 0);
  Natural rank = threshold_take_ - 1;
  std::int64_t remaining = threshold_score_;
  for (std::uint64_t r = 0; r < width; ++r) {
    bool placed = false;
    for (const auto& cls : classes) {
      const int c = contribution(r, cls.value_for_score);
      const Natural per = at(suffix_[r + 1], remaining - c);
      const Natural total = per * (cls.hi - cls.lo + 1);
      if (rank < total) {
        Natural q;
        Natural rem;
        mp::divide_qr(rank, per, q, rem);
        threshold_block_[r] = cls.lo + to_u64(q);
        rank = rem;
        remaining -= c;
        placed = true;
        break;
      }
      rank -= total;
    }
    if (!placed) throw Error(ErrorKind::domain, "C_{b,w}: threshold block not found");
  }

  tight_.assign(width + 1, std::vector<Natural>(size, Natural(0)));
  tight_[width][index(0)] = 1;
  for (std::uint64_t r = width; r-- > 0;) {
    const Digit y = threshold_block_[r];
    for (std::size_t i = 0; i < size; ++i) {
      const std::int64_t g = static_cast<std::int64_t>(i) - offset_;
      Natural sum = 0;
      for (const auto& cls : classes) {
        if (cls.lo >= y) continue;
        const Digit hi = std::min<Digit>(cls.hi, y - 1);
        sum += (hi - cls.lo + 1) * at(suffix_[r + 1], g - contribution(r, cls.value_for_score));
      }
      sum += at(tight_[r + 1], g - contribution(r, y));
      tight_[r][i] = std::move(sum);
    }
  }
}

Natural CbwOrdering::count_suffix(std::uint64_t r, std::int64_t target) const {
  const std::int64_t i = target + offset_;
  if (i < 0 || i >= static_cast<std::int64_t>(suffix_[r].size())) return Natural(0);
  return suffix_[r][static_cast<std::size_t>(i)];
}

Natural CbwOrdering::count_greater(std::uint64_t r, std::int64_t target) const {
  const std::int64_t i = target + offset_;
  if (i < 0) return base_powers_[width_ - r];
  if (i >= static_cast<std::int64_t>(greater_[r].size())) return Natural(0);
  return greater_[r][static_cast<std::size_t>(i)];
}

Natural CbwOrdering::count_in_even_set(std::uint64_t r, std::int64_t prefix_score,
                                       Tight tight) const {
  const std::int64_t t = threshold_score_ - prefix_score;
  Natural count = count_greater(r, t);
  if (tight == Tight::below) {
    count += count_suffix(r, t);
  } else if (tight == Tight::equal) {
    const std::int64_t i = t + offset_;
    if (i >= 0 && i < static_cast<std::int64_t>(tight_[r].size())) {
      count += tight_[r][static_cast<std::size_t>(i)];
    }
  }
  return count;
}

std::vector<Digit> CbwOrdering::unrank(Natural rank, bool even_set) const {
  struct Range {
    Digit lo;
    Digit hi;
    Tight tight;
  };
  const auto classes = digit_classes(base_);
  std::vector<Digit> block(width_, 0);
  std::int64_t score = 0;
  Tight tight = Tight::equal;
  for (std::uint64_t r = 0; r < width_; ++r) {
    bool placed = false;
    for (const auto& cls : classes) {
      const int c = contribution(r, cls.value_for_score);
      std::vector<Range> ranges;
      if (tight != Tight::equal) {
        ranges.push_back({cls.lo, cls.hi, tight});
      } else {
        const Digit y = threshold_block_[r];
        if (cls.lo < y) ranges.push_back({cls.lo, std::min<Digit>(cls.hi, y - 1), Tight::below});
        if (cls.lo <= y && y <= cls.hi) ranges.push_back({y, y, Tight::equal});
        if (cls.hi > y) ranges.push_back({std::max<Digit>(cls.lo, y + 1), cls.hi, Tight::above});
      }
      for (const auto& range : ranges) {
        Natural per = count_in_even_set(r + 1, score + c, range.tight);
        if (!even_set) per = base_powers_[width_ - r - 1] - per;
        const Natural total = per * (range.hi - range.lo + 1);
        if (rank < total) {
          Natural q;
          Natural rem;
          mp::divide_qr(rank, per, q, rem);
          block[r] = range.lo + to_u64(q);
          rank = rem;
          score += c;
          tight = range.tight;
          placed = true;
          break;
        }
        rank -= total;
      }
      if (placed) break;
    }
    if (!placed) throw Error(ErrorKind::out_of_range, "C_{b,w} rank out of range");
  }
  return block;
}

std::vector<Digit> CbwOrdering::block_at(const Natural& slot) const {
  if (slot < 0 || slot >= block_count_) throw Error(ErrorKind::out_of_range, "C_{b,w} slot out of range");
  if (slot % 2 == 0) return unrank(slot / 2, true);
  return unrank((slot - 1) / 2, false);
}

Digit CbwOrdering::digit_at(const Natural& idx) const {
  if (idx < 1 || idx > length()) {
    throw Error(ErrorKind::out_of_range, "C_{b,w} index " + idx.str() + " outside [1, " +
                                             length().str() + "]");
  }
  Natural slot;
  Natural offset;
  mp::divide_qr(Natural(idx - 1), Natural(width_), slot, offset);
  return block_at(slot)[to_u64(offset)];
}

Integer CbwOrdering::score(const std::vector<Digit>& block) const {
  if (block.size() != width_) throw Error(ErrorKind::length_mismatch, "block length differs from w");
  std::int64_t g = 0;
  for (std::uint64_t r = 0; r < width_; ++r) g += contribution(r, block[r]);
  return Integer(g);
}

Integer CbwOrdering::best_bias() const {
  const std::uint64_t odd_offsets = (width_ - 1) / 2;
  Integer total = -Integer(odd_offsets) * base_powers_[width_ - 1];
  for (std::int64_t g = offset_; g > threshold_score_; --g) total += Integer(g) * suffix_[0][index(g)];
  total += Integer(threshold_score_) * threshold_take_;
  return total;
}

std::vector<Digit> CbwOrdering::materialize(std::uint64_t cap) const {
  const auto count = try_u64(block_count_);
  if (!count || *count > cap / width_) {
    throw Error(ErrorKind::too_large, "C_{" + std::to_string(base_) + "," + std::to_string(width_) +
                                          "} has " + length().str() + " digits, above the cap of " +
                                          std::to_string(cap));
  }
  std::vector<Digit> out(*count * width_);
  std::vector<Digit> block(width_, 0);
  const std::uint64_t take = to_u64(threshold_take_);
  std::uint64_t taken = 0;
  std::uint64_t even_index = 0;
  std::uint64_t odd_index = 0;
  for (std::uint64_t b = 0; b < *count; ++b) {
    std::int64_t g = 0;
    for (std::uint64_t r = 0; r < width_; ++r) g += contribution(r, block[r]);
    bool in_even = g > threshold_score_;
    if (g == threshold_score_ && taken < take) {
      in_even = true;
      ++taken;
    }
    const std::uint64_t slot = in_even ? 2 * even_index++ : 2 * odd_index++ + 1;
    std::copy(block.begin(), block.end(), out.begin() + static_cast<std::ptrdiff_t>(slot * width_));
    for (std::uint64_t r = width_; r-- > 0;) {
      if (++block[r] < base_) break;
      block[r] = 0;
    }
  }
  return out;
}

CbwOrdering::OddCounts CbwOrdering::odd_counts() const {
  const std::size_t size = 4 * width_ + 1;
  const auto classes = digit_classes(base_);
  auto at = [&](const std::vector<Integer>& row, std::int64_t g) -> Integer {
    const std::int64_t i = g + offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(size)) return Integer(0);
    return row[static_cast<std::size_t>(i)];
  };
  // Sum over the even set of (#v at even offsets - #v at odd offsets).
  auto even_set_excess = [&](Digit v) {
    std::vector<std::vector<Integer>> moment(width_ + 1, std::vector<Integer>(size, Integer(0)));
    std::vector<std::vector<Integer>> tight(width_ + 1, std::vector<Integer>(size, Integer(0)));
    for (std::uint64_t r = width_; r-- > 0;) {
      const int sign = (r % 2 == 0) ? 1 : -1;
      const Digit y = threshold_block_[r];
      for (std::size_t i = 0; i < size; ++i) {
        const std::int64_t g = static_cast<std::int64_t>(i) - offset_;
        Integer full = 0;
        Integer below = 0;
        for (const auto& cls : classes) {
          const std::int64_t rest = g - contribution(r, cls.value_for_score);
          const bool hit = cls.lo == v && cls.hi == v;
          const Integer per = at(moment[r + 1], rest) + (hit ? Integer(sign) * count_suffix(r + 1, rest) : Integer(0));
          full += (cls.hi - cls.lo + 1) * per;
          if (cls.lo < y) below += (std::min<Digit>(cls.hi, y - 1) - cls.lo + 1) * per;
        }
        const std::int64_t rest = g - contribution(r, y);
        Integer tight_count = 0;
        if (const std::int64_t j = rest + offset_; j >= 0 && j < static_cast<std::int64_t>(size)) {
          tight_count = tight_[r + 1][static_cast<std::size_t>(j)];
        }
        moment[r][i] = std::move(full);
        tight[r][i] = below + at(tight[r + 1], rest) + (y == v ? Integer(sign) * tight_count : Integer(0));
      }
    }
    Integer total = at(tight[0], threshold_score_);
    for (std::int64_t g = offset_; g > threshold_score_; --g) total += at(moment[0], g);
    return total;
  };
  const Natural baseline = Natural((width_ - 1) / 2) * base_powers_[width_ - 1];
  return OddCounts{baseline + even_set_excess(0), baseline + even_set_excess(1)};
}

Block build_cbw(std::uint64_t base, std::uint64_t width, std::uint64_t cap) {
  const CbwOrdering ordering(base, width);
  const Integer bias = ordering.best_bias();
  if (bias < 0) {
    throw Error(ErrorKind::bias_unachievable,
                "C_{" + std::to_string(base) + "," + std::to_string(width) +
                    "}: no arrangement has zeros_odd >= 2*ones_odd (best excess " + bias.str() + ")");
  }
  return Block(ordering.materialize(cap));
}

Digit cbw_digit_at(std::uint64_t base, std::uint64_t width, const Natural& idx) {
  return CbwOrdering(base, width).digit_at(idx);
}

CbwVerification verify_cbw(const Block& word, std::uint64_t base, std::uint64_t width) {
  if (base < 2 || width == 0) throw Error(ErrorKind::domain, "need b >= 2 and w >= 1");
  const Natural expected = Natural(width) * pow(Natural(base), width);
  if (Natural(word.length()) != expected) {
    throw Error(ErrorKind::length_mismatch, "word length " + std::to_string(word.length()) +
                                                " differs from w*b^w = " + expected.str());
  }
  CbwVerification result;
  const DigitString& digits = word.entries();
  const std::uint64_t blocks = word.length() / width;
  std::vector<bool> seen(blocks, false);
  result.complete = !digits.is_wide();
  for (std::uint64_t s = 0; s < blocks && result.complete; ++s) {
    std::uint64_t code = 0;
    for (std::uint64_t r = 0; r < width; ++r) {
      const Digit d = digits.narrow()[s * width + r];
      if (d >= base) {
        result.complete = false;
        break;
      }
      code = code * base + d;
    }
    if (!result.complete) break;
    if (seen[code]) result.complete = false;
    seen[code] = true;
  }
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    const Natural d = digits.value(i);
    if (d == 0) ++result.zeros_odd;
    if (d == 1) ++result.ones_odd;
  }
  result.bias_ok = result.zeros_odd >= 2 * result.ones_odd;
  return result;
}

BiasCounts verify_bias_analytic(std::uint64_t base, std::uint64_t width) {
  const CbwOrdering ordering(base, width);
  auto counts = ordering.odd_counts();
  const bool ok = counts.zeros_odd >= 2 * counts.ones_odd;
  return BiasCounts{std::move(counts.zeros_odd), std::move(counts.ones_odd), ok};
}

}  // namespace cantor
