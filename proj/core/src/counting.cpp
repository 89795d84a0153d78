#include "cantor/counting.hpp"

#include <algorithm>

#include "cantor/error.hpp"
#include "cantor/sequences.hpp"

namespace cantor {

namespace {

std::vector<Digit> narrow_copy(const Block& block) {
  const auto span = block.entries().narrow();
  return {span.begin(), span.end()};
}

std::vector<std::size_t> failure_table(const std::vector<Digit>& pattern) {
  std::vector<std::size_t> fail(pattern.size(), 0);
  for (std::size_t i = 1, j = 0; i < pattern.size(); ++i) {
    while (j > 0 && pattern[i] != pattern[j]) j = fail[j - 1];
    if (pattern[i] == pattern[j]) ++j;
    fail[i] = j;
  }
  return fail;
}

/// Calls on_match(start) for every 1-based start <= n where the block occurs.
template <class OnMatch>
void for_each_match(const DigitString& digits, const Block& block, std::uint64_t n,
                    OnMatch&& on_match) {
  const std::size_t k = block.length();
  if (n == 0) return;
  if (digits.is_wide()) {
    for (std::uint64_t s = 0; s < n; ++s) {
      bool match = true;
      for (std::size_t i = 0; i < k && match; ++i) match = digits.equal_at(s + i, block.entries(), i);
      if (match) on_match(s + 1);
    }
    return;
  }
  // A digit above 64 bits never occurs in narrow storage.
  if (block.entries().is_wide()) return;
  const auto pattern = narrow_copy(block);
  const auto fail = failure_table(pattern);
  const auto text = digits.narrow();
  const std::size_t end = n + k - 1;
  std::size_t j = 0;
  for (std::size_t i = 0; i < end; ++i) {
    while (j > 0 && text[i] != pattern[j]) j = fail[j - 1];
    if (text[i] == pattern[j]) ++j;
    if (j == k) {
      on_match(i + 2 - k);
      j = fail[j - 1];
    }
  }
}

void require_length(const DigitString& digits, std::uint64_t required) {
  if (digits.size() < required) throw InsufficientPrefix(required, digits.size());
}

bool match_at(const DigitString& digits, std::uint64_t offset, const Block& block) {
  for (std::size_t i = 0; i < block.length(); ++i) {
    if (!digits.equal_at(offset + i, block.entries(), i)) return false;
  }
  return true;
}

/// Symbols of a word over {0..alphabet-1}; -1 marks anything else.
std::vector<std::int64_t> symbols(const DigitString& digits, std::uint64_t alphabet) {
  std::vector<std::int64_t> out(digits.size(), -1);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits.is_wide()) continue;
    const Digit d = digits.narrow()[i];
    if (d < alphabet) out[i] = static_cast<std::int64_t>(d);
  }
  return out;
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent, std::uint64_t cap) {
  std::uint64_t value = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (value > cap / base) {
      throw Error(ErrorKind::too_large, "block enumeration exceeds the cap of " + std::to_string(cap));
    }
    value *= base;
  }
  return value;
}

std::vector<std::uint64_t> enumeration_sizes(std::uint64_t alphabet, std::uint64_t k,
                                             std::uint64_t cap) {
  if (alphabet < 2) throw Error(ErrorKind::domain, "alphabet must be >= 2");
  std::vector<std::uint64_t> sizes;
  std::uint64_t total = 0;
  for (std::uint64_t m = 1; m <= k; ++m) {
    sizes.push_back(checked_power(alphabet, m, cap));
    total += sizes.back();
    if (total > cap) {
      throw Error(ErrorKind::too_large, "block enumeration exceeds the cap of " + std::to_string(cap));
    }
  }
  return sizes;
}

std::vector<Digit> decode(std::uint64_t code, std::uint64_t alphabet, std::uint64_t m) {
  std::vector<Digit> block(m);
  for (std::uint64_t i = m; i-- > 0;) {
    block[i] = code % alphabet;
    code /= alphabet;
  }
  return block;
}

std::string block_label(const std::vector<Digit>& block) {
  std::string out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(block[i]);
  }
  return out;
}

Rational slack_of(std::uint64_t count, const Rational& expected, const Rational& eps) {
  if (expected == 0) return count == 0 ? eps : Rational(-1);
  Rational deviation = Rational(Natural(count)) / expected - 1;
  if (deviation < 0) deviation = -deviation;
  return eps - deviation;
}

Real inverse_radix_sum(const BasicSequence& seq, std::uint64_t first, std::uint64_t stride,
                       std::uint64_t terms) {
  Real sum = 0;
  for (std::uint64_t j = 0; j < terms; ++j) {
    const std::uint64_t pos = first + j * stride;
    if (auto q = seq.q_u64(pos)) {
      sum += Real(1) / Real(*q);
    } else {
      sum += Real(1) / to_real(seq.q(pos));
    }
  }
  return sum;
}

void check_block_length(const Block& block, std::uint64_t k) {
  if (block.length() != k) {
    throw Error(ErrorKind::domain, "block (" + block.to_string() + ") does not have length k = " +
                                       std::to_string(k));
  }
}

}  // namespace

std::uint64_t count_occurrences(const DigitString& digits, const Block& block, std::uint64_t n) {
  require_length(digits, n + block.length() - 1);
  std::uint64_t count = 0;
  for_each_match(digits, block, n, [&](std::uint64_t) { ++count; });
  return count;
}

std::uint64_t count_occurrences(const DigitPrefix& prefix, const Block& block, std::uint64_t n) {
  return count_occurrences(prefix.digits(), block, n);
}

std::uint64_t count_strided(const DigitString& digits, const Block& block, std::uint64_t n,
                            std::uint64_t p) {
  const std::uint64_t k = block.length();
  if (p < 1 || p > k) throw Error(ErrorKind::domain, "p must lie in [1, |B|]");
  if (n == 0) throw Error(ErrorKind::domain, "n must be >= 1");
  const std::uint64_t last_j = rho(n, k);
  require_length(digits, k * (last_j + 1) + p - 1);
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j <= last_j; ++j) {
    if (match_at(digits, j * k + p - 1, block)) ++count;
  }
  return count;
}

std::uint64_t count_strided(const DigitPrefix& prefix, const Block& block, std::uint64_t n,
                            std::uint64_t p) {
  return count_strided(prefix.digits(), block, n, p);
}

std::uint64_t count_in_word(const Block& block, const Block& word) {
  if (block.length() > word.length()) return 0;
  return count_occurrences(word.entries(), block, word.length() - block.length() + 1);
}

std::vector<std::uint64_t> count_at_checkpoints(const DigitString& digits, const Block& block,
                                                const std::vector<std::uint64_t>& checkpoints) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw Error(ErrorKind::domain, "checkpoints must be sorted ascending");
  }
  std::vector<std::uint64_t> out(checkpoints.size(), 0);
  if (checkpoints.empty()) return out;
  require_length(digits, checkpoints.back() + block.length() - 1);
  std::vector<std::uint64_t> starts;
  for_each_match(digits, block, checkpoints.back(), [&](std::uint64_t s) { starts.push_back(s); });
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    out[i] = static_cast<std::uint64_t>(
        std::upper_bound(starts.begin(), starts.end(), checkpoints[i]) - starts.begin());
  }
  return out;
}

EpsNormalResult check_eps_k_normal(const Block& word, const Rational& eps, std::uint64_t k,
                                   const Weighting& mu, std::uint64_t alphabet,
                                   std::uint64_t cap) {
  if (k == 0) throw Error(ErrorKind::domain, "k must be >= 1");
  if (eps <= 0 || eps >= 1) throw Error(ErrorKind::domain, "eps must lie in (0,1)");
  if (word.length() < k) throw Error(ErrorKind::domain, "word is shorter than k");
  const auto sizes = enumeration_sizes(alphabet, k, cap);
  std::uint64_t total = 0;
  for (auto s : sizes) total += s;

  const auto sym = symbols(word.entries(), alphabet);
  const Rational length(Natural(word.length()));
  EpsNormalResult result;
  for (std::uint64_t m = 1; m <= k; ++m) {
    const std::uint64_t size = sizes[m - 1];
    std::vector<std::uint64_t> hist(size, 0);
    std::uint64_t code = 0;
    std::uint64_t run = 0;
    for (std::int64_t s : sym) {
      if (s < 0) {
        run = 0;
        code = 0;
        continue;
      }
      code = (code * alphabet + static_cast<std::uint64_t>(s)) % size;
      if (++run >= m) ++hist[code];
    }
    std::optional<BlockMargin> tightest;
    for (std::uint64_t c = 0; c < size; ++c) {
      auto block = decode(c, alphabet, m);
      const Rational expected = mu.weight(block) * length;
      BlockMargin margin{std::move(block), hist[c], expected, slack_of(hist[c], expected, eps)};
      if (margin.slack < 0) result.pass = false;
      if (!tightest || margin.slack < tightest->slack) tightest = margin;
      if (total <= margin_detail_cap) result.margins.push_back(std::move(margin));
    }
    result.tightest_by_length.push_back(std::move(*tightest));
    result.blocks_checked += size;
  }
  return result;
}

StatReport normality_report(const DigitPrefix& prefix, std::uint64_t n, std::uint64_t k,
                            const std::vector<Block>& blocks) {
  if (n == 0 || k == 0) throw Error(ErrorKind::domain, "n and k must be >= 1");
  for (const auto& b : blocks) check_block_length(b, k);
  require_length(prefix.digits(), n + k - 1);
  const auto checkpoints = geometric_checkpoints(n);
  const auto q = q_partial_real(prefix.sequence(), k, checkpoints);

  StatReport report;
  std::optional<double> lo;
  std::optional<double> hi;
  for (const auto& block : blocks) {
    const auto counts = count_at_checkpoints(prefix.digits(), block, checkpoints);
    StatSeries series;
    series.name = "N/Q:" + block.to_string();
    series.params = Json{{"block", block.to_string()}, {"k", k}};
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      const double ratio = (Real(counts[i]) / q[i]).convert_to<double>();
      series.values.push_back(
          StatPoint{checkpoints[i], ratio, Json{{"N", counts[i]}, {"Q", to_string(q[i], 20)}}});
    }
    const double last = *series.values.back().value;
    lo = lo ? std::min(*lo, last) : last;
    hi = hi ? std::max(*hi, last) : last;
    report.series.push_back(std::move(series));
  }
  report.summary = Json{{"n", n}, {"k", k}, {"Q_n", to_string(q.back(), 20)}};
  report.summary["min_ratio"] = lo ? Json(*lo) : Json(nullptr);
  report.summary["max_ratio"] = hi ? Json(*hi) : Json(nullptr);
  return report;
}

StatReport strong_normality_report(const DigitPrefix& prefix, std::uint64_t n, std::uint64_t k,
                                   std::uint64_t alphabet, std::uint64_t cap) {
  if (n == 0 || k == 0) throw Error(ErrorKind::domain, "n and k must be >= 1");
  const auto sizes = enumeration_sizes(alphabet, k, cap);
  const DigitString& digits = prefix.digits();
  std::uint64_t required = 0;
  for (std::uint64_t m = 1; m <= k; ++m) required = std::max(required, m * (rho(n, m) + 1) + m - 1);
  require_length(digits, required);
  const auto sym = symbols(digits, alphabet);

  StatReport report;
  std::optional<double> lo;
  std::optional<double> hi;
  Json lead_summary = Json::object();
  for (std::uint64_t m = 1; m <= k; ++m) {
    const std::uint64_t terms = rho(n, m) + 1;
    for (std::uint64_t p = 1; p <= m; ++p) {
      std::vector<std::uint64_t> hist(sizes[m - 1], 0);
      std::vector<std::uint64_t> lead(alphabet, 0);
      for (std::uint64_t j = 0; j < terms; ++j) {
        const std::uint64_t start = j * m + p - 1;
        if (sym[start] >= 0) ++lead[static_cast<std::uint64_t>(sym[start])];
        std::uint64_t code = 0;
        bool valid = true;
        for (std::uint64_t i = 0; i < m && valid; ++i) {
          valid = sym[start + i] >= 0;
          if (valid) code = code * alphabet + static_cast<std::uint64_t>(sym[start + i]);
        }
        if (valid) ++hist[code];
      }
      const Real q = q_partial_strided_real(prefix.sequence(), n, m, p);
      for (std::uint64_t c = 0; c < hist.size(); ++c) {
        const auto label = block_label(decode(c, alphabet, m));
        const double ratio = (Real(hist[c]) / q).convert_to<double>();
        StatSeries series;
        series.name = "strong:m=" + std::to_string(m) + ",p=" + std::to_string(p) + ",B=" + label;
        series.params = Json{{"m", m}, {"p", p}, {"block", label}};
        series.values.push_back(StatPoint{n, ratio, Json{{"N", hist[c]}, {"Q", to_string(q, 20)}}});
        lo = lo ? std::min(*lo, ratio) : ratio;
        hi = hi ? std::max(*hi, ratio) : ratio;
        report.series.push_back(std::move(series));
      }
      if (m < 2) continue;
      const Real expected = inverse_radix_sum(prefix.sequence(), p, m, terms);
      for (std::uint64_t d = 0; d < alphabet; ++d) {
        const double ratio = (Real(lead[d]) / expected).convert_to<double>();
        StatSeries series;
        series.name = "lead:m=" + std::to_string(m) + ",p=" + std::to_string(p) + ",d=" +
                      std::to_string(d);
        series.params = Json{{"m", m}, {"p", p}, {"digit", d}};
        series.values.push_back(
            StatPoint{n, ratio, Json{{"N", lead[d]}, {"expected", to_string(expected, 20)}}});
        report.series.push_back(std::move(series));
      }
    }
  }
  report.summary = Json{{"n", n}, {"k", k}, {"alphabet", alphabet}};
  report.summary["min_ratio"] = lo ? Json(*lo) : Json(nullptr);
  report.summary["max_ratio"] = hi ? Json(*hi) : Json(nullptr);
  return report;
}

StatReport ratio_report(const DigitPrefix& prefix, std::uint64_t n, std::uint64_t k,
                        const std::vector<Block>& blocks) {
  if (n == 0 || k == 0) throw Error(ErrorKind::domain, "n and k must be >= 1");
  for (const auto& b : blocks) check_block_length(b, k);
  std::vector<std::uint64_t> counts;
  for (const auto& b : blocks) counts.push_back(count_occurrences(prefix, b, n));

  StatReport report;
  std::uint64_t undefined = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      StatSeries series;
      series.name = "ratio:" + blocks[i].to_string() + "/" + blocks[j].to_string();
      series.params = Json{{"block", blocks[i].to_string()}, {"other", blocks[j].to_string()}};
      StatPoint point{n, std::nullopt, Json{{"N", counts[i]}, {"N_other", counts[j]}}};
      if (counts[j] > 0) {
        point.value = static_cast<double>(counts[i]) / static_cast<double>(counts[j]);
      } else {
        point.detail["undefined"] = "zero denominator";
        ++undefined;
      }
      series.values.push_back(std::move(point));
      report.series.push_back(std::move(series));
    }
  }
  report.summary = Json{{"n", n}, {"k", k}, {"undefined_pairs", undefined}};
  return report;
}

}  // namespace cantor
