#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantor/cbw.hpp"
#include "cantor/digits.hpp"
#include "cantor/expansion.hpp"
#include "cantor/numeric.hpp"
#include "cantor/report.hpp"

namespace cantor {

struct CbwWord {
  std::uint64_t base = 2;
  std::uint64_t width = 1;
};

using WordSpec = std::variant<Block, CbwWord>;

/// One (l_i, b_i, x_i) entry of a construction, with its diagnostic schedule.
struct Stage {
  Natural copies;       // l_i
  std::uint64_t base;   // b_i
  WordSpec word;        // x_i
  Natural word_length;  // |x_i|
  Rational epsilon;     // eps_i
  std::uint64_t k;      // k_i
  std::uint64_t p;      // p_i
};

Stage make_stage(Natural copies, std::uint64_t base, WordSpec word, Rational epsilon,
                 std::uint64_t k, std::uint64_t p);

/// Digits E = l_1 x_1 l_2 x_2 ... with q_n = b_i for L_{i-1} < n <= L_i.
/// Bounded specs hold finitely many stages; unbounded specs (the standard schedule)
/// generate stage i on demand from a pure rule. Immutable.
class ConstructionSpec {
 public:
  using StageRule = std::function<Stage(std::size_t)>;

  ConstructionSpec(std::vector<Stage> stages, std::string descriptor,
                   std::vector<std::string> violations = {}, StageRule rule = {});

  const std::string& descriptor() const noexcept { return descriptor_; }
  const std::vector<std::string>& violations() const noexcept { return violations_; }
  bool unbounded() const noexcept { return static_cast<bool>(rule_); }
  std::size_t stored_stages() const noexcept { return stages_.size(); }

  /// 1-based stage i. Out of range for bounded specs past the last stage.
  Stage stage(std::size_t i) const;
  /// L_i, with L_0 = 0.
  Natural cumulative_length(std::size_t i) const;
  /// L_I of the last stored stage.
  const Natural& stored_length() const { return cumulative_.back(); }

  struct Location {
    std::size_t stage = 0;
    Natural offset;  // 0-based offset inside the stage
  };
  /// Stage containing position n >= 1. beyond-schedule past the end of a bounded spec.
  Location locate(const Natural& n) const;

  /// q_n; for bounded specs past L_I the last radix repeats.
  std::uint64_t radix_at(const Natural& n) const;

  /// Ordering tables for a C-word stage.
  std::shared_ptr<const CbwOrdering> ordering(std::size_t i) const;

  /// First `count` stages as a bounded spec.
  std::shared_ptr<const ConstructionSpec> truncated(std::size_t count) const;
  /// Bounded copy with l_i replaced; unbounded specs are first truncated to
  /// max(i, stored_stages()) stages.
  std::shared_ptr<const ConstructionSpec> with_copies(std::size_t i, Natural copies) const;

 private:
  std::vector<Stage> stages_;
  std::vector<Natural> cumulative_;  // cumulative_[i] = L_i
  mutable std::mutex orderings_mutex_;
  mutable std::vector<std::shared_ptr<const CbwOrdering>> orderings_;
  std::string descriptor_;
  std::vector<std::string> violations_;
  StageRule rule_;
};

/// x_1 = (0,1), b_1 = 2, l_1 = 0; for i >= 2: b_i = 2i, x_i = C_{2i,(2i+1)^2},
/// l_i = (2i)^(9i+8); eps_1 = 1/2, k_1 = 1, p_1 = 2; eps_i = 1/(2i+1),
/// k_i = 2i+1, p_i = b_i.
std::shared_ptr<const ConstructionSpec> standard_spec();

struct ScaledStage {
  Natural copies;
  std::uint64_t base = 2;
  std::uint64_t width = 1;
  /// Explicit word used instead of C_{base,width} when present.
  std::optional<Block> word;
};

/// "scaled:" descriptor of bounded stages: "l,b,w" for C-words whose base is
/// the stage base, "l,b,=d.d.d" for explicit words.
std::string scaled_descriptor(const std::vector<Stage>& stages);

/// Construction from small C-word parameters. Shape violations (b or l
/// decreasing, even w) are listed in violations(); b < 2 is rejected.
/// Diagnostic schedule: k_i = max(1, floor(sqrt(w_i)) restricted to k < w
/// when w > 1), eps_i = k_i/w_i (1/2 when w = 1), p_i = b_i.
std::shared_ptr<const ConstructionSpec> scaled_spec(const std::vector<ScaledStage>& params,
                                                    std::optional<std::size_t> count = {});

/// Parses the body of a "scaled:" descriptor ("l,b,w/l,b,=0.1/...").
std::shared_ptr<const ConstructionSpec> parse_scaled_spec(std::string_view body);

struct SpecDigit {
  Digit digit = 0;
  std::uint64_t radix = 2;
};

SpecDigit spec_digit_at(const ConstructionSpec& spec, const Natural& n);

/// Sequential reader starting at any position; whole words are materialised
/// once when they are at most `cap` digits long, otherwise decoded per slot.
class SpecStream {
 public:
  SpecStream(std::shared_ptr<const ConstructionSpec> spec, Natural start,
             std::uint64_t cap = std::uint64_t{1} << 24);

  SpecDigit next();
  const Natural& position() const noexcept { return position_; }

 private:
  void enter_stage(std::size_t stage, const Natural& offset);
  void load_slot();

  std::shared_ptr<const ConstructionSpec> spec_;
  std::uint64_t cap_;
  Natural position_;
  std::size_t stage_ = 0;
  Natural stage_remaining_;
  std::uint64_t radix_ = 2;
  // Current word, either fully materialised or decoded one slot at a time.
  std::shared_ptr<const std::vector<Digit>> word_;
  std::uint64_t word_offset_ = 0;
  std::shared_ptr<const CbwOrdering> ordering_;
  std::vector<Digit> slot_digits_;
  Natural slot_index_;
  std::uint64_t slot_offset_ = 0;
  bool slot_mode_ = false;
};

struct StreamedDigits {
  DigitString digits;
  std::vector<std::uint64_t> radices;
};

StreamedDigits stream_digits(std::shared_ptr<const ConstructionSpec> spec, const Natural& start,
                             std::uint64_t count);

/// First n digits of the spec as a DigitPrefix over its construction sequence.
DigitPrefix construction_prefix(std::shared_ptr<const ConstructionSpec> spec, std::uint64_t n);

/// Finite diagnostics for the W-good conditions, for stages i_first..i_last
/// (i_first >= 2):
///   r1 = b_i^k / ((eps_{i-1} - eps_i) |x_i|)
///   r2 = (l_{i-1}|x_{i-1}|) / (l_i|x_i|) * i * b_i^k
///   r3 = |x_{i+1}| / (l_i|x_i|) * b_i^k
/// Each series carries params.strictly_decreasing, decided exactly.
StatReport wgood_ratios(const ConstructionSpec& spec, std::uint64_t k, std::size_t i_first,
                        std::size_t i_last);

/// E_n = min(E'_n, q_n - 1) over the target sequence.
DigitPrefix ratio_normal_transform(const DigitPrefix& source, const BasicSequence& target);

/// First n digits of 0.1 2 3 ... (base b), over const:b.
DigitPrefix champernowne_prefix(std::uint64_t base, std::uint64_t n);

}  // namespace cantor
