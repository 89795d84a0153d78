#include "cantor/construct.hpp"

#include <algorithm>

#include "cantor/error.hpp"

namespace cantor {

namespace {

constexpr std::size_t standard_stored_stages = 4;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(separator, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                   : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Stage standard_stage(std::size_t i) {
  if (i == 1) return make_stage(Natural(0), 2, Block{0, 1}, Rational(1, 2), 1, 2);
  const std::uint64_t b = 2 * i;
  const std::uint64_t w = (2 * i + 1) * (2 * i + 1);
  return make_stage(pow(Natural(b), 9 * i + 8), b, CbwWord{b, w},
                    Rational(Natural(1), Natural(2 * i + 1)), 2 * i + 1, b);
}

Stage scaled_stage(const ScaledStage& s) {
  if (s.word) return make_stage(s.copies, s.base, *s.word, Rational(1, 2), 1, s.base);
  std::uint64_t k = 1;
  while ((k + 1) * (k + 1) <= s.width && k + 1 < s.width) ++k;
  const Rational eps = s.width == 1 ? Rational(1, 2) : Rational(Natural(k), Natural(s.width));
  return make_stage(s.copies, s.base, CbwWord{s.base, s.width}, eps, k, s.base);
}

std::vector<Digit> word_digits(const Block& block) {
  const auto span = block.entries().narrow();
  return {span.begin(), span.end()};
}

}  // namespace

Stage make_stage(Natural copies, std::uint64_t base, WordSpec word, Rational epsilon,
                 std::uint64_t k, std::uint64_t p) {
  if (copies < 0) throw Error(ErrorKind::domain, "stage copies must be >= 0");
  if (base < 2) throw Error(ErrorKind::domain, "stage base must be >= 2");
  Natural length = std::visit(
      overloaded{
          [&](const Block& b) {
            if (b.entries().is_wide() || b.max_entry() >= base) {
              throw Error(ErrorKind::domain, "word digits must be below the stage base");
            }
            return Natural(b.length());
          },
          [&](const CbwWord& c) {
            if (c.base < 2 || c.width == 0 || c.width % 2 == 0) {
              throw Error(ErrorKind::domain, "C-words need b >= 2 and odd w");
            }
            if (c.base > base) throw Error(ErrorKind::domain, "C-word base exceeds the stage base");
            return Natural(c.width) * pow(Natural(c.base), c.width);
          },
      },
      word);
  return Stage{std::move(copies), base, std::move(word), std::move(length), std::move(epsilon), k, p};
}

ConstructionSpec::ConstructionSpec(std::vector<Stage> stages, std::string descriptor,
                                   std::vector<std::string> violations, StageRule rule)
    : stages_(std::move(stages)),
      descriptor_(std::move(descriptor)),
      violations_(std::move(violations)),
      rule_(std::move(rule)) {
  if (stages_.empty()) throw Error(ErrorKind::domain, "a construction needs at least one stage");
  cumulative_.push_back(Natural(0));
  for (const auto& s : stages_) cumulative_.push_back(cumulative_.back() + s.copies * s.word_length);
  orderings_.resize(stages_.size());
}

Stage ConstructionSpec::stage(std::size_t i) const {
  if (i == 0) throw Error(ErrorKind::out_of_range, "stages are numbered from 1");
  if (i <= stages_.size()) return stages_[i - 1];
  if (!rule_) {
    throw Error(ErrorKind::beyond_schedule, "stage " + std::to_string(i) + " is beyond the schedule");
  }
  return rule_(i);
}

Natural ConstructionSpec::cumulative_length(std::size_t i) const {
  if (i < cumulative_.size()) return cumulative_[i];
  if (!rule_) {
    throw Error(ErrorKind::beyond_schedule, "stage " + std::to_string(i) + " is beyond the schedule");
  }
  Natural total = cumulative_.back();
  for (std::size_t j = stages_.size() + 1; j <= i; ++j) {
    const Stage s = rule_(j);
    total += s.copies * s.word_length;
  }
  return total;
}

ConstructionSpec::Location ConstructionSpec::locate(const Natural& n) const {
  if (n < 1) throw Error(ErrorKind::out_of_range, "positions start at 1");
  if (n <= cumulative_.back()) {
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), n);
    const auto i = static_cast<std::size_t>(it - cumulative_.begin());
    return Location{i, n - cumulative_[i - 1] - 1};
  }
  if (!rule_) {
    throw Error(ErrorKind::beyond_schedule,
                "position " + n.str() + " is beyond the schedule (L = " + cumulative_.back().str() + ")");
  }
  Natural before = cumulative_.back();
  for (std::size_t i = stages_.size() + 1;; ++i) {
    const Stage s = rule_(i);
    const Natural after = before + s.copies * s.word_length;
    if (n <= after) return Location{i, n - before - 1};
    before = after;
  }
}

std::uint64_t ConstructionSpec::radix_at(const Natural& n) const {
  if (!rule_ && n > cumulative_.back()) return stages_.back().base;
  const auto loc = locate(n);
  return loc.stage <= stages_.size() ? stages_[loc.stage - 1].base : rule_(loc.stage).base;
}

std::shared_ptr<const CbwOrdering> ConstructionSpec::ordering(std::size_t i) const {
  const Stage s = stage(i);
  const auto* word = std::get_if<CbwWord>(&s.word);
  if (!word) return nullptr;
  if (i > stages_.size()) return std::make_shared<const CbwOrdering>(word->base, word->width);
  std::lock_guard<std::mutex> lock(orderings_mutex_);
  auto& slot = orderings_[i - 1];
  if (!slot) slot = std::make_shared<const CbwOrdering>(word->base, word->width);
  return slot;
}

std::shared_ptr<const ConstructionSpec> ConstructionSpec::truncated(std::size_t count) const {
  if (count == 0) throw Error(ErrorKind::domain, "truncation needs at least one stage");
  std::vector<Stage> stages;
  for (std::size_t i = 1; i <= count; ++i) stages.push_back(stage(i));
  auto descriptor = scaled_descriptor(stages);
  return std::make_shared<const ConstructionSpec>(std::move(stages), std::move(descriptor), violations_);
}

std::shared_ptr<const ConstructionSpec> ConstructionSpec::with_copies(std::size_t i,
                                                                      Natural copies) const {
  const std::size_t count = std::max(i, stages_.size());
  std::vector<Stage> stages;
  for (std::size_t j = 1; j <= count; ++j) stages.push_back(stage(j));
  if (copies < 0) throw Error(ErrorKind::domain, "stage copies must be >= 0");
  stages[i - 1].copies = std::move(copies);
  auto descriptor = scaled_descriptor(stages);
  return std::make_shared<const ConstructionSpec>(std::move(stages), std::move(descriptor), violations_);
}

std::string scaled_descriptor(const std::vector<Stage>& stages) {
  std::string out = "scaled:";
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const Stage& s = stages[i];
    if (i) out += "/";
    out += s.copies.str() + "," + std::to_string(s.base) + ",";
    if (const auto* c = std::get_if<CbwWord>(&s.word); c && c->base == s.base) {
      out += std::to_string(c->width);
    } else if (const auto* b = std::get_if<Block>(&s.word)) {
      std::string digits = b->to_string();
      std::replace(digits.begin(), digits.end(), ',', '.');
      out += "=" + digits;
    } else {
      throw Error(ErrorKind::config, "C-word base differs from the stage base; no descriptor exists");
    }
  }
  return out;
}

std::shared_ptr<const ConstructionSpec> standard_spec() {
  std::vector<Stage> stages;
  for (std::size_t i = 1; i <= standard_stored_stages; ++i) stages.push_back(standard_stage(i));
  return std::make_shared<const ConstructionSpec>(std::move(stages), "construction",
                                                  std::vector<std::string>{}, standard_stage);
}

std::shared_ptr<const ConstructionSpec> scaled_spec(const std::vector<ScaledStage>& params,
                                                    std::optional<std::size_t> count) {
  const std::size_t n = count ? std::min(*count, params.size()) : params.size();
  if (n == 0) throw Error(ErrorKind::domain, "a scaled spec needs at least one stage");
  std::vector<Stage> stages;
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < n; ++i) {
    const ScaledStage& p = params[i];
    const std::string at = " at stage " + std::to_string(i + 1);
    if (p.base < 2) throw Error(ErrorKind::domain, "base must be >= 2" + at);
    if (!p.word && p.width % 2 == 0) {
      throw Error(ErrorKind::domain, "C-words need an odd width" + at);
    }
    if (i > 0 && p.base < params[i - 1].base) violations.push_back("base decreases" + at);
    if (i > 1 && p.copies < params[i - 1].copies) violations.push_back("copies decrease" + at);
    stages.push_back(scaled_stage(p));
  }
  auto descriptor = scaled_descriptor(stages);
  return std::make_shared<const ConstructionSpec>(std::move(stages), std::move(descriptor),
                                                  std::move(violations));
}

std::shared_ptr<const ConstructionSpec> parse_scaled_spec(std::string_view body) {
  std::vector<ScaledStage> params;
  for (auto part : split(body, '/')) {
    const auto fields = split(part, ',');
    if (fields.size() != 3 || fields[2].empty()) {
      throw Error(ErrorKind::parse, "scaled stage must be 'l,b,w' or 'l,b,=d.d.d', got '" +
                                        std::string(part) + "'");
    }
    ScaledStage stage;
    stage.copies = parse_natural(fields[0]);
    stage.base = to_u64(parse_natural(fields[1]));
    if (fields[2].front() == '=') {
      std::vector<Digit> digits;
      for (auto d : split(fields[2].substr(1), '.')) digits.push_back(to_u64(parse_natural(d)));
      stage.word = Block(std::move(digits));
    } else {
      stage.width = to_u64(parse_natural(fields[2]));
    }
    params.push_back(std::move(stage));
  }
  return scaled_spec(params);
}

SpecDigit spec_digit_at(const ConstructionSpec& spec, const Natural& n) {
  const auto loc = spec.locate(n);
  const Stage s = spec.stage(loc.stage);
  const Natural index = loc.offset % s.word_length;
  if (const auto* b = std::get_if<Block>(&s.word)) {
    return SpecDigit{to_u64(b->entries().value(to_u64(index))), s.base};
  }
  return SpecDigit{spec.ordering(loc.stage)->digit_at(index + 1), s.base};
}

SpecStream::SpecStream(std::shared_ptr<const ConstructionSpec> spec, Natural start,
                       std::uint64_t cap)
    : spec_(std::move(spec)), cap_(cap), position_(std::move(start)) {
  const auto loc = spec_->locate(position_);
  enter_stage(loc.stage, loc.offset);
}

void SpecStream::enter_stage(std::size_t stage, const Natural& offset) {
  const Stage s = spec_->stage(stage);
  stage_ = stage;
  radix_ = s.base;
  stage_remaining_ = s.copies * s.word_length - offset;
  const Natural word_offset = offset % s.word_length;
  slot_mode_ = false;
  ordering_.reset();
  slot_digits_.clear();
  if (const auto* b = std::get_if<Block>(&s.word)) {
    word_ = std::make_shared<const std::vector<Digit>>(word_digits(*b));
    word_offset_ = to_u64(word_offset);
    return;
  }
  ordering_ = spec_->ordering(stage);
  if (s.word_length <= cap_) {
    word_ = std::make_shared<const std::vector<Digit>>(ordering_->materialize(cap_));
    word_offset_ = to_u64(word_offset);
    return;
  }
  word_.reset();
  slot_mode_ = true;
  Natural slot_offset;
  mp::divide_qr(word_offset, Natural(ordering_->width()), slot_index_, slot_offset);
  slot_offset_ = to_u64(slot_offset);
}

void SpecStream::load_slot() { slot_digits_ = ordering_->block_at(slot_index_); }

SpecDigit SpecStream::next() {
  while (stage_remaining_ == 0) enter_stage(stage_ + 1, Natural(0));
  Digit digit;
  if (!slot_mode_) {
    digit = (*word_)[word_offset_];
    if (++word_offset_ == word_->size()) word_offset_ = 0;
  } else {
    if (slot_digits_.empty()) load_slot();
    digit = slot_digits_[slot_offset_];
    if (++slot_offset_ == ordering_->width()) {
      slot_offset_ = 0;
      ++slot_index_;
      if (slot_index_ == ordering_->block_count()) slot_index_ = 0;
      slot_digits_.clear();
    }
  }
  --stage_remaining_;
  ++position_;
  return SpecDigit{digit, radix_};
}

StreamedDigits stream_digits(std::shared_ptr<const ConstructionSpec> spec, const Natural& start,
                             std::uint64_t count) {
  StreamedDigits out;
  if (count == 0) {
    spec->locate(start);
    return out;
  }
  SpecStream stream(std::move(spec), start);
  out.digits.reserve(count);
  out.radices.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto d = stream.next();
    out.digits.push_back(d.digit);
    out.radices.push_back(d.radix);
  }
  return out;
}

DigitPrefix construction_prefix(std::shared_ptr<const ConstructionSpec> spec, std::uint64_t n) {
  auto streamed = stream_digits(spec, Natural(1), n);
  return DigitPrefix(BasicSequence::construction(std::move(spec)), std::move(streamed.digits));
}

StatReport wgood_ratios(const ConstructionSpec& spec, std::uint64_t k, std::size_t i_first,
                        std::size_t i_last) {
  if (k == 0) throw Error(ErrorKind::domain, "k must be >= 1");
  if (i_first < 2 || i_last < i_first) throw Error(ErrorKind::domain, "need 2 <= i_first <= i_last");
  struct Series {
    const char* name;
    std::vector<std::optional<Rational>> values;
  };
  Series r1{"r1", {}};
  Series r2{"r2", {}};
  Series r3{"r3", {}};
  for (std::size_t i = i_first; i <= i_last; ++i) {
    const Stage prev = spec.stage(i - 1);
    const Stage cur = spec.stage(i);
    const Stage next = spec.stage(i + 1);
    const Rational bk(pow(Natural(cur.base), k));
    const Rational x_prev(prev.word_length);
    const Rational x_cur(cur.word_length);
    const Rational x_next(next.word_length);
    const Rational eps_gap = prev.epsilon - cur.epsilon;
    r1.values.push_back(eps_gap != 0 ? std::optional<Rational>(bk / (eps_gap * x_cur)) : std::nullopt);
    const Rational stage_len = Rational(cur.copies) * x_cur;
    if (stage_len == 0) {
      r2.values.push_back(std::nullopt);
      r3.values.push_back(std::nullopt);
    } else {
      r2.values.push_back(Rational(prev.copies) * x_prev / stage_len * Rational(Natural(i)) * bk);
      r3.values.push_back(x_next / stage_len * bk);
    }
  }
  StatReport report;
  for (auto* s : {&r1, &r2, &r3}) {
    bool decreasing = true;
    for (std::size_t j = 0; j < s->values.size(); ++j) {
      if (!s->values[j]) decreasing = false;
      if (j > 0 && s->values[j] && s->values[j - 1] && !(*s->values[j] < *s->values[j - 1])) {
        decreasing = false;
      }
    }
    StatSeries series;
    series.name = s->name;
    series.params = Json{{"k", k}, {"strictly_decreasing", decreasing}};
    for (std::size_t j = 0; j < s->values.size(); ++j) {
      const std::uint64_t i = i_first + j;
      StatPoint point{i, std::nullopt, Json::object()};
      if (!s->values[j]) {
        point.detail["undefined"] = "zero denominator";
      } else {
        const Rational& v = *s->values[j];
        const Real real = to_real(v);
        point.value = real.convert_to<double>();
        point.detail["decimal"] = to_string(real, 20);
        point.detail["log10"] = v > 0 ? Json(log10_of(v).convert_to<double>()) : Json(nullptr);
      }
      series.values.push_back(std::move(point));
    }
    report.series.push_back(std::move(series));
  }
  report.summary = Json{{"k", k}, {"i_first", i_first}, {"i_last", i_last}, {"spec", spec.descriptor()}};
  bool all = true;
  for (const auto& s : report.series) all = all && s.params["strictly_decreasing"].get<bool>();
  report.summary["all_strictly_decreasing"] = all;
  return report;
}

DigitPrefix ratio_normal_transform(const DigitPrefix& source, const BasicSequence& target) {
  DigitString digits;
  digits.reserve(source.length());
  for (std::uint64_t n = 1; n <= source.length(); ++n) {
    const Natural cap = target.q(n) - 1;
    const Natural e = source.digit(n);
    digits.push_back(e < cap ? e : cap);
  }
  return DigitPrefix(target, std::move(digits));
}

DigitPrefix champernowne_prefix(std::uint64_t base, std::uint64_t n) {
  if (base < 2) throw Error(ErrorKind::domain, "base must be >= 2");
  std::vector<Digit> digits;
  digits.reserve(n);
  std::vector<Digit> numeral;
  for (std::uint64_t v = 1; digits.size() < n; ++v) {
    numeral.clear();
    for (std::uint64_t x = v; x > 0; x /= base) numeral.push_back(x % base);
    for (auto it = numeral.rbegin(); it != numeral.rend() && digits.size() < n; ++it) {
      digits.push_back(*it);
    }
  }
  return DigitPrefix(BasicSequence::constant(Natural(base)), DigitString(std::move(digits)));
}

}  // namespace cantor
