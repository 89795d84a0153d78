#include "cantor/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cantor/construct.hpp"
#include "cantor/error.hpp"

namespace cantor {

namespace {

constexpr std::uint64_t max_doubly_exponential_index = 30;
constexpr std::uint64_t max_power_bits = std::uint64_t{1} << 30;

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
    auto pos = text.find(separator, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                   : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

__extension__ using u128 = unsigned __int128;

// floor(m^(1/4)) for m < 2^128, corrected from a floating estimate.
std::uint64_t root4(u128 m) {
  auto r = static_cast<std::uint64_t>(std::sqrt(std::sqrt(static_cast<long double>(m))));
  auto fourth = [](u128 x) { return x * x * x * x; };
  while (r > 0 && fourth(r) > m) --r;
  while (fourth(static_cast<u128>(r) + 1) <= m) ++r;
  return r;
}

Natural altomare_exact(std::uint64_t n) {
  switch (n % 4) {
    case 0: return integer_root(Natural(n), 4);
    case 2: return integer_root(pow(Natural(n), 3), 4);
    default: {
      const Real x(n);
      const Real lg = log(x);
      const Real root = (n % 4 == 1) ? sqrt(sqrt(x)) : sqrt(sqrt(x * x * x));
      return Natural(floor(root * lg * lg));
    }
  }
}

Natural altomare_q(std::uint64_t n) {
  constexpr std::uint64_t fast_limit = std::uint64_t{1} << 40;
  Natural value;
  if (n >= fast_limit) {
    value = altomare_exact(n);
  } else if (n % 4 == 0) {
    value = root4(n);
  } else if (n % 4 == 2) {
    const auto m = static_cast<u128>(n);
    value = root4(m * m * m);
  } else {
    const long double x = static_cast<long double>(n);
    const long double lg = std::log(x);
    const long double v = std::pow(x, n % 4 == 1 ? 0.25L : 0.75L) * lg * lg;
    const long double frac = v - std::floor(v);
    const long double guard = 1e-12L * std::max(1.0L, v);
    value = (frac > guard && 1 - frac > guard) ? Natural(static_cast<std::uint64_t>(v))
                                               : altomare_exact(n);
  }
  return value < 2 ? Natural(2) : value;
}

Natural power_floor_q(const family::PowerFloor& f, const Natural& n) {
  const Natural num = mp::numerator(f.exponent);
  const Natural den = mp::denominator(f.exponent);
  if (num == 0) return 1 + f.offset;
  if (num == 1 && den == 2) return integer_root(n, 2) + f.offset;
  const auto p = to_u64(num);
  const auto q = to_u64(den);
  if (q > 1'000'000) throw Error(ErrorKind::too_large, "powfloor exponent denominator too large");
  return integer_root(pow(n, p), static_cast<unsigned>(q)) + f.offset;
}

void validate(const Family& fam) {
  std::visit(overloaded{
                 [](const family::Constant& f) {
                   if (f.base < 2) throw Error(ErrorKind::domain, "const: base must be >= 2");
                 },
                 [](const family::Affine& f) {
                   if (f.slope < 0 || f.slope + f.offset < 2) {
                     throw Error(ErrorKind::domain, "affine: need a >= 0 and a + c >= 2");
                   }
                 },
                 [](const family::PowerFloor& f) {
                   if (f.exponent < 0 || f.offset < 1) {
                     throw Error(ErrorKind::domain, "powfloor: need alpha >= 0 and c >= 1");
                   }
                 },
                 [](const family::DoublyExponential&) {},
                 [](const family::Geometric& f) {
                   if (f.ratio < 2) throw Error(ErrorKind::domain, "geom: ratio must be >= 2");
                 },
                 [](const family::Altomare&) {},
                 [](const family::List& f) {
                   if (!f.tail) throw Error(ErrorKind::domain, "list: missing tail");
                   for (const auto& q : f.head) {
                     if (q < 2) throw Error(ErrorKind::domain, "list: every q_n must be >= 2");
                   }
                 },
                 [](const family::Construction& f) {
                   if (!f.spec) throw Error(ErrorKind::domain, "construction: missing spec");
                 },
             },
             fam);
}

}  // namespace

BasicSequence::BasicSequence(Family fam) {
  validate(fam);
  family_ = std::make_shared<const Family>(std::move(fam));
}

BasicSequence BasicSequence::constant(Natural base) { return BasicSequence(family::Constant{std::move(base)}); }
BasicSequence BasicSequence::affine(Natural slope, Integer offset) {
  return BasicSequence(family::Affine{std::move(slope), std::move(offset)});
}
BasicSequence BasicSequence::power_floor(Rational exponent, Natural offset) {
  return BasicSequence(family::PowerFloor{std::move(exponent), std::move(offset)});
}
BasicSequence BasicSequence::doubly_exponential() { return BasicSequence(family::DoublyExponential{}); }
BasicSequence BasicSequence::geometric(Natural ratio) { return BasicSequence(family::Geometric{std::move(ratio)}); }
BasicSequence BasicSequence::altomare() { return BasicSequence(family::Altomare{}); }
BasicSequence BasicSequence::list(std::vector<Natural> head, BasicSequence tail) {
  return BasicSequence(
      family::List{std::move(head), std::make_shared<const BasicSequence>(std::move(tail))});
}
BasicSequence BasicSequence::construction(std::shared_ptr<const ConstructionSpec> spec) {
  return BasicSequence(family::Construction{std::move(spec)});
}

BasicSequence BasicSequence::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_body = colon != std::string_view::npos;
  auto expect_args = [&](std::size_t count) {
    auto args = split(body, ',');
    if (!has_body || args.size() != count) {
      throw Error(ErrorKind::parse, "bad descriptor '" + std::string(text) + "'");
    }
    return args;
  };

  if (name == "const") {
    return constant(parse_natural(expect_args(1)[0]));
  }
  if (name == "affine") {
    auto args = expect_args(2);
    return affine(parse_integer(args[0]), parse_integer(args[1]));
  }
  if (name == "powfloor") {
    auto args = expect_args(2);
    return power_floor(parse_rational(args[0]), parse_natural(args[1]));
  }
  if (name == "geom") {
    return geometric(parse_natural(expect_args(1)[0]));
  }
  if (!has_body && name == "dexp") return doubly_exponential();
  if (!has_body && name == "altomare") return altomare();
  if (!has_body && name == "construction") return construction(standard_spec());
  if (name == "scaled" && has_body) return construction(parse_scaled_spec(body));
  if (name == "list" && has_body) {
    constexpr std::string_view marker = ";tail=";
    const auto pos = body.find(marker);
    if (pos == std::string_view::npos) {
      throw Error(ErrorKind::parse, "list descriptor needs ';tail=<descriptor>'");
    }
    std::vector<Natural> head;
    if (pos > 0) {
      for (auto token : split(body.substr(0, pos), ',')) head.push_back(parse_natural(token));
    }
    return list(std::move(head), parse(body.substr(pos + marker.size())));
  }
  throw Error(ErrorKind::parse, "unknown sequence descriptor '" + std::string(text) + "'");
}

std::string BasicSequence::descriptor() const {
  return std::visit(
      overloaded{
          [](const family::Constant& f) { return "const:" + f.base.str(); },
          [](const family::Affine& f) { return "affine:" + f.slope.str() + "," + f.offset.str(); },
          [](const family::PowerFloor& f) {
            return "powfloor:" + to_string(f.exponent) + "," + f.offset.str();
          },
          [](const family::DoublyExponential&) { return std::string("dexp"); },
          [](const family::Geometric& f) { return "geom:" + f.ratio.str(); },
          [](const family::Altomare&) { return std::string("altomare"); },
          [](const family::List& f) {
            std::string out = "list:";
            for (std::size_t i = 0; i < f.head.size(); ++i) {
              if (i) out += ",";
              out += f.head[i].str();
            }
            return out + ";tail=" + f.tail->descriptor();
          },
          [](const family::Construction& f) { return f.spec->descriptor(); },
      },
      *family_);
}

Natural BasicSequence::q(std::uint64_t n) const {
  if (n == 0) throw Error(ErrorKind::out_of_range, "sequence indices start at 1");
  return std::visit(
      overloaded{
          [](const family::Constant& f) { return f.base; },
          [n](const family::Affine& f) { return Natural(f.slope * n + f.offset); },
          [n](const family::PowerFloor& f) { return power_floor_q(f, Natural(n)); },
          [n](const family::DoublyExponential&) {
            if (n > max_doubly_exponential_index) {
              throw Error(ErrorKind::too_large,
                          "dexp: q_n = 2^(2^n) is too large for n = " + std::to_string(n));
            }
            return pow(Natural(2), std::uint64_t{1} << n);
          },
          [n](const family::Geometric& f) {
            if (static_cast<double>(n) * std::log2(f.ratio.convert_to<double>()) >
                static_cast<double>(max_power_bits)) {
              throw Error(ErrorKind::too_large, "geom: q_n too large");
            }
            return pow(f.ratio, n);
          },
          [n](const family::Altomare&) { return altomare_q(n); },
          [n](const family::List& f) {
            if (n <= f.head.size()) return f.head[n - 1];
            return f.tail->q(n);
          },
          [n](const family::Construction& f) { return Natural(f.spec->radix_at(Natural(n))); },
      },
      *family_);
}

Natural BasicSequence::q(const Natural& n) const {
  if (n < 1) throw Error(ErrorKind::out_of_range, "sequence indices start at 1");
  if (auto small = try_u64(n)) return q(*small);
  return std::visit(
      overloaded{
          [](const family::Constant& f) { return f.base; },
          [&n](const family::Affine& f) { return Natural(f.slope * n + f.offset); },
          [&n](const family::PowerFloor& f) { return power_floor_q(f, n); },
          [](const family::DoublyExponential&) -> Natural {
            throw Error(ErrorKind::too_large, "dexp: index too large");
          },
          [](const family::Geometric&) -> Natural {
            throw Error(ErrorKind::too_large, "geom: index too large");
          },
          [](const family::Altomare&) -> Natural {
            throw Error(ErrorKind::too_large, "altomare: index beyond 64 bits");
          },
          [&n](const family::List& f) { return f.tail->q(n); },
          [&n](const family::Construction& f) { return Natural(f.spec->radix_at(n)); },
      },
      *family_);
}

std::optional<std::uint64_t> BasicSequence::q_u64(std::uint64_t n) const {
  if (const auto* f = std::get_if<family::Constant>(family_.get())) return try_u64(f->base);
  if (const auto* f = std::get_if<family::Construction>(family_.get())) {
    return f->spec->radix_at(Natural(n));
  }
  return try_u64(q(n));
}

bool BasicSequence::closed_form() const {
  return std::visit(overloaded{
                        [](const family::Altomare&) { return false; },
                        [](const family::List& f) { return f.tail->closed_form(); },
                        [](const auto&) { return true; },
                    },
                    *family_);
}

std::optional<Natural> BasicSequence::monotone_from() const {
  return std::visit(
      overloaded{
          [](const family::Altomare&) -> std::optional<Natural> { return std::nullopt; },
          [](const family::List& f) -> std::optional<Natural> {
            auto tail_from = f.tail->monotone_from();
            if (!tail_from) return std::nullopt;
            return std::max(*tail_from, Natural(f.head.size() + 1));
          },
          [](const family::Construction& f) -> std::optional<Natural> {
            // b_i non-decreasing across every stage is a shape constraint;
            // scaled specs record its violation.
            for (const auto& v : f.spec->violations()) {
              if (v.find("base") != std::string::npos) return std::nullopt;
            }
            return Natural(1);
          },
          [](const auto&) -> std::optional<Natural> { return Natural(1); },
      },
      *family_);
}

Natural q_at(const BasicSequence& seq, const Natural& n) { return seq.q(n); }

std::uint64_t rho(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw Error(ErrorKind::domain, "rho requires n, k >= 1");
  return (n + k - 1) / k - 1;
}

std::optional<std::vector<std::uint64_t>> radices_u64(const BasicSequence& seq,
                                                      std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto q = seq.q_u64(first + i);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

std::optional<TailIndex> tail_index(const BasicSequence& seq, const Natural& k,
                                    std::uint64_t horizon) {
  if (horizon == 0) throw Error(ErrorKind::domain, "tail_index requires horizon >= 1");
  if (seq.q(horizon) <= k) return std::nullopt;
  const auto mono = seq.monotone_from();
  std::uint64_t m = horizon;
  if (mono && *mono <= horizon) {
    // Non-decreasing on [from, horizon]: binary search the first q_n > k there.
    const std::uint64_t from = to_u64(*mono);
    std::uint64_t lo = from;
    std::uint64_t hi = horizon;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (seq.q(mid) > k) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    m = lo;
    if (m == from) {
      while (m > 1 && seq.q(m - 1) > k) --m;
    }
  } else {
    while (m > 1 && seq.q(m - 1) > k) --m;
  }
  return TailIndex{m, mono.has_value() && *mono <= horizon};
}

}  // namespace cantor
