#include <algorithm>
#include <deque>

#include "cantor/construct.hpp"
#include "cantor/error.hpp"
#include "cantor/sequences.hpp"

namespace cantor {

namespace {

/// Largest m >= n with q constant on [n, m]; nullopt when constant forever.
std::optional<std::uint64_t> run_end(const BasicSequence& seq, std::uint64_t n) {
  const Family& fam = seq.family();
  if (std::holds_alternative<family::Constant>(fam)) return std::nullopt;
  if (const auto* f = std::get_if<family::Affine>(&fam); f && f->slope == 0) return std::nullopt;
  if (const auto* f = std::get_if<family::PowerFloor>(&fam); f && f->exponent == 0) {
    return std::nullopt;
  }
  if (const auto* f = std::get_if<family::List>(&fam); f && n > f->head.size()) {
    return run_end(*f->tail, n);
  }
  if (const auto* f = std::get_if<family::Construction>(&fam)) {
    const ConstructionSpec& spec = *f->spec;
    if (!spec.unbounded() && Natural(n) > spec.stored_length()) return std::nullopt;
    const auto loc = spec.locate(Natural(n));
    const Natural end = spec.cumulative_length(loc.stage);
    return fits_u64(end) ? std::optional<std::uint64_t>(to_u64(end)) : std::nullopt;
  }
  return n;
}

/// Visits the terms 1/(q_s ... q_{s+k-1}) for s = first + t*stride,
/// t = 0..count-1, grouping runs of identical products.
/// visit(t_begin, t_end, product) covers terms [t_begin, t_end).
template <class Visit>
void for_each_term(const BasicSequence& seq, std::uint64_t first, std::uint64_t stride,
                   std::uint64_t k, std::uint64_t count, Visit&& visit) {
  if (k == 0) throw Error(ErrorKind::domain, "k must be >= 1");
  std::uint64_t t = 0;
  while (t < count) {
    const std::uint64_t s = first + t * stride;
    const auto end = run_end(seq, s);
    if (!end || *end >= s + k - 1) {
      // Every window starting in [s, end - k + 1] lies inside the run.
      std::uint64_t same = count - t;
      if (end) same = std::min<std::uint64_t>(same, (*end - (s + k - 1)) / stride + 1);
      if (same > 1) {
        if (!visit(t, t + same, pow(seq.q(s), k))) return;
        t += same;
        continue;
      }
    }
    Natural product = 1;
    for (std::uint64_t i = 0; i < k; ++i) product *= seq.q(s + i);
    if (!visit(t, t + 1, product)) return;
    ++t;
  }
}

std::uint64_t strided_terms(std::uint64_t n, std::uint64_t k) { return rho(n, k) + 1; }

std::vector<Real> real_sums(const BasicSequence& seq, std::uint64_t first, std::uint64_t stride,
                            std::uint64_t k, const std::vector<std::uint64_t>& term_counts) {
  if (!std::is_sorted(term_counts.begin(), term_counts.end())) {
    throw Error(ErrorKind::domain, "checkpoints must be sorted ascending");
  }
  std::vector<Real> out(term_counts.size());
  if (term_counts.empty()) return out;
  // Increasing super-exponential families: stop once terms drop below 2^-600 of the first.
  const Family& fam = seq.family();
  const bool early_stop = std::holds_alternative<family::DoublyExponential>(fam) ||
                          std::holds_alternative<family::Geometric>(fam);
  Real sum = 0;
  std::size_t next = 0;
  while (next < out.size() && term_counts[next] == 0) out[next++] = 0;
  Natural cutoff = 0;
  bool stopped = false;
  for_each_term(seq, first, stride, k, term_counts.back(),
                [&](std::uint64_t begin, std::uint64_t end, const Natural& product) {
                  if (early_stop) {
                    if (cutoff == 0) cutoff = product << 600;
                    if (product > cutoff) {
                      stopped = true;
                      return false;
                    }
                  }
                  const Real term = Real(1) / to_real(product);
                  std::uint64_t t = begin;
                  while (t < end) {
                    const std::uint64_t stop =
                        next < out.size() ? std::min(end, term_counts[next]) : end;
                    sum += term * Real(stop - t);
                    t = stop;
                    while (next < out.size() && term_counts[next] == t) out[next++] = sum;
                  }
                  return true;
                });
  if (stopped) {
    while (next < out.size()) out[next++] = sum;
  }
  return out;
}

}  // namespace

Rational q_partial(const BasicSequence& seq, std::uint64_t n, std::uint64_t k) {
  Rational sum = 0;
  for_each_term(seq, 1, 1, k, n, [&](std::uint64_t begin, std::uint64_t end, const Natural& product) {
    sum += Rational(Natural(end - begin), product);
    return true;
  });
  return sum;
}

Rational q_partial_strided(const BasicSequence& seq, std::uint64_t n, std::uint64_t k,
                           std::uint64_t p) {
  if (p == 0) throw Error(ErrorKind::domain, "p must be >= 1");
  if (n == 0) throw Error(ErrorKind::domain, "n must be >= 1");
  Rational sum = 0;
  for_each_term(seq, p, k, k, strided_terms(n, k),
                [&](std::uint64_t begin, std::uint64_t end, const Natural& product) {
                  sum += Rational(Natural(end - begin), product);
                  return true;
                });
  return sum;
}

std::vector<Real> q_partial_real(const BasicSequence& seq, std::uint64_t k,
                                 const std::vector<std::uint64_t>& checkpoints) {
  return real_sums(seq, 1, 1, k, checkpoints);
}

std::vector<Real> q_partial_strided_real(const BasicSequence& seq, std::uint64_t k,
                                         std::uint64_t p,
                                         const std::vector<std::uint64_t>& checkpoints) {
  if (p == 0) throw Error(ErrorKind::domain, "p must be >= 1");
  std::vector<std::uint64_t> terms;
  terms.reserve(checkpoints.size());
  for (auto n : checkpoints) {
    if (n == 0) throw Error(ErrorKind::domain, "n must be >= 1");
    terms.push_back(strided_terms(n, k));
  }
  return real_sums(seq, p, k, k, terms);
}

Real q_partial_real(const BasicSequence& seq, std::uint64_t n, std::uint64_t k) {
  return q_partial_real(seq, k, std::vector<std::uint64_t>{n}).front();
}

Real q_partial_strided_real(const BasicSequence& seq, std::uint64_t n, std::uint64_t k,
                            std::uint64_t p) {
  return q_partial_strided_real(seq, k, p, std::vector<std::uint64_t>{n}).front();
}

}  // namespace cantor
